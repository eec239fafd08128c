"""Brute-force oracles for property tests and verification.

These are deliberately naive (full enumeration, repeated peeling) and live
outside the hot path; the library never imports them.
"""

from __future__ import annotations

from typing import Sequence

from .benchmarks import ProblemSpec, block_pair
from .core import ObjectiveVector, strictly_dominates
from .ranking import FrontPartition

ENUMERATION_LIMIT = 2**20


def brute_force_pareto_front(spec: ProblemSpec) -> set[ObjectiveVector]:
    """Evaluate every genotype and keep the non-dominated objective vectors."""
    if 2**spec.n > ENUMERATION_LIMIT:
        raise ValueError(f"2^{spec.n} genotypes exceed the enumeration limit")
    npr, k, blocks = spec.block_length, spec.k, spec.block_count
    achieved: set[ObjectiveVector] = set()
    block_masks = [((1 << npr) - 1) << (b * npr) for b in range(blocks)]
    for g in range(2**spec.n):
        vec: list[int] = []
        for b in range(blocks):
            ones = bin(g & block_masks[b]).count("1")
            vec.extend(block_pair(ones, npr, k))
        achieved.add(tuple(vec))
    return {
        v
        for v in achieved
        if not any(u != v and strictly_dominates(u, v) for u in achieved)
    }


def naive_front_peeling(points: Sequence[ObjectiveVector]) -> FrontPartition:
    """Repeatedly extract the non-dominated subset; oracle for the fast sort."""
    if len(points) == 0:
        raise ValueError("cannot partition an empty point list")
    remaining = list(range(len(points)))
    fronts: list[tuple[int, ...]] = []
    while remaining:
        front = [
            i
            for i in remaining
            if not any(
                strictly_dominates(points[j], points[i])
                for j in remaining
                if j != i
            )
        ]
        fronts.append(tuple(front))
        remaining = [i for i in remaining if i not in set(front)]
    return FrontPartition(tuple(fronts))
