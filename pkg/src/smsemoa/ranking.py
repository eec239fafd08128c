"""Fast non-dominated sorting into fronts F_1..F_i*.

Deb-style O(m N^2) counts-and-lists procedure. Output order is
deterministic: fronts are emitted best-first and member indices ascend
within each front. Duplicate objective vectors never dominate each other,
so they always share a front.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import DimensionMismatch, ObjectiveVector, strictly_dominates


@dataclass(frozen=True)
class FrontPartition:
    """Ordered partition of input indices into mutually non-dominating fronts."""

    fronts: tuple[tuple[int, ...], ...]

    @property
    def num_fronts(self) -> int:
        return len(self.fronts)

    @property
    def last_front(self) -> tuple[int, ...]:
        return self.fronts[-1]


def fast_non_dominated_sort(points: Sequence[ObjectiveVector]) -> FrontPartition:
    """Partition points (by index) into non-dominated fronts.

    Raises ValueError on an empty input and DimensionMismatch when the
    vectors do not share a common dimension.
    """
    if len(points) == 0:
        raise ValueError("cannot partition an empty point list")
    m = len(points[0])
    for p in points:
        if len(p) != m:
            raise DimensionMismatch("points of mixed dimension")

    n_points = len(points)
    dominated: list[list[int]] = [[] for _ in range(n_points)]
    dom_count = [0] * n_points
    for i in range(n_points):
        for j in range(i + 1, n_points):
            if strictly_dominates(points[i], points[j]):
                dominated[i].append(j)
                dom_count[j] += 1
            elif strictly_dominates(points[j], points[i]):
                dominated[j].append(i)
                dom_count[i] += 1

    current = [i for i in range(n_points) if dom_count[i] == 0]
    fronts: list[tuple[int, ...]] = []
    while current:
        fronts.append(tuple(current))
        nxt: list[int] = []
        for i in current:
            for j in dominated[i]:
                dom_count[j] -= 1
                if dom_count[j] == 0:
                    nxt.append(j)
        current = sorted(nxt)
    return FrontPartition(tuple(fronts))
