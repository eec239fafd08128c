"""Exact integer hypervolume, per-point contributions and least contributors.

All coordinates (points and reference) are integers, so every volume is an
exact integer and minimum-contribution ties are decided without any epsilon
policy. The 2-D case is a linear sweep over the sorted non-dominated set;
higher dimensions use the exclusive-volume recursion (box volume of the
head point minus the hypervolume of the remaining points clipped into that
box). A brute-force unit-cell counter serves as the independent oracle.
"""

from __future__ import annotations

from collections import Counter
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .core import DimensionMismatch, ObjectiveVector

#: Reference point: one integer per objective, strictly below every point.
ReferencePoint = tuple[int, ...]

GRID_CELL_LIMIT = 10**7


def _validated(points: Iterable[Sequence[int]], r: Sequence[int]) -> list[ObjectiveVector]:
    rt = tuple(r)
    out = []
    for p in points:
        pt = tuple(p)
        if len(pt) != len(rt):
            raise DimensionMismatch(
                f"point dimension {len(pt)} does not match reference {len(rt)}"
            )
        if any(a < b for a, b in zip(pt, rt)):
            raise ValueError(f"point {pt} lies below the reference point {rt}")
        out.append(pt)
    return out


def _pareto_filter(points: set[ObjectiveVector]) -> list[ObjectiveVector]:
    # keep the maximal elements; input is already deduplicated
    kept = []
    for p in points:
        if not any(
            q != p and all(a >= b for a, b in zip(q, p)) for q in points
        ):
            kept.append(p)
    return sorted(kept)


def _sweep_2d(points: list[ObjectiveVector], r: Sequence[int]) -> int:
    # non-dominated distinct points, descending f1 <=> ascending f2
    total = 0
    best_f2 = r[1]
    for f1, f2 in sorted(points, reverse=True):
        if f2 > best_f2:
            total += (f1 - r[0]) * (f2 - best_f2)
            best_f2 = f2
    return total


def _hv(points: list[ObjectiveVector], r: tuple[int, ...]) -> int:
    if not points:
        return 0
    m = len(r)
    if m == 1:
        return max(p[0] for p in points) - r[0]
    if m == 2:
        return _sweep_2d(points, r)
    pts = sorted(points, key=lambda p: p[0], reverse=True)
    total = 0
    for i, p in enumerate(pts):
        box = prod(c - rc for c, rc in zip(p, r))
        clipped = {
            tuple(min(a, b) for a, b in zip(q, p)) for q in pts[i + 1 :]
        }
        total += box - _hv(_pareto_filter(clipped), r)
    return total


def hypervolume(points: Iterable[Sequence[int]], r: Sequence[int]) -> int:
    """Exact measure of the union of boxes [r, p] over all points.

    Duplicates and dominated points do not affect the result; the empty
    set has volume 0. Raises ValueError if a point lies below ``r`` in any
    coordinate.
    """
    pts = _validated(points, r)
    return _hv(_pareto_filter(set(pts)), tuple(r))


def hv_contribution(i: int, front: Sequence[Sequence[int]], r: Sequence[int]) -> int:
    """HV(front) - HV(front with the i-th member removed), multiset removal."""
    pts = _validated(front, r)
    if not 0 <= i < len(pts):
        raise IndexError(f"member index {i} out of range for front of {len(pts)}")
    counts = Counter(pts)
    if counts[pts[i]] > 1:
        return 0
    distinct = set(counts)
    rt = tuple(r)
    return _hv(_pareto_filter(distinct), rt) - _hv(
        _pareto_filter(distinct - {pts[i]}), rt
    )


def min_contribution_set(front: Sequence[Sequence[int]], r: Sequence[int]) -> set[int]:
    """Indices of all members whose contribution attains the minimum."""
    pts = _validated(front, r)
    if not pts:
        raise ValueError("front must be non-empty")
    rt = tuple(r)
    counts = Counter(pts)
    distinct = set(counts)
    full = _hv(_pareto_filter(distinct), rt)
    delta: dict[ObjectiveVector, int] = {}
    for p in distinct:
        if counts[p] > 1:
            delta[p] = 0
        else:
            delta[p] = full - _hv(_pareto_filter(distinct - {p}), rt)
    lowest = min(delta[p] for p in pts)
    return {i for i, p in enumerate(pts) if delta[p] == lowest}


def grid_hypervolume_oracle(points: Iterable[Sequence[int]], r: Sequence[int]) -> int:
    """Count unit cells covered by at least one box [r, p]; equals hypervolume.

    Cells are identified by their max corner c with r < c <= p componentwise.
    Raises ValueError when the bounding grid exceeds GRID_CELL_LIMIT cells.
    """
    pts = _validated(points, r)
    if not pts:
        return 0
    rt = tuple(r)
    extent = tuple(max(p[j] for p in pts) - rt[j] for j in range(len(rt)))
    if any(e <= 0 for e in extent):
        return 0
    if prod(extent) > GRID_CELL_LIMIT:
        raise ValueError(f"grid of {prod(extent)} cells exceeds {GRID_CELL_LIMIT}")
    grid = np.zeros(extent, dtype=bool)
    for p in pts:
        box = tuple(slice(0, p[j] - rt[j]) for j in range(len(rt)))
        grid[box] = True
    return int(grid.sum())
