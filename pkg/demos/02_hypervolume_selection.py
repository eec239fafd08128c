"""Hypervolume, per-point contributions, and the least-contributor rule.

Run with:  python demos/02_hypervolume_selection.py
"""

from smsemoa import (
    fast_non_dominated_sort,
    grid_hypervolume_oracle,
    hv_contribution,
    hypervolume,
    min_contribution_set,
)

r = (-1, -1)

# Hypervolume is the exact integer measure of the union of boxes spanned
# between the reference point and each point of the set.
front = [(4, 14), (9, 9), (14, 4)]
print(f"front {front}, reference {r}")
print(f"hypervolume: {hypervolume(front, r)}")
print(f"grid-count oracle agrees: {grid_hypervolume_oracle(front, r)}")

# Removing a point costs its exclusive volume; duplicated or dominated
# points cost nothing, which is what makes the survival rule non-trivial.
for i, p in enumerate(front):
    print(f"  contribution of {p}: {hv_contribution(i, front, r)}")
print(f"least contributors (ties kept): {sorted(min_contribution_set(front, r))}")

crowded = [(4, 14), (9, 9), (10, 8), (14, 4)]
print(f"\ncrowded front {crowded}")
for i, p in enumerate(crowded):
    print(f"  contribution of {p}: {hv_contribution(i, crowded, r)}")
print(f"least contributor: {sorted(min_contribution_set(crowded, r))}")

dupes = [(9, 9), (9, 9), (4, 14)]
print(f"\nwith duplicates {dupes}: least = {sorted(min_contribution_set(dupes, r))}")

# Non-dominated sorting partitions a mixed set into fronts; survival
# selection only ever removes from the last front.
mixed = [(4, 14), (3, 7), (9, 9), (2, 6)]
partition = fast_non_dominated_sort(mixed)
for rank, members in enumerate(partition.fronts, start=1):
    print(f"front {rank}: {[mixed[i] for i in members]}")

# Everything also works in higher dimensions (exact, integer arithmetic).
front4 = [(5, 1, 5, 1), (4, 2, 4, 2), (1, 5, 1, 5)]
r4 = (-1,) * 4
print(f"\n4-D hypervolume of {front4}: {hypervolume(front4, r4)}")
print(f"grid oracle: {grid_hypervolume_oracle(front4, r4)}")
