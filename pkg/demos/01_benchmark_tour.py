"""Tour of the two jump benchmarks: objective values, fronts, constants.

Run with:  python demos/01_benchmark_tour.py
"""

from smsemoa import (
    BitString,
    ProblemSpec,
    analytic_pareto_front,
    evaluate,
    max_antichain_bound,
)
from smsemoa.testkit import brute_force_pareto_front

# ---------------------------------------------------------------------------
# The bi-objective benchmark maximizes a jump function together with the same
# jump applied to the complemented string. With n = 10 and gap k = 4, strings
# whose one-count falls in the gap (7, 8 or 9 ones) are valley points: both
# objectives drop sharply there.

spec = ProblemSpec.ojzj(10, 4)
print(f"bi-objective instance: n={spec.n}, k={spec.k}")
print(f"{'ones':>5} {'f1':>4} {'f2':>4}")
for ones in range(11):
    x = BitString(tuple(1 if i < ones else 0 for i in range(10)))
    f1, f2 = evaluate(x, spec)
    marker = "  <- gap" if 10 - spec.k < ones < 10 else ""
    print(f"{ones:>5} {f1:>4} {f2:>4}{marker}")

# The Pareto front has a closed form: the inner segment plus two extremes.
target = analytic_pareto_front(spec)
print(f"\nanalytic front ({target.size} points): {sorted(target.points)}")
print(f"largest antichain: {max_antichain_bound(spec)}")

# Exhaustive enumeration over all 2^10 genotypes agrees exactly.
assert brute_force_pareto_front(spec) == set(target.points)
print("exhaustive enumeration confirms the closed form")

# ---------------------------------------------------------------------------
# The many-objective variant splits the string into m/2 blocks and scores
# each block with an independent copy of the bi-objective benchmark.

mspec = ProblemSpec.mojzj(8, 4, 1)
print(f"\nfour-objective instance: n={mspec.n}, m={mspec.m}, k={mspec.k}, "
      f"block length n'={mspec.block_length}")
for bits in [(1, 1, 1, 1, 0, 0, 0, 0), (1, 1, 1, 1, 1, 1, 1, 1)]:
    x = BitString(bits)
    print(f"  f({''.join(map(str, bits))}) = {evaluate(x, mspec)}")

mtarget = analytic_pareto_front(mspec)
print(f"front size: {mtarget.size} = (n' - 2k + 3)^(m/2)")
assert brute_force_pareto_front(mspec) == set(mtarget.points)
print("exhaustive enumeration confirms the product structure")
