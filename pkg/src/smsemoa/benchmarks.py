"""OJZJ and mOJZJ evaluation plus the analytic Pareto fronts.

Both benchmarks are maximized. OJZJ pairs a jump function with the same jump
applied to the complemented string; mOJZJ splits the string into m/2 blocks
of length n' = 2n/m and scores each block with an independent OJZJ of size
n'. OJZJ is exactly the one-block case, which the block helpers exploit.

Per-block objective ordering: block i contributes the pair
(f_{2i-1}, f_{2i}) = OJZJ(block_i), i.e. objective indices ascend with the
block index. Either ordering yields the same Pareto front set because the
two components of a block pair are exchangeable under complementation; the
ascending convention is fixed here and used everywhere downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import BitString, Individual, ObjectiveVector

OJZJ = "ojzj"
MOJZJ = "mojzj"


@dataclass(frozen=True)
class ProblemSpec:
    """One benchmark instance: kind, problem size n, gap k, objectives m."""

    kind: str
    n: int
    k: int
    m: int

    def __post_init__(self) -> None:
        if self.kind not in (OJZJ, MOJZJ):
            raise ValueError(f"unknown benchmark kind: {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind == OJZJ:
            if self.m != 2:
                raise ValueError("OJZJ has exactly two objectives")
        else:
            if self.m < 2 or self.m % 2 != 0:
                raise ValueError("mOJZJ needs an even number of objectives >= 2")
            if self.n % (self.m // 2) != 0:
                raise ValueError("n must be divisible by m/2")
        if not 1 <= self.k <= self.block_length // 2:
            raise ValueError(
                f"gap parameter k={self.k} outside [1, {self.block_length // 2}]"
            )

    @classmethod
    def ojzj(cls, n: int, k: int) -> "ProblemSpec":
        return cls(OJZJ, n, k, 2)

    @classmethod
    def mojzj(cls, n: int, m: int, k: int) -> "ProblemSpec":
        return cls(MOJZJ, n, k, m)

    @property
    def block_count(self) -> int:
        """m' = m/2 independent blocks (1 for OJZJ)."""
        return self.m // 2

    @property
    def block_length(self) -> int:
        """n' = 2n/m bits per block (n for OJZJ)."""
        return self.n // (self.m // 2)


def jump_value(ones: int, n: int, k: int) -> int:
    """Single jump objective of a string with the given number of ones."""
    if ones <= n - k or ones == n:
        return k + ones
    return n - ones


def block_pair(ones: int, n_prime: int, k: int) -> tuple[int, int]:
    """Objective pair of one block with the given one-count."""
    return jump_value(ones, n_prime, k), jump_value(n_prime - ones, n_prime, k)


def block_ones(x: BitString, spec: ProblemSpec) -> tuple[int, ...]:
    """Per-block one-counts of x under spec's block partition."""
    if len(x) != spec.n:
        raise ValueError(f"bitstring length {len(x)} does not match n={spec.n}")
    np_ = spec.block_length
    return tuple(
        sum(x.bits[b * np_ : (b + 1) * np_]) for b in range(spec.block_count)
    )


def evaluate(x: BitString, spec: ProblemSpec) -> ObjectiveVector:
    """Objective vector of x; dispatches on the benchmark kind."""
    values: list[int] = []
    for ones in block_ones(x, spec):
        values.extend(block_pair(ones, spec.block_length, spec.k))
    return tuple(values)


def ojzj_eval(x: BitString, spec: ProblemSpec) -> ObjectiveVector:
    if spec.kind != OJZJ:
        raise ValueError("ojzj_eval requires an OJZJ spec")
    return evaluate(x, spec)


def mojzj_eval(x: BitString, spec: ProblemSpec) -> ObjectiveVector:
    if spec.kind != MOJZJ:
        raise ValueError("mojzj_eval requires a mOJZJ spec")
    return evaluate(x, spec)


def make_individual(x: BitString, spec: ProblemSpec, age: int = 0) -> Individual:
    """Create an individual with its objective vector cached at birth."""
    return Individual(x, evaluate(x, spec), age)


@dataclass(frozen=True)
class ParetoFrontTarget:
    """The full analytic Pareto front of an instance."""

    points: frozenset[ObjectiveVector]
    size: int


def _block_front_values(spec: ProblemSpec) -> list[int]:
    np_, k = spec.block_length, spec.k
    return sorted(set(range(2 * k, np_ + 1)) | {k, np_ + k})


@lru_cache(maxsize=None)
def analytic_pareto_front(spec: ProblemSpec) -> ParetoFrontTarget:
    """Closed-form Pareto front; per-block pairs (a, n' + 2k - a) with
    a in [2k..n'] plus the two extremes {k, n' + k}, combined over blocks."""
    np_, k = spec.block_length, spec.k
    values = _block_front_values(spec)
    points = frozenset(
        tuple(v for a in combo for v in (a, np_ + 2 * k - a))
        for combo in itertools.product(values, repeat=spec.block_count)
    )
    size = (np_ - 2 * k + 3) ** spec.block_count
    assert len(points) == size
    return ParetoFrontTarget(points, size)


def max_antichain_bound(spec: ProblemSpec) -> int:
    """Largest mutually non-dominating set: exact n - 2k + 3 for OJZJ,
    the (n' + 1)^(m/2) upper bound for mOJZJ."""
    if spec.kind == OJZJ:
        return spec.n - 2 * spec.k + 3
    return (spec.block_length + 1) ** spec.block_count
