"""Steady-state loop: mutation, the three survival strategies, full runs.

One generation creates a single offspring by uniform parent selection and
standard bit-wise mutation, then removes one individual. The strategies
differ only in which members face survival selection:

* classic            -- the whole combined population P u {offspring},
* stochastic-update  -- a uniform half-size sub-multiset of P u {offspring},
* aging              -- only members whose age has reached tau; offspring
                        are born with age 0 and all survivors age by 1.

Randomness schedule (fixed and identical across strategies, all draws are
uniform doubles from ``Generator.random()``):

1. one draw for the parent index, ``floor(u * mu)``;
2. n draws for the mutation mask, bit j flips iff ``u_j < 1/n``;
3. strategy-specific draws: the stochastic update samples its sub-multiset
   with a partial Fisher-Yates shuffle consuming exactly
   ``floor((mu+1)/2)`` draws; classic and aging draw nothing;
4. one tie-break draw iff the least-contributor set D has more than one
   member (``floor(u * |D|)`` into D listed in ascending member slot).

Initial populations consume ``mu * n`` draws, one per bit, bit = 1 iff
``u < 0.5``. Survivor layout is deterministic: members keep their slots and
the offspring fills the slot of the removed individual (no change if the
offspring itself was removed). The compiled engine in ``engine.py``
replays this exact schedule, so reference and engine runs are
interchangeable trace-for-trace.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, replace
from typing import Optional, Sequence

import numpy as np

from .benchmarks import (
    ParetoFrontTarget,
    ProblemSpec,
    analytic_pareto_front,
    block_pair,
    evaluate,
    make_individual,
    max_antichain_bound,
)
from .core import BitString, Individual, ObjectiveVector, Population
from .hypervolume import min_contribution_set
from .ranking import fast_non_dominated_sort

CLASSIC = "classic"
STOCHASTIC_UPDATE = "stochastic-update"
AGING = "aging"

ITERATION_CAP_LIMIT = 10**9


@dataclass(frozen=True)
class Strategy:
    """Population-update strategy; ``tau`` is only meaningful for aging."""

    kind: str
    tau: int = 0

    def __post_init__(self) -> None:
        if self.kind not in (CLASSIC, STOCHASTIC_UPDATE, AGING):
            raise ValueError(f"unknown strategy kind: {self.kind!r}")
        if self.tau < 0:
            raise ValueError("tau must be non-negative")
        if self.kind != AGING and self.tau != 0:
            raise ValueError("tau applies to the aging strategy only")

    @classmethod
    def classic(cls) -> "Strategy":
        return cls(CLASSIC)

    @classmethod
    def stochastic_update(cls) -> "Strategy":
        return cls(STOCHASTIC_UPDATE)

    @classmethod
    def aging(cls, tau: int) -> "Strategy":
        return cls(AGING, tau)


# --- shared draw helpers -------------------------------------------------

def draw_parent_index(rng: np.random.Generator, mu: int) -> int:
    """One uniform draw mapped to a member slot."""
    return int(rng.random() * mu)


def draw_flip_mask(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    """n uniform draws; position j is marked iff u_j < p."""
    return rng.random(n) < p


def draw_subset_indices(rng: np.random.Generator, pool: int, size: int) -> list[int]:
    """Sample ``size`` distinct indices from range(pool); exactly ``size`` draws."""
    a = list(range(pool))
    for i in range(size):
        j = i + int(rng.random() * (pool - i))
        a[i], a[j] = a[j], a[i]
    return a[:size]


def draw_tiebreak(rng: np.random.Generator, size: int) -> int:
    """Index into a tie set; consumes a draw only when there is a real tie."""
    if size == 1:
        return 0
    return int(rng.random() * size)


# --- mutation and steps --------------------------------------------------

def bitwise_mutation(x: BitString, rng: np.random.Generator) -> BitString:
    """Flip each bit independently with probability 1/n (n draws).

    The offspring may equal the parent; zero flips are allowed.
    """
    mask = draw_flip_mask(rng, len(x), 1.0 / len(x))
    return x.with_flips(mask.tolist())


def initial_population(
    spec: ProblemSpec, mu: int, rng: np.random.Generator, age: int = 0
) -> Population:
    """mu uniform random genotypes; consumes mu * n draws."""
    members = []
    for _ in range(mu):
        bits = tuple(1 if u < 0.5 else 0 for u in rng.random(spec.n))
        members.append(make_individual(BitString(bits), spec, age))
    return Population(tuple(members), mu)


def _make_offspring(
    pop: Population, spec: ProblemSpec, rng: np.random.Generator
) -> Individual:
    parent = pop[draw_parent_index(rng, pop.mu)]
    return make_individual(bitwise_mutation(parent.genotype, rng), spec, age=0)


def _select_victim(
    combined: Sequence[Individual],
    eligible: Sequence[int],
    r: Sequence[int],
    rng: np.random.Generator,
) -> int:
    """Least hypervolume contributor in the last front of the eligible set."""
    vectors = [combined[i].objectives for i in eligible]
    last = fast_non_dominated_sort(vectors).last_front
    d_local = sorted(min_contribution_set([vectors[t] for t in last], r))
    d = [eligible[last[t]] for t in d_local]
    return d[draw_tiebreak(rng, len(d))]


def _survivors(
    pop: Population, offspring: Individual, victim: int, bump_ages: bool
) -> Population:
    members = list(pop.members)
    if victim < pop.mu:
        members[victim] = offspring
    if bump_ages:
        members = [replace(ind, age=ind.age + 1) for ind in members]
    return Population(tuple(members), pop.mu)


def classic_step(
    pop: Population, spec: ProblemSpec, r: Sequence[int], rng: np.random.Generator
) -> Population:
    """Original greedy update: survival selection over the whole P u {x'}."""
    offspring = _make_offspring(pop, spec, rng)
    combined = list(pop.members) + [offspring]
    victim = _select_victim(combined, range(pop.mu + 1), r, rng)
    return _survivors(pop, offspring, victim, bump_ages=False)


def spu_step(
    pop: Population, spec: ProblemSpec, r: Sequence[int], rng: np.random.Generator
) -> Population:
    """Stochastic population update: selection over a random half of P u {x'}."""
    offspring = _make_offspring(pop, spec, rng)
    combined = list(pop.members) + [offspring]
    half = (pop.mu + 1) // 2
    eligible = sorted(draw_subset_indices(rng, pop.mu + 1, half))
    victim = _select_victim(combined, eligible, r, rng)
    return _survivors(pop, offspring, victim, bump_ages=False)


def aging_step(
    pop: Population,
    spec: ProblemSpec,
    r: Sequence[int],
    rng: np.random.Generator,
    tau: int,
) -> Population:
    """Aging update: only members of age >= tau face survival selection."""
    offspring = _make_offspring(pop, spec, rng)
    combined = list(pop.members) + [offspring]
    eligible = [i for i, ind in enumerate(combined) if ind.age >= tau]
    if not eligible:
        raise ValueError(
            f"no member of age >= {tau}: population violates mu >= tau + 1"
        )
    victim = _select_victim(combined, eligible, r, rng)
    return _survivors(pop, offspring, victim, bump_ages=True)


def step(
    pop: Population,
    spec: ProblemSpec,
    r: Sequence[int],
    rng: np.random.Generator,
    strategy: Strategy,
) -> Population:
    """One generation of the chosen strategy."""
    if strategy.kind == CLASSIC:
        return classic_step(pop, spec, r, rng)
    if strategy.kind == STOCHASTIC_UPDATE:
        return spu_step(pop, spec, r, rng)
    return aging_step(pop, spec, r, rng, strategy.tau)


# --- milestones and coverage ---------------------------------------------

def milestone_profiles(
    spec: ProblemSpec,
) -> tuple[frozenset[tuple[int, ...]], frozenset[tuple[int, ...]]]:
    """Per-block one-count profiles of the two mOJZJ milestone sets.

    K holds the profiles whose blocks all sit on the inner-front boundary
    (k or n'-k ones); C additionally admits the extreme blocks (0 or n').
    """
    if spec.kind != "mojzj":
        raise ValueError("milestone profiles are defined for mOJZJ only")
    np_, k = spec.block_length, spec.k
    k_set = frozenset(
        itertools.product(sorted({k, np_ - k}), repeat=spec.block_count)
    )
    c_set = frozenset(
        itertools.product(sorted({0, k, np_ - k, np_}), repeat=spec.block_count)
    )
    return k_set, c_set


def _profile_vectors(
    spec: ProblemSpec, profiles: frozenset[tuple[int, ...]]
) -> frozenset[ObjectiveVector]:
    return frozenset(
        tuple(v for c in prof for v in block_pair(c, spec.block_length, spec.k))
        for prof in profiles
    )


@dataclass
class CoverageTracker:
    """Front-coverage bookkeeping for one run.

    ``covered`` accumulates every front point seen in any observed
    population; under the survival guarantee (mu >= M-bar + 1 + tau) it
    coincides with the current population's coverage and never shrinks.
    Milestone first hits record the first iteration whose population covers
    the whole K (resp. C) set.
    """

    target: ParetoFrontTarget
    milestones: dict[str, frozenset[ObjectiveVector]]
    covered: set[ObjectiveVector]
    first_hit: dict[str, int]

    @classmethod
    def for_spec(cls, spec: ProblemSpec) -> "CoverageTracker":
        milestones = {}
        if spec.kind == "mojzj":
            k_set, c_set = milestone_profiles(spec)
            milestones["K"] = _profile_vectors(spec, k_set)
            milestones["C"] = _profile_vectors(spec, c_set)
        return cls(analytic_pareto_front(spec), milestones, set(), {})

    def observe(self, vectors: Sequence[ObjectiveVector], iteration: int) -> bool:
        """Record one generation; True when the population covers the front."""
        current = set(vectors)
        self.covered |= current & self.target.points
        for name, needed in self.milestones.items():
            if name not in self.first_hit and needed <= current:
                self.first_hit[name] = iteration
        return self.target.points <= current

    @property
    def complete(self) -> bool:
        return len(self.covered) == self.target.size


@dataclass(frozen=True)
class RunResult:
    """Outcome of one independent run."""

    iterations: int
    evaluations: int
    covered_all: bool
    first_hit_k: Optional[int] = None
    first_hit_c: Optional[int] = None
    lost_front_points: int = 0

    def __post_init__(self) -> None:
        assert self.evaluations >= self.iterations


def iteration_cap(spec: ProblemSpec, mu: int, tau: int) -> int:
    """Default run cap: 100x the analytic upper-bound expression, <= 1e9.

    The two-objective expression is k*tau*(e^2 n / ((1-exp(-tau/mu)) k))^k;
    the many-objective one additionally carries the union-bound factors over
    the m/2 blocks. Far above observed runtimes; purely a safety net.
    """
    n, k = spec.n, spec.k
    q = 1.0 - math.exp(-tau / mu)
    base = (math.e**2 * n / (q * k)) ** k
    mp = spec.block_count
    if mp == 1:
        expr = k * tau * base
    else:
        expr = (
            (1.0 / (1.0 - 1.0 / mp))
            * (2.0 + math.log(4) * mp / math.log(mp))
            * (3.0 * math.log(mp) * k * tau / 2.0)
            * base
        )
    return int(min(float(ITERATION_CAP_LIMIT), 100.0 * expr))


def run_until_covered(
    spec: ProblemSpec,
    strategy: Strategy,
    mu: int,
    seed,
    max_iterations: Optional[int] = None,
) -> RunResult:
    """Run one seeded instance until the population covers the full front.

    Fully deterministic given (seed, spec, strategy, mu). Hitting the
    iteration cap is reported via ``covered_all=False``, not an exception.
    ``evaluations`` counts the initial population plus one per generation.
    """
    from . import engine

    if mu < 1:
        raise ValueError("mu must be positive")
    if strategy.kind == AGING:
        if mu < strategy.tau + 1:
            raise ValueError("aging requires mu >= tau + 1")
        needed = max_antichain_bound(spec) + 1 + strategy.tau
        if mu < needed:
            warnings.warn(
                f"mu={mu} below the survival guarantee threshold {needed}; "
                "covered front points may be lost",
                stacklevel=2,
            )
    if max_iterations is None:
        tau = strategy.tau if strategy.kind == AGING else mu // 2
        max_iterations = iteration_cap(spec, mu, tau)

    sim = engine.Simulation(spec, strategy, mu, np.random.default_rng(seed))
    iterations = sim.run(max_iterations)
    return RunResult(
        iterations=iterations,
        evaluations=mu + iterations,
        covered_all=sim.front_covered,
        first_hit_k=sim.first_hit_k,
        first_hit_c=sim.first_hit_c,
        lost_front_points=sim.lost_front_points,
    )
