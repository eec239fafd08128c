"""Trace equivalence between the compiled engine and the reference steps.

Both consume the same documented randomness schedule from identical
generator streams, so populations must match generation for generation,
bit for bit. This is the contract that lets full runs use the engine while
the semantics are pinned by the pure-Python implementation.
"""

import numpy as np
import pytest

from smsemoa import (
    ProblemSpec,
    Strategy,
    analytic_pareto_front,
    default_parameters,
    initial_population,
    step,
)
from smsemoa import engine

R_BY_M = {2: (-1, -1), 4: (-1, -1, -1, -1)}

CONFIGS = [
    (ProblemSpec.ojzj(10, 4), "classic", 400),
    (ProblemSpec.ojzj(10, 4), "stochastic-update", 400),
    (ProblemSpec.ojzj(10, 4), "aging", 400),
    (ProblemSpec.mojzj(8, 4, 1), "classic", 250),
    (ProblemSpec.mojzj(8, 4, 1), "stochastic-update", 250),
    (ProblemSpec.mojzj(8, 4, 1), "aging", 250),
    # 81 distinct profiles: exercises the multi-word profile-set masks
    (ProblemSpec.mojzj(16, 4, 3), "aging", 60),
    (ProblemSpec.mojzj(16, 4, 3), "classic", 60),
]


def make_strategy(kind, tau):
    return Strategy.aging(tau) if kind == "aging" else Strategy(kind)


@pytest.mark.parametrize("spec,kind,generations", CONFIGS)
def test_engine_matches_reference_trace(spec, kind, generations):
    mu, tau = default_parameters(spec)
    strategy = make_strategy(kind, tau)
    r = R_BY_M[spec.m]
    for seed in (0, 1):
        sim = engine.Simulation(spec, strategy, mu, np.random.default_rng(seed))
        rng = np.random.default_rng(seed)
        pop = initial_population(
            spec, mu, rng, age=tau if kind == "aging" else 0
        )
        assert [i.genotype.bits for i in sim.population()] == [
            i.genotype.bits for i in pop
        ]
        for gen in range(generations):
            sim.step()
            pop = step(pop, spec, r, rng, strategy)
            mirror = sim.population()
            assert [i.genotype.bits for i in mirror] == [
                i.genotype.bits for i in pop
            ], f"{spec} {kind} diverged at generation {gen}"
            assert [i.objectives for i in mirror] == [i.objectives for i in pop]
            if kind == "aging":
                assert [i.age for i in mirror] == [i.age for i in pop]


@pytest.mark.parametrize("spec", [ProblemSpec.ojzj(10, 4), ProblemSpec.mojzj(8, 4, 1)])
def test_engine_coverage_counter_matches_recount(spec):
    # the incremental covered-front counter must equal a from-scratch count
    mu, tau = default_parameters(spec)
    target = set(analytic_pareto_front(spec).points)
    sim = engine.Simulation(spec, Strategy.aging(tau), mu, np.random.default_rng(5))
    for _ in range(300):
        sim.step()
        population_cover = {
            i.objectives for i in sim.population()
        } & target
        assert sim.covered_front_vectors() == population_cover
        assert sim.front_covered == (population_cover == target)


def test_engine_same_seed_same_outcome():
    spec = ProblemSpec.ojzj(10, 4)
    mu, tau = default_parameters(spec)
    outcomes = []
    for _ in range(2):
        sim = engine.Simulation(spec, Strategy.aging(tau), mu, np.random.default_rng(17))
        outcomes.append((sim.run(10**7), sim.front_covered))
    assert outcomes[0] == outcomes[1]


def test_manual_steps_equal_compiled_loop():
    # run() must be nothing more than step() in a compiled loop
    spec = ProblemSpec.ojzj(8, 2)
    mu, tau = default_parameters(spec)
    a = engine.Simulation(spec, Strategy.aging(tau), mu, np.random.default_rng(9))
    b = engine.Simulation(spec, Strategy.aging(tau), mu, np.random.default_rng(9))
    iterations = a.run(10**6)
    assert a.front_covered
    for _ in range(iterations):
        b.step()
    assert b.front_covered
    assert np.array_equal(a._geno, b._geno)
    assert np.array_equal(a._ages, b._ages)
    assert a.first_hit_k == b.first_hit_k and a.first_hit_c == b.first_hit_c


def test_two_objective_mojzj_traces_match_ojzj():
    # mOJZJ with m = 2 is OJZJ; with equal parameters the runs coincide
    ojzj = ProblemSpec.ojzj(10, 3)
    mojzj = ProblemSpec.mojzj(10, 2, 3)
    for seed in (0, 1):
        a = engine.Simulation(ojzj, Strategy.aging(8), 20, np.random.default_rng(seed))
        b = engine.Simulation(mojzj, Strategy.aging(8), 20, np.random.default_rng(seed))
        ia, ib = a.run(10**6), b.run(10**6)
        assert ia == ib
        assert np.array_equal(a._geno, b._geno)
        assert a.first_hit_k is None and b.first_hit_k is not None


def test_lost_front_points_zero_under_survival_guarantee():
    # mu >= M-bar + 1 + tau for aging, mu >= M-bar + 1 for classic
    for spec in (ProblemSpec.ojzj(10, 4), ProblemSpec.mojzj(8, 4, 1)):
        mu, tau = default_parameters(spec)
        for kind in ("classic", "aging"):
            sim = engine.Simulation(
                spec, make_strategy(kind, tau), mu, np.random.default_rng(2)
            )
            sim.run(50_000)
            assert sim.lost_front_points == 0
