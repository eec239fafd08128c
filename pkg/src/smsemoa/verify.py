"""Self-contained oracle and property checks behind the ``verify`` command.

Each check compares a production code path against an independent oracle
(exhaustive enumeration, unit-cell counting, naive peeling) or asserts a
documented invariant on real runs. The acceptance test suite runs the same
checks at the same sizes; ``quick`` shrinks them for smoke testing.
"""

from __future__ import annotations

import tempfile
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from .algorithms import Strategy, run_until_covered
from .benchmarks import ProblemSpec, analytic_pareto_front
from .harness import ExperimentConfig, default_parameters, run_experiment
from .hypervolume import grid_hypervolume_oracle, hypervolume
from .ranking import fast_non_dominated_sort
from .testkit import brute_force_pareto_front, naive_front_peeling
from . import engine


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str


def check_benchmark_oracle(quick: bool = False) -> CheckResult:
    """analytic_pareto_front must equal exhaustive enumeration."""
    ojzj_grid = [(n, k) for n in range(6, 15) for k in (1, 2, 3)]
    mojzj_grid = [(8, 1), (8, 2), (12, 1), (12, 2)]
    if quick:
        ojzj_grid = [(8, 2), (10, 3)]
        mojzj_grid = [(8, 1)]
    checked = 0
    for n, k in ojzj_grid:
        spec = ProblemSpec.ojzj(n, k)
        if set(analytic_pareto_front(spec).points) != brute_force_pareto_front(spec):
            return CheckResult("benchmark-oracle", False, f"mismatch at OJZJ {n=} {k=}")
        checked += 1
    for n, k in mojzj_grid:
        spec = ProblemSpec.mojzj(n, 4, k)
        if set(analytic_pareto_front(spec).points) != brute_force_pareto_front(spec):
            return CheckResult("benchmark-oracle", False, f"mismatch at mOJZJ {n=} {k=}")
        checked += 1
    return CheckResult("benchmark-oracle", True, f"{checked} instances, exact set equality")


def check_hypervolume_oracle(quick: bool = False) -> CheckResult:
    """hypervolume must equal the grid cell counter on random sets."""
    sets_per_m = 20 if quick else 200
    rng = np.random.default_rng(20250101)
    for m in (2, 3, 4):
        for _ in range(sets_per_m):
            count = int(rng.integers(1, 21))
            pts = [tuple(int(v) for v in row) for row in rng.integers(0, 19, (count, m))]
            r = (-1,) * m
            a, b = hypervolume(pts, r), grid_hypervolume_oracle(pts, r)
            if a != b:
                return CheckResult("hypervolume-oracle", False, f"{a} != {b} on {pts}")
    return CheckResult(
        "hypervolume-oracle", True, f"{sets_per_m} random sets per m in 2..4, exact"
    )


def check_sorting_oracle(quick: bool = False) -> CheckResult:
    """fast_non_dominated_sort must match naive repeated peeling."""
    n_sets = 50 if quick else 500
    rng = np.random.default_rng(20250202)
    for case in range(n_sets):
        m = 2 if case % 2 == 0 else 4
        count = int(rng.integers(1, 61))
        pts = [tuple(int(v) for v in row) for row in rng.integers(0, 21, (count, m))]
        if case % 5 == 0 and count > 1:
            pts[-1] = pts[0]  # force duplicates
        if fast_non_dominated_sort(pts).fronts != naive_front_peeling(pts).fronts:
            return CheckResult("sorting-oracle", False, f"mismatch on {pts}")
    return CheckResult("sorting-oracle", True, f"{n_sets} random multisets, exact")


def check_coverage_monotonicity(quick: bool = False) -> CheckResult:
    """With mu >= M-bar + 1 + tau, covered front points are never lost."""
    ojzj_runs = 3 if quick else 10
    mojzj_runs = 1 if quick else 3
    spec2 = ProblemSpec.ojzj(10, 4)
    mu2, tau2 = default_parameters(spec2)
    for seed in range(ojzj_runs):
        res = run_until_covered(spec2, Strategy.aging(tau2), mu2, seed)
        if res.lost_front_points or not res.covered_all:
            return CheckResult(
                "coverage-monotonicity", False,
                f"OJZJ seed {seed}: lost={res.lost_front_points}",
            )
    spec4 = ProblemSpec.mojzj(12, 4, 3)
    mu4, tau4 = default_parameters(spec4)
    for seed in range(mojzj_runs):
        res = run_until_covered(spec4, Strategy.aging(tau4), mu4, seed)
        if res.lost_front_points or not res.covered_all:
            return CheckResult(
                "coverage-monotonicity", False,
                f"mOJZJ seed {seed}: lost={res.lost_front_points}",
            )
    return CheckResult(
        "coverage-monotonicity", True,
        f"{ojzj_runs} OJZJ + {mojzj_runs} mOJZJ full runs, zero losses",
    )


def check_degenerate_equivalence(quick: bool = False) -> CheckResult:
    """Aging with tau = 0 must trace identically to the classic update."""
    seeds = range(2 if quick else 5)
    generations = 300 if quick else 1000
    spec = ProblemSpec.ojzj(10, 4)
    mu, _ = default_parameters(spec)
    for seed in seeds:
        a = engine.Simulation(spec, Strategy.classic(), mu, np.random.default_rng(seed))
        b = engine.Simulation(spec, Strategy.aging(0), mu, np.random.default_rng(seed))
        for gen in range(generations):
            a.step()
            b.step()
            if not (
                np.array_equal(a._geno[:mu], b._geno[:mu])
                and np.array_equal(a._pid[:mu], b._pid[:mu])
            ):
                return CheckResult(
                    "degenerate-equivalence", False, f"seed {seed} diverged at gen {gen}"
                )
    return CheckResult(
        "degenerate-equivalence", True,
        f"{len(list(seeds))} seeds x {generations} generations identical",
    )


def check_determinism(quick: bool = False) -> CheckResult:
    """Same config at 1 and 8 worker threads must yield identical CSV bytes."""
    runs = 2 if quick else 5
    bodies = []
    for threads in (1, 8):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "runs.csv"
            config = ExperimentConfig(
                kind="ojzj", n_values=(10,), k=4, runs=runs,
                master_seed=7, out=str(out),
            )
            run_experiment(config, threads=threads)
            bodies.append(out.read_bytes())
    ok = bodies[0] == bodies[1]
    return CheckResult(
        "thread-determinism", ok,
        "1-thread and 8-thread CSV bodies are byte-identical" if ok else "CSV bodies differ",
    )


ALL_CHECKS: tuple[Callable[[bool], CheckResult], ...] = (
    check_benchmark_oracle,
    check_hypervolume_oracle,
    check_sorting_oracle,
    check_coverage_monotonicity,
    check_degenerate_equivalence,
    check_determinism,
)


def run_all(quick: bool = False) -> list[CheckResult]:
    return [check(quick) for check in ALL_CHECKS]
