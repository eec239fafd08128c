"""Acceptance suite: one test per criterion, printing a pass line each.

The oracle batteries run at full size here (the unit-test modules use
reduced sizes for speed). The two reproduction tests execute real runs at
published parameters and take several minutes each; everything is seeded,
so the outcomes are reproducible bit for bit.
"""

import math
import subprocess
import sys

import numpy as np
import pytest

from smsemoa import (
    ProblemSpec,
    Strategy,
    analytic_pareto_front,
    default_parameters,
    grid_hypervolume_oracle,
    hypervolume,
    fast_non_dominated_sort,
    run_until_covered,
)
from smsemoa import engine
from smsemoa.harness import (
    ExperimentConfig,
    RunRecord,
    run_experiment,
    summarize,
    write_records,
)
from smsemoa.testkit import brute_force_pareto_front, naive_front_peeling

THREADS = 2


def _mean(values):
    return sum(values) / len(values)


def test_c1_benchmark_oracle():
    for n in range(6, 15):
        for k in (1, 2, 3):
            spec = ProblemSpec.ojzj(n, k)
            assert brute_force_pareto_front(spec) == set(
                analytic_pareto_front(spec).points
            ), f"OJZJ n={n} k={k}"
    for n in (8, 12):
        for k in (1, 2):
            spec = ProblemSpec.mojzj(n, 4, k)
            assert brute_force_pareto_front(spec) == set(
                analytic_pareto_front(spec).points
            ), f"mOJZJ n={n} k={k}"
    print("[PASS] C1 benchmark oracle: analytic == brute force on 31 instances")


def test_c2_hypervolume_oracle():
    rng = np.random.default_rng(20250101)
    for m in (2, 3, 4):
        r = (-1,) * m
        for _ in range(200):
            count = int(rng.integers(1, 21))
            pts = [
                tuple(int(v) for v in row)
                for row in rng.integers(0, 19, (count, m))
            ]
            assert hypervolume(pts, r) == grid_hypervolume_oracle(pts, r)
    print("[PASS] C2 hypervolume oracle: 200 random sets per m in {2,3,4}, exact")


def test_c3_sorting_oracle():
    rng = np.random.default_rng(20250202)
    for case in range(500):
        m = 2 if case % 2 == 0 else 4
        count = int(rng.integers(1, 61))
        pts = [tuple(int(v) for v in row) for row in rng.integers(0, 21, (count, m))]
        if case % 5 == 0 and count > 1:
            pts[-1] = pts[0]
        assert fast_non_dominated_sort(pts).fronts == naive_front_peeling(pts).fronts
    print("[PASS] C3 sorting oracle: 500 random multisets, exact")


def test_c4_lemma1_coverage_monotonicity():
    spec2 = ProblemSpec.ojzj(10, 4)
    mu2, tau2 = default_parameters(spec2)
    for seed in range(10):
        res = run_until_covered(spec2, Strategy.aging(tau2), mu2, seed=seed)
        assert res.covered_all
        assert res.lost_front_points == 0, f"OJZJ seed {seed}"
    spec4 = ProblemSpec.mojzj(12, 4, 3)
    mu4, tau4 = default_parameters(spec4)
    for seed in range(3):
        res = run_until_covered(spec4, Strategy.aging(tau4), mu4, seed=seed)
        assert res.covered_all
        assert res.lost_front_points == 0, f"mOJZJ seed {seed}"
    print("[PASS] C4 survival invariant: 10 OJZJ + 3 mOJZJ full runs, zero losses")


def test_c5_degenerate_equivalence():
    spec = ProblemSpec.ojzj(10, 4)
    mu, _ = default_parameters(spec)
    for seed in range(5):
        a = engine.Simulation(spec, Strategy.classic(), mu, np.random.default_rng(seed))
        b = engine.Simulation(spec, Strategy.aging(0), mu, np.random.default_rng(seed))
        for gen in range(1000):
            a.step()
            b.step()
            assert np.array_equal(a._geno[:mu], b._geno[:mu]), f"seed {seed} gen {gen}"
            assert np.array_equal(a._pid[:mu], b._pid[:mu])
    print("[PASS] C5 degenerate equivalence: aging(0) == classic, 5 seeds x 1000 gens")


@pytest.fixture(scope="module")
def fig2_n20_records(tmp_path_factory):
    out = tmp_path_factory.mktemp("accept") / "fig2_n20.csv"
    config = ExperimentConfig(
        kind="ojzj", n_values=(20,), k=4, runs=50, master_seed=2024, out=str(out)
    )
    return run_experiment(config, threads=THREADS)


def test_c6_figure2_reproduction(fig2_n20_records):
    rows = {row.algorithm: row for row in summarize(fig2_n20_records)}
    assert all(rec.covered_all for rec in fig2_n20_records)
    aging = rows["aging"].mean_evaluations
    spu = rows["stochastic-update"].mean_evaluations
    classic = rows["classic"].mean_evaluations
    assert aging < spu and aging < classic
    assert classic / aging >= 2.5, f"speed-up vs classic only {classic / aging:.2f}"
    assert spu / aging >= 1.8, f"speed-up vs stochastic update only {spu / aging:.2f}"
    print(
        f"[PASS] C6 bi-objective reproduction at n=20: mean evals "
        f"aging={aging:.3g}, spu={spu:.3g}, classic={classic:.3g} "
        f"(speed-ups {classic / aging:.1f}x / {spu / aging:.1f}x)"
    )


def test_c7_figure3_reproduction(tmp_path):
    out = tmp_path / "fig3_n16.csv"
    config = ExperimentConfig(
        kind="mojzj", n_values=(16,), k=3, m=4, runs=20, master_seed=2025,
        out=str(out),
    )
    records = run_experiment(config, threads=THREADS)
    assert all(rec.covered_all for rec in records)
    rows = {row.algorithm: row for row in summarize(records)}
    aging = rows["aging"].mean_evaluations
    spu = rows["stochastic-update"].mean_evaluations
    classic = rows["classic"].mean_evaluations
    assert aging < spu and aging < classic
    assert classic / aging >= 1.5, f"speed-up vs classic only {classic / aging:.2f}"
    print(
        f"[PASS] C7 four-objective reproduction at n=16: mean evals "
        f"aging={aging:.3g}, spu={spu:.3g}, classic={classic:.3g} "
        f"(speed-ups {classic / aging:.1f}x / {spu / aging:.1f}x)"
    )


def test_c8_runtime_bound_monitor(tmp_path):
    out = tmp_path / "aging_scaling.csv"
    config = ExperimentConfig(
        kind="ojzj", n_values=(10, 15, 20), k=4, strategies=("aging",),
        runs=50, master_seed=2026, out=str(out),
    )
    records = run_experiment(config, threads=THREADS)
    means = {}
    for n in (10, 15, 20):
        iters = [r.iterations for r in records if r.n == n and r.covered_all]
        assert len(iters) == 50
        means[n] = _mean(iters)
        spec = ProblemSpec.ojzj(n, 4)
        mu, tau = default_parameters(spec)
        q = 1.0 - math.exp(-tau / mu)
        bound = 100 * (4 * tau * (math.e**2 * n / (q * 4)) ** 4)
        assert means[n] <= bound, f"n={n}: mean {means[n]:.3g} above 100x bound"
    assert means[10] < means[15] < means[20], "mean iterations must grow with n"
    print(
        f"[PASS] C8 runtime bound monitor: means "
        f"{means[10]:.3g} < {means[15]:.3g} < {means[20]:.3g}, all below 100x bound"
    )


def test_c9_thread_determinism(tmp_path):
    bodies = []
    for threads in (1, 8):
        out = tmp_path / f"det_{threads}.csv"
        config = ExperimentConfig(
            kind="ojzj", n_values=(10,), k=4, runs=5, master_seed=7, out=str(out)
        )
        run_experiment(config, threads=threads)
        bodies.append(out.read_bytes())
    assert bodies[0] == bodies[1]
    print("[PASS] C9 determinism: 1-thread and 8-thread CSV bodies byte-identical")


def _six_significant(x: float) -> float:
    return float(f"{x:.6g}")


def test_c10_plot_fidelity(tmp_path):
    pytest.importorskip("smsemoa_plots")
    rng = np.random.default_rng(11)
    records = []
    for algorithm, base in (("classic", 9e5), ("stochastic-update", 5e5), ("aging", 1e5)):
        for idx, n in enumerate((10, 15, 20, 25, 30)):
            mu = 2 * (n - 4)
            scale = base * (1.6 ** idx) / 100
            for run in range(3):
                evals = int(mu + scale * (1 + 0.2 * rng.random()))
                records.append(
                    RunRecord(
                        algorithm=algorithm, kind="ojzj", n=n, m=2, k=4, mu=mu,
                        tau=mu // 2 if algorithm == "aging" else None,
                        run_index=run, seed=run, iterations=evals - mu,
                        evaluations=evals, covered_all=not (run == 2 and n == 10),
                    )
                )
    csv_path = tmp_path / "fig2_style.csv"
    write_records(csv_path, records)

    png = tmp_path / "fig.png"
    proc = subprocess.run(
        [
            sys.executable, "-m", "smsemoa_plots", "--csv", str(csv_path),
            "--out", str(png), "--print-table",
        ],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert png.exists()

    plotted = {}
    for line in proc.stdout.strip().splitlines()[1:]:
        algorithm, n, ok, fail, mean, std = line.split(",")
        plotted[(algorithm, int(n))] = (float(mean), float(std))
    for row in summarize(records):
        mean, std = plotted[(row.algorithm, row.n)]
        assert _six_significant(mean) == _six_significant(row.mean_evaluations)
        assert _six_significant(std) == _six_significant(row.std_evaluations)

    bad = tmp_path / "bad.csv"
    bad.write_text("algorithm,n\nclassic,10\n")
    proc_bad = subprocess.run(
        [sys.executable, "-m", "smsemoa_plots", "--csv", str(bad), "--out", str(png)],
        capture_output=True, text=True,
    )
    assert proc_bad.returncode != 0
    print("[PASS] C10 plot fidelity: figure table matches summarize to 6 significant digits")
