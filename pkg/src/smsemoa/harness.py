"""Experiment configuration, seeded execution, CSV persistence, statistics.

An experiment is a grid of (strategy, n) cells, each run ``runs`` times
with per-run seeds derived from the master seed and the (cell, run) key,
so results never depend on execution order or thread count. Records are
appended to the CSV in deterministic key order as soon as they are
available; re-running against an existing file skips already completed
(cell, run) keys, which makes interrupted sweeps resumable.

CSV schema (exact header)::

    algorithm,kind,n,m,k,mu,tau,run,seed,iterations,evaluations,covered_all,first_hit_K,first_hit_C

Non-applicable fields (tau outside aging, milestones outside mOJZJ) are
empty. ``covered_all`` is ``true``/``false``. The config file format is a
flat ``key = value`` document; ``#`` starts a comment, lists are space or
comma separated. Recognized keys: kind, n, k, m, strategies, runs, seed,
mu, tau, max_iterations, out.
"""

from __future__ import annotations

import csv
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .algorithms import AGING, CLASSIC, STOCHASTIC_UPDATE, Strategy, run_until_covered
from .benchmarks import MOJZJ, OJZJ, ProblemSpec

CSV_HEADER = [
    "algorithm", "kind", "n", "m", "k", "mu", "tau", "run", "seed",
    "iterations", "evaluations", "covered_all", "first_hit_K", "first_hit_C",
]

_ALL_STRATEGIES = (CLASSIC, STOCHASTIC_UPDATE, AGING)


def default_parameters(spec: ProblemSpec) -> tuple[int, int]:
    """Population size and age threshold: mu = 2(n - 2k + 4) for OJZJ,
    mu = 2((n' + 1)^(m/2) + 1) for mOJZJ, and tau = mu / 2 for both."""
    if spec.kind == OJZJ:
        mu = 2 * (spec.n - 2 * spec.k + 4)
    else:
        mu = 2 * ((spec.block_length + 1) ** spec.block_count + 1)
    return mu, mu // 2


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a benchmark family swept over n for several strategies."""

    kind: str
    n_values: tuple[int, ...]
    k: int
    m: int = 2
    strategies: tuple[str, ...] = _ALL_STRATEGIES
    runs: int = 1
    master_seed: int = 1
    mu: Optional[int] = None
    tau: Optional[int] = None
    max_iterations: Optional[int] = None
    out: Optional[str] = None

    def __post_init__(self) -> None:
        if not self.n_values:
            raise ValueError("config needs at least one n value")
        if self.runs < 0:
            raise ValueError("runs must be non-negative")
        for name in self.strategies:
            if name not in _ALL_STRATEGIES:
                raise ValueError(f"unknown strategy {name!r}")
        for n in self.n_values:
            self.spec_for(n)  # validates kind/n/k/m combinations

    def spec_for(self, n: int) -> ProblemSpec:
        return ProblemSpec(self.kind, n, self.k, self.m)

    def parameters_for(self, n: int) -> tuple[int, int]:
        mu, tau = default_parameters(self.spec_for(n))
        if self.mu is not None:
            mu = self.mu
            tau = mu // 2
        if self.tau is not None:
            tau = self.tau
        return mu, tau


@dataclass(frozen=True)
class RunRecord:
    """One independent run as persisted to the CSV."""

    algorithm: str
    kind: str
    n: int
    m: int
    k: int
    mu: int
    tau: Optional[int]
    run_index: int
    seed: int
    iterations: int
    evaluations: int
    covered_all: bool
    first_hit_k: Optional[int] = None
    first_hit_c: Optional[int] = None


def _opt(value: Optional[int]) -> str:
    return "" if value is None else str(value)

def _opt_parse(text: str) -> Optional[int]:
    return None if text == "" else int(text)


def record_to_row(rec: RunRecord) -> list[str]:
    return [
        rec.algorithm, rec.kind, str(rec.n), str(rec.m), str(rec.k),
        str(rec.mu), _opt(rec.tau), str(rec.run_index), str(rec.seed),
        str(rec.iterations), str(rec.evaluations),
        "true" if rec.covered_all else "false",
        _opt(rec.first_hit_k), _opt(rec.first_hit_c),
    ]


def row_to_record(row: Sequence[str]) -> RunRecord:
    if len(row) != len(CSV_HEADER):
        raise ValueError(f"CSV row has {len(row)} fields, expected {len(CSV_HEADER)}")
    return RunRecord(
        algorithm=row[0], kind=row[1], n=int(row[2]), m=int(row[3]),
        k=int(row[4]), mu=int(row[5]), tau=_opt_parse(row[6]),
        run_index=int(row[7]), seed=int(row[8]), iterations=int(row[9]),
        evaluations=int(row[10]), covered_all={"true": True, "false": False}[row[11]],
        first_hit_k=_opt_parse(row[12]), first_hit_c=_opt_parse(row[13]),
    )


def read_records(path) -> list[RunRecord]:
    with open(path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header in {path}: {header}")
        return [row_to_record(row) for row in reader if row]


def write_records(path, records: Sequence[RunRecord]) -> None:
    with open(path, "w", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(record_to_row(rec))


def derive_seed(master_seed: int, cell_index: int, run_index: int) -> int:
    """Child seed for one (cell, run); independent of execution order."""
    ss = np.random.SeedSequence(master_seed, spawn_key=(cell_index, run_index))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _strategy(name: str, tau: int) -> Strategy:
    if name == AGING:
        return Strategy.aging(tau)
    return Strategy(name)


def run_experiment(config: ExperimentConfig, threads: int = 1) -> list[RunRecord]:
    """Execute the full grid, appending to ``config.out`` incrementally.

    Completed (cell, run) keys already present in the output file are
    skipped, so a crashed sweep resumes where it stopped. Records are
    committed in deterministic key order regardless of ``threads``.
    """
    if config.out is None:
        raise ValueError("config has no output path")
    out = Path(config.out)

    existing: dict[tuple[str, int, int], RunRecord] = {}
    if out.exists() and out.stat().st_size > 0:
        for rec in read_records(out):
            existing[(rec.algorithm, rec.n, rec.run_index)] = rec
        handle = open(out, "a", newline="")
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        handle = open(out, "w", newline="")
        csv.writer(handle, lineterminator="\n").writerow(CSV_HEADER)
        handle.flush()

    cells = list(itertools.product(config.strategies, config.n_values))
    jobs = []
    for cell_index, (name, n) in enumerate(cells):
        spec = config.spec_for(n)
        mu, tau = config.parameters_for(n)
        strategy = _strategy(name, tau)
        for run_index in range(config.runs):
            key = (name, n, run_index)
            seed = derive_seed(config.master_seed, cell_index, run_index)
            jobs.append((key, spec, strategy, mu, tau, seed))

    records: list[RunRecord] = []
    writer = csv.writer(handle, lineterminator="\n")
    try:
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            futures = {
                job[0]: pool.submit(
                    run_until_covered, job[1], job[2], job[3], job[5],
                    config.max_iterations,
                )
                for job in jobs
                if job[0] not in existing
            }
            for key, spec, strategy, mu, tau, seed in jobs:
                if key in existing:
                    records.append(existing[key])
                    continue
                result = futures[key].result()
                rec = RunRecord(
                    algorithm=key[0], kind=spec.kind, n=spec.n, m=spec.m,
                    k=spec.k, mu=mu,
                    tau=tau if strategy.kind == AGING else None,
                    run_index=key[2], seed=seed,
                    iterations=result.iterations,
                    evaluations=result.evaluations,
                    covered_all=result.covered_all,
                    first_hit_k=result.first_hit_k,
                    first_hit_c=result.first_hit_c,
                )
                writer.writerow(record_to_row(rec))
                handle.flush()
                records.append(rec)
    finally:
        handle.close()
    return records


@dataclass(frozen=True)
class SummaryRow:
    """Aggregated statistics for one (algorithm, n) cell."""

    algorithm: str
    n: int
    successes: int
    failures: int
    mean_evaluations: Optional[float]
    std_evaluations: Optional[float]

    @property
    def flagged(self) -> bool:
        return self.successes == 0


def summarize(records: Sequence[RunRecord]) -> list[SummaryRow]:
    """Mean and sample standard deviation of evaluations per (algorithm, n).

    Runs that hit the iteration cap are excluded from the statistics but
    reported in the failure count; a cell with no successful run is flagged
    rather than dropped.
    """
    cells: dict[tuple[str, int], list[RunRecord]] = {}
    for rec in records:
        cells.setdefault((rec.algorithm, rec.n), []).append(rec)
    rows = []
    for (algorithm, n) in sorted(cells):
        good = [r.evaluations for r in cells[(algorithm, n)] if r.covered_all]
        failures = len(cells[(algorithm, n)]) - len(good)
        if not good:
            rows.append(SummaryRow(algorithm, n, 0, failures, None, None))
            continue
        mean = sum(good) / len(good)
        if len(good) == 1:
            std = 0.0
        else:
            std = math.sqrt(
                sum((x - mean) ** 2 for x in good) / (len(good) - 1)
            )
        rows.append(SummaryRow(algorithm, n, len(good), failures, mean, std))
    return rows


def format_summary(rows: Sequence[SummaryRow]) -> str:
    header = f"{'algorithm':<18} {'n':>4} {'ok':>4} {'fail':>5} {'mean_evals':>16} {'std_evals':>16}"
    lines = [header, "-" * len(header)]
    for row in rows:
        if row.flagged:
            lines.append(
                f"{row.algorithm:<18} {row.n:>4} {row.successes:>4} "
                f"{row.failures:>5} {'(no successful runs)':>16}"
            )
        else:
            lines.append(
                f"{row.algorithm:<18} {row.n:>4} {row.successes:>4} "
                f"{row.failures:>5} {row.mean_evaluations:>16.10g} {row.std_evaluations:>16.10g}"
            )
    return "\n".join(lines)


# --- presets and config files ---------------------------------------------

def sweep_preset(name: str) -> ExperimentConfig:
    """Built-in sweeps: the bi-objective (fig2) and four-objective (fig3)
    comparison grids with their published parameters."""
    if name == "fig2":
        return ExperimentConfig(
            kind=OJZJ, n_values=(10, 15, 20, 25, 30), k=4, m=2, runs=50,
        )
    if name == "fig3":
        return ExperimentConfig(
            kind=MOJZJ, n_values=(12, 16, 20, 24, 28), k=3, m=4, runs=20,
        )
    raise ValueError(f"unknown sweep preset {name!r}")


def _split_list(text: str) -> list[str]:
    return [t for t in text.replace(",", " ").split() if t]


def parse_config(text: str) -> ExperimentConfig:
    """Parse the flat key = value experiment format."""
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        key, _, value = line.partition("=")
        values[key.strip().lower()] = value.strip()

    known = {
        "kind", "n", "k", "m", "strategies", "runs", "seed", "mu", "tau",
        "max_iterations", "out",
    }
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    for required in ("kind", "n", "k"):
        if required not in values:
            raise ValueError(f"config is missing the {required!r} key")

    kind = values["kind"].lower()
    return ExperimentConfig(
        kind=kind,
        n_values=tuple(int(v) for v in _split_list(values["n"])),
        k=int(values["k"]),
        m=int(values.get("m", "2")),
        strategies=tuple(_split_list(values["strategies"]))
        if "strategies" in values
        else _ALL_STRATEGIES,
        runs=int(values.get("runs", "1")),
        master_seed=int(values.get("seed", "1")),
        mu=int(values["mu"]) if "mu" in values else None,
        tau=int(values["tau"]) if "tau" in values else None,
        max_iterations=int(values["max_iterations"])
        if "max_iterations" in values
        else None,
        out=values.get("out"),
    )


def apply_overrides(
    config: ExperimentConfig,
    out: Optional[str] = None,
    seed: Optional[int] = None,
    runs: Optional[int] = None,
    max_iterations: Optional[int] = None,
) -> ExperimentConfig:
    """Command-line flags win over config file values."""
    if out is not None:
        config = replace(config, out=out)
    if seed is not None:
        config = replace(config, master_seed=seed)
    if runs is not None:
        config = replace(config, runs=runs)
    if max_iterations is not None:
        config = replace(config, max_iterations=max_iterations)
    return config
