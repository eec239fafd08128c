"""Errorbar figures from benchmark sweep CSVs.

Consumes the flat results schema written by the experiment harness (one
row per independent run) and renders one mean-with-std series per
algorithm over ascending problem size. The statistics are recomputed here
from the raw rows: runs that hit their iteration cap are excluded from
mean and deviation but reported as failure counts and annotated on the
figure. Output is deterministic for a fixed input file.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

EXPECTED_HEADER = [
    "algorithm", "kind", "n", "m", "k", "mu", "tau", "run", "seed",
    "iterations", "evaluations", "covered_all", "first_hit_K", "first_hit_C",
]

SERIES_LABELS = {
    "classic": "Classic",
    "stochastic-update": "Stochastic-Update",
    "aging": "Aging",
}

SERIES_STYLE = {
    "classic": dict(color="#d62728", marker="o"),
    "stochastic-update": dict(color="#1f77b4", marker="s"),
    "aging": dict(color="#2ca02c", marker="^"),
}


class SchemaError(ValueError):
    """The CSV does not conform to the harness results schema."""


@dataclass(frozen=True)
class SeriesPoint:
    algorithm: str
    n: int
    successes: int
    failures: int
    mean: float
    std: float


@dataclass(frozen=True)
class SeriesTable:
    """Per (algorithm, n) statistics parsed from one results CSV."""

    points: tuple[SeriesPoint, ...]

    def algorithms(self) -> list[str]:
        seen: list[str] = []
        for p in self.points:
            if p.algorithm not in seen:
                seen.append(p.algorithm)
        return seen

    def series(self, algorithm: str) -> list[SeriesPoint]:
        return sorted(
            (p for p in self.points if p.algorithm == algorithm),
            key=lambda p: p.n,
        )

    def as_rows(self) -> list[str]:
        lines = ["algorithm,n,successes,failures,mean_evaluations,std_evaluations"]
        for p in sorted(self.points, key=lambda p: (p.algorithm, p.n)):
            lines.append(
                f"{p.algorithm},{p.n},{p.successes},{p.failures},"
                f"{p.mean:.10g},{p.std:.10g}"
            )
        return lines


def _parse_row(row: Sequence[str], lineno: int) -> tuple[str, int, int, bool]:
    if len(row) != len(EXPECTED_HEADER):
        raise SchemaError(
            f"line {lineno}: {len(row)} fields, expected {len(EXPECTED_HEADER)}"
        )
    try:
        n = int(row[2])
        evaluations = int(row[10])
        covered = {"true": True, "false": False}[row[11]]
    except (ValueError, KeyError) as exc:
        raise SchemaError(f"line {lineno}: {exc}") from exc
    return row[0], n, evaluations, covered


def load_series_table(csv_path) -> SeriesTable:
    """Parse a results CSV; raises SchemaError with a line number on any
    malformed content and ValueError when no plottable data remains."""
    cells: dict[tuple[str, int], list[tuple[int, bool]]] = {}
    with open(csv_path, newline="") as f:
        reader = csv.reader(f)
        header = next(reader, None)
        if header != EXPECTED_HEADER:
            raise SchemaError(f"line 1: unexpected header {header}")
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            algorithm, n, evaluations, covered = _parse_row(row, lineno)
            cells.setdefault((algorithm, n), []).append((evaluations, covered))
    if not cells:
        raise ValueError(f"{csv_path} holds no run records")

    points = []
    for (algorithm, n), runs in sorted(cells.items()):
        good = [e for e, covered in runs if covered]
        failures = len(runs) - len(good)
        if not good:
            points.append(SeriesPoint(algorithm, n, 0, failures, math.nan, math.nan))
            continue
        mean = sum(good) / len(good)
        if len(good) == 1:
            std = 0.0
        else:
            std = math.sqrt(sum((e - mean) ** 2 for e in good) / (len(good) - 1))
        points.append(SeriesPoint(algorithm, n, len(good), failures, mean, std))
    return SeriesTable(tuple(points))


def render_sweep_figure(
    csv_path,
    output_image_path,
    log_y: bool = True,
    title: Optional[str] = None,
) -> SeriesTable:
    """Render one errorbar series per algorithm and write a raster image.

    Returns the table backing the figure so callers can cross-check the
    plotted values against independently computed statistics.
    """
    table = load_series_table(csv_path)

    fig, ax = plt.subplots(figsize=(7.0, 4.6), dpi=160)
    for algorithm in table.algorithms():
        pts = [p for p in table.series(algorithm) if p.successes > 0]
        if not pts:
            continue
        style = SERIES_STYLE.get(algorithm, dict(marker="d"))
        label = SERIES_LABELS.get(algorithm, algorithm.title())
        failed = sum(p.failures for p in table.series(algorithm))
        if failed:
            label += f" ({failed} failed)"
        ax.errorbar(
            [p.n for p in pts],
            [p.mean for p in pts],
            yerr=[p.std for p in pts],
            label=label,
            capsize=3,
            linewidth=1.4,
            **style,
        )
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel("problem size n")
    ax.set_ylabel("fitness evaluations (mean ± std)")
    if title:
        ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(output_image_path, metadata={"Software": None, "Date": None})
    plt.close(fig)
    return table
