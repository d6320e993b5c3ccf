"""Objectives, approximation ratios, and experiment summaries."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .model import Instance
from .scheduling import ScheduleResult


def objective(result: ScheduleResult, instance: Instance) -> float:
    """Total weighted completion time of the schedule."""
    total = 0.0
    for c in instance.coflows:
        if c.id not in result.coflow_completion:
            raise ValueError(f"result has no completion time for coflow {c.id}")
        total += c.weight * result.coflow_completion[c.id]
    return total


def ratio(objective_value: float, dual_cost: float) -> float:
    """objective / dual lower bound; >= 1 up to float noise.

    A zero bound with zero objective (all coflows empty, released at 0) is
    ratio 1 by convention. A zero bound against real cost has no meaningful
    ratio and is rejected.
    """
    if dual_cost <= 1e-12:
        if abs(objective_value) <= 1e-9:
            return 1.0
        raise ValueError(
            f"degenerate instance: objective {objective_value} with dual bound {dual_cost}"
        )
    return objective_value / dual_cost


@dataclass
class SummaryStats:
    """Five-number-ish summary plus the empirical CDF.

    Quartiles use linear interpolation between order statistics, matching
    numpy's default quantile method.
    """

    count: int
    mean: float
    minimum: float
    maximum: float
    q1: float
    median: float
    q3: float
    cdf: list[tuple[float, float]]

    def as_dict(self, with_cdf: bool = False) -> dict:
        out = {
            "count": self.count,
            "mean": self.mean,
            "min": self.minimum,
            "max": self.maximum,
            "q1": self.q1,
            "median": self.median,
            "q3": self.q3,
        }
        if with_cdf:
            out["cdf"] = [[v, f] for v, f in self.cdf]
        return out


def summarize(values: Iterable[float]) -> SummaryStats:
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise ValueError("summarize needs at least one value")
    q1, median, q3 = (
        float(q) for q in np.quantile(arr, [0.25, 0.5, 0.75], method="linear")
    )
    ordered = np.sort(arr)
    cdf = [(float(v), (pos + 1) / arr.size) for pos, v in enumerate(ordered)]
    return SummaryStats(
        count=int(arr.size),
        mean=float(arr.mean()),
        minimum=float(ordered[0]),
        maximum=float(ordered[-1]),
        q1=q1,
        median=median,
        q3=q3,
        cdf=cdf,
    )


@dataclass
class ExperimentRow:
    point: int | str
    seed: int
    algorithm: str
    objective: float
    dual_cost: float
    ratio: float


@dataclass
class ExperimentReport:
    kind: str
    granularity: str
    kappa: float
    ports: int
    instances: int
    rows: list[ExperimentRow] = field(default_factory=list)
    aggregates: list[dict] = field(default_factory=list)
    completion_times: list[float] | None = None

    def aggregate(self) -> None:
        """Group rows by (point, algorithm) in first-seen order."""
        groups: dict[tuple, list[float]] = {}
        for row in self.rows:
            groups.setdefault((row.point, row.algorithm), []).append(row.ratio)
        self.aggregates = [
            {"point": point, "algorithm": algo, **summarize(vals).as_dict()}
            for (point, algo), vals in groups.items()
        ]

    def mean_ratio(self, point) -> float:
        for entry in self.aggregates:
            if entry["point"] == point:
                return entry["mean"]
        raise KeyError(f"no aggregate for point {point!r}")


def write_rows_csv(report: ExperimentReport, path: Path) -> None:
    with open(path, "w", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(["point", "seed", "algorithm", "objective", "dual_cost", "ratio"])
        for row in report.rows:
            writer.writerow(
                [row.point, row.seed, row.algorithm,
                 repr(row.objective), repr(row.dual_cost), repr(row.ratio)]
            )


def write_aggregates_json(report: ExperimentReport, path: Path) -> None:
    with open(path, "w") as fp:
        json.dump(aggregates_dict(report), fp, indent=2)
        fp.write("\n")


def aggregates_dict(report: ExperimentReport) -> dict:
    return {
        "experiment": report.kind,
        "granularity": report.granularity,
        "kappa": report.kappa,
        "ports": report.ports,
        "instances": report.instances,
        "quartile_method": "linear",
        "points": report.aggregates,
    }


def write_cdf_csv(values: Sequence[float], path: Path) -> None:
    """Empirical CDF as two columns, for plotting."""
    stats = summarize(values)
    with open(path, "w", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(["value", "cum_fraction"])
        for v, f in stats.cdf:
            writer.writerow([repr(v), repr(f)])
