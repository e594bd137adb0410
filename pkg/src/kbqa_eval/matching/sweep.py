"""Similarity threshold calibration against human-labeled verdicts.

Each labeled sample pairs a similarity score with a human judgment of
whether the underlying answer was actually correct. Sweeping a threshold
grid over those scores yields per-model false-decision rates; the selected
threshold minimizes the mean false rate across models, preferring the
larger threshold on ties.
"""

from __future__ import annotations

import csv
from bisect import bisect_left
from dataclasses import dataclass
from pathlib import Path


@dataclass(frozen=True)
class SweepSample:
    similarity: float
    human_correct: bool
    model_id: str

    def __post_init__(self):
        if not 0.0 <= self.similarity <= 1.0:
            raise ValueError(f"similarity out of range: {self.similarity}")


@dataclass(frozen=True)
class CurvePoint:
    threshold: float
    model_id: str
    false_rate: float
    accuracy: float
    false_negatives: int = 0
    false_positives: int = 0


@dataclass(frozen=True)
class SweepResult:
    tau_star: float
    points: tuple[CurvePoint, ...]
    mean_false_rates: dict[float, float]

    def model_curve(self, model_id: str) -> list[CurvePoint]:
        return [p for p in self.points if p.model_id == model_id]


def _coerce(sample) -> SweepSample:
    if isinstance(sample, SweepSample):
        return sample
    similarity, human_correct, model_id = sample
    return SweepSample(float(similarity), bool(human_correct), str(model_id))


def threshold_grid(lower: float = 0.38, step: float = 0.01) -> list[float]:
    if step <= 0:
        raise ValueError("step must be positive")
    if not 0.0 <= lower <= 1.0:
        raise ValueError("lower bound must be within [0, 1]")
    grid = []
    i = 0
    while True:
        tau = round(lower + i * step, 10)
        if tau > 1.0 + 1e-9:
            break
        grid.append(min(tau, 1.0))
        i += 1
    return grid


def sweep_threshold(samples, lower: float = 0.38, step: float = 0.01) -> SweepResult:
    """Pick the threshold minimizing mean false-decision rate over models.

    A sample is a false decision at threshold t when predicted correctness
    (similarity >= t) disagrees with the human label. Ties between
    thresholds resolve to the larger one.
    """
    coerced = [_coerce(s) for s in samples]
    if not coerced:
        raise ValueError("threshold sweep needs at least one labeled sample")

    by_model: dict[str, tuple[list[float], list[float]]] = {}
    for sample in coerced:
        correct_sims, incorrect_sims = by_model.setdefault(sample.model_id, ([], []))
        (correct_sims if sample.human_correct else incorrect_sims).append(sample.similarity)
    for correct_sims, incorrect_sims in by_model.values():
        correct_sims.sort()
        incorrect_sims.sort()

    grid = threshold_grid(lower, step)
    model_ids = sorted(by_model)
    points: list[CurvePoint] = []
    mean_false_rates: dict[float, float] = {}
    tau_star = grid[0]
    best_mean = float("inf")

    for tau in grid:
        rates = []
        for model_id in model_ids:
            correct_sims, incorrect_sims = by_model[model_id]
            total = len(correct_sims) + len(incorrect_sims)
            # predicted correct iff similarity >= tau
            false_negatives = bisect_left(correct_sims, tau)
            false_positives = len(incorrect_sims) - bisect_left(incorrect_sims, tau)
            false_rate = (false_negatives + false_positives) / total
            rates.append(false_rate)
            points.append(
                CurvePoint(
                    tau,
                    model_id,
                    false_rate,
                    1.0 - false_rate,
                    false_negatives=false_negatives,
                    false_positives=false_positives,
                )
            )
        mean_rate = sum(rates) / len(rates)
        mean_false_rates[tau] = mean_rate
        if mean_rate <= best_mean:
            best_mean = mean_rate
            tau_star = tau

    return SweepResult(tau_star=tau_star, points=tuple(points), mean_false_rates=mean_false_rates)


def write_curve_csv(result: SweepResult, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["threshold", "model_id", "false_rate", "accuracy"])
        for point in result.points:
            writer.writerow(
                [
                    "%.2f" % point.threshold,
                    point.model_id,
                    "%.6f" % point.false_rate,
                    "%.6f" % point.accuracy,
                ]
            )
    return path
