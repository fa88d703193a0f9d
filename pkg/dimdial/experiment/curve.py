"""Learning curves aggregated over independent training runs."""

from __future__ import annotations

import csv
import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any

import numpy as np

from ..exceptions import DataFileError, ValidationError
from .evaluation import EvaluationMetrics

CURVE_HEADER = ("dialogues", "mean_reward", "mean_success", "mean_length", "std_reward")


@dataclass(frozen=True)
class Checkpoint:
    """Evaluation of one run's policies after ``dialogues`` training dialogues."""

    dialogues: int
    metrics: EvaluationMetrics

    def to_dict(self) -> dict[str, Any]:
        return {"dialogues": self.dialogues, **self.metrics.to_dict()}


@dataclass(frozen=True)
class CurvePoint:
    """Run-averaged metrics at one checkpoint; ``std_reward`` is across runs."""

    dialogues: int
    mean_reward: float
    mean_success: float
    mean_length: float
    std_reward: float
    stderr_reward: float
    mean_discounted_return: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class LearningCurve:
    points: tuple[CurvePoint, ...]

    @classmethod
    def aggregate(cls, runs: Sequence[Sequence[Checkpoint]]) -> LearningCurve:
        """Average per-run checkpoint metrics; every run must share the same checkpoints."""
        if not runs:
            raise ValidationError("Cannot aggregate zero runs", field="runs")
        schedule = [c.dialogues for c in runs[0]]
        if any([c.dialogues for c in run] != schedule for run in runs):
            raise ValidationError("Runs disagree on checkpoints", field="runs")
        points = []
        for j, dialogues in enumerate(schedule):
            rewards = np.array([run[j].metrics.mean_reward for run in runs])
            std = float(np.std(rewards, ddof=1)) if len(runs) > 1 else 0.0
            points.append(CurvePoint(
                dialogues=dialogues,
                mean_reward=float(rewards.mean()),
                mean_success=float(np.mean([run[j].metrics.success_rate for run in runs])),
                mean_length=float(np.mean([run[j].metrics.mean_length for run in runs])),
                std_reward=std,
                stderr_reward=std / math.sqrt(len(runs)),
                mean_discounted_return=float(
                    np.mean([run[j].metrics.mean_discounted_return for run in runs])
                ),
            ))
        return cls(tuple(points))

    @property
    def checkpoints(self) -> list[int]:
        return [p.dialogues for p in self.points]

    def at(self, dialogues: int) -> CurvePoint:
        for point in self.points:
            if point.dialogues == dialogues:
                return point
        raise ValidationError("No checkpoint at that dialogue count", field="dialogues",
                              value=dialogues)

    @property
    def final(self) -> CurvePoint:
        return self.points[-1]

    @property
    def early(self) -> CurvePoint:
        """First checkpoint after training started."""
        return next((p for p in self.points if p.dialogues > 0), self.points[-1])

    def rows(self) -> list[list[str]]:
        return [
            [str(p.dialogues), f"{p.mean_reward:.6f}", f"{p.mean_success:.6f}",
             f"{p.mean_length:.6f}", f"{p.std_reward:.6f}"]
            for p in self.points
        ]


def write_curve_csv(curve: LearningCurve, path: str | Path) -> Path:
    """Write one row per checkpoint under the fixed header."""
    file_path = Path(path)
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        with open(file_path, "w", encoding="utf-8", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(CURVE_HEADER)
            writer.writerows(curve.rows())
    except OSError as e:
        raise DataFileError(f"Cannot write learning curve: {e}", path=str(file_path)) from e
    return file_path


def read_curve_csv(path: str | Path) -> list[dict[str, float]]:
    """Rows of a curve CSV keyed by column name."""
    file_path = Path(path)
    try:
        with open(file_path, encoding="utf-8", newline="") as f:
            reader = csv.DictReader(f)
            if tuple(reader.fieldnames or ()) != CURVE_HEADER:
                raise DataFileError("Unexpected learning-curve header", path=str(file_path))
            return [{k: float(v) for k, v in row.items()} for row in reader]
    except (OSError, ValueError) as e:
        raise DataFileError(f"Cannot read learning curve: {e}", path=str(file_path)) from e
