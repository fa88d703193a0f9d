"""Files an experiment leaves behind, and reading source policies back."""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

from .._version import __version__
from ..acts import MULTI_DIM_AGENTS, Agent
from ..exceptions import ConfigurationError, DataFileError
from ..ontology import Ontology
from ..policy import policy_filename, read_policy_set, write_policy_set
from ..state import feature_length
from .curve import LearningCurve, write_curve_csv
from .training import TrainingResult
from .variants import TRANSFERRED_AGENTS, PolicySet

logger = logging.getLogger(__name__)

CURVE_FILE = "curve.csv"
METRICS_FILE = "metrics.json"
CONFIG_FILE = "experiment.json"
SUMMARY_FILE = "summary.json"
POLICY_DIR = "policies"


def run_dir_name(run_index: int) -> str:
    return f"run-{run_index:02d}"


def _write_json(data: Any, path: Path) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as e:
        raise DataFileError(f"Cannot write {path.name}: {e}", path=str(path)) from e
    return path


def write_training_outputs(result: TrainingResult, out_dir: str | Path) -> dict[str, Path]:
    """Write the curve CSV, per-run metrics, policies and the resolved configuration."""
    base = Path(out_dir)
    spec = result.spec
    paths = {"curve": write_curve_csv(result.curve, base / CURVE_FILE)}
    paths["metrics"] = _write_json({
        "variant": spec.variant.value,
        "curve": [p.to_dict() for p in result.curve.points],
        "runs": [
            {
                "run": run.run_index,
                "mean_training_reward": run.mean_training_reward,
                "checkpoints": [c.to_dict() for c in run.checkpoints],
            }
            for run in result.runs
        ],
    }, base / METRICS_FILE)
    paths["config"] = _write_json({
        "dimdial_version": __version__,
        "variant": spec.variant.value,
        "frozen_agents": sorted(a.value for a in spec.frozen_agents),
        "source_policy_sets": len(spec.source_policies),
        **spec.config.to_dict(),
    }, base / CONFIG_FILE)
    for run in result.runs:
        write_policy_set(run.policies, base / POLICY_DIR / run_dir_name(run.run_index))
    paths["policies"] = base / POLICY_DIR
    logger.info("Wrote %s results to %s", spec.variant.value, base)
    return paths


def _policy_root(path: str | Path) -> Path:
    base = Path(path)
    if (base / POLICY_DIR).is_dir():
        base = base / POLICY_DIR
    if not base.is_dir():
        raise DataFileError("Policy directory not found", path=str(base))
    return base


def detect_agents(path: str | Path) -> tuple[Agent, ...]:
    """Agents of the policies stored under ``path``: OneDim or the three multi-dim agents."""
    base = _policy_root(path)
    first_run = next(iter(sorted(base.glob("run-*"))), base)
    if (base / policy_filename(Agent.ONE_DIM)).exists() or (
        first_run / policy_filename(Agent.ONE_DIM)
    ).exists():
        return (Agent.ONE_DIM,)
    return MULTI_DIM_AGENTS


def load_policy_sets(
    path: str | Path,
    ontology: Ontology,
    agents: tuple[Agent, ...] | None = None,
) -> list[PolicySet]:
    """Read policy sets saved by a training run.

    ``path`` is a directory of agent files (one set), a training output
    directory, or its ``policies`` directory holding one ``run-NN`` set per
    run. Without ``agents`` the stored agents are detected.
    """
    base = _policy_root(path)
    agents = agents or detect_agents(base)
    lengths = {agent: feature_length(agent, ontology) for agent in agents}
    if all((base / policy_filename(agent)).exists() for agent in agents):
        return [read_policy_set(base, agents, lengths)]
    run_dirs = sorted(p for p in base.iterdir() if p.is_dir() and p.name.startswith("run-"))
    if not run_dirs:
        raise ConfigurationError(
            f"No policies for {', '.join(a.value for a in agents)} in {base}"
        )
    return [read_policy_set(d, agents, lengths) for d in run_dirs]


def load_source_policies(path: str | Path, ontology: Ontology) -> list[PolicySet]:
    """AutoFeedback and SocialOblMan policies for a transfer run."""
    return load_policy_sets(path, ontology, TRANSFERRED_AGENTS)


def _point_summary(curve: LearningCurve, early: bool) -> dict[str, Any]:
    point = curve.early if early else curve.final
    return {
        "dialogues": point.dialogues,
        "mean_reward": point.mean_reward,
        "stderr_reward": point.stderr_reward,
        "mean_success": point.mean_success,
        "mean_length": point.mean_length,
        "mean_discounted_return": point.mean_discounted_return,
    }


def summarize(results: dict[str, TrainingResult]) -> dict[str, Any]:
    """Early and final metrics per variant."""
    return {
        "dimdial_version": __version__,
        "variants": {
            name: {
                "runs": len(result.runs),
                "early": _point_summary(result.curve, early=True),
                "final": _point_summary(result.curve, early=False),
            }
            for name, result in results.items()
        },
    }


def write_summary(results: dict[str, TrainingResult], out_dir: str | Path) -> Path:
    return _write_json(summarize(results), Path(out_dir) / SUMMARY_FILE)
