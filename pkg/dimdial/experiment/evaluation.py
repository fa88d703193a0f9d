"""Greedy evaluation of trained policies in the simulator."""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass, replace
from typing import Any

import numpy as np

from ..acts import Agent
from ..config import ExperimentConfig
from ..manager import DialogueManager, ManagerVariant, OracleManager, multi_dim_variant, one_dim_variant
from ..ontology import Database, generate_database
from ..policy import LinearQPolicy
from ..simulation import AgendaUser
from ..utils.rng import EVAL_STREAM, derive_rng
from .episode import EpisodeOutcome, run_episode

DEFAULT_EVAL_DIALOGUES = 3000


@dataclass(frozen=True)
class EvaluationMetrics:
    """Averages over a block of evaluation dialogues, with standard errors."""

    dialogues: int
    mean_reward: float
    stderr_reward: float
    success_rate: float
    stderr_success: float
    mean_length: float
    stderr_length: float
    mean_discounted_return: float

    @classmethod
    def from_outcomes(cls, outcomes: Sequence[EpisodeOutcome]) -> EvaluationMetrics:
        rewards = np.array([o.total_reward for o in outcomes], dtype=np.float64)
        successes = np.array([float(o.success) for o in outcomes])
        lengths = np.array([float(o.length) for o in outcomes])
        returns = np.array([o.discounted_return for o in outcomes])
        return cls(
            dialogues=len(outcomes),
            mean_reward=float(rewards.mean()),
            stderr_reward=standard_error(rewards),
            success_rate=float(successes.mean()),
            stderr_success=standard_error(successes),
            mean_length=float(lengths.mean()),
            stderr_length=standard_error(lengths),
            mean_discounted_return=float(returns.mean()),
        )

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def standard_error(values: np.ndarray) -> float:
    if len(values) < 2:
        return 0.0
    return float(np.std(values, ddof=1) / math.sqrt(len(values)))


def greedy_variant(policies: Mapping[Agent, LinearQPolicy], database: Database) -> ManagerVariant:
    """Frozen copies of ``policies`` as a manager variant."""
    ontology = database.ontology
    if Agent.ONE_DIM in policies:
        return one_dim_variant(ontology, policies[Agent.ONE_DIM], frozen=True)
    return multi_dim_variant(ontology, policies, frozen=policies.keys())


def _prepare(config: ExperimentConfig | None, error_rate: float | None,
             database: Database | None) -> tuple[ExperimentConfig, Database]:
    config = config or ExperimentConfig()
    if error_rate is not None:
        config = replace(config, training=replace(config.training, error_rate=error_rate))
    return config, database or generate_database(config.database_seed)


def evaluate(
    policies: Mapping[Agent, LinearQPolicy],
    n_dialogues: int = DEFAULT_EVAL_DIALOGUES,
    error_rate: float | None = None,
    seed: int = 0,
    config: ExperimentConfig | None = None,
    database: Database | None = None,
) -> EvaluationMetrics:
    """Roll out ``policies`` greedily over ``n_dialogues`` simulated dialogues.

    Dialogue ``i`` draws from the stream ``(seed, EVAL_STREAM, i)``; with no
    exploration the policies consume nothing from it, so different policies
    meet the same users and noise.
    """
    config, database = _prepare(config, error_rate, database)
    manager = DialogueManager(greedy_variant(policies, database), database.ontology,
                              database, config.manager)
    errors = config.error_config()
    outcomes = []
    for i in range(n_dialogues):
        rng = derive_rng(seed, EVAL_STREAM, i)
        user = AgendaUser.start(database, rng)
        outcomes.append(run_episode(manager, user, errors, 0.0, rng,
                                    config.training.max_system_turns, config.training.gamma))
    return EvaluationMetrics.from_outcomes(outcomes)


def evaluate_oracle(
    n_dialogues: int = DEFAULT_EVAL_DIALOGUES,
    error_rate: float | None = None,
    seed: int = 0,
    config: ExperimentConfig | None = None,
    database: Database | None = None,
) -> EvaluationMetrics:
    """Scores of the goal-reading scripted manager on the same dialogues as ``evaluate``."""
    config, database = _prepare(config, error_rate, database)
    errors = config.error_config()
    outcomes = []
    for i in range(n_dialogues):
        rng = derive_rng(seed, EVAL_STREAM, i)
        user = AgendaUser.start(database, rng)
        oracle = OracleManager(database.ontology, database, user, config.manager)
        outcomes.append(run_episode(oracle, user, errors, 0.0, rng,
                                    config.training.max_system_turns, config.training.gamma))
    return EvaluationMetrics.from_outcomes(outcomes)
