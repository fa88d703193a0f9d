"""Monte Carlo training runs with periodic greedy evaluation."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from pathlib import Path

from ..acts import Agent
from ..manager import DialogueManager
from ..ontology import Database, generate_database
from ..policy import LinearQPolicy
from ..simulation import AgendaUser
from ..utils.rng import TRAIN_STREAM, derive_rng, run_seed
from .curve import Checkpoint, LearningCurve
from .episode import run_episode
from .evaluation import evaluate
from .records import DialogueRecorder
from .variants import TRANSFERRED_AGENTS, ExperimentSpec, PolicySet, Variant

logger = logging.getLogger(__name__)


@dataclass
class RunResult:
    """One independent training run."""

    run_index: int
    checkpoints: list[Checkpoint]
    policies: dict[Agent, LinearQPolicy]
    mean_training_reward: float


@dataclass
class TrainingResult:
    spec: ExperimentSpec
    runs: list[RunResult]
    curve: LearningCurve

    def policy_sets(self) -> list[dict[Agent, LinearQPolicy]]:
        return [run.policies for run in self.runs]


def dialogue_log_name(run_index: int) -> str:
    return f"dialogues-run{run_index:02d}.jsonl"


def train_run(
    spec: ExperimentSpec,
    run_index: int,
    database: Database,
    log_dir: Path | None = None,
) -> RunResult:
    """Train one run from scratch (or from its source policies).

    Episode ``n`` draws from ``(seed + run_index, TRAIN_STREAM, n)`` and
    evaluation from ``(seed + run_index, EVAL_STREAM, i)``, so a run's
    result does not depend on which process executes it.
    """
    training = spec.training
    config = spec.config
    seed = run_seed(training.seed, run_index)
    manager = DialogueManager(spec.build_variant(run_index, database.ontology),
                              database.ontology, database, config.manager)
    errors = config.error_config()
    schedule = set(training.checkpoints())

    def checkpoint(dialogues: int) -> Checkpoint:
        metrics = evaluate(manager.snapshot(), training.eval_dialogues_per_point,
                           seed=seed, config=config, database=database)
        logger.info(
            "%s run %d: %d dialogues, reward %.2f, success %.3f, length %.2f",
            spec.variant.value, run_index, dialogues,
            metrics.mean_reward, metrics.success_rate, metrics.mean_length,
            extra={
                "variant": spec.variant.value,
                "run": run_index,
                "dialogues": dialogues,
                "reward": metrics.mean_reward,
                "success": metrics.success_rate,
                "length": metrics.mean_length,
            },
        )
        return Checkpoint(dialogues, metrics)

    recorder = DialogueRecorder(log_dir / dialogue_log_name(run_index)) if log_dir else None
    checkpoints = [checkpoint(0)]
    total_reward = 0.0
    try:
        for n in range(training.total_training_dialogues):
            rng = derive_rng(seed, TRAIN_STREAM, n)
            user = AgendaUser.start(database, rng)
            outcome = run_episode(manager, user, errors, training.epsilon_at(n), rng,
                                  training.max_system_turns, training.gamma, recorder, n)
            manager.learn(outcome.trace, training.alpha, training.gamma)
            total_reward += outcome.total_reward
            if n + 1 in schedule:
                checkpoints.append(checkpoint(n + 1))
    finally:
        if recorder is not None:
            recorder.close()

    dialogues = training.total_training_dialogues
    mean_reward = total_reward / dialogues if dialogues else 0.0
    return RunResult(run_index, checkpoints, manager.snapshot(), mean_reward)


def train(
    spec: ExperimentSpec,
    workers: int | None = None,
    database: Database | None = None,
    log_dir: Path | None = None,
) -> TrainingResult:
    """Run every training run of ``spec`` and aggregate the learning curve.

    Runs are independent; with ``workers > 1`` they execute in a process
    pool and produce the same results as serial execution.
    """
    spec.require_valid()
    database = database or generate_database(spec.config.database_seed)
    workers = workers or spec.config.workers
    indices = range(spec.training.runs)
    if spec.config.log_dialogues and log_dir is None:
        logger.warning("Dialogue logging requested without an output directory; skipping")
    logger.info("Training %s: %d runs x %d dialogues (%d workers)", spec.variant.value,
                spec.training.runs, spec.training.total_training_dialogues, workers)

    log_to = log_dir if spec.config.log_dialogues else None
    job = partial(train_run, spec, database=database, log_dir=log_to)
    if workers > 1 and len(indices) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(indices))) as pool:
            runs = list(pool.map(job, indices))
    else:
        runs = [job(k) for k in indices]

    runs.sort(key=lambda r: r.run_index)
    curve = LearningCurve.aggregate([r.checkpoints for r in runs])
    return TrainingResult(spec, runs, curve)


def transferable_policies(result: TrainingResult) -> list[PolicySet]:
    """AutoFeedback and SocialOblMan policies of every run, for transfer."""
    return [
        {agent: run.policies[agent] for agent in TRANSFERRED_AGENTS}
        for run in result.runs
    ]


def train_sources(spec: ExperimentSpec, workers: int | None = None,
                  database: Database | None = None) -> TrainingResult:
    """Train the multi-dim run whose domain-independent policies seed a transfer."""
    source_spec = ExperimentSpec(Variant.MULTI_DIM, spec.config)
    logger.info("No source policies given; training a multi-dim source first")
    return train(source_spec, workers, database)
