"""Train all four variants on paired seeds and compare their curves."""

from __future__ import annotations

import logging
from pathlib import Path

from ..config import ExperimentConfig
from ..ontology import Database, generate_database
from .outputs import write_summary, write_training_outputs
from .training import TrainingResult, train, transferable_policies
from .variants import ExperimentSpec, Variant

logger = logging.getLogger(__name__)


def reproduce(
    config: ExperimentConfig,
    out_dir: str | Path | None = None,
    workers: int | None = None,
    database: Database | None = None,
) -> dict[str, TrainingResult]:
    """Train one-dim, multi-dim and both transfer settings.

    Transfer run ``k`` starts from the AutoFeedback and SocialOblMan
    policies of multi-dim run ``k``. Each variant's outputs go to
    ``out_dir/<variant>`` and the comparison to ``out_dir/summary.json``.
    """
    database = database or generate_database(config.database_seed)
    results: dict[str, TrainingResult] = {}

    def run(spec: ExperimentSpec) -> TrainingResult:
        log_dir = Path(out_dir) / spec.variant.value if out_dir else None
        result = train(spec, workers, database, log_dir)
        if out_dir:
            write_training_outputs(result, Path(out_dir) / spec.variant.value)
        results[spec.variant.value] = result
        return result

    run(ExperimentSpec(Variant.ONE_DIM, config))
    sources = transferable_policies(run(ExperimentSpec(Variant.MULTI_DIM, config)))
    run(ExperimentSpec(Variant.TRANSFER, config, sources))
    run(ExperimentSpec(Variant.TRANSFER_ADAPT, config, sources))

    if out_dir:
        write_summary(results, out_dir)
    for name, result in results.items():
        early, final = result.curve.early, result.curve.final
        logger.info("%s: reward %.2f at %d, %.2f at %d", name, early.mean_reward,
                    early.dialogues, final.mean_reward, final.dialogues)
    return results
