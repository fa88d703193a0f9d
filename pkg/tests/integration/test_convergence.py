"""Learning outcomes of the full training schedule.

Every variant trains 10 paired runs of 40,000 dialogues, evaluated every
5,000 dialogues. This takes a long time; run with ``-m slow``.
"""

from __future__ import annotations

import math
import os

import numpy as np
import pytest

from dimdial.config import ExperimentConfig, TrainingConfig
from dimdial.experiment import Variant, evaluate, reproduce

pytestmark = pytest.mark.slow

EARLY = 5000
MIDWAY = 25000


@pytest.fixture(scope="module")
def results(database):
    config = ExperimentConfig(
        training=TrainingConfig(eval_dialogues_per_point=1000),
        workers=os.cpu_count() or 1,
    )
    return reproduce(config, database=database)


def rewards_at(result, dialogues: int) -> np.ndarray:
    """Per-run mean evaluation reward at one checkpoint."""
    return np.array([
        next(c.metrics.mean_reward for c in run.checkpoints if c.dialogues == dialogues)
        for run in result.runs
    ])


def paired_gap(better, worse, dialogues: int) -> tuple[float, float]:
    """Mean and standard error of the per-run reward difference."""
    gaps = rewards_at(better, dialogues) - rewards_at(worse, dialogues)
    return float(gaps.mean()), float(np.std(gaps, ddof=1) / math.sqrt(len(gaps)))


class TestConvergence:
    """Tests for the final policies."""

    def test_one_dim_converges(self, results):
        final = results[Variant.ONE_DIM.value].curve.final
        assert final.dialogues == 40000
        assert final.mean_success >= 0.90
        assert final.mean_reward >= 15.0
        assert 8.0 <= final.mean_length <= 14.0

    def test_multi_dim_matches_one_dim(self, results):
        one_dim = results[Variant.ONE_DIM.value].curve.final
        multi_dim = results[Variant.MULTI_DIM.value].curve
        assert abs(multi_dim.final.mean_reward - one_dim.mean_reward) <= 3.0
        assert multi_dim.at(MIDWAY).mean_reward >= 0.9 * multi_dim.final.mean_reward

    def test_noise_lowers_success(self, database, results):
        policies = results[Variant.ONE_DIM.value].runs[0].policies
        clean = evaluate(policies, 1000, error_rate=0.0, database=database)
        noisy = evaluate(policies, 1000, error_rate=0.2, database=database)
        assert clean.success_rate >= noisy.success_rate


class TestEarlyLearning:
    """Tests for the ordering of the variants after 5,000 dialogues."""

    def test_one_dim_ahead_of_multi_dim(self, results):
        gap, stderr = paired_gap(results[Variant.ONE_DIM.value],
                                 results[Variant.MULTI_DIM.value], EARLY)
        assert gap > stderr

    def test_transfer_ahead_of_multi_dim(self, results):
        gap, stderr = paired_gap(results[Variant.TRANSFER.value],
                                 results[Variant.MULTI_DIM.value], EARLY)
        assert gap > stderr
