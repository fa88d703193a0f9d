"""End-to-end training and evaluation in the simulator."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np
import pytest

from dimdial.acts import MULTI_DIM_AGENTS, ONE_DIM_ACTIONS, Agent
from dimdial.config import ExperimentConfig, TrainingConfig
from dimdial.exceptions import ConfigurationError
from dimdial.experiment import (
    ExperimentSpec,
    Variant,
    evaluate,
    evaluate_oracle,
    read_curve_csv,
    read_records,
    reproduce,
    run_episode,
    train,
    transferable_policies,
    write_training_outputs,
)
from dimdial.experiment.training import dialogue_log_name
from dimdial.manager import DialogueManager, multi_dim_variant
from dimdial.policy import LinearQPolicy
from dimdial.simulation import AgendaUser
from dimdial.state import feature_length, feature_names
from dimdial.utils.rng import EVAL_STREAM, derive_rng


def small_config(**training: object) -> ExperimentConfig:
    settings = {
        "runs": 2,
        "total_training_dialogues": 40,
        "eval_dialogues_per_point": 10,
        "checkpoint_interval": 20,
        **training,
    }
    return ExperimentConfig(training=TrainingConfig(**settings))


def weights(policies) -> dict[Agent, np.ndarray]:
    return {agent: policy.weights.copy() for agent, policy in policies.items()}


@pytest.fixture(scope="module")
def multi_dim_result(database):
    return train(ExperimentSpec(Variant.MULTI_DIM, small_config()), database=database)


class TestTrain:
    """Tests for the training loop."""

    def test_curve_checkpoints(self, multi_dim_result):
        assert multi_dim_result.curve.checkpoints == [0, 20, 40]
        assert len(multi_dim_result.runs) == 2

    def test_untrained_checkpoint(self, multi_dim_result):
        """Zero policies only ever ask the user to repeat and hit the cutoff."""
        start = multi_dim_result.curve.at(0)
        assert start.mean_reward == -30.0
        assert start.mean_success == 0.0
        assert start.mean_length == 30.0
        assert start.std_reward == 0.0

    def test_reproducible(self, database, multi_dim_result):
        again = train(ExperimentSpec(Variant.MULTI_DIM, small_config()), database=database)
        assert again.curve == multi_dim_result.curve
        for first, second in zip(multi_dim_result.runs, again.runs):
            for agent in MULTI_DIM_AGENTS:
                np.testing.assert_array_equal(first.policies[agent].weights,
                                              second.policies[agent].weights)

    def test_runs_differ(self, multi_dim_result):
        first, second = multi_dim_result.runs
        assert not np.array_equal(first.policies[Agent.TASK].weights,
                                  second.policies[Agent.TASK].weights)

    @pytest.mark.slow
    def test_workers_match_serial(self, database):
        spec = ExperimentSpec(Variant.ONE_DIM, small_config())
        serial = train(spec, workers=1, database=database)
        parallel = train(spec, workers=2, database=database)
        assert parallel.curve == serial.curve
        for a, b in zip(serial.runs, parallel.runs):
            np.testing.assert_array_equal(a.policies[Agent.ONE_DIM].weights,
                                          b.policies[Agent.ONE_DIM].weights)

    def test_invalid_spec(self, database):
        with pytest.raises(ConfigurationError, match="source policies"):
            train(ExperimentSpec(Variant.TRANSFER, small_config()), database=database)

    def test_dialogue_logs(self, database, tmp_path: Path):
        config = small_config(runs=1, total_training_dialogues=3, checkpoint_interval=3,
                              eval_dialogues_per_point=2)
        config = ExperimentConfig(training=config.training, log_dialogues=True)
        train(ExperimentSpec(Variant.ONE_DIM, config), database=database, log_dir=tmp_path)

        records = read_records(tmp_path / dialogue_log_name(0))
        events = [r["event"] for r in records]
        assert events.count("goal") == 3
        assert events.count("outcome") == 3
        turns = [r for r in records if r["event"] == "turn"]
        assert turns
        assert {"user_act", "nbest", "state", "reward", "output"} <= set(turns[0])


class TestTransfer:
    """Tests for transferring domain-independent policies."""

    def test_frozen_policies_unchanged(self, database, multi_dim_result):
        sources = transferable_policies(multi_dim_result)
        before = [weights(s) for s in sources]
        result = train(ExperimentSpec(Variant.TRANSFER, small_config(), sources),
                       database=database)
        for run, source in zip(result.runs, before):
            for agent in (Agent.AUTO_FEEDBACK, Agent.SOCIAL_OBL_MAN):
                np.testing.assert_array_equal(run.policies[agent].weights, source[agent])
        assert all(np.any(run.policies[Agent.TASK].weights != 0) for run in result.runs)

    def test_adapted_policies_move(self, database, multi_dim_result):
        sources = transferable_policies(multi_dim_result)
        before = [weights(s) for s in sources]
        result = train(ExperimentSpec(Variant.TRANSFER_ADAPT, small_config(), sources),
                       database=database)
        assert any(
            not np.array_equal(run.policies[Agent.AUTO_FEEDBACK].weights,
                               source[Agent.AUTO_FEEDBACK])
            for run, source in zip(result.runs, before)
        )
        # the source result itself is never modified
        for run, source in zip(multi_dim_result.runs, before):
            np.testing.assert_array_equal(run.policies[Agent.AUTO_FEEDBACK].weights,
                                          source[Agent.AUTO_FEEDBACK])

    def test_task_policy_starts_at_zero(self, database, multi_dim_result):
        sources = transferable_policies(multi_dim_result)
        spec = ExperimentSpec(Variant.TRANSFER, small_config(), sources)
        variant = spec.build_variant(0, database.ontology)
        assert not np.any(variant.task.weights)
        assert variant.frozen == frozenset({Agent.AUTO_FEEDBACK, Agent.SOCIAL_OBL_MAN})

    def test_outputs_record_frozen_agents(self, database, multi_dim_result, tmp_path: Path):
        sources = transferable_policies(multi_dim_result)
        result = train(ExperimentSpec(Variant.TRANSFER, small_config(), sources),
                       database=database)
        paths = write_training_outputs(result, tmp_path)
        config = json.loads(paths["config"].read_text())
        assert config["frozen_agents"] == ["AutoFeedback", "SocialOblMan"]
        assert config["variant"] == "multi-dim-transfer"
        rows = read_curve_csv(paths["curve"])
        assert [row["dialogues"] for row in rows] == [0.0, 20.0, 40.0]
        assert (tmp_path / "policies" / "run-01" / "Task.json").exists()


class TestEvaluate:
    """Tests for greedy evaluation."""

    def test_deterministic(self, database, multi_dim_result):
        policies = multi_dim_result.runs[0].policies
        first = evaluate(policies, 20, seed=5, database=database)
        second = evaluate(policies, 20, seed=5, database=database)
        assert first == second

    def test_evaluation_leaves_policies_alone(self, database, multi_dim_result):
        policies = multi_dim_result.runs[0].policies
        before = weights(policies)
        evaluate(policies, 10, database=database)
        for agent, w in before.items():
            np.testing.assert_array_equal(policies[agent].weights, w)

    def test_zero_policies(self, database):
        policies = {
            agent: LinearQPolicy.zeros(agent, feature_length(agent, database.ontology))
            for agent in MULTI_DIM_AGENTS
        }
        metrics = evaluate(policies, 10, database=database)
        assert (metrics.mean_reward, metrics.success_rate, metrics.mean_length) == (-30.0, 0.0, 30.0)
        assert metrics.stderr_reward == 0.0

    def test_goodbye_at_every_turn_hits_cutoff(self, database):
        names = feature_names(Agent.ONE_DIM, database.ontology)
        policy = LinearQPolicy.zeros(Agent.ONE_DIM, len(names))
        goodbye = next(a.index for a in ONE_DIM_ACTIONS if a.label == "returnGoodbye")
        policy.weights[goodbye, names.index("task.bias")] = 1.0
        metrics = evaluate({Agent.ONE_DIM: policy}, 10, database=database)
        assert (metrics.mean_reward, metrics.success_rate, metrics.mean_length) == (-30.0, 0.0, 30.0)

    @pytest.mark.parametrize("error_rate", [0.0, 0.2, 0.5])
    def test_oracle_always_succeeds(self, database, error_rate):
        metrics = evaluate_oracle(50, error_rate=error_rate, database=database)
        assert metrics.success_rate == 1.0
        assert metrics.mean_reward == pytest.approx(30.0 - metrics.mean_length)

        goals = [AgendaUser.start(database, derive_rng(0, EVAL_STREAM, i)).goal for i in range(50)]
        expected = np.mean([len(g.informed_constraints) + len(g.requests) + 2 for g in goals])
        assert metrics.mean_length == pytest.approx(expected, abs=1.0)


class TestEpisode:
    """Tests for single dialogues."""

    @pytest.mark.parametrize("epsilon", [0.0, 0.4, 1.0])
    def test_total_reward_identity(self, database, epsilon):
        config = ExperimentConfig()
        manager = DialogueManager(multi_dim_variant(database.ontology), database.ontology,
                                  database)
        for i in range(20):
            rng = derive_rng(11, 0, i)
            user = AgendaUser.start(database, rng)
            outcome = run_episode(manager, user, config.error_config(), epsilon, rng)
            assert outcome.total_reward == -outcome.length + 30 * outcome.success
            assert 1 <= outcome.length <= 30
            assert len(outcome.trace) == outcome.length


@pytest.mark.slow
class TestReproduce:
    """Tests for the four-variant comparison."""

    def test_writes_summary(self, database, tmp_path: Path):
        results = reproduce(small_config(), tmp_path, database=database)
        assert set(results) == {v.value for v in Variant}
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert set(summary["variants"]) == set(results)
        assert summary["variants"]["one-dim"]["early"]["dialogues"] == 20
        for variant in Variant:
            assert (tmp_path / variant.value / "curve.csv").exists()
