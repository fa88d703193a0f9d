"""Tests for linear Q policies, Monte Carlo updates and policy files."""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from dimdial.acts import Agent
from dimdial.exceptions import (
    DataFileError,
    InvariantViolationError,
    PolicyCompatibilityError,
    ValidationError,
)
from dimdial.policy import (
    EpisodeTrace,
    LinearQPolicy,
    TraceStep,
    compute_returns,
    load_policy,
    mc_update,
    read_policy,
    read_policy_set,
    save_policy,
    select_action,
    write_policy,
    write_policy_set,
)
from dimdial.state import FeatureVector


def fv(agent: Agent, values) -> FeatureVector:
    values = np.asarray(values, dtype=np.float64)
    return FeatureVector(agent, tuple(f"f{i}" for i in range(len(values))), values)


def trace_of(agent: Agent, steps) -> EpisodeTrace:
    """Trace from ``(features, action, reward)`` triples of one agent."""
    trace = EpisodeTrace()
    for values, action, reward in steps:
        trace.append(TraceStep({agent: fv(agent, values)}, {agent: action}, reward))
    return trace


class TestLinearQPolicy:
    """Tests for the linear action-value function."""

    def test_zeros_shape(self):
        policy = LinearQPolicy.zeros(Agent.TASK, 42)
        assert policy.weights.shape == (5, 42)
        assert policy.action_count == 5
        assert policy.feature_len == 42

    def test_rejects_wrong_action_count(self):
        with pytest.raises(InvariantViolationError):
            LinearQPolicy(Agent.SOCIAL_OBL_MAN, np.zeros((3, 3)))

    def test_rejects_flat_weights(self):
        with pytest.raises(InvariantViolationError):
            LinearQPolicy(Agent.SOCIAL_OBL_MAN, np.zeros(3))

    def test_q_values(self):
        policy = LinearQPolicy(Agent.AUTO_FEEDBACK, np.array([[1.0, 0.0], [0.0, 2.0], [1.0, 1.0]]))
        assert policy.q_values(np.array([1.0, 1.0])).tolist() == [1.0, 2.0, 2.0]
        assert policy.q_value(np.array([0.0, 1.0]), 1) == 2.0

    def test_q_value_bad_action(self):
        policy = LinearQPolicy.zeros(Agent.AUTO_FEEDBACK, 2)
        with pytest.raises(InvariantViolationError):
            policy.q_value(np.ones(2), 3)

    def test_feature_length_mismatch(self):
        policy = LinearQPolicy.zeros(Agent.AUTO_FEEDBACK, 2)
        with pytest.raises(InvariantViolationError):
            policy.q_values(np.ones(3))

    def test_greedy_tie_goes_to_lowest_index(self):
        policy = LinearQPolicy(Agent.AUTO_FEEDBACK, np.array([[1.0], [3.0], [3.0]]))
        assert policy.greedy(np.ones(1)) == 1
        assert LinearQPolicy.zeros(Agent.TASK, 4).greedy(np.ones(4)) == 0

    def test_copy_is_independent(self):
        policy = LinearQPolicy.zeros(Agent.TASK, 4)
        clone = policy.copy()
        clone.weights[0, 0] = 1.0
        assert policy.weights[0, 0] == 0.0


class TestSelectAction:
    """Tests for epsilon-greedy selection."""

    def test_greedy_at_zero_epsilon(self):
        policy = LinearQPolicy(Agent.AUTO_FEEDBACK, np.array([[1.0], [3.0], [2.0]]))
        rng = np.random.default_rng(0)
        assert all(select_action(policy, np.ones(1), 0.0, rng) == 1 for _ in range(100))

    def test_zero_epsilon_draws_nothing(self):
        policy = LinearQPolicy.zeros(Agent.TASK, 2)
        rng = np.random.default_rng(5)
        select_action(policy, np.ones(2), 0.0, rng)
        assert rng.random() == np.random.default_rng(5).random()

    def test_rejects_out_of_range_epsilon(self):
        policy = LinearQPolicy.zeros(Agent.TASK, 2)
        with pytest.raises(ValidationError):
            select_action(policy, np.ones(2), 1.5, np.random.default_rng(0))

    def test_uniform_at_full_exploration(self):
        policy = LinearQPolicy(Agent.TASK, np.eye(5, 1) * 10)
        rng = np.random.default_rng(0)
        counts = Counter(select_action(policy, np.ones(1), 1.0, rng) for _ in range(50000))
        for action in range(5):
            assert counts[action] / 50000 == pytest.approx(0.2, abs=0.01)


class TestComputeReturns:
    """Tests for discounted returns."""

    def test_known_values(self):
        assert compute_returns([-1, -1, 29], 0.95) == pytest.approx([24.2225, 26.55, 29.0])

    def test_matches_direct_sum(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            rewards = rng.normal(size=int(rng.integers(1, 30))).tolist()
            gamma = float(rng.uniform(0.5, 1.0))
            expected = [
                sum(gamma ** (k - t) * rewards[k] for k in range(t, len(rewards)))
                for t in range(len(rewards))
            ]
            assert compute_returns(rewards, gamma) == pytest.approx(expected)

    def test_empty_episode(self):
        with pytest.raises(ValidationError):
            compute_returns([], 0.95)


class TestMonteCarloUpdate:
    """Tests for the every-visit gradient step."""

    def test_single_step(self):
        policy = LinearQPolicy.zeros(Agent.AUTO_FEEDBACK, 3)
        mc_update(policy, trace_of(Agent.AUTO_FEEDBACK, [([0, 0, 1], 0, 10.0)]), 0.001, 0.95)
        assert policy.weights[0, 2] == pytest.approx(0.01)
        assert np.count_nonzero(policy.weights) == 1

    def test_sequential_updates_use_running_weights(self):
        policy = LinearQPolicy.zeros(Agent.AUTO_FEEDBACK, 1)
        trace = trace_of(Agent.AUTO_FEEDBACK, [([1], 0, 0.0), ([1], 0, 10.0)])
        mc_update(policy, trace, 0.5, 1.0)
        # both steps have return 10: 0 -> 5 -> 7.5
        assert policy.weights[0, 0] == pytest.approx(7.5)

    def test_gradient_of_squared_error(self):
        """The step is alpha times the negative gradient of 0.5 * (R - Q)^2."""
        rng = np.random.default_rng(11)
        h = 1e-5
        for _ in range(100):
            weights = rng.normal(size=(3, 6))
            phi = rng.normal(size=6)
            action = int(rng.integers(3))
            target = float(rng.normal(scale=10.0))

            def loss(theta: np.ndarray) -> float:
                return 0.5 * (target - float(theta @ phi)) ** 2

            numeric = np.array([
                (loss(weights[action] + h * e) - loss(weights[action] - h * e)) / (2 * h)
                for e in np.eye(6)
            ])
            policy = LinearQPolicy(Agent.AUTO_FEEDBACK, weights.copy())
            mc_update(policy, trace_of(Agent.AUTO_FEEDBACK, [(phi, action, target)]), 0.01, 0.95)
            step = policy.weights[action] - weights[action]
            np.testing.assert_allclose(step / 0.01, -numeric, rtol=1e-5, atol=1e-6)

    def test_missing_agent_features(self):
        policy = LinearQPolicy.zeros(Agent.TASK, 3)
        with pytest.raises(InvariantViolationError):
            mc_update(policy, trace_of(Agent.AUTO_FEEDBACK, [([1, 0, 0], 0, 1.0)]), 0.1, 0.95)

    def test_empty_trace(self):
        with pytest.raises(ValidationError):
            mc_update(LinearQPolicy.zeros(Agent.TASK, 3), EpisodeTrace(), 0.1, 0.95)


class TestEpisodeTrace:
    """Tests for the episode trace."""

    def test_returns(self):
        trace = trace_of(Agent.TASK, [([1], 0, -1.0), ([1], 0, -1.0), ([1], 0, -1.0)])
        trace.add_reward(30.0)
        assert trace.rewards == [-1.0, -1.0, 29.0]
        assert trace.total_return == 27.0
        assert trace.discounted_return(0.95) == pytest.approx(24.2225)
        assert len(trace) == 3


class TestPolicyPersistence:
    """Tests for policy records and files."""

    def test_round_trip_is_bitwise(self):
        rng = np.random.default_rng(1)
        policy = LinearQPolicy(Agent.TASK, rng.normal(size=(5, 42)))
        loaded = load_policy(json.loads(json.dumps(save_policy(policy))), Agent.TASK, 42)
        assert loaded.weights.tobytes() == policy.weights.tobytes()
        assert loaded.agent is Agent.TASK

    def test_record_fields(self):
        record = save_policy(LinearQPolicy.zeros(Agent.SOCIAL_OBL_MAN, 3))
        assert record["agent"] == "SocialOblMan"
        assert record["actions"] == ["returnGoodbye", "null"]
        assert record["feature_schema"] == "features-v1"

    def test_rejects_other_agent(self):
        record = save_policy(LinearQPolicy.zeros(Agent.TASK, 42))
        with pytest.raises(PolicyCompatibilityError) as exc:
            load_policy(record, Agent.AUTO_FEEDBACK)
        assert exc.value.expected == "AutoFeedback"
        assert exc.value.found == "Task"

    def test_rejects_feature_length(self):
        record = save_policy(LinearQPolicy.zeros(Agent.TASK, 42))
        with pytest.raises(PolicyCompatibilityError):
            load_policy(record, Agent.TASK, 41)

    def test_rejects_schema(self):
        record = save_policy(LinearQPolicy.zeros(Agent.TASK, 42))
        record["feature_schema"] = "features-v0"
        with pytest.raises(PolicyCompatibilityError, match="schema"):
            load_policy(record)

    def test_rejects_version(self):
        record = save_policy(LinearQPolicy.zeros(Agent.TASK, 42))
        record["version"] = 99
        with pytest.raises(PolicyCompatibilityError):
            load_policy(record)

    def test_rejects_truncated_weights(self):
        record = save_policy(LinearQPolicy.zeros(Agent.TASK, 42))
        record["weights"] = record["weights"][:4]
        with pytest.raises(PolicyCompatibilityError):
            load_policy(record)

    def test_files(self, tmp_path: Path):
        policy = LinearQPolicy(Agent.AUTO_FEEDBACK, np.arange(30.0).reshape(3, 10))
        path = write_policy(policy, tmp_path / "AutoFeedback.json")
        assert read_policy(path, Agent.AUTO_FEEDBACK, 10).weights.tolist() == policy.weights.tolist()

    def test_incompatible_file_names_path(self, tmp_path: Path):
        path = write_policy(LinearQPolicy.zeros(Agent.TASK, 42), tmp_path / "Task.json")
        with pytest.raises(PolicyCompatibilityError) as exc:
            read_policy(path, Agent.SOCIAL_OBL_MAN)
        assert exc.value.context["path"] == str(path)

    def test_missing_file(self, tmp_path: Path):
        with pytest.raises(DataFileError):
            read_policy(tmp_path / "Task.json")

    def test_policy_set(self, tmp_path: Path):
        policies = {
            Agent.AUTO_FEEDBACK: LinearQPolicy.zeros(Agent.AUTO_FEEDBACK, 10),
            Agent.SOCIAL_OBL_MAN: LinearQPolicy.zeros(Agent.SOCIAL_OBL_MAN, 3),
        }
        paths = write_policy_set(policies, tmp_path)
        assert sorted(p.name for p in paths) == ["AutoFeedback.json", "SocialOblMan.json"]
        loaded = read_policy_set(tmp_path, tuple(policies))
        assert set(loaded) == set(policies)

    def test_policy_set_missing_directory(self, tmp_path: Path):
        with pytest.raises(DataFileError):
            read_policy_set(tmp_path / "nope", (Agent.TASK,))
