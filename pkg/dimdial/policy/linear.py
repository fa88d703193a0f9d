"""Linear action-value policies trained by every-visit Monte Carlo control."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from ..acts import ACTION_SETS, Agent
from ..exceptions import InvariantViolationError, ValidationError
from ..state import FEATURE_SCHEMA_VERSION, FeatureVector
from .trace import EpisodeTrace


def _as_array(features: FeatureVector | np.ndarray) -> np.ndarray:
    return features.values if isinstance(features, FeatureVector) else np.asarray(features, dtype=np.float64)


@dataclass
class LinearQPolicy:
    """One weight vector per action; ``Q(s, a) = theta_a . phi(s)``."""

    agent: Agent
    weights: np.ndarray
    schema_version: str = FEATURE_SCHEMA_VERSION

    def __post_init__(self) -> None:
        self.weights = np.asarray(self.weights, dtype=np.float64)
        if self.weights.ndim != 2:
            raise InvariantViolationError("Policy weights must be a 2-d array",
                                          context={"shape": self.weights.shape})
        expected = len(ACTION_SETS[self.agent])
        if self.weights.shape[0] != expected:
            raise InvariantViolationError(
                f"{self.agent.value} policy needs {expected} weight vectors",
                context={"found": self.weights.shape[0]},
            )

    @classmethod
    def zeros(cls, agent: Agent, feature_len: int) -> LinearQPolicy:
        return cls(agent, np.zeros((len(ACTION_SETS[agent]), feature_len)))

    @property
    def action_count(self) -> int:
        return int(self.weights.shape[0])

    @property
    def feature_len(self) -> int:
        return int(self.weights.shape[1])

    def _check(self, phi: np.ndarray) -> None:
        if phi.shape != (self.feature_len,):
            raise InvariantViolationError(
                "Feature length does not match policy",
                context={"expected": self.feature_len, "found": phi.shape[0] if phi.ndim else 0},
            )

    def q_values(self, features: FeatureVector | np.ndarray) -> np.ndarray:
        phi = _as_array(features)
        self._check(phi)
        return self.weights @ phi

    def q_value(self, features: FeatureVector | np.ndarray, action: int) -> float:
        if not 0 <= action < self.action_count:
            raise InvariantViolationError("Action index out of range",
                                          context={"action": action, "action_count": self.action_count})
        phi = _as_array(features)
        self._check(phi)
        return float(self.weights[action] @ phi)

    def greedy(self, features: FeatureVector | np.ndarray) -> int:
        """Argmax action; ties go to the lowest index."""
        return int(np.argmax(self.q_values(features)))

    def copy(self) -> LinearQPolicy:
        return LinearQPolicy(self.agent, self.weights.copy(), self.schema_version)


def select_action(
    policy: LinearQPolicy,
    features: FeatureVector | np.ndarray,
    epsilon: float,
    rng: np.random.Generator,
) -> int:
    """Epsilon-greedy selection.

    No random number is drawn when ``epsilon`` is 0, so greedy play consumes
    nothing from the stream.
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValidationError("epsilon must be in [0, 1]", field="epsilon", value=epsilon)
    if epsilon > 0.0 and rng.random() < epsilon:
        return int(rng.integers(policy.action_count))
    return policy.greedy(features)


def compute_returns(rewards: Sequence[float], gamma: float) -> list[float]:
    """Discounted returns ``R_t = r_t + gamma * R_{t+1}`` for every step."""
    if not rewards:
        raise ValidationError("Cannot compute returns of an empty episode", field="rewards")
    returns = [0.0] * len(rewards)
    running = 0.0
    for t in range(len(rewards) - 1, -1, -1):
        running = float(rewards[t]) + gamma * running
        returns[t] = running
    return returns


def mc_update(
    policy: LinearQPolicy,
    trace: EpisodeTrace,
    alpha: float,
    gamma: float,
) -> LinearQPolicy:
    """Every-visit Monte Carlo gradient step on each visited (state, action).

    ``theta_a += alpha * (R_t - Q(phi_t, a)) * phi_t``, applied in step order
    with the running weights. Updates ``policy`` in place and returns it.
    """
    if not trace.steps:
        raise ValidationError("Cannot learn from an empty trace", field="trace")
    returns = compute_returns(trace.rewards, gamma)
    for step, target in zip(trace.steps, returns):
        features = step.features.get(policy.agent)
        if features is None:
            raise InvariantViolationError(
                f"Trace holds no features for agent {policy.agent.value}",
            )
        action = step.actions[policy.agent]
        phi = features.values
        error = target - policy.q_value(phi, action)
        policy.weights[action] += alpha * error * phi
    return policy
