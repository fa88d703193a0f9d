"""Episode traces consumed by Monte Carlo control."""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

from ..acts import Agent
from ..state import FeatureVector


@dataclass(frozen=True)
class TraceStep:
    """One system turn: each agent's features and chosen action, and the reward."""

    features: Mapping[Agent, FeatureVector]
    actions: Mapping[Agent, int]
    reward: float


@dataclass
class EpisodeTrace:
    """Visited (features, action, reward) sequence of one dialogue."""

    steps: list[TraceStep] = field(default_factory=list)

    def append(self, step: TraceStep) -> None:
        self.steps.append(step)

    def add_reward(self, amount: float) -> None:
        """Add a terminal bonus to the last step."""
        last = self.steps[-1]
        self.steps[-1] = TraceStep(last.features, last.actions, last.reward + amount)

    @property
    def rewards(self) -> list[float]:
        return [step.reward for step in self.steps]

    @property
    def total_return(self) -> float:
        return float(sum(self.rewards))

    def discounted_return(self, gamma: float) -> float:
        total = 0.0
        for reward in reversed(self.rewards):
            total = reward + gamma * total
        return total

    def __len__(self) -> int:
        return len(self.steps)
