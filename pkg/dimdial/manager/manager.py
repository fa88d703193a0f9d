"""The dialogue manager: state monitoring wired to one or three MDP agents."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any, Protocol

import numpy as np

from ..acts import (
    ACTION_SETS,
    Agent,
    DialogueAct,
    SummaryAction,
    SystemAction,
    combine_candidate_acts,
)
from ..config import ManagerConfig
from ..exceptions import InvariantViolationError
from ..ontology import Database, Ontology
from ..policy import EpisodeTrace, LinearQPolicy, mc_update, select_action
from ..state import (
    DialogueState,
    FeatureVector,
    NBestList,
    denied_pairs,
    extract_features,
    feature_length,
    halve_belief,
    update_beliefs,
    update_grounding,
)
from .mapping import map_summary_to_act
from .variants import ManagerVariant, MultiDimVariant

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AgentChoice:
    """What one agent saw and picked in one turn."""

    agent: Agent
    features: FeatureVector
    action: SummaryAction
    q_values: tuple[float, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "agent": self.agent.value,
            "action": self.action.label,
            "q_values": [round(q, 6) for q in self.q_values],
            "active_features": self.features.active(),
        }


@dataclass(frozen=True)
class SystemTurnRecord:
    """Per-agent choices of one system turn and the combined output."""

    choices: tuple[AgentChoice, ...]
    output: SystemAction | None
    act: DialogueAct | None

    @property
    def features(self) -> dict[Agent, FeatureVector]:
        return {c.agent: c.features for c in self.choices}

    @property
    def actions(self) -> dict[Agent, int]:
        return {c.agent: c.action.index for c in self.choices}

    def to_dict(self) -> dict[str, Any]:
        return {
            "choices": [c.to_dict() for c in self.choices],
            "output": None if self.output is None else self.output.name.lower(),
            "system_act": None if self.act is None else self.act.to_notation(),
        }


def track_user_turn(state: DialogueState, nbest: NBestList) -> DialogueState:
    """Belief, grounding and database bookkeeping for one user turn."""
    top = nbest.top.act
    state.beliefs = update_beliefs(state.beliefs, nbest)
    for slot, value in denied_pairs(top, state.last_system_act):
        state.beliefs = halve_belief(state.beliefs, slot, value)
    state.grounding = update_grounding(state.grounding, top, state.last_system_act)
    state.record_user_act(top)
    state.last_top_confidence = nbest.top.confidence
    state.refresh_matches()
    return state


class Manager(Protocol):
    """What the episode loop needs from a manager."""

    state: DialogueState
    closing: bool

    def reset(self) -> DialogueState: ...

    def observe(self, nbest: NBestList) -> DialogueState: ...

    def respond(
        self, epsilon: float, rng: np.random.Generator
    ) -> tuple[SystemTurnRecord, DialogueAct | None]: ...


class DialogueManager:
    """Tracks one dialogue at a time and picks system acts with its policies."""

    def __init__(
        self,
        variant: ManagerVariant,
        ontology: Ontology,
        database: Database,
        config: ManagerConfig | None = None,
    ) -> None:
        self.variant = variant
        self.ontology = ontology
        self.database = database
        self.config = config or ManagerConfig()
        for agent, policy in variant.policies.items():
            expected = feature_length(agent, ontology)
            if policy.feature_len != expected:
                raise InvariantViolationError(
                    f"{agent.value} policy has the wrong feature length",
                    context={"expected": expected, "found": policy.feature_len},
                )
        self.closing = False
        self.state = self.reset()

    @property
    def policies(self) -> dict[Agent, LinearQPolicy]:
        return self.variant.policies

    @property
    def agents(self) -> tuple[Agent, ...]:
        return tuple(self.variant.policies)

    @property
    def is_multi_dim(self) -> bool:
        return isinstance(self.variant, MultiDimVariant)

    def reset(self) -> DialogueState:
        """Start a new dialogue."""
        self.closing = False
        self.state = DialogueState.initial(
            self.ontology,
            self.database,
            belief_threshold=self.config.belief_threshold,
            request_threshold=self.config.request_threshold,
        )
        return self.state

    def observe(self, nbest: NBestList) -> DialogueState:
        """Fold one n-best list of user act hypotheses into the state."""
        return track_user_turn(self.state, nbest)

    def _choose(self, agent: Agent, epsilon: float, rng: np.random.Generator) -> AgentChoice:
        policy = self.policies[agent]
        features = extract_features(self.state, agent)
        if agent in self.variant.frozen:
            epsilon = 0.0
        index = select_action(policy, features, epsilon, rng)
        q_values = tuple(float(q) for q in policy.q_values(features))
        return AgentChoice(agent, features, ACTION_SETS[agent][index], q_values)

    def respond(
        self, epsilon: float, rng: np.random.Generator
    ) -> tuple[SystemTurnRecord, DialogueAct | None]:
        """Select and instantiate the system's next act.

        Multi-dim agents choose independently with a shared epsilon and the
        triple is resolved by the combination rules. Frozen agents act
        greedily. A None act means the system passes its turn.
        """
        choices = tuple(self._choose(agent, epsilon, rng) for agent in self.agents)
        if self.is_multi_dim:
            task, feedback, social = (c.action for c in choices)
            output = combine_candidate_acts(task, feedback, social)
        else:
            output = choices[0].action.output

        act = None if output is None else map_summary_to_act(output, self.state)
        self.state.record_system_act(act)
        if output is SystemAction.RETURN_GOODBYE:
            self.closing = True
        return SystemTurnRecord(choices, output, act), act

    def learn(self, trace: EpisodeTrace, alpha: float, gamma: float) -> None:
        """Monte Carlo update of every agent that is not frozen."""
        for agent, policy in self.policies.items():
            if agent not in self.variant.frozen:
                mc_update(policy, trace, alpha, gamma)

    def snapshot(self) -> dict[Agent, LinearQPolicy]:
        """Copies of the current policies."""
        return {agent: policy.copy() for agent, policy in self.policies.items()}
