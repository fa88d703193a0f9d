"""Binary state features for each MDP agent.

Every feature is 0/1 and every one-hot group has exactly one active entry.
The one-dimensional agent sees the concatenation of the Task, AutoFeedback
and SocialOblMan features.

The belief bins follow the normalized top belief, which reserves at least
half of the mass for ``unknown``. The ``le0.8`` and ``le1.0`` bins
therefore never fire for the packaged belief tracker; they stay in the
vector so the feature layout and saved policies keep their shape.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..acts import Agent
from ..ontology import Ontology
from .belief import top_value
from .dialogue_state import DialogueState
from .grounding import GROUNDING_STATES, Grounding

FEATURE_SCHEMA_VERSION = "features-v1"

BELIEF_BINS = ("unknown", "le0.5", "le0.8", "le1.0")
MATCH_BINS = ("0", "1", "2-4", "5+")
CONFIDENCE_BINS = ("le0.3", "le0.5", "le0.8", "le1.0")
MAX_INFORMED_COUNT = 4


@dataclass(frozen=True)
class FeatureVector:
    """Feature values of one agent, in the agent's fixed feature order."""

    agent: Agent
    names: tuple[str, ...]
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.names)

    def as_dict(self) -> dict[str, float]:
        return {name: float(v) for name, v in zip(self.names, self.values)}

    def active(self) -> list[str]:
        return [name for name, v in zip(self.names, self.values) if v]


def _task_names(ontology: Ontology) -> list[str]:
    names = []
    for slot in ontology.informable_slots:
        names += [f"task.{slot}.belief.{b}" for b in BELIEF_BINS]
        names += [f"task.{slot}.grounding.{g.value}" for g in GROUNDING_STATES]
    names += [f"task.matches.{b}" for b in MATCH_BINS]
    names.append("task.recommended")
    names += [f"task.requested.{s}" for s in ontology.requestable_slots if s != "name"]
    names.append("task.bias")
    return names


def _feedback_names() -> list[str]:
    names = [f"feedback.confidence.{b}" for b in CONFIDENCE_BINS]
    names += [f"feedback.unconfirmed.{n}" for n in range(MAX_INFORMED_COUNT + 1)]
    names.append("feedback.bias")
    return names


def _social_names() -> list[str]:
    return ["social.user_bye", "social.task_complete", "social.bias"]


@lru_cache(maxsize=16)
def feature_names(agent: Agent, ontology: Ontology) -> tuple[str, ...]:
    """Fixed feature order of an agent."""
    if agent is Agent.TASK:
        return tuple(_task_names(ontology))
    if agent is Agent.AUTO_FEEDBACK:
        return tuple(_feedback_names())
    if agent is Agent.SOCIAL_OBL_MAN:
        return tuple(_social_names())
    return tuple(_task_names(ontology) + _feedback_names() + _social_names())


def feature_length(agent: Agent, ontology: Ontology) -> int:
    return len(feature_names(agent, ontology))


def _one_hot(index: int, size: int) -> list[float]:
    bins = [0.0] * size
    bins[index] = 1.0
    return bins


def _belief_bin(probability: float | None) -> int:
    if probability is None:
        return 0
    if probability <= 0.5:
        return 1
    return 2 if probability <= 0.8 else 3


def _match_bin(count: int) -> int:
    if count <= 1:
        return count
    return 2 if count <= 4 else 3


def _confidence_bin(confidence: float) -> int:
    if confidence <= 0.3:
        return 0
    if confidence <= 0.5:
        return 1
    return 2 if confidence <= 0.8 else 3


def _task_values(state: DialogueState) -> list[float]:
    values: list[float] = []
    for slot in state.ontology.informable_slots:
        top = top_value(state.beliefs, slot)
        values += _one_hot(_belief_bin(None if top is None else top[1]), len(BELIEF_BINS))
        values += _one_hot(GROUNDING_STATES.index(state.grounding[slot]), len(GROUNDING_STATES))
    values += _one_hot(_match_bin(len(state.db_matches)), len(MATCH_BINS))
    values.append(float(state.recommended))
    pending = set(state.pending_requests())
    values += [float(s in pending) for s in state.ontology.requestable_slots if s != "name"]
    values.append(1.0)
    return values


def _feedback_values(state: DialogueState) -> list[float]:
    unconfirmed = min(len(state.grounding.slots_in(Grounding.USER_INFORMED)), MAX_INFORMED_COUNT)
    values = _one_hot(_confidence_bin(state.last_top_confidence), len(CONFIDENCE_BINS))
    values += _one_hot(unconfirmed, MAX_INFORMED_COUNT + 1)
    values.append(1.0)
    return values


def _social_values(state: DialogueState) -> list[float]:
    return [float(state.user_said_bye), float(state.task_complete), 1.0]


def extract_features(state: DialogueState, agent: Agent) -> FeatureVector:
    """Feature vector of ``agent`` for the current state."""
    if agent is Agent.TASK:
        values = _task_values(state)
    elif agent is Agent.AUTO_FEEDBACK:
        values = _feedback_values(state)
    elif agent is Agent.SOCIAL_OBL_MAN:
        values = _social_values(state)
    else:
        values = _task_values(state) + _feedback_values(state) + _social_values(state)
    return FeatureVector(agent, feature_names(agent, state.ontology), np.asarray(values, dtype=np.float64))
