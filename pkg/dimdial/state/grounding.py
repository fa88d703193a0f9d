"""Grounding state machine over informable slots."""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from enum import Enum

from ..acts import DialogueAct, Function


class Grounding(str, Enum):
    UNMENTIONED = "unmentioned"
    USER_INFORMED = "user_informed"
    SYSTEM_CONFIRMED = "system_confirmed"
    DENIED = "denied"


GROUNDING_STATES = tuple(Grounding)

# System acts that verbalize venue properties.
_VERBALIZING = frozenset({Function.RECOMMEND, Function.INFORM, Function.AFFIRM, Function.DENY})


@dataclass(frozen=True)
class GroundingState:
    """Grounding state of every informable slot."""

    states: Mapping[str, Grounding]

    @classmethod
    def initial(cls, slots: Iterable[str]) -> GroundingState:
        return cls({slot: Grounding.UNMENTIONED for slot in slots})

    def __getitem__(self, slot: str) -> Grounding:
        return self.states[slot]

    def slots_in(self, state: Grounding) -> list[str]:
        return [slot for slot, s in self.states.items() if s is state]

    def to_dict(self) -> dict[str, str]:
        return {slot: s.value for slot, s in self.states.items()}


def _feedback_pairs(system_act: DialogueAct | None) -> list[tuple[str, str]]:
    if system_act is None or system_act.function is not Function.PROP_QUESTION_FEEDBACK:
        return []
    return system_act.pairs()


def update_grounding(
    g: GroundingState,
    user_act: DialogueAct,
    last_system_act: DialogueAct | None,
) -> GroundingState:
    """Advance the per-slot machine by one exchange.

    Order of rules, later ones winning: a venue-bearing system act the user
    does not deny confirms its slots; affirm/deny after propositional
    feedback confirms/denies the questioned slot; a user deny with content
    denies its slots; a user inform (re)opens its slots as user_informed.
    """
    states = dict(g.states)
    user_function = user_act.function

    if (
        last_system_act is not None
        and last_system_act.entity_ref is not None
        and last_system_act.function in _VERBALIZING
        and user_function is not Function.DENY
    ):
        for slot, _ in last_system_act.pairs():
            if slot in states:
                states[slot] = Grounding.SYSTEM_CONFIRMED

    for slot, _ in _feedback_pairs(last_system_act):
        if slot not in states:
            continue
        if user_function is Function.AFFIRM:
            states[slot] = Grounding.SYSTEM_CONFIRMED
        elif user_function is Function.DENY:
            states[slot] = Grounding.DENIED

    if user_function is Function.DENY:
        for slot, _ in user_act.pairs():
            if slot in states:
                states[slot] = Grounding.DENIED

    if user_function is Function.INFORM:
        for slot, _ in user_act.pairs():
            if slot in states:
                states[slot] = Grounding.USER_INFORMED

    return GroundingState(states)


def denied_pairs(user_act: DialogueAct, last_system_act: DialogueAct | None) -> list[tuple[str, str]]:
    """Slot-value pairs the user rejected this turn."""
    if user_act.function is not Function.DENY:
        return []
    return user_act.pairs() or _feedback_pairs(last_system_act)
