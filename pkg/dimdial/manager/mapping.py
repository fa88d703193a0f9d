"""Instantiate summary actions as full dialogue acts from the dialogue state."""

from __future__ import annotations

import logging
from collections.abc import Callable

from ..acts import DialogueAct, Function, SummaryAction, SystemAction
from ..exceptions import ValidationError
from ..ontology import DONTCARE
from ..state import DialogueState, Grounding, top_value

logger = logging.getLogger(__name__)

NO_MATCH = "none"


def no_match_act() -> DialogueAct:
    """The task act used when no venue satisfies the accepted constraints."""
    return DialogueAct.make(Function.INFORM, ("name", NO_MATCH))


def _ask_slot(state: DialogueState) -> DialogueAct:
    slots = state.ontology.informable_slots
    for slot in slots:
        if state.grounding[slot] is Grounding.UNMENTIONED and not state.beliefs.has_evidence(slot):
            return DialogueAct.make(Function.SET_QUESTION, (slot, None))

    def evidence(slot: str) -> float:
        top = top_value(state.beliefs, slot)
        return 0.0 if top is None else top[1]

    return DialogueAct.make(Function.SET_QUESTION, (min(slots, key=evidence), None))


def _recommend(state: DialogueState) -> DialogueAct:
    if not state.db_matches:
        return no_match_act()
    entity = state.database.get(state.db_matches[0])
    constraints = state.top_constraints()
    content = [("name", entity.name)]
    content += [
        (slot, entity.value(slot))
        for slot in state.ontology.informable_slots
        if constraints.get(slot, DONTCARE) != DONTCARE
    ]
    if state.entity_under_discussion != entity.id:
        state.answered_requests.clear()
    state.entity_under_discussion = entity.id
    state.recommended = True
    return DialogueAct.make(Function.RECOMMEND, *content, entity_ref=entity.id)


def _answer_set(state: DialogueState) -> DialogueAct:
    if state.entity_under_discussion is None:
        logger.debug("answerSet without an entity under discussion, asking a slot instead")
        return _ask_slot(state)
    entity = state.database.get(state.entity_under_discussion)
    slot = state.last_requested_slot or "name"
    state.answered_requests.add(slot)
    return DialogueAct.make(Function.INFORM, (slot, entity.value(slot)), entity_ref=entity.id)


def _questioned_pair(state: DialogueState) -> tuple[str, str] | None:
    if state.questioned_pair is not None:
        return state.questioned_pair
    if not state.asserted_at:
        return None
    slot = max(state.asserted_at, key=state.asserted_at.__getitem__)
    top = top_value(state.beliefs, slot)
    return None if top is None else (slot, top[0])


def _answer_prop(state: DialogueState) -> DialogueAct:
    pair = _questioned_pair(state) if state.entity_under_discussion is not None else None
    if pair is None:
        logger.debug("answerProp without an entity or a question, asking a slot instead")
        return _ask_slot(state)
    assert state.entity_under_discussion is not None
    entity = state.database.get(state.entity_under_discussion)
    slot, value = pair
    state.questioned_pair = None
    actual = entity.value(slot)
    if value in (actual, DONTCARE):
        return DialogueAct.make(Function.AFFIRM, (slot, value), entity_ref=entity.id)
    return DialogueAct.make(Function.DENY, (slot, actual), entity_ref=entity.id)


def _prop_feedback(state: DialogueState) -> DialogueAct:
    candidates = []
    for slot in state.grounding.slots_in(Grounding.USER_INFORMED):
        scores = state.beliefs.scores(slot)
        if not scores:
            continue
        value = max(scores, key=scores.__getitem__)
        candidates.append((scores[value], -state.asserted_at.get(slot, 0), slot, value))
    if not candidates:
        logger.debug("propQFeedback without an unconfirmed slot, asking a slot instead")
        return _ask_slot(state)
    _, _, slot, value = min(candidates)
    return DialogueAct.make(Function.PROP_QUESTION_FEEDBACK, (slot, value))


_MAPPERS: dict[SystemAction, Callable[[DialogueState], DialogueAct]] = {
    SystemAction.ASK_SLOT: _ask_slot,
    SystemAction.RECOMMEND: _recommend,
    SystemAction.ANSWER_SET: _answer_set,
    SystemAction.ANSWER_PROP: _answer_prop,
    SystemAction.PROP_Q_FEEDBACK: _prop_feedback,
    SystemAction.NEGATIVE_FEEDBACK: lambda _: DialogueAct.make(Function.NEGATIVE_FEEDBACK),
    SystemAction.RETURN_GOODBYE: lambda _: DialogueAct.make(Function.RETURN_GOODBYE),
}


def map_summary_to_act(action: SummaryAction | SystemAction, state: DialogueState) -> DialogueAct:
    """Full dialogue act for an output action, filled in from ``state``.

    Recommending or answering updates the venue bookkeeping of ``state``.

    Raises:
        ValidationError: For a null summary action.
    """
    output = action.output if isinstance(action, SummaryAction) else action
    if output is None:
        raise ValidationError("A null action has no dialogue act", field="action", value="null")
    return _MAPPERS[output](state)
