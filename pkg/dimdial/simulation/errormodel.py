"""Noisy understanding channel: turns the true user act into an n-best list."""

from __future__ import annotations

import logging

import numpy as np

from ..acts import DialogueAct, Function
from ..config import ErrorConfig
from ..ontology import DONTCARE, Ontology, default_ontology
from ..state import NBestList, UserActHypothesis

logger = logging.getLogger(__name__)

# Mass reserved for hypotheses outside the list.
LISTED_MASS = 0.9

# Attempts per missing alternative before settling for a shorter list.
_MAX_DRAWS = 20

_SWAP_GROUPS = (
    frozenset({Function.INFORM, Function.AFFIRM, Function.DENY}),
    frozenset({Function.GREET, Function.BYE, Function.NULL}),
)


def _swap_targets(act: DialogueAct) -> list[Function]:
    for group in _SWAP_GROUPS:
        if act.function in group:
            if act.function in (Function.AFFIRM, Function.DENY, Function.INFORM) and not act.content:
                return []
            return sorted((f for f in group if f is not act.function), key=lambda f: f.value)
    return []


def _substitute_value(act: DialogueAct, ontology: Ontology, rng: np.random.Generator) -> DialogueAct:
    positions = [i for i, (slot, value) in enumerate(act.content)
                 if value is not None and ontology.is_informable(slot)]
    i = positions[int(rng.integers(len(positions)))]
    slot, value = act.content[i]
    choices = [v for v in (*ontology.values[slot], DONTCARE) if v != value]
    replacement = choices[int(rng.integers(len(choices)))]
    content = list(act.content)
    content[i] = (slot, replacement)
    return DialogueAct(act.dimension, act.function, tuple(content), act.entity_ref)


def _substitute_slot(act: DialogueAct, ontology: Ontology, rng: np.random.Generator) -> DialogueAct:
    positions = [i for i, (slot, _) in enumerate(act.content) if ontology.is_requestable(slot)]
    i = positions[int(rng.integers(len(positions)))]
    taken = set(act.slots())
    choices = [s for s in ontology.requestable_slots if s not in taken]
    content = list(act.content)
    content[i] = (choices[int(rng.integers(len(choices)))], act.content[i][1])
    return DialogueAct(act.dimension, act.function, tuple(content), act.entity_ref)


def _swap_function(act: DialogueAct, rng: np.random.Generator) -> DialogueAct:
    targets = _swap_targets(act)
    function = targets[int(rng.integers(len(targets)))]
    content = act.content if function in (Function.INFORM, Function.AFFIRM, Function.DENY) else ()
    return DialogueAct.make(function, *content, entity_ref=act.entity_ref)


def confuse(act: DialogueAct, ontology: Ontology, rng: np.random.Generator) -> DialogueAct | None:
    """One random confusion of ``act``, or None if the act admits none.

    The operation is drawn uniformly from those applicable: substitute an
    informable value (dontcare included), substitute a requested slot, or
    swap the function within its compatible group.
    """
    operations = []
    if any(v is not None and ontology.is_informable(s) for s, v in act.content):
        operations.append("value")
    if act.function is Function.REQUEST and any(ontology.is_requestable(s) for s in act.slots()) \
            and len(ontology.requestable_slots) > len(act.slots()):
        operations.append("slot")
    if _swap_targets(act):
        operations.append("function")
    if not operations:
        return None
    operation = operations[int(rng.integers(len(operations)))]
    if operation == "value":
        return _substitute_value(act, ontology, rng)
    if operation == "slot":
        return _substitute_slot(act, ontology, rng)
    return _swap_function(act, rng)


def _confidences(count: int, cfg: ErrorConfig, rng: np.random.Generator) -> list[float]:
    if count == 1:
        return [LISTED_MASS]
    weights = np.sort(rng.dirichlet(np.full(count, cfg.confidence_concentration)))[::-1]
    return [max(float(w) * LISTED_MASS, 1e-12) for w in weights]


def corrupt(
    true_act: DialogueAct,
    cfg: ErrorConfig,
    rng: np.random.Generator,
    ontology: Ontology | None = None,
) -> NBestList:
    """Build an n-best list around ``true_act``.

    With probability ``error_rate`` the top entry is a confusion and the true
    act moves to a uniformly chosen lower rank (dropped if the list has one
    entry). Other entries are distinct confusions. Confidences are a sorted
    symmetric Dirichlet draw scaled to 0.9.
    """
    ontology = ontology or default_ontology()
    erroneous = cfg.error_rate > 0.0 and rng.random() < cfg.error_rate

    acts: list[DialogueAct] = []
    if erroneous:
        top = confuse(true_act, ontology, rng)
        if top is None:
            logger.debug("No confusion available for %s, keeping it on top", true_act)
            erroneous = False
        else:
            acts.append(top)
    if not erroneous:
        acts.append(true_act)

    wanted = cfg.nbest_len - (1 if erroneous else 0)
    draws = 0
    while len(acts) < wanted and draws < _MAX_DRAWS * cfg.nbest_len:
        draws += 1
        candidate = confuse(true_act, ontology, rng)
        if candidate is None:
            break
        if candidate != true_act and candidate not in acts:
            acts.append(candidate)

    if erroneous and cfg.nbest_len > 1:
        acts.insert(int(rng.integers(1, len(acts) + 1)), true_act)

    confidences = _confidences(len(acts), cfg, rng)
    return NBestList(tuple(UserActHypothesis(a, c) for a, c in zip(acts, confidences)))
