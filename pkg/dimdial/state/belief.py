"""User-goal belief tracking from n-best lists of user act hypotheses.

Raw evidence scores follow the multiplicative update: the first evidence
for a slot-value pair stores its confidence, later evidence multiplies the
stored score by the new confidence. A turn that informs a slot also counts
against the values of that slot it does not name: they are multiplied by
their share of the list's unassigned mass, and so is the score a value
not yet observed would start from. Decisions are taken on the normalized
distribution, which reserves mass for ``unknown``.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field

from ..acts import DialogueAct, Function
from ..exceptions import ValidationError
from ..ontology import Ontology

UNKNOWN = "unknown"

# Raw scores never reach zero.
MIN_SCORE = 1e-12


@dataclass(frozen=True)
class UserActHypothesis:
    """One n-best entry."""

    act: DialogueAct
    confidence: float

    def __post_init__(self) -> None:
        if not 0.0 < self.confidence <= 1.0:
            raise ValidationError(
                "Hypothesis confidence must be in (0, 1]", field="confidence", value=self.confidence
            )


@dataclass(frozen=True)
class NBestList:
    """Hypotheses in descending confidence order, total mass at most 1."""

    hypotheses: tuple[UserActHypothesis, ...]

    def __post_init__(self) -> None:
        if not self.hypotheses:
            raise ValidationError("An n-best list needs at least one hypothesis", field="hypotheses")
        confidences = [h.confidence for h in self.hypotheses]
        if any(a < b for a, b in zip(confidences, confidences[1:])):
            raise ValidationError("Hypotheses must be in descending confidence order",
                                  field="hypotheses", value=confidences)
        if sum(confidences) > 1.0 + 1e-9:
            raise ValidationError("Hypothesis confidences sum above 1",
                                  field="hypotheses", value=sum(confidences))

    @classmethod
    def of(cls, *pairs: tuple[DialogueAct, float]) -> NBestList:
        return cls(tuple(UserActHypothesis(act, conf) for act, conf in pairs))

    @classmethod
    def certain(cls, act: DialogueAct) -> NBestList:
        """A one-entry list holding ``act`` with confidence 1."""
        return cls((UserActHypothesis(act, 1.0),))

    @property
    def top(self) -> UserActHypothesis:
        return self.hypotheses[0]

    def __len__(self) -> int:
        return len(self.hypotheses)

    def __iter__(self) -> Iterator[UserActHypothesis]:
        return iter(self.hypotheses)


@dataclass(frozen=True)
class BeliefState:
    """Raw evidence per informable slot and request probability per requestable slot.

    Only values with observed evidence appear in ``informable``; insertion
    order is first-observation order and breaks argmax ties. ``unseen``
    holds the score a value would take on its first observation (before
    the confidence factor) and ``domain_sizes`` the number of values a slot
    can take, dontcare included.
    """

    informable: dict[str, dict[str, float]] = field(default_factory=dict)
    requested: dict[str, float] = field(default_factory=dict)
    unseen: dict[str, float] = field(default_factory=dict)
    domain_sizes: dict[str, int] = field(default_factory=dict)

    @classmethod
    def initial(cls, ontology: Ontology) -> BeliefState:
        return cls(
            informable={slot: {} for slot in ontology.informable_slots},
            requested={slot: 0.0 for slot in ontology.requestable_slots},
            unseen={slot: 1.0 for slot in ontology.informable_slots},
            domain_sizes={slot: len(ontology.values[slot]) + 1 for slot in ontology.informable_slots},
        )

    def scores(self, slot: str) -> dict[str, float]:
        return self.informable.get(slot, {})

    def has_evidence(self, slot: str) -> bool:
        return bool(self.informable.get(slot))

    def to_dict(self) -> dict[str, object]:
        return {
            "informable": {s: dict(v) for s, v in self.informable.items()},
            "requested": dict(self.requested),
            "unseen": dict(self.unseen),
        }

    def _replace(self, informable: dict[str, dict[str, float]], requested: dict[str, float],
                 unseen: dict[str, float] | None = None) -> BeliefState:
        return BeliefState(informable, requested, dict(self.unseen) if unseen is None else unseen,
                           dict(self.domain_sizes))


def _evidence(nbest: Iterable[UserActHypothesis], function: Function) -> dict[tuple[str, str | None], float]:
    mass: dict[tuple[str, str | None], float] = {}
    for hyp in nbest:
        if hyp.act.function is not function:
            continue
        for item in dict.fromkeys(hyp.act.content):
            mass[item] = mass.get(item, 0.0) + hyp.confidence
    return mass


def update_beliefs(beliefs: BeliefState, nbest: NBestList) -> BeliefState:
    """Fold one turn of n-best evidence into the beliefs.

    ``c(s, v)`` is the confidence mass of hypotheses whose inform content
    carries ``s=v``. Unseen pairs take ``c`` (times the slot's unseen score,
    which is 1 until the slot has evidence); seen pairs become ``c * b``.
    Seen values of an informed slot that this turn does not name are
    multiplied by ``(1 - sum of c over the slot) / (number of unnamed
    values)``, as is the unseen score. Slots without inform evidence are
    unchanged. A request for a slot raises its probability to
    ``max(previous, c)``.
    """
    informable = {slot: dict(scores) for slot, scores in beliefs.informable.items()}
    unseen = dict(beliefs.unseen)
    named: dict[str, dict[str, float]] = {}
    for (slot, value), c in _evidence(nbest, Function.INFORM).items():
        if value is not None and slot in informable:
            named.setdefault(slot, {})[value] = c

    for slot, masses in named.items():
        scores = informable[slot]
        start = unseen.get(slot, 1.0)
        size = beliefs.domain_sizes.get(slot, len(set(scores) | set(masses)) + 1)
        share = max(MIN_SCORE, 1.0 - sum(masses.values())) / max(1, size - len(masses))
        for value in scores:
            if value not in masses:
                scores[value] = max(MIN_SCORE, scores[value] * share)
        for value, c in masses.items():
            previous = scores.get(value)
            score = c * (start if previous is None else previous)
            scores[value] = min(1.0, max(MIN_SCORE, score))
        unseen[slot] = max(MIN_SCORE, start * share)

    requested = dict(beliefs.requested)
    for (slot, _), c in _evidence(nbest, Function.REQUEST).items():
        if slot in requested:
            requested[slot] = max(requested[slot], min(1.0, c))
    return beliefs._replace(informable, requested, unseen)


def normalized_belief(beliefs: BeliefState, slot: str) -> dict[str, float]:
    """Raw scores over ``sum + 1``, with the residual assigned to ``unknown``."""
    scores = beliefs.scores(slot)
    denominator = sum(scores.values()) + 1.0
    distribution = {value: score / denominator for value, score in scores.items()}
    distribution[UNKNOWN] = 1.0 / denominator
    return distribution


def top_value(beliefs: BeliefState, slot: str) -> tuple[str, float] | None:
    """Argmax observed value of ``slot`` with its normalized probability."""
    scores = beliefs.scores(slot)
    if not scores:
        return None
    value = max(scores, key=scores.__getitem__)
    return value, scores[value] / (sum(scores.values()) + 1.0)


def halve_belief(beliefs: BeliefState, slot: str, value: str) -> BeliefState:
    """Halve the raw score of a denied value."""
    scores = beliefs.scores(slot)
    if value not in scores:
        return beliefs
    informable = {s: dict(v) for s, v in beliefs.informable.items()}
    informable[slot][value] = max(MIN_SCORE, scores[value] / 2.0)
    return beliefs._replace(informable, dict(beliefs.requested))
