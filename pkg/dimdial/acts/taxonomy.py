"""Dialogue-act taxonomy and the canonical act notation.

Notation: ``function(#<entity>, slot=value, slot)``. The optional ``#id``
item carries the entity reference; a bare ``slot`` is an item without a
value (for example ``request(phonenumber)``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum

from ..exceptions import ActParseError, ValidationError
from ..ontology import Ontology, default_ontology

ContentPair = tuple[str, "str | None"]


class Dimension(str, Enum):
    """Dimensions of communication selected independently by the agents."""

    TASK = "Task"
    AUTO_FEEDBACK = "AutoFeedback"
    SOCIAL_OBL_MAN = "SocialOblMan"

    @property
    def rank(self) -> int:
        return _DIMENSION_ORDER.index(self)

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Dimension):
            return NotImplemented
        return self.rank < other.rank


_DIMENSION_ORDER = (Dimension.TASK, Dimension.AUTO_FEEDBACK, Dimension.SOCIAL_OBL_MAN)


class Function(str, Enum):
    """Communicative-function tags."""

    INFORM = "inform"
    SET_QUESTION = "setQuestion"
    PROP_QUESTION = "propQuestion"
    ANSWER_SET = "answerSet"
    ANSWER_PROP = "answerProp"
    RECOMMEND = "recommend"
    NEGATIVE_FEEDBACK = "negativeFeedback"
    PROP_QUESTION_FEEDBACK = "propQuestionFeedback"
    RETURN_GOODBYE = "returnGoodbye"
    GREET = "greet"
    AFFIRM = "affirm"
    DENY = "deny"
    REQUEST = "request"
    BYE = "bye"
    NULL = "null"


FUNCTION_DIMENSION: dict[Function, Dimension] = {
    Function.NEGATIVE_FEEDBACK: Dimension.AUTO_FEEDBACK,
    Function.PROP_QUESTION_FEEDBACK: Dimension.AUTO_FEEDBACK,
    Function.RETURN_GOODBYE: Dimension.SOCIAL_OBL_MAN,
    Function.GREET: Dimension.SOCIAL_OBL_MAN,
    Function.BYE: Dimension.SOCIAL_OBL_MAN,
}

USER_FUNCTIONS = frozenset({
    Function.INFORM,
    Function.REQUEST,
    Function.AFFIRM,
    Function.DENY,
    Function.GREET,
    Function.BYE,
    Function.NULL,
    Function.PROP_QUESTION,
    Function.SET_QUESTION,
})


def dimension_of(function: Function) -> Dimension:
    """Canonical dimension of a communicative function."""
    return FUNCTION_DIMENSION.get(function, Dimension.TASK)


@dataclass(frozen=True)
class DialogueAct:
    """A dialogue act: dimension, communicative function and semantic content."""

    dimension: Dimension
    function: Function
    content: tuple[ContentPair, ...] = ()
    entity_ref: int | None = None

    def __post_init__(self) -> None:
        if dimension_of(self.function) is not self.dimension:
            raise ValidationError(
                f"Function '{self.function.value}' is not compatible with dimension "
                f"'{self.dimension.value}'",
                field="dimension", value=self.dimension.value,
            )

    @classmethod
    def make(
        cls,
        function: Function | str,
        *content: ContentPair,
        entity_ref: int | None = None,
    ) -> DialogueAct:
        """Build an act in the function's canonical dimension."""
        func = Function(function)
        return cls(dimension_of(func), func, tuple(content), entity_ref)

    def slots(self) -> list[str]:
        return [slot for slot, _ in self.content]

    def pairs(self) -> list[tuple[str, str]]:
        """Content items that carry a value."""
        return [(slot, value) for slot, value in self.content if value is not None]

    def value_of(self, slot: str) -> str | None:
        for s, value in self.content:
            if s == slot:
                return value
        return None

    def to_notation(self) -> str:
        items = [f"#{self.entity_ref}"] if self.entity_ref is not None else []
        items.extend(slot if value is None else f"{slot}={value}" for slot, value in self.content)
        return f"{self.function.value}({', '.join(items)})"

    def __str__(self) -> str:
        return self.to_notation()


def validate_act(act: DialogueAct, ontology: Ontology) -> None:
    """Check that every content slot (and informable value) belongs to the ontology."""
    for slot, value in act.content:
        if ontology.is_informable(slot):
            if value is not None and not ontology.is_valid_value(slot, value):
                raise ValidationError(
                    f"Unknown value '{value}' for slot '{slot}'", field=slot, value=value
                )
        elif not ontology.is_requestable(slot):
            raise ValidationError(f"Unknown slot '{slot}'", field="slot", value=slot)


_ACT_PATTERN = re.compile(r"^\s*([A-Za-z]+)\s*\((.*)\)\s*$", re.DOTALL)
_TOKEN_PATTERN = re.compile(r"^[A-Za-z0-9_.\-]+$")
_ENTITY_PATTERN = re.compile(r"^#(\d+)$")


def _fail(message: str, token: str, text: str) -> ActParseError:
    position = text.find(token) if token else None
    return ActParseError(message, token=token, position=position if position != -1 else None)


def parse_act_notation(
    text: str,
    ontology: Ontology | None = None,
    user_only: bool = False,
) -> DialogueAct:
    """Parse ``function(slot=value, ...)`` into a DialogueAct.

    Args:
        text: Act in canonical notation; whitespace around tokens is ignored.
        ontology: Ontology to validate slots and values against; the
            packaged restaurant ontology when omitted.
        user_only: Reject functions a user cannot perform.

    Raises:
        ActParseError: Naming the offending token.
    """
    ontology = ontology or default_ontology()
    match = _ACT_PATTERN.match(text)
    if not match:
        raise _fail("Expected function(slot=value, ...)", text.strip(), text)
    name, inner = match.group(1), match.group(2)
    try:
        function = Function(name)
    except ValueError:
        raise _fail(f"Unknown communicative function '{name}'", name, text) from None
    if user_only and function not in USER_FUNCTIONS:
        raise _fail(f"'{name}' is not a user act", name, text)

    entity_ref: int | None = None
    content: list[ContentPair] = []
    items = [item.strip() for item in inner.split(",")] if inner.strip() else []
    for position, item in enumerate(items):
        if not item:
            raise _fail("Empty content item", ",", text)
        entity = _ENTITY_PATTERN.match(item)
        if entity:
            if position != 0:
                raise _fail("Entity reference must come first", item, text)
            entity_ref = int(entity.group(1))
            continue
        slot, sep, value = (part.strip() for part in item.partition("="))
        if not _TOKEN_PATTERN.match(slot):
            raise _fail(f"Invalid slot token '{slot}'", slot or item, text)
        if sep and not _TOKEN_PATTERN.match(value):
            raise _fail(f"Invalid value token '{value}'", value or item, text)
        if ontology.is_informable(slot):
            if sep and not ontology.is_valid_value(slot, value):
                raise _fail(f"Unknown value '{value}' for slot '{slot}'", value, text)
        elif not ontology.is_requestable(slot):
            raise _fail(f"Unknown slot '{slot}'", slot, text)
        content.append((slot, value if sep else None))
    return DialogueAct.make(function, *content, entity_ref=entity_ref)
