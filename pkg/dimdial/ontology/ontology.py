"""Slot ontology for the restaurant domain."""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

from ..exceptions import DataFileError, ValidationError

logger = logging.getLogger(__name__)

DONTCARE = "dontcare"

INFORMABLE_SLOTS = ("foodtype", "pricerange", "area", "near")
REQUESTABLE_SLOTS = ("name", "phonenumber", "address", "price", "postcode")

ONTOLOGY_FORMAT = "dimdial-ontology"
_DEFAULT_RESOURCE = "restaurants.json"


@dataclass(frozen=True)
class Ontology:
    """Informable/requestable slots and the value set of every informable slot.

    Attributes:
        informable_slots: Slots the user constrains, in canonical order.
        requestable_slots: Slots the user may ask about.
        values: Ordered value set per informable slot. ``dontcare`` is valid
            for every informable slot but is never listed here.
        version: Version string of the ontology file.
    """

    informable_slots: tuple[str, ...]
    requestable_slots: tuple[str, ...]
    values: Mapping[str, tuple[str, ...]]
    version: str = "1"
    _value_index: dict[str, dict[str, int]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        errors = self.validate()
        if errors:
            raise ValidationError("Invalid ontology: " + "; ".join(errors))
        index = {s: {v: i for i, v in enumerate(vs)} for s, vs in self.values.items()}
        object.__setattr__(self, "_value_index", index)

    def __hash__(self) -> int:
        return hash((
            self.informable_slots,
            self.requestable_slots,
            tuple(tuple(self.values[s]) for s in self.informable_slots),
            self.version,
        ))

    def validate(self) -> list[str]:
        """Validate the ontology and return a list of errors."""
        errors = []
        if tuple(self.informable_slots) != INFORMABLE_SLOTS:
            errors.append(
                f"informable slots must be {list(INFORMABLE_SLOTS)} "
                f"(got: {list(self.informable_slots)})"
            )
        if tuple(self.requestable_slots) != REQUESTABLE_SLOTS:
            errors.append(
                f"requestable slots must be {list(REQUESTABLE_SLOTS)} "
                f"(got: {list(self.requestable_slots)})"
            )
        for slot in self.informable_slots:
            slot_values = self.values.get(slot)
            if not slot_values:
                errors.append(f"value set for '{slot}' is missing or empty")
                continue
            if len(set(slot_values)) != len(slot_values):
                errors.append(f"value set for '{slot}' contains duplicates")
            if DONTCARE in slot_values:
                errors.append(f"'{DONTCARE}' must not be listed for '{slot}'")
        extra = set(self.values) - set(self.informable_slots)
        if extra:
            errors.append(f"values given for non-informable slots: {sorted(extra)}")
        return errors

    def is_informable(self, slot: str) -> bool:
        return slot in self._value_index

    def is_requestable(self, slot: str) -> bool:
        return slot in self.requestable_slots

    def is_valid_value(self, slot: str, value: str) -> bool:
        """True if ``value`` is a value of informable ``slot`` or ``dontcare``."""
        index = self._value_index.get(slot)
        return index is not None and (value == DONTCARE or value in index)

    def value_rank(self, slot: str, value: str) -> int:
        """Position of ``value`` in the slot's value order; ``dontcare`` sorts last."""
        index = self._value_index[slot]
        return index.get(value, len(index))

    def check_constraint(self, slot: str, value: str) -> None:
        """Raise ValidationError unless ``slot=value`` is a valid constraint."""
        if not self.is_informable(slot):
            raise ValidationError(f"Unknown informable slot '{slot}'", field="slot", value=slot)
        if not self.is_valid_value(slot, value):
            raise ValidationError(
                f"Unknown value '{value}' for slot '{slot}'", field=slot, value=value
            )

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": ONTOLOGY_FORMAT,
            "version": self.version,
            "informable_slots": list(self.informable_slots),
            "requestable_slots": list(self.requestable_slots),
            "values": {slot: list(self.values[slot]) for slot in self.informable_slots},
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> Ontology:
        if data.get("format", ONTOLOGY_FORMAT) != ONTOLOGY_FORMAT:
            raise ValidationError("Not an ontology record", field="format", value=data.get("format"))
        try:
            return cls(
                informable_slots=tuple(data["informable_slots"]),
                requestable_slots=tuple(data["requestable_slots"]),
                values={slot: tuple(vs) for slot, vs in data["values"].items()},
                version=str(data.get("version", "1")),
            )
        except (KeyError, TypeError, AttributeError) as e:
            raise ValidationError(f"Malformed ontology record: {e}") from e


def load_ontology(path: str | Path | None = None) -> Ontology:
    """Load an ontology from a JSON file, or the packaged default."""
    if path is None:
        return default_ontology()
    file_path = Path(path)
    try:
        data = json.loads(file_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise DataFileError(f"Cannot read ontology: {e}", path=str(file_path)) from e
    try:
        return Ontology.from_dict(data)
    except ValidationError as e:
        raise DataFileError(str(e), path=str(file_path)) from e


@lru_cache(maxsize=1)
def default_ontology() -> Ontology:
    """The packaged restaurant ontology."""
    text = resources.files("dimdial.resources").joinpath(_DEFAULT_RESOURCE).read_text(
        encoding="utf-8"
    )
    ontology = Ontology.from_dict(json.loads(text))
    logger.debug("Loaded default ontology version %s", ontology.version)
    return ontology


def dump_ontology(ontology: Ontology, path: str | Path) -> None:
    """Write ``ontology`` as JSON to ``path``."""
    file_path = Path(path)
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(json.dumps(ontology.to_dict(), indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise DataFileError(f"Cannot write ontology: {e}", path=str(file_path)) from e
