"""Deterministic synthetic venue database and constraint queries."""

from __future__ import annotations

import json
import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from ..exceptions import DataFileError, ValidationError
from .ontology import DONTCARE, Ontology, default_ontology

logger = logging.getLogger(__name__)

DATABASE_SIZE = 149
DATABASE_FORMAT = "dimdial-database"

# Whole-database redraws allowed while some informable value is unused.
MAX_COVERAGE_RESAMPLES = 20

_STREETS = (
    "regent", "hills", "mill", "trumpington", "castle", "bridge", "jesus",
    "king", "magdalene", "newmarket", "mill_road", "lensfield",
)
_PRICE_BANDS = {"cheap": (5, 12), "moderate": (12, 25), "expensive": (25, 60)}


@dataclass(frozen=True)
class Entity:
    """A venue: one value per informable slot, one string per requestable slot."""

    id: int
    informable: Mapping[str, str]
    requestable: Mapping[str, str]

    def value(self, slot: str) -> str:
        """Value of an informable or requestable slot."""
        if slot in self.informable:
            return self.informable[slot]
        return self.requestable[slot]

    @property
    def name(self) -> str:
        return self.requestable["name"]

    def violated(self, constraints: Mapping[str, str]) -> list[str]:
        """Slots whose non-dontcare constraint this entity does not satisfy."""
        return [
            slot for slot, value in constraints.items()
            if value != DONTCARE and self.informable.get(slot) != value
        ]

    def matches(self, constraints: Mapping[str, str]) -> bool:
        return not self.violated(constraints)

    def to_dict(self) -> dict[str, Any]:
        return {"id": self.id, **dict(self.informable), **dict(self.requestable)}


@dataclass(frozen=True)
class Database:
    """Immutable list of entities with a per-(slot, value) id index."""

    ontology: Ontology
    entities: tuple[Entity, ...]
    seed: int | None = None
    _index: dict[tuple[str, str], frozenset[int]] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if len(self.entities) != DATABASE_SIZE:
            raise ValidationError(
                f"Database must hold exactly {DATABASE_SIZE} entities",
                field="entities", value=len(self.entities),
            )
        for position, entity in enumerate(self.entities):
            if entity.id != position:
                raise ValidationError("Entity ids must be 0..148 in order", field="id", value=entity.id)
            for slot in self.ontology.informable_slots:
                value = entity.informable.get(slot)
                if value is None or value == DONTCARE or not self.ontology.is_valid_value(slot, value):
                    raise ValidationError(
                        f"Entity {entity.id} has invalid value for '{slot}'", field=slot, value=value
                    )
        index: dict[tuple[str, str], set[int]] = {}
        for entity in self.entities:
            for slot, value in entity.informable.items():
                index.setdefault((slot, value), set()).add(entity.id)
        object.__setattr__(self, "_index", {k: frozenset(v) for k, v in index.items()})

    def __len__(self) -> int:
        return len(self.entities)

    def get(self, entity_id: int) -> Entity:
        return self.entities[entity_id]

    def __contains__(self, entity_id: object) -> bool:
        return isinstance(entity_id, int) and 0 <= entity_id < len(self.entities)

    def query(self, constraints: Mapping[str, str]) -> list[Entity]:
        return query_matches(self, constraints)

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": DATABASE_FORMAT,
            "ontology_version": self.ontology.version,
            "seed": self.seed,
            "entities": [e.to_dict() for e in self.entities],
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any], ontology: Ontology | None = None) -> Database:
        ontology = ontology or default_ontology()
        if data.get("format") != DATABASE_FORMAT:
            raise ValidationError("Not a database record", field="format", value=data.get("format"))
        try:
            entities = tuple(
                Entity(
                    id=int(row["id"]),
                    informable={s: str(row[s]) for s in ontology.informable_slots},
                    requestable={s: str(row[s]) for s in ontology.requestable_slots},
                )
                for row in data["entities"]
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ValidationError(f"Malformed database record: {e}") from e
        return cls(ontology=ontology, entities=entities, seed=data.get("seed"))


def _requestable_values(entity_id: int, informable: Mapping[str, str]) -> dict[str, str]:
    """Display data synthesized from the entity id."""
    low, high = _PRICE_BANDS.get(informable.get("pricerange", ""), (10, 30))
    spread = entity_id % 7
    return {
        "name": f"venue-{entity_id}",
        "phonenumber": f"01223{(entity_id * 104729) % 1_000_000:06d}",
        "address": f"{entity_id % 97 + 1}-{_STREETS[entity_id % len(_STREETS)]}-street",
        "price": f"{low + spread}-{high + spread}gbp",
        "postcode": f"cb{entity_id % 5 + 1}-{entity_id % 9 + 1}{chr(97 + entity_id % 26)}{chr(97 + (entity_id * 7) % 26)}",
    }


def _draw_values(ontology: Ontology, rng: np.random.Generator) -> list[dict[str, str]]:
    rows = []
    for _ in range(DATABASE_SIZE):
        rows.append({
            slot: ontology.values[slot][int(rng.integers(len(ontology.values[slot])))]
            for slot in ontology.informable_slots
        })
    return rows


def _uncovered(ontology: Ontology, rows: list[dict[str, str]]) -> list[tuple[str, str]]:
    seen = {(slot, value) for row in rows for slot, value in row.items()}
    return [
        (slot, value)
        for slot in ontology.informable_slots
        for value in ontology.values[slot]
        if (slot, value) not in seen
    ]


def generate_database(seed: int, ontology: Ontology | None = None) -> Database:
    """Generate the 149-entity database deterministically from ``seed``.

    Informable values are drawn uniformly per slot. The whole table is
    redrawn (from the same stream) while some value carries no entity, up to
    ``MAX_COVERAGE_RESAMPLES`` times; the last draw is then accepted.
    """
    ontology = ontology or default_ontology()
    rng = np.random.default_rng(int(seed))
    rows = _draw_values(ontology, rng)
    attempt = 0
    while _uncovered(ontology, rows) and attempt < MAX_COVERAGE_RESAMPLES:
        attempt += 1
        rows = _draw_values(ontology, rng)
    missing = _uncovered(ontology, rows)
    if missing:
        logger.warning("Accepting database with uncovered values: %s", missing)
    entities = tuple(
        Entity(id=i, informable=row, requestable=_requestable_values(i, row))
        for i, row in enumerate(rows)
    )
    return Database(ontology=ontology, entities=entities, seed=int(seed))


def query_matches(db: Database, constraints: Mapping[str, str]) -> list[Entity]:
    """Entities matching every non-dontcare constraint, in ascending id order.

    Raises:
        ValidationError: If a slot is not informable or a value is unknown.
    """
    candidates: frozenset[int] | None = None
    for slot, value in constraints.items():
        db.ontology.check_constraint(slot, value)
        if value == DONTCARE:
            continue
        ids = db._index.get((slot, value), frozenset())
        candidates = ids if candidates is None else candidates & ids
    if candidates is None:
        return list(db.entities)
    return [db.entities[i] for i in sorted(candidates)]


def load_database(path: str | Path, ontology: Ontology | None = None) -> Database:
    """Load a database JSON file."""
    file_path = Path(path)
    try:
        data = json.loads(file_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise DataFileError(f"Cannot read database: {e}", path=str(file_path)) from e
    try:
        return Database.from_dict(data, ontology)
    except ValidationError as e:
        raise DataFileError(str(e), path=str(file_path)) from e


def dump_database(db: Database, path: str | Path) -> None:
    """Write ``db`` as JSON to ``path``."""
    file_path = Path(path)
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(json.dumps(db.to_dict(), indent=2) + "\n", encoding="utf-8")
    except OSError as e:
        raise DataFileError(f"Cannot write database: {e}", path=str(file_path)) from e
