"""Domain model: slot ontology and the synthetic venue database."""

from .database import (
    DATABASE_SIZE,
    Database,
    Entity,
    dump_database,
    generate_database,
    load_database,
    query_matches,
)
from .ontology import (
    DONTCARE,
    Ontology,
    default_ontology,
    dump_ontology,
    load_ontology,
)

__all__ = [
    "DONTCARE",
    "Ontology",
    "default_ontology",
    "load_ontology",
    "dump_ontology",
    "DATABASE_SIZE",
    "Entity",
    "Database",
    "generate_database",
    "query_matches",
    "load_database",
    "dump_database",
]
