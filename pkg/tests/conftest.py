"""Shared fixtures."""

from __future__ import annotations

import pytest

from dimdial.ontology import Database, Ontology, default_ontology, generate_database


@pytest.fixture(scope="session")
def ontology() -> Ontology:
    return default_ontology()


@pytest.fixture(scope="session")
def database(ontology: Ontology) -> Database:
    return generate_database(0, ontology)
