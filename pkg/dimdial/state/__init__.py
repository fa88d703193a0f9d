"""Probabilistic state monitoring and feature extraction."""

from .belief import (
    UNKNOWN,
    BeliefState,
    NBestList,
    UserActHypothesis,
    halve_belief,
    normalized_belief,
    top_value,
    update_beliefs,
)
from .dialogue_state import DialogueState
from .features import (
    FEATURE_SCHEMA_VERSION,
    FeatureVector,
    extract_features,
    feature_length,
    feature_names,
)
from .grounding import (
    GROUNDING_STATES,
    Grounding,
    GroundingState,
    denied_pairs,
    update_grounding,
)

__all__ = [
    "UNKNOWN",
    "UserActHypothesis",
    "NBestList",
    "BeliefState",
    "update_beliefs",
    "normalized_belief",
    "top_value",
    "halve_belief",
    "Grounding",
    "GROUNDING_STATES",
    "GroundingState",
    "update_grounding",
    "denied_pairs",
    "DialogueState",
    "FEATURE_SCHEMA_VERSION",
    "FeatureVector",
    "extract_features",
    "feature_names",
    "feature_length",
]
