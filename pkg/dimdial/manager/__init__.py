"""Dialogue manager variants and summary-to-act mapping."""

from .manager import (
    AgentChoice,
    DialogueManager,
    Manager,
    SystemTurnRecord,
    track_user_turn,
)
from .mapping import NO_MATCH, map_summary_to_act, no_match_act
from .oracle import OracleManager
from .variants import (
    ManagerVariant,
    MultiDimVariant,
    OneDimVariant,
    multi_dim_variant,
    one_dim_variant,
)

__all__ = [
    "DialogueManager",
    "Manager",
    "AgentChoice",
    "SystemTurnRecord",
    "track_user_turn",
    "map_summary_to_act",
    "no_match_act",
    "NO_MATCH",
    "OracleManager",
    "ManagerVariant",
    "OneDimVariant",
    "MultiDimVariant",
    "one_dim_variant",
    "multi_dim_variant",
]
