"""Dialogue-act taxonomy, summary actions and combination rules."""

from .actions import (
    ACTION_SETS,
    FEEDBACK_ACTIONS,
    MULTI_DIM_AGENTS,
    NULL_BUCKET,
    ONE_DIM_ACTIONS,
    SOCIAL_ACTIONS,
    TASK_ACTIONS,
    Agent,
    SummaryAction,
    SystemAction,
    action_set,
    combine_candidate_acts,
    enumerate_combination_table,
)
from .taxonomy import (
    USER_FUNCTIONS,
    DialogueAct,
    Dimension,
    Function,
    dimension_of,
    parse_act_notation,
    validate_act,
)

__all__ = [
    "Dimension",
    "Function",
    "DialogueAct",
    "USER_FUNCTIONS",
    "dimension_of",
    "parse_act_notation",
    "validate_act",
    "Agent",
    "MULTI_DIM_AGENTS",
    "SystemAction",
    "SummaryAction",
    "ONE_DIM_ACTIONS",
    "TASK_ACTIONS",
    "FEEDBACK_ACTIONS",
    "SOCIAL_ACTIONS",
    "ACTION_SETS",
    "NULL_BUCKET",
    "action_set",
    "combine_candidate_acts",
    "enumerate_combination_table",
]
