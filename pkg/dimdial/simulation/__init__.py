"""Simulated user and understanding-error channel."""

from .errormodel import LISTED_MASS, confuse, corrupt
from .user import (
    CONSTRAINT_PROBABILITY,
    REQUEST_SLOTS,
    SUCCESS_REWARD,
    TURN_REWARD,
    Agenda,
    AgendaUser,
    UserGoal,
    sample_goal,
)

__all__ = [
    "corrupt",
    "confuse",
    "LISTED_MASS",
    "UserGoal",
    "Agenda",
    "AgendaUser",
    "sample_goal",
    "CONSTRAINT_PROBABILITY",
    "REQUEST_SLOTS",
    "TURN_REWARD",
    "SUCCESS_REWARD",
]
