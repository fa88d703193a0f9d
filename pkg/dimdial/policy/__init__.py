"""Linear value-function MDP agents and their persistence."""

from .linear import (
    LinearQPolicy,
    compute_returns,
    mc_update,
    select_action,
)
from .persistence import (
    load_policy,
    policy_filename,
    read_policy,
    read_policy_set,
    save_policy,
    write_policy,
    write_policy_set,
)
from .trace import EpisodeTrace, TraceStep

__all__ = [
    "LinearQPolicy",
    "select_action",
    "compute_returns",
    "mc_update",
    "EpisodeTrace",
    "TraceStep",
    "save_policy",
    "load_policy",
    "write_policy",
    "read_policy",
    "write_policy_set",
    "read_policy_set",
    "policy_filename",
]
