"""dimdial - Multi-dimensional statistical dialogue management.

Dialogue acts are selected per dimension (Task, AutoFeedback,
SocialOblMan) by independent linear-Q agents trained with Monte Carlo
control against an agenda-based simulated user, and combined into one
system response by fixed rules.

Example usage:
    from dimdial import ExperimentConfig, ExperimentSpec, Variant, train

    config = ExperimentConfig()
    config.training.runs = 2
    result = train(ExperimentSpec(Variant.MULTI_DIM, config))
    print(result.curve.final.mean_reward)
"""

from __future__ import annotations

from ._version import __version__
from .acts import (
    Agent,
    DialogueAct,
    Dimension,
    Function,
    SystemAction,
    combine_candidate_acts,
    enumerate_combination_table,
    parse_act_notation,
)
from .config import (
    ErrorConfig,
    ExperimentConfig,
    ManagerConfig,
    TrainingConfig,
    get_config,
    load_config,
    set_config,
)
from .exceptions import (
    ActParseError,
    ConfigurationError,
    DataFileError,
    DimdialError,
    InvariantViolationError,
    PolicyCompatibilityError,
    ValidationError,
)
from .experiment import (
    ExperimentSpec,
    LearningCurve,
    Variant,
    evaluate,
    reproduce,
    run_episode,
    train,
)
from .manager import DialogueManager, OracleManager, map_summary_to_act
from .ontology import Database, Ontology, default_ontology, generate_database, query_matches
from .policy import LinearQPolicy, compute_returns, load_policy, mc_update, save_policy, select_action
from .simulation import AgendaUser, corrupt, sample_goal
from .state import BeliefState, DialogueState, NBestList, update_beliefs

__all__ = [
    # Version
    "__version__",
    # Configuration
    "TrainingConfig",
    "ErrorConfig",
    "ManagerConfig",
    "ExperimentConfig",
    "load_config",
    "get_config",
    "set_config",
    # Exceptions
    "DimdialError",
    "ConfigurationError",
    "ValidationError",
    "ActParseError",
    "InvariantViolationError",
    "PolicyCompatibilityError",
    "DataFileError",
    # Domain
    "Ontology",
    "default_ontology",
    "Database",
    "generate_database",
    "query_matches",
    "Dimension",
    "Function",
    "DialogueAct",
    "parse_act_notation",
    "Agent",
    "SystemAction",
    "combine_candidate_acts",
    "enumerate_combination_table",
    # State and policies
    "NBestList",
    "BeliefState",
    "update_beliefs",
    "DialogueState",
    "LinearQPolicy",
    "select_action",
    "compute_returns",
    "mc_update",
    "save_policy",
    "load_policy",
    # Dialogue
    "DialogueManager",
    "OracleManager",
    "map_summary_to_act",
    "AgendaUser",
    "sample_goal",
    "corrupt",
    # Experiments
    "Variant",
    "ExperimentSpec",
    "LearningCurve",
    "run_episode",
    "train",
    "evaluate",
    "reproduce",
]
