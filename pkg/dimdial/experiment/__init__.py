"""Experiment harness: episodes, training, evaluation and learning curves."""

from .comparison import reproduce
from .curve import (
    CURVE_HEADER,
    Checkpoint,
    CurvePoint,
    LearningCurve,
    read_curve_csv,
    write_curve_csv,
)
from .episode import EpisodeOutcome, run_episode
from .evaluation import (
    DEFAULT_EVAL_DIALOGUES,
    EvaluationMetrics,
    evaluate,
    evaluate_oracle,
    greedy_variant,
)
from .outputs import (
    CURVE_FILE,
    POLICY_DIR,
    detect_agents,
    load_policy_sets,
    load_source_policies,
    summarize,
    write_summary,
    write_training_outputs,
)
from .records import DialogueRecorder, read_records
from .training import (
    RunResult,
    TrainingResult,
    train,
    train_run,
    train_sources,
    transferable_policies,
)
from .variants import TRANSFERRED_AGENTS, ExperimentSpec, PolicySet, Variant

__all__ = [
    "Variant",
    "ExperimentSpec",
    "PolicySet",
    "TRANSFERRED_AGENTS",
    "EpisodeOutcome",
    "run_episode",
    "EvaluationMetrics",
    "DEFAULT_EVAL_DIALOGUES",
    "evaluate",
    "evaluate_oracle",
    "greedy_variant",
    "Checkpoint",
    "CurvePoint",
    "LearningCurve",
    "CURVE_HEADER",
    "write_curve_csv",
    "read_curve_csv",
    "RunResult",
    "TrainingResult",
    "train",
    "train_run",
    "train_sources",
    "transferable_policies",
    "reproduce",
    "DialogueRecorder",
    "read_records",
    "write_training_outputs",
    "load_policy_sets",
    "load_source_policies",
    "detect_agents",
    "summarize",
    "write_summary",
    "CURVE_FILE",
    "POLICY_DIR",
]
