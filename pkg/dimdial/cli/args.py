"""Command-line argument parsing and logging setup."""

from __future__ import annotations

import argparse
import os
from collections.abc import Sequence
from pathlib import Path

from .._version import __version__
from ..acts import MULTI_DIM_AGENTS, Agent
from ..utils.logging import setup_logging as setup_structured_logging

VARIANTS = ("one-dim", "multi-dim", "multi-dim-transfer", "multi-dim-transfer-adapt")


def setup_logging(verbose: bool = False, debug: bool = False) -> None:
    """Configure logging level based on verbosity.

    The log file and JSON format come from DIMDIAL_LOG_FILE and
    DIMDIAL_LOG_FORMAT, which --log-file and --json-logs set.
    """
    level = "WARNING"
    if debug:
        level = "DEBUG"
    elif verbose:
        level = "INFO"

    log_file = os.environ.get("DIMDIAL_LOG_FILE")
    json_format = os.environ.get("DIMDIAL_LOG_FORMAT", "").lower() == "json"

    setup_structured_logging(
        level=level,
        log_file=Path(log_file) if log_file else None,
        json_format=json_format,
    )


def parse_agents(value: str) -> frozenset[Agent]:
    """Parse a comma-separated agent list such as ``AutoFeedback,SocialOblMan``."""
    names = {a.value.lower(): a for a in MULTI_DIM_AGENTS}
    agents = set()
    for token in (t.strip() for t in value.split(",")):
        if not token:
            continue
        if token.lower() not in names:
            raise argparse.ArgumentTypeError(
                f"unknown agent '{token}' (choose from {', '.join(a.value for a in MULTI_DIM_AGENTS)})"
            )
        agents.add(names[token.lower()])
    return frozenset(agents)


def _probability(value: str) -> float:
    number = float(value)
    if not 0.0 <= number <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} is not in [0, 1]")
    return number


def _common_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("-v", "--verbose", action="store_true", help="Enable verbose output")
    parent.add_argument("--debug", action="store_true", help="Enable debug logging")
    parent.add_argument("--log-file", type=Path, default=None,
                        help="Path to log file for persistent logging")
    parent.add_argument("--json-logs", action="store_true", help="Output logs in JSON format")
    parent.add_argument("--config", type=Path, default=None,
                        help="Experiment config file (JSON or TOML)")
    parent.add_argument("-p", "--profile", default=None,
                        help="Configuration profile (built in: 'full', 'smoke')")
    parent.add_argument("--db", type=Path, default=None,
                        help="Venue database file (default: generated from --db-seed)")
    parent.add_argument("--db-seed", type=int, default=None,
                        help="Seed of the generated venue database")
    return parent


def _experiment_options() -> argparse.ArgumentParser:
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--seed", type=int, default=None, help="Base random seed")
    parent.add_argument("--runs", type=int, default=None, help="Independent training runs")
    parent.add_argument("--dialogues", type=int, default=None,
                        help="Training dialogues per run")
    parent.add_argument("--eval-dialogues", type=int, default=None,
                        help="Evaluation dialogues per checkpoint")
    parent.add_argument("--checkpoint-interval", type=int, default=None,
                        help="Training dialogues between evaluations")
    parent.add_argument("--error-rate", type=_probability, default=None,
                        help="Top-hypothesis error rate of the simulated channel")
    parent.add_argument("--workers", type=int, default=None,
                        help="Run training runs in this many processes")
    parent.add_argument("--log-dialogues", action="store_true",
                        help="Write per-turn JSON-lines logs of training dialogues")
    parent.add_argument("-o", "--out", type=Path, default=None, help="Output directory")
    return parent


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    experiment = _experiment_options()
    parser = argparse.ArgumentParser(
        prog="dimdial",
        description="Multi-dimensional statistical dialogue management experiments.",
        epilog="""
Examples:
  %(prog)s enumerate-combinations
  %(prog)s train --variant one-dim --seed 1
  %(prog)s train --variant multi-dim --seed 42 --runs 2 --dialogues 2000
  %(prog)s transfer --adapt --source-policies runs/multi-dim
  %(prog)s evaluate --policies runs/one-dim --error-rate 0
  %(prog)s chat --policies runs/one-dim/policies/run-00

Environment variables:
  DIMDIAL_*           Experiment settings (see README)
  DIMDIAL_LOG_FILE    Path to log file for persistent logging
  DIMDIAL_LOG_FORMAT  Set to 'json' for structured JSON logging
        """,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    gen_db = commands.add_parser("gen-db", parents=[common], help="Generate the venue database")
    gen_db.add_argument("-o", "--out", type=Path, required=True, help="Database JSON file")
    gen_db.add_argument("--seed", type=int, default=None, help="Database seed (default: 0)")
    gen_db.add_argument("--ontology-out", type=Path, default=None,
                        help="Also write the ontology JSON here")

    train = commands.add_parser("train", parents=[common, experiment],
                                help="Train policies and write a learning curve")
    train.add_argument("--variant", choices=VARIANTS, default="one-dim",
                       help="Manager variant (default: one-dim)")
    train.add_argument("--source-policies", type=Path, default=None,
                       help="Source AutoFeedback/SocialOblMan policies for transfer variants")
    train.add_argument("--freeze", type=parse_agents, default=None,
                       help="Comma-separated agents to keep fixed (transfer variants)")

    transfer = commands.add_parser("transfer", parents=[common, experiment],
                                   help="Train the task agent on top of transferred policies")
    transfer.add_argument("--adapt", action="store_true",
                          help="Keep updating the transferred policies (transfer+adapt)")
    transfer.add_argument("--source-policies", type=Path, default=None,
                          help="Source policies (default: train a multi-dim source first)")
    transfer.add_argument("--freeze", type=parse_agents, default=None,
                          help="Comma-separated agents to keep fixed")

    evaluate = commands.add_parser("evaluate", parents=[common],
                                   help="Evaluate trained policies greedily")
    evaluate.add_argument("--policies", type=Path, default=None,
                          help="Policy directory (agent files, run-NN sets or a train output)")
    evaluate.add_argument("--oracle", action="store_true",
                          help="Evaluate the goal-reading scripted manager instead")
    evaluate.add_argument("-n", "--n-dialogues", type=int, default=3000,
                          help="Evaluation dialogues (default: 3000)")
    evaluate.add_argument("--error-rate", type=_probability, default=None,
                          help="Top-hypothesis error rate")
    evaluate.add_argument("--seed", type=int, default=None, help="Evaluation seed")
    evaluate.add_argument("--json", action="store_true", help="Print metrics as JSON")

    chat = commands.add_parser("chat", parents=[common],
                               help="Talk to a trained manager in act notation")
    chat.add_argument("--policies", type=Path, required=True, help="Policy directory")
    chat.add_argument("--run", type=int, default=0,
                      help="Which run's policies to use from a multi-run directory")
    chat.add_argument("--seed", type=int, default=None, help="Random seed")
    chat.add_argument("--tui", action="store_true", help="Open the full-screen chat window")

    combos = commands.add_parser("enumerate-combinations", parents=[common],
                                 help="Tally the 30 candidate combinations by output act")
    combos.add_argument("--json", action="store_true", help="Print the tally as JSON")

    commands.add_parser("reproduce", parents=[common, experiment],
                        help="Train all four variants and write a comparison summary")
    return parser


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    """Parse command-line arguments."""
    args = build_parser().parse_args(argv)

    # Handle log file from CLI args (overrides environment)
    if args.log_file:
        os.environ["DIMDIAL_LOG_FILE"] = str(args.log_file)
    if args.json_logs:
        os.environ["DIMDIAL_LOG_FORMAT"] = "json"

    return args
