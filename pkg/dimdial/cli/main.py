"""Main CLI entry point."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections.abc import Callable, Sequence
from dataclasses import asdict
from pathlib import Path
from typing import Any

from ..acts import SystemAction, enumerate_combination_table
from ..config import ExperimentConfig, load_config, set_config
from ..exceptions import ConfigurationError, DimdialError
from ..experiment import (
    EvaluationMetrics,
    ExperimentSpec,
    LearningCurve,
    Variant,
    evaluate,
    evaluate_oracle,
    greedy_variant,
    load_policy_sets,
    load_source_policies,
    reproduce,
    train,
    train_sources,
    transferable_policies,
    write_training_outputs,
)
from ..manager import DialogueManager
from ..ontology import Database, dump_database, dump_ontology, generate_database, load_database
from ..utils.rng import derive_rng
from .args import parse_args, setup_logging

logger = logging.getLogger(__name__)

DEFAULT_OUT = Path("runs")


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """Resolve every configuration layer, with explicit flags on top."""
    overrides: dict[str, Any] = {
        "seed": getattr(args, "seed", None),
        "runs": getattr(args, "runs", None),
        "total_training_dialogues": getattr(args, "dialogues", None),
        "eval_dialogues_per_point": getattr(args, "eval_dialogues", None),
        "checkpoint_interval": getattr(args, "checkpoint_interval", None),
        "error_rate": getattr(args, "error_rate", None),
        "workers": getattr(args, "workers", None),
        "database_seed": getattr(args, "db_seed", None),
        "log_dialogues": True if getattr(args, "log_dialogues", False) else None,
    }
    config = load_config(profile=args.profile, config_file=args.config, overrides=overrides)
    config.require_valid()
    set_config(config)
    return config


def _database(args: argparse.Namespace, config: ExperimentConfig) -> Database:
    if args.db:
        return load_database(args.db)
    return generate_database(config.database_seed)


def _print_curve(curve: LearningCurve) -> None:
    print(f"{'dialogues':>10} {'reward':>9} {'success':>8} {'length':>7} {'std':>7}")
    for p in curve.points:
        print(f"{p.dialogues:>10} {p.mean_reward:>9.3f} {p.mean_success:>8.3f} "
              f"{p.mean_length:>7.2f} {p.std_reward:>7.3f}")


def _print_metrics(label: str, metrics: EvaluationMetrics) -> None:
    print(f"{label}: reward {metrics.mean_reward:.3f} ± {metrics.stderr_reward:.3f}, "
          f"success {metrics.success_rate:.3f} ± {metrics.stderr_success:.3f}, "
          f"length {metrics.mean_length:.2f} ± {metrics.stderr_length:.2f}, "
          f"discounted return {metrics.mean_discounted_return:.3f} "
          f"({metrics.dialogues} dialogues)")


def cmd_gen_db(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else build_config(args).database_seed
    db = generate_database(seed)
    dump_database(db, args.out)
    print(f"Wrote {len(db)} venues to {args.out}")
    if args.ontology_out:
        dump_ontology(db.ontology, args.ontology_out)
        print(f"Wrote ontology to {args.ontology_out}")
    return 0


def _run_training(spec: ExperimentSpec, args: argparse.Namespace, database: Database) -> int:
    out = args.out or DEFAULT_OUT / spec.variant.value
    result = train(spec, database=database, log_dir=out)
    paths = write_training_outputs(result, out)
    _print_curve(result.curve)
    print(f"Learning curve: {paths['curve']}")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    config = build_config(args)
    database = _database(args, config)
    variant = Variant(args.variant)
    sources = (
        load_source_policies(args.source_policies, database.ontology)
        if args.source_policies else []
    )
    if variant.is_transfer and not sources:
        raise ConfigurationError(
            f"{variant.value} needs --source-policies (or use the 'transfer' command)"
        )
    spec = ExperimentSpec(variant, config, sources, args.freeze).require_valid()
    return _run_training(spec, args, database)


def cmd_transfer(args: argparse.Namespace) -> int:
    config = build_config(args)
    database = _database(args, config)
    variant = Variant.TRANSFER_ADAPT if args.adapt else Variant.TRANSFER
    if args.source_policies:
        sources = load_source_policies(args.source_policies, database.ontology)
    else:
        source_result = train_sources(ExperimentSpec(variant, config), database=database)
        out = args.out or DEFAULT_OUT / variant.value
        write_training_outputs(source_result, out / "source")
        sources = transferable_policies(source_result)
    spec = ExperimentSpec(variant, config, sources, args.freeze).require_valid()
    return _run_training(spec, args, database)


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = build_config(args)
    database = _database(args, config)
    seed = args.seed if args.seed is not None else config.training.seed
    if args.oracle:
        results = {"oracle": evaluate_oracle(args.n_dialogues, args.error_rate, seed, config, database)}
    elif args.policies:
        sets = load_policy_sets(args.policies, database.ontology)
        results = {
            f"run-{k:02d}": evaluate(policies, args.n_dialogues, args.error_rate, seed,
                                     config, database)
            for k, policies in enumerate(sets)
        }
    else:
        raise ConfigurationError("evaluate needs --policies or --oracle")

    if args.json:
        print(json.dumps({k: asdict(m) for k, m in results.items()}, indent=2))
    else:
        for label, metrics in results.items():
            _print_metrics(label, metrics)
    return 0


def cmd_chat(args: argparse.Namespace) -> int:
    from .chat import ChatSession, run_chat

    config = build_config(args)
    database = _database(args, config)
    sets = load_policy_sets(args.policies, database.ontology)
    if not 0 <= args.run < len(sets):
        raise ConfigurationError(f"--run must be below {len(sets)}")
    manager = DialogueManager(greedy_variant(sets[args.run], database), database.ontology,
                              database, config.manager)
    seed = args.seed if args.seed is not None else config.training.seed
    session = ChatSession(manager, derive_rng(seed))
    if args.tui:
        from .tui import launch_chat_ui

        launch_chat_ui(session)
        return 0
    return run_chat(session, sys.stdin, sys.stdout)


def cmd_enumerate_combinations(args: argparse.Namespace) -> int:
    table = enumerate_combination_table()
    if args.json:
        print(json.dumps({str(k): v for k, v in table.items()}))
        return 0
    for key, count in table.items():
        label = key if isinstance(key, str) else SystemAction(key).name.lower()
        print(f"{key!s:>5}  {label:<18} {count}")
    print(f"{'':>5}  {'total':<18} {sum(table.values())}")
    return 0


def cmd_reproduce(args: argparse.Namespace) -> int:
    config = build_config(args)
    database = _database(args, config)
    out = args.out or DEFAULT_OUT / "reproduce"
    results = reproduce(config, out, database=database)
    for name, result in results.items():
        print(f"== {name}")
        _print_curve(result.curve)
    print(f"Summary: {out / 'summary.json'}")
    return 0


COMMANDS: dict[str, Callable[[argparse.Namespace], int]] = {
    "gen-db": cmd_gen_db,
    "train": cmd_train,
    "transfer": cmd_transfer,
    "evaluate": cmd_evaluate,
    "chat": cmd_chat,
    "enumerate-combinations": cmd_enumerate_combinations,
    "reproduce": cmd_reproduce,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point for the CLI.

    Returns:
        Exit code (0 for success, non-zero for failure).
    """
    args = parse_args(argv)
    setup_logging(verbose=args.verbose, debug=args.debug)

    try:
        return COMMANDS[args.command](args)
    except ConfigurationError as e:
        print(f"Configuration error: {e}", file=sys.stderr)
        logger.debug("Configuration error", exc_info=True)
        return 1
    except DimdialError as e:
        print(f"Error: {e}", file=sys.stderr)
        logger.debug("Command failed", exc_info=True)
        return 1
    except KeyboardInterrupt:
        print("\nCancelled.")
        return 130
    except Exception:
        print("Unexpected error. Run with --debug for details.", file=sys.stderr)
        logger.exception("Unexpected error")
        return 1


if __name__ == "__main__":
    sys.exit(main())
