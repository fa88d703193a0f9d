"""Configuration management for dimdial experiments.

Values are layered, lowest precedence first: built-in defaults, a named
profile, a JSON/TOML config file, ``DIMDIAL_*`` environment variables (also
read from ``.env``) and finally explicit command-line flags.
"""

from __future__ import annotations

import json
import logging
import os
import threading
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any

from .exceptions import ConfigurationError, DataFileError

logger = logging.getLogger(__name__)

try:
    from dotenv import load_dotenv
except ImportError:
    load_dotenv = None  # type: ignore[assignment]

CONFIG_DIR = Path.home() / ".config" / "dimdial"


@dataclass
class TrainingConfig:
    """Monte Carlo training schedule and reward-independent hyperparameters."""

    gamma: float = 0.95
    alpha: float = 0.001
    epsilon_start: float = 0.4
    epsilon_end: float = 0.0
    total_training_dialogues: int = 40000
    eval_dialogues_per_point: int = 3000
    checkpoint_interval: int = 5000
    runs: int = 10
    error_rate: float = 0.2
    max_system_turns: int = 30
    seed: int = 0

    def validate(self) -> list[str]:
        """Validate the schedule and return a list of errors."""
        errors = []
        if not 0.0 <= self.epsilon_end <= self.epsilon_start <= 1.0:
            errors.append(
                "epsilon must satisfy 0 <= epsilon_end <= epsilon_start <= 1 "
                f"(got: start={self.epsilon_start}, end={self.epsilon_end})"
            )
        if not 0.0 < self.gamma <= 1.0:
            errors.append(f"gamma must be in (0, 1] (got: {self.gamma})")
        if self.alpha <= 0.0:
            errors.append(f"alpha must be positive (got: {self.alpha})")
        if self.total_training_dialogues < 0:
            errors.append(
                f"total_training_dialogues must be >= 0 (got: {self.total_training_dialogues})"
            )
        if self.eval_dialogues_per_point < 1:
            errors.append(
                f"eval_dialogues_per_point must be >= 1 (got: {self.eval_dialogues_per_point})"
            )
        if self.checkpoint_interval < 1:
            errors.append(f"checkpoint_interval must be >= 1 (got: {self.checkpoint_interval})")
        if self.runs < 1:
            errors.append(f"runs must be >= 1 (got: {self.runs})")
        if not 0.0 <= self.error_rate <= 1.0:
            errors.append(f"error_rate must be in [0, 1] (got: {self.error_rate})")
        if self.max_system_turns < 1:
            errors.append(f"max_system_turns must be >= 1 (got: {self.max_system_turns})")
        if self.seed < 0:
            errors.append(f"seed must be non-negative (got: {self.seed})")
        return errors

    def is_valid(self) -> bool:
        return not self.validate()

    def epsilon_at(self, dialogue_index: int) -> float:
        """Exploration rate for training dialogue ``dialogue_index``, decaying linearly."""
        if self.total_training_dialogues == 0:
            return self.epsilon_end
        fraction = min(1.0, dialogue_index / self.total_training_dialogues)
        return self.epsilon_start + (self.epsilon_end - self.epsilon_start) * fraction

    def checkpoints(self) -> list[int]:
        """Dialogue counts at which policies are evaluated."""
        points = list(range(0, self.total_training_dialogues + 1, self.checkpoint_interval))
        if points[-1] != self.total_training_dialogues:
            points.append(self.total_training_dialogues)
        return points


@dataclass
class ErrorConfig:
    """Simulated understanding errors."""

    error_rate: float = 0.2
    nbest_len: int = 3
    confidence_concentration: float = 5.0

    def validate(self) -> list[str]:
        errors = []
        if not 0.0 <= self.error_rate <= 1.0:
            errors.append(f"error_rate must be in [0, 1] (got: {self.error_rate})")
        if self.nbest_len < 1:
            errors.append(f"nbest_len must be >= 1 (got: {self.nbest_len})")
        if self.confidence_concentration <= 0.0:
            errors.append(
                f"confidence_concentration must be positive (got: {self.confidence_concentration})"
            )
        return errors

    def is_valid(self) -> bool:
        return not self.validate()


@dataclass
class ManagerConfig:
    """Decision thresholds of the dialogue manager."""

    belief_threshold: float = 0.0
    request_threshold: float = 0.2

    def validate(self) -> list[str]:
        errors = []
        if not 0.0 <= self.belief_threshold < 1.0:
            errors.append(f"belief_threshold must be in [0, 1) (got: {self.belief_threshold})")
        if not 0.0 <= self.request_threshold < 1.0:
            errors.append(f"request_threshold must be in [0, 1) (got: {self.request_threshold})")
        return errors

    def is_valid(self) -> bool:
        return not self.validate()


@dataclass
class ExperimentConfig:
    """Everything one experiment invocation needs."""

    training: TrainingConfig = field(default_factory=TrainingConfig)
    errors: ErrorConfig = field(default_factory=ErrorConfig)
    manager: ManagerConfig = field(default_factory=ManagerConfig)
    database_seed: int = 0
    log_dialogues: bool = False
    workers: int = 1

    def validate(self) -> list[str]:
        problems = [f"training: {e}" for e in self.training.validate()]
        problems += [f"errors: {e}" for e in self.errors.validate()]
        problems += [f"manager: {e}" for e in self.manager.validate()]
        if self.workers < 1:
            problems.append(f"workers must be >= 1 (got: {self.workers})")
        if self.database_seed < 0:
            problems.append(f"database_seed must be non-negative (got: {self.database_seed})")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def require_valid(self) -> ExperimentConfig:
        """Return self, or raise ConfigurationError listing every problem."""
        problems = self.validate()
        if problems:
            raise ConfigurationError("Invalid configuration: " + "; ".join(problems))
        return self

    def error_config(self) -> ErrorConfig:
        """Error model settings with the training error rate applied."""
        return replace(self.errors, error_rate=self.training.error_rate)

    def to_dict(self) -> dict[str, Any]:
        return {
            "training": {f.name: getattr(self.training, f.name) for f in fields(self.training)},
            "errors": {
                f.name: getattr(self.errors, f.name)
                for f in fields(self.errors) if f.name != "error_rate"
            },
            "manager": {f.name: getattr(self.manager, f.name) for f in fields(self.manager)},
            "database_seed": self.database_seed,
            "log_dialogues": self.log_dialogues,
            "workers": self.workers,
        }


_SECTIONS = ("training", "errors", "manager")
_TOP_LEVEL = ("database_seed", "log_dialogues", "workers")


def _field_types(obj: Any) -> dict[str, Callable[[Any], Any]]:
    return {f.name: type(getattr(obj, f.name)) for f in fields(obj)}


def _coerce(kind: Callable[[Any], Any], value: Any) -> Any:
    if kind is bool and isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes", "on")
    if kind is int and isinstance(value, float) and not value.is_integer():
        raise ValueError(f"expected an integer, got {value}")
    return kind(value)


def _locate(config: ExperimentConfig, key: str) -> tuple[Any, str] | None:
    if key in _TOP_LEVEL:
        return config, key
    for section in _SECTIONS:
        target = getattr(config, section)
        if key in _field_types(target):
            return target, key
    return None


def apply_overrides(config: ExperimentConfig, values: Mapping[str, Any], source: str) -> ExperimentConfig:
    """Apply nested (``{"training": {...}}``) or flat (``{"seed": 3}``) settings in place.

    Raises:
        ConfigurationError: For unknown keys or values of the wrong type.
    """
    for key, value in values.items():
        if key in _SECTIONS and isinstance(value, Mapping):
            target = getattr(config, key)
            types = _field_types(target)
            for name, item in value.items():
                if name not in types:
                    raise ConfigurationError(f"Unknown setting '{key}.{name}' in {source}")
                _assign(target, name, types[name], item, source)
            continue
        located = _locate(config, key)
        if located is None:
            raise ConfigurationError(f"Unknown setting '{key}' in {source}")
        target, name = located
        _assign(target, name, _field_types(target)[name], value, source)
    return config


def _assign(target: Any, name: str, kind: Callable[[Any], Any], value: Any, source: str) -> None:
    try:
        setattr(target, name, _coerce(kind, value))
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Invalid value for '{name}' in {source}: {e}") from e


# --- Profiles ---

PROFILES: dict[str, dict[str, Any]] = {
    "full": {},
    "smoke": {
        "runs": 2,
        "total_training_dialogues": 2000,
        "eval_dialogues_per_point": 200,
        "checkpoint_interval": 500,
    },
}


def _read_toml(path: Path) -> dict[str, Any]:
    try:
        import tomllib  # type: ignore[import-not-found]
    except ImportError:
        import tomli as tomllib  # type: ignore[import-not-found,no-redef]

    with open(path, "rb") as f:
        data: dict[str, Any] = tomllib.load(f)
    return data


def _load_user_profiles() -> dict[str, dict[str, Any]]:
    """Load user-defined profiles from ~/.config/dimdial/profiles.toml."""
    config_path = CONFIG_DIR / "profiles.toml"
    if not config_path.exists():
        return {}
    try:
        data = _read_toml(config_path)
    except Exception as e:
        logger.warning("Failed to load user profiles from %s: %s", config_path, e)
        return {}
    raw_profiles = data.get("profiles", data)
    if not isinstance(raw_profiles, dict):
        return {}
    return {name: dict(values) for name, values in raw_profiles.items() if isinstance(values, dict)}


def available_profiles() -> dict[str, dict[str, Any]]:
    """Built-in profiles merged with user-defined ones."""
    merged = dict(PROFILES)
    merged.update(_load_user_profiles())
    return merged


def get_profile(name: str) -> dict[str, Any]:
    profiles = available_profiles()
    if name not in profiles:
        raise ConfigurationError(
            f"Unknown profile '{name}'. Available: {', '.join(sorted(profiles))}"
        )
    return profiles[name]


def read_config_file(path: str | Path) -> dict[str, Any]:
    """Read a JSON or TOML experiment config file."""
    file_path = Path(path)
    try:
        if file_path.suffix.lower() == ".toml":
            return _read_toml(file_path)
        data = json.loads(file_path.read_text(encoding="utf-8"))
    except Exception as e:
        raise DataFileError(f"Cannot read config file: {e}", path=str(file_path)) from e
    if not isinstance(data, dict):
        raise DataFileError("Config file must hold an object", path=str(file_path))
    return data


# --- Environment ---

ENV_VARS: dict[str, str] = {
    "DIMDIAL_SEED": "seed",
    "DIMDIAL_RUNS": "runs",
    "DIMDIAL_DIALOGUES": "total_training_dialogues",
    "DIMDIAL_EVAL_DIALOGUES": "eval_dialogues_per_point",
    "DIMDIAL_CHECKPOINT_INTERVAL": "checkpoint_interval",
    "DIMDIAL_ERROR_RATE": "error_rate",
    "DIMDIAL_GAMMA": "gamma",
    "DIMDIAL_ALPHA": "alpha",
    "DIMDIAL_EPSILON_START": "epsilon_start",
    "DIMDIAL_EPSILON_END": "epsilon_end",
    "DIMDIAL_MAX_TURNS": "max_system_turns",
    "DIMDIAL_NBEST_LEN": "nbest_len",
    "DIMDIAL_CONFIDENCE_CONCENTRATION": "confidence_concentration",
    "DIMDIAL_BELIEF_THRESHOLD": "belief_threshold",
    "DIMDIAL_REQUEST_THRESHOLD": "request_threshold",
    "DIMDIAL_DATABASE_SEED": "database_seed",
    "DIMDIAL_WORKERS": "workers",
    "DIMDIAL_LOG_DIALOGUES": "log_dialogues",
}


def load_env_files(env_file: str | Path | None = None) -> None:
    """Load ``.env`` files into the process environment (never overriding it)."""
    if load_dotenv is None:
        return
    if env_file:
        load_dotenv(env_file)
        return
    load_dotenv()
    standard_env = CONFIG_DIR / ".env"
    if standard_env.exists():
        load_dotenv(standard_env, override=False)


def apply_environment(config: ExperimentConfig) -> ExperimentConfig:
    """Apply ``DIMDIAL_*`` variables; invalid values keep the previous setting."""
    for var, key in ENV_VARS.items():
        raw = os.getenv(var)
        if raw is None or raw == "":
            continue
        try:
            apply_overrides(config, {key: raw}, var)
        except ConfigurationError:
            located = _locate(config, key)
            previous = getattr(located[0], key) if located else None
            logger.warning("Invalid %s value %r, keeping: %s", var, raw, previous)
    return config


def load_config(
    profile: str | None = None,
    config_file: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
    env_file: str | Path | None = None,
    use_environment: bool = True,
) -> ExperimentConfig:
    """Build an ExperimentConfig from every configuration layer."""
    config = ExperimentConfig()
    if profile:
        apply_overrides(config, get_profile(profile), f"profile '{profile}'")
    if config_file:
        apply_overrides(config, read_config_file(config_file), str(config_file))
    if use_environment:
        load_env_files(env_file)
        apply_environment(config)
    if overrides:
        apply_overrides(config, {k: v for k, v in overrides.items() if v is not None},
                        "command line")
    return config


# Global config singleton
_config: ExperimentConfig | None = None
_config_lock = threading.Lock()


def get_config(reload: bool = False) -> ExperimentConfig:
    global _config
    if _config is None or reload:
        with _config_lock:
            if _config is None or reload:
                _config = load_config()
    return _config


def set_config(config: ExperimentConfig) -> None:
    global _config
    with _config_lock:
        _config = config
