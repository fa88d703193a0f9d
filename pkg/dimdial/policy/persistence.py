"""JSON persistence of trained policies."""

from __future__ import annotations

import json
from collections.abc import Mapping
from pathlib import Path
from typing import Any

import numpy as np

from ..acts import ACTION_SETS, Agent
from ..exceptions import DataFileError, PolicyCompatibilityError
from ..state import FEATURE_SCHEMA_VERSION
from .linear import LinearQPolicy

POLICY_FORMAT = "dimdial-policy"
POLICY_VERSION = 1


def save_policy(policy: LinearQPolicy) -> dict[str, Any]:
    """Lossless record of a policy."""
    return {
        "format": POLICY_FORMAT,
        "version": POLICY_VERSION,
        "agent": policy.agent.value,
        "feature_schema": policy.schema_version,
        "action_count": policy.action_count,
        "feature_len": policy.feature_len,
        "actions": [a.label for a in ACTION_SETS[policy.agent]],
        "weights": policy.weights.tolist(),
    }


def load_policy(
    record: Mapping[str, Any],
    agent: Agent | None = None,
    feature_len: int | None = None,
) -> LinearQPolicy:
    """Rebuild a policy from its record.

    Args:
        record: Output of ``save_policy``.
        agent: Agent the policy is loaded into; checked against the record.
        feature_len: Feature length of that agent; checked against the record.

    Raises:
        PolicyCompatibilityError: On any format, schema, agent or shape mismatch.
    """
    if record.get("format") != POLICY_FORMAT:
        raise PolicyCompatibilityError("Not a policy record", expected=POLICY_FORMAT,
                                       found=record.get("format"))
    if record.get("version") != POLICY_VERSION:
        raise PolicyCompatibilityError("Unsupported policy record version",
                                       expected=POLICY_VERSION, found=record.get("version"))
    if record.get("feature_schema") != FEATURE_SCHEMA_VERSION:
        raise PolicyCompatibilityError("Feature schema mismatch", expected=FEATURE_SCHEMA_VERSION,
                                       found=record.get("feature_schema"))
    try:
        stored_agent = Agent(record.get("agent"))
    except ValueError:
        raise PolicyCompatibilityError("Unknown agent label", found=record.get("agent")) from None
    if agent is not None and stored_agent is not agent:
        raise PolicyCompatibilityError("Policy belongs to another agent",
                                       expected=agent.value, found=stored_agent.value)
    if feature_len is not None and record.get("feature_len") != feature_len:
        raise PolicyCompatibilityError("Feature length mismatch",
                                       expected=feature_len, found=record.get("feature_len"))
    weights = np.asarray(record.get("weights"), dtype=np.float64)
    expected_shape = (len(ACTION_SETS[stored_agent]), record.get("feature_len"))
    if weights.shape != expected_shape or record.get("action_count") != expected_shape[0]:
        raise PolicyCompatibilityError("Weight shape mismatch", expected=expected_shape,
                                       found=weights.shape)
    return LinearQPolicy(stored_agent, weights, str(record["feature_schema"]))


def write_policy(policy: LinearQPolicy, path: str | Path) -> Path:
    """Write a policy record to ``path``."""
    file_path = Path(path)
    try:
        file_path.parent.mkdir(parents=True, exist_ok=True)
        file_path.write_text(json.dumps(save_policy(policy)) + "\n", encoding="utf-8")
    except OSError as e:
        raise DataFileError(f"Cannot write policy: {e}", path=str(file_path)) from e
    return file_path


def read_policy(
    path: str | Path,
    agent: Agent | None = None,
    feature_len: int | None = None,
) -> LinearQPolicy:
    """Read a policy record from ``path``."""
    file_path = Path(path)
    try:
        record = json.loads(file_path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise DataFileError(f"Cannot read policy: {e}", path=str(file_path)) from e
    try:
        return load_policy(record, agent=agent, feature_len=feature_len)
    except PolicyCompatibilityError as e:
        e.context["path"] = str(file_path)
        raise


def policy_filename(agent: Agent) -> str:
    return f"{agent.value}.json"


def write_policy_set(policies: Mapping[Agent, LinearQPolicy], directory: str | Path) -> list[Path]:
    """Write one file per agent into ``directory``."""
    return [write_policy(p, Path(directory) / policy_filename(a)) for a, p in policies.items()]


def read_policy_set(
    directory: str | Path,
    agents: tuple[Agent, ...],
    feature_lens: Mapping[Agent, int] | None = None,
) -> dict[Agent, LinearQPolicy]:
    """Read the named agents' policies from ``directory``."""
    base = Path(directory)
    if not base.is_dir():
        raise DataFileError("Policy directory not found", path=str(base))
    return {
        agent: read_policy(base / policy_filename(agent), agent,
                           feature_lens.get(agent) if feature_lens else None)
        for agent in agents
    }
