"""Seeded random streams.

Every stochastic component takes an explicit ``numpy.random.Generator``.
Streams are keyed by integer tuples so that a training run, an episode or an
evaluation dialogue always sees the same draws regardless of scheduling.
"""

from __future__ import annotations

import numpy as np

from ..exceptions import ConfigurationError

TRAIN_STREAM = 0
EVAL_STREAM = 1


def derive_rng(*keys: int) -> np.random.Generator:
    """Return a generator seeded from a tuple of non-negative integers.

    Raises:
        ConfigurationError: If no key is given or a key is negative.
    """
    if not keys:
        raise ConfigurationError("derive_rng needs at least one key")
    seeds = [int(k) for k in keys]
    negative = [k for k in seeds if k < 0]
    if negative:
        raise ConfigurationError(
            f"Seeds must be non-negative (got: {negative[0]})", context={"keys": seeds}
        )
    return np.random.default_rng(seeds)


def run_seed(seed: int, run_index: int) -> int:
    """Seed of an independent training run."""
    return int(seed) + int(run_index)
