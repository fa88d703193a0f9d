"""Utility functions for dimdial."""

from .logging import get_logger, setup_logging
from .rng import derive_rng, run_seed

__all__ = [
    "derive_rng",
    "run_seed",
    "setup_logging",
    "get_logger",
]
