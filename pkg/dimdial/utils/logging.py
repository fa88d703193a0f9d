"""Logging utilities for dimdial.

Console output is colored text; ``json_format`` switches every handler to
one JSON object per record. Experiment code attaches run context through
``extra`` (see ``CONTEXT_FIELDS``), which JSON records carry as top-level
keys so a training log can be filtered by variant and run.
"""

from __future__ import annotations

import json
import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Any

_LEVEL_COLORS = {
    logging.DEBUG: "\033[36m",
    logging.INFO: "\033[32m",
    logging.WARNING: "\033[33m",
    logging.ERROR: "\033[31m",
    logging.CRITICAL: "\033[1;31m",
}
_RESET = "\033[0m"

TEXT_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"

# ``extra`` keys copied into JSON records.
CONTEXT_FIELDS = ("variant", "run", "dialogues", "reward", "success", "length")

MAX_LOG_BYTES = 5 * 1024 * 1024
LOG_BACKUPS = 3


class ConsoleFormatter(logging.Formatter):
    """Text formatter that colors the level name on a terminal."""

    def __init__(self, fmt: str = TEXT_FORMAT, use_colors: bool | None = None):
        super().__init__(fmt)
        self.use_colors = sys.stderr.isatty() if use_colors is None else use_colors

    def format(self, record: logging.LogRecord) -> str:
        if not self.use_colors:
            return super().format(record)
        plain = record.levelname
        record.levelname = f"{_LEVEL_COLORS.get(record.levelno, '')}{plain:<8}{_RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = plain


class JsonFormatter(logging.Formatter):
    """One JSON object per line, with any run context the caller attached."""

    def format(self, record: logging.LogRecord) -> str:
        payload: dict[str, Any] = {
            "time": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        for key in CONTEXT_FIELDS:
            if hasattr(record, key):
                payload[key] = getattr(record, key)
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload, default=str)


def setup_logging(
    level: str | int = "INFO",
    log_file: Path | str | None = None,
    json_format: bool = False,
) -> None:
    """Configure the ``dimdial`` logger.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR).
        log_file: Optional path to log file with rotation.
        json_format: Emit one JSON object per record instead of text lines.
    """
    logger = logging.getLogger("dimdial")
    logger.setLevel(level if isinstance(level, int) else getattr(logging, level.upper()))
    logger.handlers.clear()

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(JsonFormatter() if json_format else ConsoleFormatter())
    logger.addHandler(console)

    if log_file:
        log_path = Path(log_file)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(log_path, maxBytes=MAX_LOG_BYTES,
                                           backupCount=LOG_BACKUPS)
        file_handler.setFormatter(
            JsonFormatter() if json_format else logging.Formatter(TEXT_FORMAT)
        )
        logger.addHandler(file_handler)


def get_logger(name: str) -> logging.Logger:
    """Get a logger under the dimdial namespace."""
    return logging.getLogger(f"dimdial.{name}")
