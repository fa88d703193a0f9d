"""Tests for logging utilities."""

from __future__ import annotations

import json
import logging
from pathlib import Path

import pytest

from dimdial.utils.logging import ConsoleFormatter, get_logger, setup_logging


@pytest.fixture
def dimdial_logger():
    logger = logging.getLogger("dimdial")
    old_handlers, old_level = list(logger.handlers), logger.level
    yield logger
    logger.handlers = old_handlers
    logger.setLevel(old_level)


class TestSetupLogging:
    """Tests for setup_logging function."""

    def test_configures_logger_with_console_handler(self, dimdial_logger):
        setup_logging(level="INFO")
        assert dimdial_logger.level == logging.INFO
        console_handlers = [
            h for h in dimdial_logger.handlers if isinstance(h, logging.StreamHandler)
        ]
        assert len(console_handlers) >= 1

    def test_numeric_level(self, dimdial_logger):
        setup_logging(level=logging.DEBUG)
        assert dimdial_logger.level == logging.DEBUG

    def test_file_handler_created(self, dimdial_logger, tmp_path: Path):
        log_file = tmp_path / "logs" / "dimdial.log"
        setup_logging(level="INFO", log_file=log_file)
        assert log_file.parent.exists()
        assert len(dimdial_logger.handlers) == 2

    def test_clears_existing_handlers(self, dimdial_logger):
        dimdial_logger.addHandler(logging.StreamHandler())
        setup_logging(level="INFO")
        assert len(dimdial_logger.handlers) == 1

    def test_json_lines(self, dimdial_logger, tmp_path: Path):
        log_file = tmp_path / "dimdial.log"
        setup_logging(level="INFO", log_file=log_file, json_format=True)
        get_logger("experiment").info("run %d done", 3)
        for handler in dimdial_logger.handlers:
            handler.flush()
        record = json.loads(log_file.read_text().splitlines()[-1])
        assert record["message"] == "run 3 done"
        assert record["level"] == "INFO"
        assert record["logger"] == "dimdial.experiment"

    def test_json_carries_run_context(self, dimdial_logger, tmp_path: Path):
        log_file = tmp_path / "dimdial.log"
        setup_logging(level="INFO", log_file=log_file, json_format=True)
        get_logger("experiment.training").info(
            "checkpoint", extra={"variant": "multi-dim", "run": 2, "dialogues": 5000}
        )
        for handler in dimdial_logger.handlers:
            handler.flush()
        record = json.loads(log_file.read_text().splitlines()[-1])
        assert (record["variant"], record["run"], record["dialogues"]) == ("multi-dim", 2, 5000)
        assert "reward" not in record


class TestConsoleFormatter:
    """Tests for the colored console formatter."""

    def _record(self) -> logging.LogRecord:
        return logging.LogRecord("dimdial.test", logging.WARNING, __file__, 1, "careful", None, None)

    def test_plain_text(self):
        line = ConsoleFormatter(use_colors=False).format(self._record())
        assert "| WARNING  | dimdial.test | careful" in line

    def test_colored_level(self):
        record = self._record()
        line = ConsoleFormatter(use_colors=True).format(record)
        assert "\033[33m" in line
        assert record.levelname == "WARNING"


class TestGetLogger:
    """Tests for get_logger function."""

    def test_returns_named_logger(self):
        logger = get_logger("test_module")
        assert logger.name == "dimdial.test_module"
