"""Per-turn dialogue records written as JSON lines."""

from __future__ import annotations

import json
from pathlib import Path
from types import TracebackType
from typing import IO, Any

from ..exceptions import DataFileError


class DialogueRecorder:
    """Append-only JSON-lines writer; one object per line."""

    def __init__(self, path: str | Path) -> None:
        self.path = Path(path)
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            self._stream: IO[str] | None = open(self.path, "w", encoding="utf-8")
        except OSError as e:
            raise DataFileError(f"Cannot open dialogue log: {e}", path=str(self.path)) from e
        self.count = 0

    def write(self, record: dict[str, Any]) -> None:
        if self._stream is None:
            raise DataFileError("Dialogue log is closed", path=str(self.path))
        self._stream.write(json.dumps(record, sort_keys=True) + "\n")
        self.count += 1

    def close(self) -> None:
        if self._stream is not None:
            self._stream.close()
            self._stream = None

    def __enter__(self) -> DialogueRecorder:
        return self

    def __exit__(
        self,
        exc_type: type[BaseException] | None,
        exc: BaseException | None,
        tb: TracebackType | None,
    ) -> None:
        self.close()


def read_records(path: str | Path) -> list[dict[str, Any]]:
    """Load every record of a JSON-lines dialogue log."""
    file_path = Path(path)
    try:
        with open(file_path, encoding="utf-8") as f:
            return [json.loads(line) for line in f if line.strip()]
    except (OSError, json.JSONDecodeError) as e:
        raise DataFileError(f"Cannot read dialogue log: {e}", path=str(file_path)) from e
