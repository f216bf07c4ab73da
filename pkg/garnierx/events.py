from __future__ import annotations

import json
import sys
from typing import TextIO

_enabled = False
_stream: TextIO | None = None


def configure(enabled: bool, stream: TextIO | None = None) -> None:
    global _enabled, _stream
    _enabled = bool(enabled)
    _stream = stream


def emit(event: str, payload: dict) -> None:
    if not _enabled:
        return
    line = json.dumps({"event": event, **payload}, ensure_ascii=False)
    print(line, file=_stream or sys.stderr, flush=True)


def log(level: str, message: str) -> None:
    emit("log", {"level": level, "message": message})
