"""RunReport: the JSON record every CLI run can emit.

Layout (``schema: 1``)::

    {"schema": 1, "command": [...], "seed": int|null,
     "inputs": {"<name>": "<sha256 of canonical DIMACS>"},
     "modes": {...}, "results": {...},
     "timing": {"started": iso8601, "finished": iso8601}}

Everything except ``timing`` is a deterministic function of command, seed and
inputs.  Rationals are written as ``"num/den"`` strings.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Any

SCHEMA_VERSION = 1


def fraction_str(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, Fraction):
        return fraction_str(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        if math.isnan(obj):
            return "nan"
        return obj
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    if hasattr(obj, "to_json"):
        return to_jsonable(obj.to_json())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class RunReport:
    command: list[str]
    seed: int | None = None
    inputs: dict[str, str] = field(default_factory=dict)
    modes: dict[str, str] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    started: str = field(default_factory=_now)
    finished: str | None = None

    def payload(self) -> dict[str, Any]:
        """The deterministic part of the report."""
        return {
            "schema": SCHEMA_VERSION,
            "command": list(self.command),
            "seed": self.seed,
            "inputs": dict(sorted(self.inputs.items())),
            "modes": dict(sorted(self.modes.items())),
            "results": to_jsonable(self.results),
        }

    def to_dict(self) -> dict[str, Any]:
        d = self.payload()
        d["timing"] = {"started": self.started, "finished": self.finished or _now()}
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def write(self, path: str | Path) -> None:
        atomic_write_text(path, self.dumps())


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
