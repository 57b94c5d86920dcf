"""Deterministic text formatting for CSV/JSON emission."""

from __future__ import annotations

import enum
import json
import math
from typing import Any, Iterable, Sequence, TextIO


def fmt(value: Any) -> str:
    """One CSV cell: 17 significant digits for floats, ``nan`` for NaN."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if value == 0.0:
            return "0"  # drop the sign of -0.0
        return format(value, ".17g")
    return str(value)


def write_csv(columns: Sequence[str], rows: Iterable[dict[str, Any]], stream: TextIO) -> None:
    stream.write(",".join(columns) + "\n")
    for row in rows:
        stream.write(",".join(fmt(row.get(c)) for c in columns) + "\n")


def _jsonable(value: Any) -> Any:
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def write_json(columns: Sequence[str], rows: Iterable[dict[str, Any]], stream: TextIO) -> None:
    data = [{c: _jsonable(row.get(c)) for c in columns} for row in rows]
    stream.write(json.dumps(data, indent=1) + "\n")
