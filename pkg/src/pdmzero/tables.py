"""Byte-deterministic CSV / JSON / plain-text table output.

Floats are written with 17 significant digits, lines end with LF, and
columns follow the header order given by the caller.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping, Sequence


def _num(v: float) -> str:
    return format(v, ".17g")


def csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _num(v)
    text = str(v)
    if any(c in text for c in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text


def json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _num(v) if math.isfinite(v) else "null"
    if isinstance(v, int):
        return str(v)
    return json.dumps(str(v))


def to_csv(rows: Iterable[Mapping], header: Sequence[str]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(csv_cell(row.get(k)) for k in header))
    return "\n".join(lines) + "\n"


def _json_object(row: Mapping, header: Sequence[str]) -> str:
    return "{" + ", ".join(f"{json.dumps(k)}: {json_value(row.get(k))}" for k in header) + "}"


def to_json(rows, header: Sequence[str]) -> str:
    """A single mapping becomes one object; a sequence becomes an array."""
    if isinstance(rows, Mapping):
        return _json_object(rows, header) + "\n"
    body = [_json_object(r, header) for r in rows]
    if not body:
        return "[]\n"
    return "[\n  " + ",\n  ".join(body) + "\n]\n"


def to_pretty(rows: Iterable[Mapping], header: Sequence[str]) -> str:
    def cell(v):
        if isinstance(v, float):
            return format(v, ".10g")
        return csv_cell(v)

    table = [list(header)] + [[cell(r.get(k)) for k in header] for r in rows]
    widths = [max(len(row[c]) for row in table) for c in range(len(header))]
    out = []
    for i, row in enumerate(table):
        out.append("  ".join(text.rjust(w) for text, w in zip(row, widths)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def render(rows, header: Sequence[str], fmt: str) -> str:
    if fmt == "json":
        return to_json(rows, header)
    if isinstance(rows, Mapping):
        rows = [rows]
    if fmt == "pretty":
        return to_pretty(rows, header)
    return to_csv(rows, header)
