"""Deterministic JSON writing with 17-significant-digit floats.

The standard json encoder formats floats with shortest round-trip repr.
File formats here promise 17 significant digits so serialized graphs
round-trip bit for bit and hash stably, hence this small writer.
Parsing uses the standard library.
"""

from __future__ import annotations

import json
import math
from typing import Any


def format_float(x: float) -> str:
    if x != x or math.isinf(x):
        raise ValueError("cannot serialize non-finite float")
    if x == int(x) and abs(x) < 1e16:
        return format(float(x), ".1f")
    return format(x, ".17g")


def dumps(obj: Any, indent: int = 0, _level: int = 0) -> str:
    """Serialize dicts, lists, strings, numbers, bools, and None."""
    pad = " " * (indent * (_level + 1)) if indent else ""
    end_pad = " " * (indent * _level) if indent else ""
    joiner = ",\n" if indent else ", "
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}"
            for k, v in obj.items()
        ]
        sep = "\n" if indent else ""
        return "{" + sep + joiner.join(items) + sep + end_pad + "}"
    if isinstance(obj, (list, tuple)):
        if not len(obj):
            return "[]"
        items = [f"{pad}{dumps(v, indent, _level + 1)}" for v in obj]
        sep = "\n" if indent else ""
        return "[" + sep + joiner.join(items) + sep + end_pad + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None:
        return "null"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def loads(text: str) -> Any:
    return json.loads(text)
