"""Figure descriptions: one JSON document per rendered image."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

KINDS = ("workspace-overlay", "metric-vs-nodes")
FORMATS = (".png", ".svg")


@dataclass(frozen=True)
class FigureSpec:
    """What to draw and where to write it.

    ``kind`` picks the figure family.  Band charts need ``summary``
    (a summary CSV) and ``metric`` (a metric column value such as
    search_ms or cost_1); overlays need ``scenario`` (a scenario JSON)
    and optionally ``paths`` (plan JSON payloads whose polylines get
    drawn on top).  The output format follows the ``out`` suffix.
    """

    kind: str
    out: str
    summary: Optional[str] = None
    metric: Optional[str] = None
    algos: Optional[Sequence[str]] = None
    scenario: Optional[str] = None
    paths: Sequence[str] = field(default_factory=tuple)
    resolution: int = 400
    title: Optional[str] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind: must be one of {', '.join(KINDS)}")
        suffix = Path(self.out).suffix.lower()
        if suffix not in FORMATS:
            raise ValueError(f"out: format {suffix or '(none)'} unsupported, use .png or .svg")
        if self.kind == "metric-vs-nodes":
            if not self.summary:
                raise ValueError("summary: required for metric-vs-nodes figures")
            if not self.metric:
                raise ValueError("metric: required for metric-vs-nodes figures")
        else:
            if not self.scenario:
                raise ValueError("scenario: required for workspace-overlay figures")
        if self.resolution < 8:
            raise ValueError("resolution: must be at least 8 pixels")


def load_figure_spec(path) -> FigureSpec:
    """Read a figure spec, resolving input paths against its directory."""
    path = Path(path)
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"figure spec is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValueError("figure spec must be a JSON object")

    def resolve(name):
        value = data.get(name)
        if value is None:
            return None
        p = Path(value)
        return str(p if p.is_absolute() else path.parent / p)

    paths = tuple(
        str(Path(p) if Path(p).is_absolute() else path.parent / p)
        for p in data.get("paths", [])
    )
    out = data.get("out", "")
    out_path = Path(out) if out else Path("")
    if out and not out_path.is_absolute():
        out = str(path.parent / out_path)
    return FigureSpec(
        kind=data.get("kind", ""),
        out=out,
        summary=resolve("summary"),
        metric=data.get("metric"),
        algos=tuple(data["algos"]) if data.get("algos") else None,
        scenario=resolve("scenario"),
        paths=paths,
        resolution=int(data.get("resolution", 400)),
        title=data.get("title"),
    )
