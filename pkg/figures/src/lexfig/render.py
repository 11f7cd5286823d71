"""Render dispatch: one FigureSpec in, one image file out."""

from __future__ import annotations

import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from .charts import band_series, draw_band_chart, read_summary
from .figspec import FigureSpec
from .workspace import draw_overlay, load_workspace

# Same inputs, same bytes: pin the SVG id salt and strip the metadata
# matplotlib would otherwise date-stamp.
matplotlib.rcParams["svg.hashsalt"] = "lexfig"


def _save(fig, out: str) -> None:
    suffix = Path(out).suffix.lower()
    metadata = {"Date": None} if suffix == ".svg" else {"Software": "lexfig"}
    fig.savefig(out, dpi=150, bbox_inches="tight", metadata=metadata)
    plt.close(fig)


def render(spec: FigureSpec) -> Path:
    """Draw the described figure and return the written path."""
    fig, ax = plt.subplots(figsize=(7.0, 5.0))
    if spec.title:
        ax.set_title(spec.title)
    if spec.kind == "metric-vs-nodes":
        rows = read_summary(spec.summary)
        series = band_series(rows, spec.metric, spec.algos)
        draw_band_chart(ax, series, spec.metric)
    else:
        workspace = load_workspace(spec.scenario)
        docs = []
        for p in spec.paths:
            with open(p) as fh:
                doc = json.load(fh)
            doc.setdefault("label", Path(p).stem)
            docs.append(doc)
        draw_overlay(ax, workspace, spec.resolution, docs)
    _save(fig, spec.out)
    return Path(spec.out)
