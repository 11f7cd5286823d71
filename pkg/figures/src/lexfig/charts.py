"""Mean-line and percentile-band charts from summary CSV files.

The numbers drawn are the file's own mean/p10/p90 cells, passed
through float() and nothing else; no statistics are recomputed here.
"""

from __future__ import annotations

import csv
from typing import Dict, List, Optional, Sequence, Tuple

REQUIRED_COLUMNS = ("nodes", "algo", "params", "metric", "mean", "p10", "p90")

Series = Tuple[Tuple[int, ...], Tuple[float, ...], Tuple[float, ...], Tuple[float, ...]]


def read_summary(path) -> List[dict]:
    """Rows of a summary CSV; raises naming any missing column."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        for col in REQUIRED_COLUMNS:
            if col not in fields:
                raise ValueError(f"summary CSV is missing column {col!r}")
        return [dict(row) for row in reader]


def band_series(
    rows: Sequence[dict],
    metric: str,
    algos: Optional[Sequence[str]] = None,
) -> Dict[Tuple[str, str], Series]:
    """Per-(algo, params) series of (nodes, mean, p10, p90) for one metric.

    Node counts sort ascending within each series.  Raises when the
    metric never occurs, listing what the file does contain.
    """
    present = set()
    grouped: Dict[Tuple[str, str], List[Tuple[int, float, float, float]]] = {}
    for row in rows:
        present.add(row["metric"])
        if row["metric"] != metric:
            continue
        if algos is not None and row["algo"] not in algos:
            continue
        key = (row["algo"], row["params"])
        grouped.setdefault(key, []).append(
            (int(row["nodes"]), float(row["mean"]), float(row["p10"]), float(row["p90"]))
        )
    if not grouped:
        raise ValueError(
            f"metric {metric!r} not found in summary; available: {sorted(present)}"
        )
    out: Dict[Tuple[str, str], Series] = {}
    for key, points in grouped.items():
        points.sort()
        nodes, mean, p10, p90 = zip(*points)
        out[key] = (nodes, mean, p10, p90)
    return out


def draw_band_chart(ax, series: Dict[Tuple[str, str], Series], metric: str) -> None:
    """Mean lines with 10th-to-90th percentile bands, one per series."""
    for (algo, params) in sorted(series):
        nodes, mean, p10, p90 = series[(algo, params)]
        label = f"{algo} {params}".strip()
        (line,) = ax.plot(nodes, mean, marker="o", label=label)
        ax.fill_between(nodes, p10, p90, alpha=0.25, color=line.get_color(), lw=0)
    ax.set_xlabel("roadmap size (nodes)")
    ax.set_ylabel(metric)
    ax.legend()
    ax.grid(True, alpha=0.3)
