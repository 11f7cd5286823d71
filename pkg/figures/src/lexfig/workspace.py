"""Workspace overlays: shaded visibility, solid obstacles, route lines.

Scenario JSON is parsed directly from its documented form.  Visibility
shading is rasterized: a pixel counts as seen when the straight run
from its center to some threat crosses no obstacle edge properly.
Grazing contact along boundaries lands on the seen side, which is
indistinguishable at pixel scale.
"""

from __future__ import annotations

import json
from typing import Sequence

import numpy as np


def load_workspace(path) -> dict:
    """Scenario geometry as plain arrays; validation names the field."""
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"scenario file is not valid JSON: {exc}") from exc
    try:
        b = data["bounds"]
        bounds = (float(b["xmin"]), float(b["ymin"]), float(b["xmax"]), float(b["ymax"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bounds: missing or malformed ({exc})") from exc
    if bounds[2] <= bounds[0] or bounds[3] <= bounds[1]:
        raise ValueError("bounds: xmax/ymax must exceed xmin/ymin")

    def rings(name):
        out = []
        for ring in data.get(name) or []:
            arr = np.asarray(ring, dtype=float)
            if arr.ndim != 2 or arr.shape[1] != 2 or arr.shape[0] < 3:
                raise ValueError(f"{name}: rings need at least three [x, y] vertices")
            out.append(arr)
        return out

    def points(name):
        out = []
        for p in data.get(name) or []:
            if len(p) != 2:
                raise ValueError(f"{name}: points must be [x, y] pairs")
            out.append((float(p[0]), float(p[1])))
        return out

    return {
        "bounds": bounds,
        "obstacles": rings("obstacles"),
        "features": rings("features"),
        "threats": points("threats"),
        "towers": points("towers"),
    }


def _blocked_mask(px: np.ndarray, py: np.ndarray, threat, obstacles) -> np.ndarray:
    tx, ty = threat
    blocked = np.zeros(px.shape, dtype=bool)
    fx = tx - px
    fy = ty - py
    for ring in obstacles:
        a = ring
        b = np.roll(ring, -1, axis=0)
        for (ax, ay), (bx, by) in zip(a, b):
            ex, ey = bx - ax, by - ay
            d1 = ex * (py - ay) - ey * (px - ax)
            d2 = ex * (ty - ay) - ey * (tx - ax)
            d3 = fx * (ay - py) - fy * (ax - px)
            d4 = fx * (by - py) - fy * (bx - px)
            blocked |= (d1 * d2 < 0.0) & (d3 * d4 < 0.0)
    return blocked


def visibility_image(
    bounds, obstacles: Sequence[np.ndarray], threats, resolution: int
) -> np.ndarray:
    """Boolean raster over the bounds: True where some threat sees.

    Shape is (resolution_y, resolution_x) with the x pixel count fixed
    at ``resolution`` and y scaled to keep pixels square; row 0 sits at
    the bottom of the workspace.
    """
    xmin, ymin, xmax, ymax = bounds
    nx = int(resolution)
    ny = max(1, round(nx * (ymax - ymin) / (xmax - xmin)))
    xs = xmin + (np.arange(nx) + 0.5) * (xmax - xmin) / nx
    ys = ymin + (np.arange(ny) + 0.5) * (ymax - ymin) / ny
    px, py = np.meshgrid(xs, ys)
    seen = np.zeros(px.shape, dtype=bool)
    for threat in threats:
        seen |= ~_blocked_mask(px, py, threat, obstacles)
    return seen


def draw_overlay(ax, workspace: dict, resolution: int, path_docs: Sequence[dict]) -> None:
    """Visibility shading, obstacles, markers, and route polylines."""
    from matplotlib.colors import ListedColormap
    from matplotlib.patches import Polygon as MplPolygon

    bounds = workspace["bounds"]
    xmin, ymin, xmax, ymax = bounds
    if workspace["threats"]:
        seen = visibility_image(bounds, workspace["obstacles"], workspace["threats"], resolution)
        ax.imshow(
            seen,
            extent=(xmin, xmax, ymin, ymax),
            origin="lower",
            cmap=ListedColormap(["white", "0.75"]),
            vmin=0,
            vmax=1,
            interpolation="nearest",
            zorder=0,
        )
    for ring in workspace["features"]:
        ax.add_patch(MplPolygon(ring, closed=True, facecolor="none",
                                edgecolor="0.4", linestyle="--", zorder=1))
    for ring in workspace["obstacles"]:
        ax.add_patch(MplPolygon(ring, closed=True, facecolor="black", zorder=2))
    if workspace["threats"]:
        tx, ty = zip(*workspace["threats"])
        ax.plot(tx, ty, "^", color="tab:red", ms=9, zorder=3, label="threat")
    if workspace["towers"]:
        tx, ty = zip(*workspace["towers"])
        ax.plot(tx, ty, "s", color="tab:blue", ms=7, zorder=3, label="tower")
    for doc in path_docs:
        line = np.asarray(doc.get("polyline") or [], dtype=float)
        if line.size == 0:
            continue
        ax.plot(line[:, 0], line[:, 1], lw=2, zorder=4, label=doc.get("label"))
    ax.set_xlim(xmin, xmax)
    ax.set_ylim(ymin, ymax)
    ax.set_aspect("equal")
    handles, labels = ax.get_legend_handles_labels()
    if labels:
        ax.legend(loc="upper right", fontsize="small")
