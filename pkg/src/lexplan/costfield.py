"""Cost criteria evaluated over workspace scenarios.

A scenario bundles the workspace (bounds, obstacles) with the data each
cost criterion needs: threat points for exposure, feature geometry and a
sensing range for localization deficit, tower points and a radio range
for communication deficit.  Criteria are ordered by priority and the
final criterion is always path length, which is strictly positive on any
real edge and therefore breaks ties at the bottom of the hierarchy.

Cost vectors are plain tuples of floats compared lexicographically with
an absolute tie tolerance ``TIE_EPS``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .geometry import (
    EdgeGeometry,
    Point2,
    Polygon,
    _points_strictly_in_edges,
    feature_distances,
    visibility_mask,
)

TIE_EPS = 1e-9

# Clamp threshold for penalty components that are zero up to float dust.
ZERO_CLAMP = 1e-12

CRITERION_KINDS = ("risk", "loc", "com", "dist")

CostVector = Tuple[float, ...]


@dataclass(frozen=True)
class CriterionSpec:
    """One level of the cost hierarchy, identified by kind.

    Kinds: "risk" (threat-exposure length), "loc" (length sensed poorly,
    farther than sensing_range from every feature), "com" (length out of
    radio contact with every tower), "dist" (path length).
    """

    kind: str

    def __post_init__(self):
        if self.kind not in CRITERION_KINDS:
            raise ValueError(f"unknown criterion kind: {self.kind!r}")


@dataclass
class Scenario:
    """Workspace plus criterion parameters.

    ``features`` defaults to the obstacle polygons when not given.
    ``model`` is "holonomic2d" or "dubins"; the latter carries a turning
    radius ``rho``.
    """

    bounds: Tuple[float, float, float, float]  # xmin, ymin, xmax, ymax
    obstacles: Sequence[Polygon] = field(default_factory=list)
    threats: Sequence[Point2] = field(default_factory=list)
    features: Optional[Sequence[Polygon]] = None
    towers: Sequence[Point2] = field(default_factory=list)
    sensing_range: Optional[float] = None
    radio_range: Optional[float] = None
    model: str = "holonomic2d"
    rho: Optional[float] = None
    criteria: Tuple[str, ...] = ("dist",)

    def __post_init__(self):
        self.validate()

    @property
    def K(self) -> int:
        return len(self.criteria)

    def effective_features(self) -> Sequence[Polygon]:
        return self.obstacles if self.features is None else self.features

    def criterion_specs(self) -> Tuple[CriterionSpec, ...]:
        return tuple(CriterionSpec(kind) for kind in self.criteria)

    def validate(self) -> None:
        xmin, ymin, xmax, ymax = self.bounds
        if not all(math.isfinite(v) for v in self.bounds):
            raise ValueError("bounds: values must be finite")
        if xmax <= xmin or ymax <= ymin:
            raise ValueError("bounds: xmax/ymax must exceed xmin/ymin")
        crit = tuple(self.criteria)
        if not crit:
            raise ValueError("criteria: must be non-empty")
        if crit[-1] != "dist":
            raise ValueError("criteria: last criterion must be 'dist'")
        for kind in crit:
            if kind not in CRITERION_KINDS:
                raise ValueError(f"criteria: unknown kind {kind!r}")
        if len(set(crit)) != len(crit):
            raise ValueError("criteria: duplicate kinds")
        ranked = [c for c in crit[:-1]]
        order = [CRITERION_KINDS.index(c) for c in ranked]
        if order != sorted(order):
            raise ValueError("criteria: kinds must follow risk, loc, com order")
        self.criteria = crit
        if self.model not in ("holonomic2d", "dubins"):
            raise ValueError(f"robot_model: unknown type {self.model!r}")
        if self.model == "dubins":
            if self.rho is None or not (self.rho > 0.0):
                raise ValueError("robot_model: dubins model needs rho > 0")
        for name, pts in (("threats", self.threats), ("towers", self.towers)):
            for p in pts:
                if not (xmin <= p[0] <= xmax and ymin <= p[1] <= ymax):
                    raise ValueError(f"{name}: point {tuple(p)} outside bounds")
                for poly in self.obstacles:
                    a, b = poly.edge_arrays()
                    if _points_strictly_in_edges(
                        np.asarray([[p[0], p[1]]], dtype=float), a, b
                    )[0]:
                        raise ValueError(
                            f"{name}: point {tuple(p)} inside an obstacle"
                        )
        if "risk" in crit and not self.threats:
            raise ValueError("threats: required by the 'risk' criterion")
        if "loc" in crit:
            if self.sensing_range is None or not (self.sensing_range > 0.0):
                raise ValueError("sensing_range: must be positive for 'loc'")
            if not list(self.effective_features()):
                raise ValueError("features: required by the 'loc' criterion")
        if "com" in crit:
            if self.radio_range is None or not (self.radio_range > 0.0):
                raise ValueError("radio_range: must be positive for 'com'")
            if not list(self.towers):
                raise ValueError("towers: required by the 'com' criterion")


def scenario_from_dict(data: dict) -> Scenario:
    """Build a scenario from its JSON document form.

    Validation failures raise ValueError naming the offending field.
    """
    if not isinstance(data, dict):
        raise ValueError("scenario: document must be a JSON object")
    try:
        b = data["bounds"]
        bounds = (
            float(b["xmin"]),
            float(b["ymin"]),
            float(b["xmax"]),
            float(b["ymax"]),
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bounds: missing or malformed ({exc})") from exc

    def _polys(name):
        rings = data.get(name)
        if rings is None:
            return None
        try:
            return [Polygon(r) for r in rings]
        except ValueError as exc:
            raise ValueError(f"{name}: {exc}") from exc

    def _points(name):
        pts = data.get(name, [])
        out = []
        for p in pts:
            if len(p) != 2:
                raise ValueError(f"{name}: points must be [x, y] pairs")
            out.append(Point2(float(p[0]), float(p[1])))
        return out

    obstacles = _polys("obstacles") or []
    features = _polys("features")
    model_spec = data.get("robot_model", {"type": "holonomic2d"})
    if not isinstance(model_spec, dict) or "type" not in model_spec:
        raise ValueError("robot_model: must be an object with a 'type'")
    model = model_spec["type"]
    rho = model_spec.get("rho")
    criteria = tuple(data.get("criteria", ["dist"]))
    try:
        return Scenario(
            bounds=bounds,
            obstacles=obstacles,
            threats=_points("threats"),
            features=features,
            towers=_points("towers"),
            sensing_range=data.get("sensing_range"),
            radio_range=data.get("radio_range"),
            model=model,
            rho=float(rho) if rho is not None else None,
            criteria=criteria,
        )
    except ValueError:
        raise


def scenario_to_dict(scenario: Scenario) -> dict:
    xmin, ymin, xmax, ymax = scenario.bounds
    doc = {
        "bounds": {"xmin": xmin, "ymin": ymin, "xmax": xmax, "ymax": ymax},
        "obstacles": [p.vertices.tolist() for p in scenario.obstacles],
        "threats": [[p.x, p.y] for p in scenario.threats],
        "towers": [[p.x, p.y] for p in scenario.towers],
        "criteria": list(scenario.criteria),
    }
    if scenario.features is not None:
        doc["features"] = [p.vertices.tolist() for p in scenario.features]
    if scenario.sensing_range is not None:
        doc["sensing_range"] = scenario.sensing_range
    if scenario.radio_range is not None:
        doc["radio_range"] = scenario.radio_range
    if scenario.model == "dubins":
        doc["robot_model"] = {"type": "dubins", "rho": scenario.rho}
    else:
        doc["robot_model"] = {"type": "holonomic2d"}
    return doc


def lex_compare(a: Sequence[float], b: Sequence[float], tie_eps: float = TIE_EPS) -> int:
    """Lexicographic comparison of equal-length cost vectors.

    Returns -1, 0, or 1.  Components within ``tie_eps`` of each other
    are treated as equal and comparison moves to the next level.
    """
    if len(a) != len(b):
        raise ValueError("cost vectors differ in length")
    for x, y in zip(a, b):
        d = x - y
        if d > tie_eps:
            return 1
        if d < -tie_eps:
            return -1
    return 0


def vec_add(a: CostVector, b: CostVector) -> CostVector:
    return tuple(x + y for x, y in zip(a, b))


def vec_zeros(k: int) -> CostVector:
    return (0.0,) * k


def default_step(length: float) -> float:
    """Canonical integration step for an edge of the given length."""
    if length <= 0.0:
        return 0.25
    return min(0.25, length / 10.0)


def _clamp(v: float) -> float:
    return 0.0 if v < ZERO_CLAMP else v


def criterion_counts(
    mids: np.ndarray, scenario: Scenario
) -> dict:
    """Per-criterion midpoint counts for a batch of midpoints.

    Returns a dict mapping penalty kinds present in the scenario's
    hierarchy to integer arrays counting, per midpoint, whether the
    penalty applies (0 or 1).  Used by both the scalar edge evaluator
    and the batched roadmap builder so stored costs reproduce exactly.
    """
    counts = {}
    n = len(mids)
    if "risk" in scenario.criteria:
        exposed = np.zeros(n, dtype=bool)
        for threat in scenario.threats:
            exposed |= visibility_mask(mids, threat, scenario.obstacles)
        counts["risk"] = exposed
    if "loc" in scenario.criteria:
        d = feature_distances(mids, list(scenario.effective_features()))
        counts["loc"] = d > scenario.sensing_range
    if "com" in scenario.criteria:
        tw = np.asarray([(t[0], t[1]) for t in scenario.towers], dtype=float)
        d = np.hypot(
            mids[:, 0:1] - tw[:, 0], mids[:, 1:2] - tw[:, 1]
        ).min(axis=1)
        counts["com"] = d > scenario.radio_range
    return counts


def evaluate_edge(
    geom: EdgeGeometry, scenario: Scenario, step: Optional[float] = None
) -> CostVector:
    """Cost vector of an edge under the scenario's criterion hierarchy.

    The caller is responsible for the edge being collision free.  Each
    penalty criterion integrates by midpoint sampling over equal
    sub-segments (step defaults to min(0.25, length / 10)); a
    sub-segment visible to at least one threat counts toward exposure
    once.  Components below 1e-12 clamp to exactly zero.
    """
    length = geom.length
    if length <= 0.0:
        return vec_zeros(scenario.K)
    s = default_step(length) if step is None else step
    if s <= 0.0:
        raise ValueError("step must be positive")
    m = geom.subsegment_count(s)
    mids = geom.midpoints(m)
    counts = criterion_counts(mids, scenario)
    out = []
    for kind in scenario.criteria:
        if kind == "dist":
            out.append(_clamp(length))
        else:
            c = int(counts[kind].sum())
            out.append(_clamp(length * (c / m)))
    return tuple(out)


def evaluate_path(
    geoms: Sequence[EdgeGeometry], scenario: Scenario, step: Optional[float] = None
) -> CostVector:
    """Componentwise sum of edge costs along a linked edge sequence.

    Raises ValueError when consecutive edges do not share an endpoint.
    """
    total = vec_zeros(scenario.K)
    prev = None
    for geom in geoms:
        if prev is not None:
            if (
                abs(prev.q1.x - geom.q0.x) > 1e-9
                or abs(prev.q1.y - geom.q0.y) > 1e-9
            ):
                raise ValueError("path edges are not linked end to end")
        total = vec_add(total, evaluate_edge(geom, scenario, step=step))
        prev = geom
    return total
