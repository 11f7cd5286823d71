"""Planar geometry for roadmap planning.

Provides the workspace primitives (points, simple polygons, robot
configurations), collision and visibility predicates against closed
polygonal obstacles, exposure integration along edge curves, and a
closed-form Dubins shortest-path solver for curvature-bounded edges.

Conventions used throughout:

* obstacles are closed point sets, so touching a boundary counts as a
  collision, while visibility regions are also closed, so a point on a
  shadow boundary still counts as visible;
* geometric predicates use an absolute epsilon of ``EPS`` (1e-9 m);
* the robot is a point, all lengths are meters, angles are radians.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence, Union

import numpy as np

EPS = 1e-9
TWO_PI = 2.0 * math.pi

DUBINS_WORDS = ("LSL", "RSR", "LSR", "RSL", "RLR", "LRL")


class Point2(NamedTuple):
    """A point in the plane."""

    x: float
    y: float


@dataclass(frozen=True)
class Configuration:
    """A robot configuration: position plus an optional heading.

    Heading is present for curvature-bounded (Dubins) models and absent
    for holonomic ones.  Headings are normalized into [0, 2*pi).
    """

    x: float
    y: float
    heading: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError("configuration coordinates must be finite")
        if self.heading is not None:
            if not math.isfinite(self.heading):
                raise ValueError("configuration heading must be finite")
            object.__setattr__(self, "heading", float(self.heading) % TWO_PI)

    @property
    def position(self) -> Point2:
        return Point2(self.x, self.y)


class Polygon:
    """A simple polygon stored with counter-clockwise vertex order.

    Clockwise input is reversed on construction.  Rings with fewer than
    three vertices, repeated consecutive vertices, near-zero area, or
    self-intersections are rejected.
    """

    __slots__ = ("vertices", "_a", "_b")

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError("polygon needs at least three (x, y) vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("polygon vertices must be finite")
        if np.any(np.hypot(*(v - np.roll(v, -1, axis=0)).T) <= EPS):
            raise ValueError("polygon has repeated consecutive vertices")
        area = _shoelace(v)
        if abs(area) <= EPS:
            raise ValueError("polygon area is zero")
        if area < 0.0:
            v = v[::-1].copy()
        self.vertices = v
        self._a = v
        self._b = np.roll(v, -1, axis=0)
        if self._self_intersects():
            raise ValueError("polygon is self-intersecting")

    def edge_arrays(self):
        """Edge start and end vertex arrays, each of shape (n, 2)."""
        return self._a, self._b

    @property
    def num_vertices(self) -> int:
        return self.vertices.shape[0]

    def area(self) -> float:
        return _shoelace(self.vertices)

    def contains(self, p, closed: bool = True) -> bool:
        """Point membership; ``closed`` counts the boundary as inside."""
        pts = np.asarray([p], dtype=float)
        if closed:
            return bool(_points_in_edges(pts, self._a, self._b)[0])
        return bool(_points_strictly_in_edges(pts, self._a, self._b)[0])

    def _self_intersects(self) -> bool:
        a, b = self._a, self._b
        n = len(a)
        for i in range(n):
            for j in range(i + 1, n):
                if j == i or (j + 1) % n == i or (i + 1) % n == j:
                    continue  # shared-vertex neighbors
                if _segment_pair_intersects(a[i], b[i], a[j], b[j]):
                    return True
        return False

    def __eq__(self, other):
        return isinstance(other, Polygon) and np.array_equal(
            self.vertices, other.vertices
        )

    def __repr__(self):
        return f"Polygon({self.vertices.tolist()!r})"


Feature = Union[Polygon, Point2]


def _shoelace(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _cross(ox, oy, ax, ay, bx, by):
    """Cross product of (a - o) and (b - o); broadcasts over arrays."""
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def _on_segment(cx, cy, ux, uy, vx, vy):
    """Bounding-box membership for points already known collinear."""
    return (
        (cx >= np.minimum(ux, vx) - EPS)
        & (cx <= np.maximum(ux, vx) + EPS)
        & (cy >= np.minimum(uy, vy) - EPS)
        & (cy <= np.maximum(uy, vy) + EPS)
    )


def _segment_pair_intersects(p, q, a, b) -> bool:
    """Scalar segment intersection test where touching counts."""
    d1 = _cross(p[0], p[1], q[0], q[1], a[0], a[1])
    d2 = _cross(p[0], p[1], q[0], q[1], b[0], b[1])
    d3 = _cross(a[0], a[1], b[0], b[1], p[0], p[1])
    d4 = _cross(a[0], a[1], b[0], b[1], q[0], q[1])
    if ((d1 > EPS and d2 < -EPS) or (d1 < -EPS and d2 > EPS)) and (
        (d3 > EPS and d4 < -EPS) or (d3 < -EPS and d4 > EPS)
    ):
        return True
    if abs(d1) <= EPS and _on_segment(a[0], a[1], p[0], p[1], q[0], q[1]):
        return True
    if abs(d2) <= EPS and _on_segment(b[0], b[1], p[0], p[1], q[0], q[1]):
        return True
    if abs(d3) <= EPS and _on_segment(p[0], p[1], a[0], a[1], b[0], b[1]):
        return True
    if abs(d4) <= EPS and _on_segment(q[0], q[1], a[0], a[1], b[0], b[1]):
        return True
    return False


def _point_segment_dist2(px, py, ax, ay, bx, by):
    dx = bx - ax
    dy = by - ay
    l2 = dx * dx + dy * dy
    safe = np.where(l2 > 0.0, l2, 1.0)
    t = np.clip(((px - ax) * dx + (py - ay) * dy) / safe, 0.0, 1.0)
    cx = ax + t * dx
    cy = ay + t * dy
    return (px - cx) ** 2 + (py - cy) ** 2


def _points_in_edges(pts: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Closed point-in-polygon test for the edge set (a, b)."""
    px = pts[:, 0:1]
    py = pts[:, 1:2]
    ax, ay = a[:, 0], a[:, 1]
    bx, by = b[:, 0], b[:, 1]
    d2 = _point_segment_dist2(px, py, ax, ay, bx, by)
    on_boundary = (d2 <= EPS * EPS).any(axis=1)
    cond = (ay > py) != (by > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = ax + (py - ay) * (bx - ax) / (by - ay)
    crossings = (cond & (px < xint)).sum(axis=1)
    return on_boundary | (crossings % 2 == 1)


def _points_strictly_in_edges(pts, a, b) -> np.ndarray:
    """Strict-interior point-in-polygon test (boundary excluded)."""
    px = pts[:, 0:1]
    py = pts[:, 1:2]
    ax, ay = a[:, 0], a[:, 1]
    bx, by = b[:, 0], b[:, 1]
    d2 = _point_segment_dist2(px, py, ax, ay, bx, by)
    on_boundary = (d2 <= EPS * EPS).any(axis=1)
    cond = (ay > py) != (by > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        xint = ax + (py - ay) * (bx - ax) / (by - ay)
    crossings = (cond & (px < xint)).sum(axis=1)
    return (~on_boundary) & (crossings % 2 == 1)


def points_in_obstacles(points, obstacles: Sequence[Polygon]) -> np.ndarray:
    """Boolean mask of points inside or on the boundary of any obstacle."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    hit = np.zeros(len(pts), dtype=bool)
    for poly in obstacles:
        a, b = poly.edge_arrays()
        hit |= _points_in_edges(pts, a, b)
    return hit


def segments_hit_obstacles(starts, ends, obstacles: Sequence[Polygon]) -> np.ndarray:
    """Boolean mask over segments that touch or cross any obstacle.

    Batch form of :func:`segment_collides`: a segment collides when it
    intersects an obstacle's interior or boundary, including endpoints
    that merely touch the boundary.
    """
    p = np.atleast_2d(np.asarray(starts, dtype=float))
    q = np.atleast_2d(np.asarray(ends, dtype=float))
    hit = np.zeros(len(p), dtype=bool)
    for poly in obstacles:
        a, b = poly.edge_arrays()
        hit |= _segments_cross_edges(p, q, a, b)
    hit |= points_in_obstacles(p, obstacles)
    hit |= points_in_obstacles(q, obstacles)
    return hit


def _segments_cross_edges(p, q, a, b) -> np.ndarray:
    px, py = p[:, 0:1], p[:, 1:2]
    qx, qy = q[:, 0:1], q[:, 1:2]
    ax, ay = a[:, 0], a[:, 1]
    bx, by = b[:, 0], b[:, 1]
    d1 = _cross(px, py, qx, qy, ax, ay)
    d2 = _cross(px, py, qx, qy, bx, by)
    d3 = _cross(ax, ay, bx, by, px, py)
    d4 = _cross(ax, ay, bx, by, qx, qy)
    proper = _straddles(d1, d2) & _straddles(d3, d4)
    touch = (
        ((np.abs(d1) <= EPS) & _on_segment(ax, ay, px, py, qx, qy))
        | ((np.abs(d2) <= EPS) & _on_segment(bx, by, px, py, qx, qy))
        | ((np.abs(d3) <= EPS) & _on_segment(px, py, ax, ay, bx, by))
        | ((np.abs(d4) <= EPS) & _on_segment(qx, qy, ax, ay, bx, by))
    )
    return (proper | touch).any(axis=1)


def _straddles(u, v):
    return ((u > EPS) & (v < -EPS)) | ((u < -EPS) & (v > EPS))


def segment_collides(seg, obstacles: Sequence[Polygon]) -> bool:
    """True iff the segment intersects any obstacle interior or boundary.

    Parameters:
        seg: pair of points ((x0, y0), (x1, y1))
        obstacles: closed polygons; endpoints on a boundary count as
            collision

    The test is exact up to the EPS tolerance: proper crossings,
    boundary touches, collinear overlap, and containment are all hits.
    """
    (p, q) = seg
    return bool(
        segments_hit_obstacles(
            np.asarray([p], dtype=float), np.asarray([q], dtype=float), obstacles
        )[0]
    )


def visibility_mask(points, threat, obstacles: Sequence[Polygon]) -> np.ndarray:
    """Fast batch visibility: which points see the threat.

    A point is occluded when the segment to the threat properly crosses
    some obstacle edge.  Grazing along a boundary does not occlude.
    This matches :func:`line_of_sight` everywhere except degenerate
    configurations where the sight line passes exactly through a vertex,
    which the scalar routine resolves by interior sampling.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    tx, ty = float(threat[0]), float(threat[1])
    vis = np.ones(len(pts), dtype=bool)
    px, py = pts[:, 0:1], pts[:, 1:2]
    for poly in obstacles:
        a, b = poly.edge_arrays()
        ax, ay = a[:, 0], a[:, 1]
        bx, by = b[:, 0], b[:, 1]
        d1 = _cross(px, py, tx, ty, ax, ay)
        d2 = _cross(px, py, tx, ty, bx, by)
        d3 = _cross(ax, ay, bx, by, px, py)
        d4 = _cross(ax, ay, bx, by, tx, ty)
        proper = _straddles(d1, d2) & _straddles(d3, d4)
        vis &= ~proper.any(axis=1)
    return vis


def line_of_sight(p, threat, obstacles: Sequence[Polygon]) -> bool:
    """True iff the open segment from p to the threat crosses no interior.

    Grazing an obstacle boundary (touching a vertex, running along an
    edge) does not block sight; only passing through the interior does.
    A point exactly on a shadow boundary therefore still sees the
    threat: the visibility region is closed.  Symmetric in p and threat.
    """
    p = (float(p[0]), float(p[1]))
    t = (float(threat[0]), float(threat[1]))
    if abs(p[0] - t[0]) <= EPS and abs(p[1] - t[1]) <= EPS:
        return True
    rx, ry = t[0] - p[0], t[1] - p[1]
    ts = [0.0, 1.0]
    for poly in obstacles:
        a, b = poly.edge_arrays()
        for i in range(len(a)):
            ts.extend(_segment_edge_params(p, (rx, ry), a[i], b[i]))
    ts = sorted(set(min(1.0, max(0.0, u)) for u in ts))
    for u0, u1 in zip(ts[:-1], ts[1:]):
        if u1 - u0 <= 1e-12:
            continue
        um = 0.5 * (u0 + u1)
        mid = np.asarray([[p[0] + um * rx, p[1] + um * ry]])
        for poly in obstacles:
            a, b = poly.edge_arrays()
            if _points_strictly_in_edges(mid, a, b)[0]:
                return False
    return True


def _segment_edge_params(p, r, a, b):
    """Parameters t in [0, 1] where p + t*r meets the edge (a, b)."""
    sx, sy = b[0] - a[0], b[1] - a[1]
    denom = r[0] * sy - r[1] * sx
    qpx, qpy = a[0] - p[0], a[1] - p[1]
    out = []
    if abs(denom) > 1e-15:
        t = (qpx * sy - qpy * sx) / denom
        u = (qpx * r[1] - qpy * r[0]) / denom
        tol = 1e-12
        if -tol <= t <= 1.0 + tol and -tol <= u <= 1.0 + tol:
            out.append(t)
    else:
        if abs(qpx * r[1] - qpy * r[0]) <= EPS * max(1.0, math.hypot(*r)):
            rr = r[0] * r[0] + r[1] * r[1]
            if rr > 0.0:
                for ex, ey in (a, b):
                    t = ((ex - p[0]) * r[0] + (ey - p[1]) * r[1]) / rr
                    if -1e-12 <= t <= 1.0 + 1e-12:
                        out.append(t)
    return out


def min_feature_distance(p, features: Sequence[Feature]) -> float:
    """Distance from p to the nearest feature.

    Features are polygons (distance to the boundary, zero inside) or
    bare points.  Raises ValueError on an empty feature set.
    """
    if not features:
        raise ValueError("feature set is empty")
    polys = [f for f in features if isinstance(f, Polygon)]
    pts = [f for f in features if not isinstance(f, Polygon)]
    arr = np.asarray([p], dtype=float)
    d = feature_distances(arr, polys, pts)
    return float(d[0])


def feature_distances(
    points: np.ndarray,
    polygons: Sequence[Polygon],
    feature_points: Sequence = (),
) -> np.ndarray:
    """Batch minimum distance from each point to any feature."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    best = np.full(len(pts), np.inf)
    px, py = pts[:, 0:1], pts[:, 1:2]
    for poly in polygons:
        a, b = poly.edge_arrays()
        d2 = _point_segment_dist2(px, py, a[:, 0], a[:, 1], b[:, 0], b[:, 1])
        best = np.minimum(best, np.sqrt(d2.min(axis=1)))
        inside = _points_in_edges(pts, a, b)
        best[inside] = 0.0
    if feature_points:
        fp = np.asarray([(f[0], f[1]) for f in feature_points], dtype=float)
        d = np.hypot(px - fp[:, 0], py - fp[:, 1]).min(axis=1)
        best = np.minimum(best, d)
    return best


# ---------------------------------------------------------------------------
# Edge geometry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeGeometry:
    """A traversable curve between two configurations.

    ``kind`` is "straight" or "dubins".  Dubins curves carry the word
    (three letters from L, S, R), the three segment parameters in
    units normalized by the turning radius (arc parameters are turn
    angles in radians), and the radius itself.  ``length`` is the arc
    length in meters.
    """

    kind: str
    q0: Configuration
    q1: Configuration
    length: float
    word: Optional[str] = None
    params: Optional[tuple] = None
    rho: Optional[float] = None

    def subsegment_count(self, step: float) -> int:
        """Number of equal sub-segments at the given step length."""
        if self.length <= 0.0:
            return 1
        return max(1, math.ceil(self.length / step - 1e-12))

    def points_at(self, s) -> np.ndarray:
        """Positions at the given arc lengths; returns an (n, 2) array."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        if self.kind == "straight":
            if self.length <= 0.0:
                return np.repeat([[self.q0.x, self.q0.y]], len(s), axis=0)
            t = (s / self.length)[:, None]
            p0 = np.array([self.q0.x, self.q0.y])
            p1 = np.array([self.q1.x, self.q1.y])
            return p0 + t * (p1 - p0)
        return _dubins_points(self, s)

    def midpoints(self, m: int) -> np.ndarray:
        """Midpoints of m equal sub-segments, as an (m, 2) array."""
        s = (np.arange(m) + 0.5) * (self.length / m)
        return self.points_at(s)

    def polyline(self, step: float) -> np.ndarray:
        """Vertices of a chord approximation sampled at the step length."""
        m = self.subsegment_count(step)
        s = np.linspace(0.0, self.length, m + 1)
        return self.points_at(s)


def straight_edge(q0: Configuration, q1: Configuration) -> EdgeGeometry:
    """Straight-segment geometry between two configurations."""
    length = math.hypot(q1.x - q0.x, q1.y - q0.y)
    return EdgeGeometry(kind="straight", q0=q0, q1=q1, length=length)


def _mod2pi(theta: float) -> float:
    m = theta % TWO_PI
    # Collapse near-full turns produced by floating-point dust on what
    # should be a zero angle.
    if TWO_PI - m < 1e-9:
        return 0.0
    return m


def _straight_span(p2, d):
    """Length of the straight leg, or None when the word is infeasible.

    Rounding can push a boundary-case p2 a few ulp below zero, which
    would wrongly discard the word; relieve the domain check by a
    d-scaled tolerance before rejecting.
    """
    if p2 < 0.0:
        if p2 < -1e-9 * max(1.0, d * d):
            return None
        p2 = 0.0
    return math.sqrt(p2)


def _arc_cos(value):
    """acos with the same boundary relief as :func:`_straight_span`."""
    if abs(value) > 1.0:
        if abs(value) > 1.0 + 1e-9:
            return None
        value = math.copysign(1.0, value)
    return math.acos(value)


def _dubins_lsl(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    p = _straight_span(2.0 + d * d - 2.0 * math.cos(alpha - beta) + 2.0 * d * (sa - sb), d)
    if p is None:
        return None
    tmp = math.atan2(cb - ca, d + sa - sb)
    return (_mod2pi(-alpha + tmp), p, _mod2pi(beta - tmp))


def _dubins_rsr(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    p = _straight_span(2.0 + d * d - 2.0 * math.cos(alpha - beta) + 2.0 * d * (sb - sa), d)
    if p is None:
        return None
    tmp = math.atan2(ca - cb, d - sa + sb)
    return (_mod2pi(alpha - tmp), p, _mod2pi(-beta + tmp))


def _dubins_lsr(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    p = _straight_span(-2.0 + d * d + 2.0 * math.cos(alpha - beta) + 2.0 * d * (sa + sb), d)
    if p is None:
        return None
    tmp = math.atan2(-ca - cb, d + sa + sb) - math.atan2(-2.0, p)
    return (_mod2pi(-alpha + tmp), p, _mod2pi(-beta + tmp))


def _dubins_rsl(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    p = _straight_span(-2.0 + d * d + 2.0 * math.cos(alpha - beta) - 2.0 * d * (sa + sb), d)
    if p is None:
        return None
    tmp = math.atan2(ca + cb, d - sa - sb) - math.atan2(2.0, p)
    return (_mod2pi(alpha - tmp), p, _mod2pi(beta - tmp))


def _dubins_rlr(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    mid = _arc_cos((6.0 - d * d + 2.0 * math.cos(alpha - beta) + 2.0 * d * (sa - sb)) / 8.0)
    if mid is None:
        return None
    p = _mod2pi(TWO_PI - mid)
    t = _mod2pi(alpha - math.atan2(ca - cb, d - sa + sb) + p / 2.0)
    q = _mod2pi(alpha - beta - t + p)
    return (t, p, q)


def _dubins_lrl(alpha, beta, d):
    sa, sb, ca, cb = math.sin(alpha), math.sin(beta), math.cos(alpha), math.cos(beta)
    mid = _arc_cos((6.0 - d * d + 2.0 * math.cos(alpha - beta) + 2.0 * d * (sb - sa)) / 8.0)
    if mid is None:
        return None
    p = _mod2pi(TWO_PI - mid)
    t = _mod2pi(-alpha + math.atan2(-ca + cb, d + sa - sb) + p / 2.0)
    q = _mod2pi(beta - alpha - t + p)
    return (t, p, q)


_DUBINS_SOLVERS = {
    "LSL": _dubins_lsl,
    "RSR": _dubins_rsr,
    "LSR": _dubins_lsr,
    "RSL": _dubins_rsl,
    "RLR": _dubins_rlr,
    "LRL": _dubins_lrl,
}


def dubins_all_words(q0: Configuration, q1: Configuration, rho: float):
    """Feasible Dubins words for the pose pair.

    Returns a list of (word, params, length_m) triples in the canonical
    word order; infeasible words are omitted.  Params are normalized by
    rho, so arc parameters are turn angles in radians.
    """
    if q0.heading is None or q1.heading is None:
        raise ValueError("dubins poses need headings")
    if rho <= 0.0:
        raise ValueError("turning radius must be positive")
    dx = q1.x - q0.x
    dy = q1.y - q0.y
    big_d = math.hypot(dx, dy)
    d = big_d / rho
    theta = math.atan2(dy, dx) if big_d > 1e-15 else 0.0
    alpha = _mod2pi(q0.heading - theta)
    beta = _mod2pi(q1.heading - theta)
    out = []
    for word in DUBINS_WORDS:
        res = _DUBINS_SOLVERS[word](alpha, beta, d)
        if res is None:
            continue
        t, p, q = res
        out.append((word, (t, p, q), (t + p + q) * rho))
    return out


def dubins_shortest_path(q0: Configuration, q1: Configuration, rho: float) -> EdgeGeometry:
    """Shortest curvature-bounded curve between two posed configurations.

    Evaluates all six candidate words and keeps the shortest; exact ties
    resolve to the earlier word in the canonical order LSL, RSR, LSR,
    RSL, RLR, LRL.
    """
    candidates = dubins_all_words(q0, q1, rho)
    if not candidates:
        raise ValueError("no feasible dubins word for pose pair")
    best = None
    for word, params, length in candidates:
        if best is None or length < best[2]:
            best = (word, params, length)
    word, params, length = best
    return EdgeGeometry(
        kind="dubins", q0=q0, q1=q1, length=length, word=word, params=params, rho=rho
    )


def _advance(x: float, y: float, th: float, letter: str, u: float, rho: float):
    """Pose after driving a whole Dubins segment of normalized length u."""
    if letter == "S":
        return x + u * rho * math.cos(th), y + u * rho * math.sin(th), th
    if letter == "L":
        cx = x - rho * math.sin(th)
        cy = y + rho * math.cos(th)
        thn = th + u
        return cx + rho * math.sin(thn), cy - rho * math.cos(thn), thn
    cx = x + rho * math.sin(th)
    cy = y - rho * math.cos(th)
    thn = th - u
    return cx - rho * math.sin(thn), cy + rho * math.cos(thn), thn


def _dubins_points(geom: EdgeGeometry, s: np.ndarray) -> np.ndarray:
    rho = geom.rho
    sn = np.clip(s / rho, 0.0, sum(geom.params))
    out = np.empty((len(sn), 2))
    x, y, th = geom.q0.x, geom.q0.y, geom.q0.heading
    start = 0.0
    remaining = np.ones(len(sn), dtype=bool)
    for letter, u in zip(geom.word, geom.params):
        end = start + u
        mask = remaining & (sn <= end + 1e-12)
        if mask.any():
            local = sn[mask] - start
            if letter == "S":
                out[mask, 0] = x + local * rho * math.cos(th)
                out[mask, 1] = y + local * rho * math.sin(th)
            elif letter == "L":
                cx = x - rho * math.sin(th)
                cy = y + rho * math.cos(th)
                thn = th + local
                out[mask, 0] = cx + rho * np.sin(thn)
                out[mask, 1] = cy - rho * np.cos(thn)
            else:
                cx = x + rho * math.sin(th)
                cy = y - rho * math.cos(th)
                thn = th - local
                out[mask, 0] = cx - rho * np.sin(thn)
                out[mask, 1] = cy + rho * np.cos(thn)
            remaining &= ~mask
        x, y, th = _advance(x, y, th, letter, u, rho)
        start = end
    if remaining.any():
        out[remaining, 0] = x
        out[remaining, 1] = y
    return out


def segment_exposure_length(
    geom: EdgeGeometry,
    threat,
    obstacles: Sequence[Polygon],
    step: float,
) -> float:
    """Length of the edge portion visible to the threat.

    The curve is split into ceil(length / step) equal sub-segments and
    a sub-segment counts as exposed when its midpoint has line of sight
    to the threat.  The result is count * (length / count_total), which
    lands exactly in [0, length].
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if geom.length <= 0.0:
        return 0.0
    m = geom.subsegment_count(step)
    mids = geom.midpoints(m)
    visible = sum(1 for p in mids if line_of_sight(p, threat, obstacles))
    return geom.length * (visible / m)
