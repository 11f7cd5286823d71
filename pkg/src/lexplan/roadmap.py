"""Probabilistic roadmap construction over polygonal workspaces.

Node samples come from per-node counter-based random substreams, so a
given (scenario, seed, n) triple always produces the same graph bit for
bit, including across processes.  Connections use k-nearest neighbors
with the usual logarithmic k by default, or a fixed radius.  Dubins
edges are computed per direction; straight edges are shared between
directions along with their cost vectors, which are identical because
costs reduce to sub-segment counts.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from . import serialize
from .costfield import (
    Scenario,
    criterion_counts,
    default_step,
    scenario_from_dict,
    scenario_to_dict,
)
from .geometry import (
    Configuration,
    EdgeGeometry,
    dubins_shortest_path,
    points_in_obstacles,
    segments_hit_obstacles,
    straight_edge,
)

# K-nearest connection count: ceil(2e * ln(n + 2)).
def default_k(n: int) -> int:
    return math.ceil(2.0 * math.e * math.log(n + 2))


MAX_ATTEMPTS_PER_NODE = 1000


class Edge(NamedTuple):
    """Directed adjacency entry: target node, cost vector, geometry."""

    target: int
    cost: tuple
    geom: Optional[EdgeGeometry]


@dataclass(frozen=True)
class BuildParams:
    """Roadmap construction parameters.

    ``k`` defaults to the logarithmic rule; give ``radius`` instead to
    connect every pair within a fixed distance.  ``step`` is the
    collision-check discretization along edges, in meters.
    """

    n: int
    seed: int
    k: Optional[int] = None
    radius: Optional[float] = None
    step: float = 0.25

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be positive")
        if self.radius is not None and not (self.radius > 0.0):
            raise ValueError("radius must be positive")
        if not (self.step > 0.0):
            raise ValueError("step must be positive")


class Roadmap:
    """Directed graph of configurations with cost-annotated edges."""

    def __init__(self, nodes, adj, scenario=None, meta=None, K=None):
        self.nodes = list(nodes)
        self.adj = [list(edges) for edges in adj]
        self.scenario = scenario
        self.meta = dict(meta) if meta else {}
        if K is not None:
            self._K = K
        elif scenario is not None:
            self._K = scenario.K
        else:
            self._K = self._infer_k()

    def _infer_k(self):
        for edges in self.adj:
            for e in edges:
                return len(e.cost)
        return 1

    @property
    def num_nodes(self) -> int:
        return len(self.nodes)

    @property
    def K(self) -> int:
        return self._K

    @property
    def num_edges(self) -> int:
        return sum(len(edges) for edges in self.adj)

    def edges_from(self, i: int):
        return self.adj[i]

    def iter_edges(self):
        for i, edges in enumerate(self.adj):
            for e in edges:
                yield i, e

    def positions(self) -> np.ndarray:
        return np.asarray([(q.x, q.y) for q in self.nodes], dtype=float)

    @classmethod
    def from_edge_list(cls, num_nodes: int, edges, K: Optional[int] = None):
        """Synthetic graph from (source, target, cost tuple) triples.

        Used for algorithm tests where geometry is irrelevant; nodes sit
        at placeholder positions and edges carry no geometry.
        """
        nodes = [Configuration(float(i), 0.0) for i in range(num_nodes)]
        adj = [[] for _ in range(num_nodes)]
        k = K
        for (i, j, cost) in edges:
            cost = tuple(float(c) for c in cost)
            if k is None:
                k = len(cost)
            adj[i].append(Edge(j, cost, None))
        return cls(nodes, adj, K=k or 1)

    # -- serialization ---------------------------------------------------

    def to_json_text(self) -> str:
        nodes_doc = []
        for q in self.nodes:
            if q.heading is None:
                nodes_doc.append([q.x, q.y])
            else:
                nodes_doc.append([q.x, q.y, q.heading])
        edges_doc = []
        for i, e in self.iter_edges():
            if e.geom is not None and e.geom.kind == "dubins":
                gdoc = [e.geom.word, *[float(p) for p in e.geom.params]]
            else:
                gdoc = None
            edges_doc.append([i, e.target, [float(c) for c in e.cost], gdoc])
        meta = dict(self.meta)
        if self.scenario is not None:
            meta["scenario"] = scenario_to_dict(self.scenario)
        doc = {
            "format": "lexplan-roadmap-1",
            "meta": meta,
            "nodes": nodes_doc,
            "edges": edges_doc,
        }
        return serialize.dumps(doc, indent=1)

    @classmethod
    def from_json_text(cls, text: str):
        doc = serialize.loads(text)
        if not isinstance(doc, dict) or doc.get("format") != "lexplan-roadmap-1":
            raise ValueError("roadmap: unrecognized document format")
        meta = dict(doc.get("meta", {}))
        scenario = None
        if "scenario" in meta:
            scenario = scenario_from_dict(meta.pop("scenario"))
        nodes = []
        for entry in doc["nodes"]:
            if len(entry) == 3:
                nodes.append(
                    Configuration(float(entry[0]), float(entry[1]), float(entry[2]))
                )
            else:
                nodes.append(Configuration(float(entry[0]), float(entry[1])))
        adj = [[] for _ in nodes]
        rho = scenario.rho if scenario is not None else None
        for i, j, cost, gdoc in doc["edges"]:
            q0, q1 = nodes[i], nodes[j]
            if gdoc is None:
                geom = straight_edge(q0, q1)
            else:
                word = gdoc[0]
                params = tuple(float(p) for p in gdoc[1:])
                geom = EdgeGeometry(
                    kind="dubins",
                    q0=q0,
                    q1=q1,
                    length=sum(params) * rho,
                    word=word,
                    params=params,
                    rho=rho,
                )
            adj[i].append(Edge(int(j), tuple(float(c) for c in cost), geom))
        K = scenario.K if scenario is not None else None
        return cls(nodes, adj, scenario=scenario, meta=meta, K=K)

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_json_text().encode()).hexdigest()


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _sample_nodes(scenario: Scenario, params: BuildParams):
    xmin, ymin, xmax, ymax = scenario.bounds
    children = np.random.SeedSequence(params.seed).spawn(params.n)
    configs = []
    for i in range(params.n):
        rng = np.random.default_rng(children[i])
        for _ in range(MAX_ATTEMPTS_PER_NODE):
            x = rng.uniform(xmin, xmax)
            y = rng.uniform(ymin, ymax)
            heading = rng.uniform(0.0, 2.0 * math.pi) if scenario.model == "dubins" else None
            if not points_in_obstacles([(x, y)], scenario.obstacles)[0]:
                configs.append(Configuration(x, y, heading))
                break
        else:
            raise RuntimeError(
                "sampling failed, scenario appears over-constrained "
                f"(node {i}, {MAX_ATTEMPTS_PER_NODE} rejections)"
            )
    return configs


def _neighbor_pairs(positions: np.ndarray, params: BuildParams):
    n = len(positions)
    if n < 2:
        return []
    tree = cKDTree(positions)
    if params.radius is not None:
        pairs = sorted(tuple(p) for p in tree.query_pairs(r=params.radius))
        return pairs
    k = params.k if params.k is not None else default_k(n)
    k = min(k, n - 1)
    dists, idxs = tree.query(positions, k=k + 1)
    pairs = set()
    for i in range(n):
        cand = sorted(
            (float(d), int(j))
            for d, j in zip(np.atleast_1d(dists[i]), np.atleast_1d(idxs[i]))
            if int(j) != i and int(j) < n
        )
        for _, j in cand[:k]:
            pairs.add((min(i, j), max(i, j)))
    return sorted(pairs)


def _chunks(seq, size):
    for off in range(0, len(seq), size):
        yield off, seq[off : off + size]


def _geoms_collide(geoms: Sequence[EdgeGeometry], scenario: Scenario, step: float):
    """Batch collision test; chord-samples curves at the given step."""
    hit = np.zeros(len(geoms), dtype=bool)
    if not scenario.obstacles:
        return hit
    for off, chunk in _chunks(list(geoms), 4096):
        starts = []
        ends = []
        spans = []
        pos = 0
        for g in chunk:
            if g.kind == "straight":
                verts = np.asarray(
                    [[g.q0.x, g.q0.y], [g.q1.x, g.q1.y]], dtype=float
                )
            else:
                verts = g.polyline(step)
            starts.append(verts[:-1])
            ends.append(verts[1:])
            spans.append(pos)
            pos += len(verts) - 1
        chord_hit = segments_hit_obstacles(
            np.concatenate(starts), np.concatenate(ends), scenario.obstacles
        )
        per_edge = np.maximum.reduceat(chord_hit.astype(np.uint8), np.asarray(spans))
        hit[off : off + len(chunk)] = per_edge.astype(bool)
    return hit


def _batch_costs(geoms: Sequence[EdgeGeometry], scenario: Scenario):
    """Cost vectors for many edges at once.

    Midpoint counts are integers, so batching reproduces exactly what
    :func:`lexplan.costfield.evaluate_edge` returns for each edge alone.
    """
    out = [None] * len(geoms)
    for off, chunk in _chunks(list(geoms), 2048):
        ms = []
        mids = []
        spans = []
        pos = 0
        for g in chunk:
            m = g.subsegment_count(default_step(g.length))
            ms.append(m)
            mids.append(g.midpoints(m))
            spans.append(pos)
            pos += m
        counts = criterion_counts(np.concatenate(mids), scenario)
        sums = {
            kind: np.add.reduceat(flags.astype(np.int64), np.asarray(spans))
            for kind, flags in counts.items()
        }
        for idx, g in enumerate(chunk):
            vec = []
            for kind in scenario.criteria:
                if kind == "dist":
                    v = g.length
                else:
                    v = g.length * (int(sums[kind][idx]) / ms[idx])
                vec.append(0.0 if v < 1e-12 else v)
            out[off + idx] = tuple(vec)
    return out


def build_roadmap(scenario: Scenario, params: BuildParams) -> Roadmap:
    """Sample a roadmap and annotate every edge with its cost vector.

    Deterministic: the same (scenario, params) produce byte-identical
    serialized roadmaps.  For holonomic models the edge set is
    symmetric; Dubins connections are attempted in both directions
    separately.
    """
    configs = _sample_nodes(scenario, params)
    positions = np.asarray([(q.x, q.y) for q in configs], dtype=float)
    pairs = _neighbor_pairs(positions, params)
    adj = [[] for _ in configs]

    if scenario.model == "holonomic2d":
        geoms = [straight_edge(configs[i], configs[j]) for i, j in pairs]
        keep = [
            (pair, g)
            for pair, g in zip(pairs, geoms)
            if g.length > 1e-12
        ]
        hits = _geoms_collide([g for _, g in keep], scenario, params.step)
        free = [(pair, g) for (pair, g), h in zip(keep, hits) if not h]
        costs = _batch_costs([g for _, g in free], scenario)
        for ((i, j), g), cost in zip(free, costs):
            adj[i].append(Edge(j, cost, g))
            adj[j].append(Edge(i, cost, straight_edge(configs[j], configs[i])))
        for edges in adj:
            edges.sort(key=lambda e: e.target)
    else:
        directed = []
        for i, j in pairs:
            directed.append((i, j))
            directed.append((j, i))
        geoms = []
        kept = []
        for i, j in directed:
            if (
                abs(configs[i].x - configs[j].x) <= 1e-12
                and abs(configs[i].y - configs[j].y) <= 1e-12
                and abs(configs[i].heading - configs[j].heading) <= 1e-12
            ):
                continue
            g = dubins_shortest_path(configs[i], configs[j], scenario.rho)
            if g.length > 1e-12:
                kept.append((i, j))
                geoms.append(g)
        hits = _geoms_collide(geoms, scenario, params.step)
        free_idx = [t for t, h in enumerate(hits) if not h]
        costs = _batch_costs([geoms[t] for t in free_idx], scenario)
        for t, cost in zip(free_idx, costs):
            i, j = kept[t]
            adj[i].append(Edge(j, cost, geoms[t]))
        for edges in adj:
            edges.sort(key=lambda e: e.target)

    meta = {
        "seed": params.seed,
        "n": params.n,
        "k": params.k if params.radius is None else None,
        "radius": params.radius,
        "step": params.step,
    }
    if meta["k"] is None and params.radius is None:
        meta["k"] = default_k(params.n)
    return Roadmap(configs, adj, scenario=scenario, meta=meta)


def nearest_node(roadmap: Roadmap, q: Configuration) -> int:
    """Index of the node closest to q's position; ties pick the lowest index."""
    if roadmap.num_nodes == 0:
        raise ValueError("roadmap has no nodes")
    pos = roadmap.positions()
    d2 = (pos[:, 0] - q.x) ** 2 + (pos[:, 1] - q.y) ** 2
    return int(np.argmin(d2))


def insert_endpoint(roadmap: Roadmap, q: Configuration):
    """Connect a new configuration into a copy of the roadmap.

    Returns (new_roadmap, new_index).  The original roadmap is left
    untouched.  The new node connects to its k nearest existing nodes
    (or radius neighbors) through collision-checked, cost-annotated
    edges in both directions.
    """
    scenario = roadmap.scenario
    if scenario is None:
        raise ValueError("roadmap carries no scenario; cannot evaluate edges")
    if scenario.model == "dubins" and q.heading is None:
        raise ValueError("dubins roadmaps need a heading on inserted endpoints")
    if scenario.model == "holonomic2d" and q.heading is not None:
        raise ValueError("holonomic roadmaps take positions without headings")
    if points_in_obstacles([(q.x, q.y)], scenario.obstacles)[0]:
        raise ValueError("endpoint lies inside an obstacle")
    step = float(roadmap.meta.get("step", 0.25))
    new_idx = roadmap.num_nodes
    nodes = list(roadmap.nodes) + [q]
    adj = [list(edges) for edges in roadmap.adj] + [[]]

    if roadmap.num_nodes:
        pos = roadmap.positions()
        d = np.hypot(pos[:, 0] - q.x, pos[:, 1] - q.y)
        radius = roadmap.meta.get("radius")
        if radius is not None:
            neighbor_ids = [j for j in np.argsort(d, kind="stable") if d[j] <= radius]
        else:
            k = roadmap.meta.get("k") or default_k(roadmap.num_nodes)
            order = sorted(range(len(d)), key=lambda j: (d[j], j))
            neighbor_ids = order[: min(k, len(order))]
        out_geoms = []
        in_geoms = []
        for j in neighbor_ids:
            if scenario.model == "holonomic2d":
                out_geoms.append(straight_edge(q, nodes[j]))
                in_geoms.append(straight_edge(nodes[j], q))
            else:
                out_geoms.append(dubins_shortest_path(q, nodes[j], scenario.rho))
                in_geoms.append(dubins_shortest_path(nodes[j], q, scenario.rho))
        all_geoms = out_geoms + in_geoms
        ok = [g.length > 1e-12 for g in all_geoms]
        hits = _geoms_collide(all_geoms, scenario, step)
        costs = _batch_costs(all_geoms, scenario)
        nk = len(neighbor_ids)
        for t, j in enumerate(neighbor_ids):
            if ok[t] and not hits[t]:
                adj[new_idx].append(Edge(int(j), costs[t], out_geoms[t]))
            if ok[nk + t] and not hits[nk + t]:
                adj[j].append(Edge(new_idx, costs[nk + t], in_geoms[t]))
    return (
        Roadmap(nodes, adj, scenario=scenario, meta=roadmap.meta, K=roadmap.K),
        new_idx,
    )
