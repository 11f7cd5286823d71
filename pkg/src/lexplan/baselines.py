"""Baseline planners for bi-criteria roadmaps.

Two classical alternatives to the prioritized search, both restricted
to two-level hierarchies (primary penalty, then distance):

* weighted-sum scalarization: a single Dijkstra pass over the blended
  edge weight alpha * primary + (1 - alpha) * distance;
* expanded-graph search: the budget axis [0, budget_max] splits into L
  equal layers of width delta, and for each layer bound l * delta the
  planner reports the distance-optimal path whose exact accumulated
  primary cost stays within the bound.

The expanded search keeps, per node, the Pareto frontier of (distance,
primary budget) labels, capped at the top budget.  A single pass plus a
per-layer readout yields the whole frontier; a literal layer-by-layer
rerun is also provided since its repeated searches are the variant
whose timing is comparable against the other planners.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from .lexsearch import PathResult
from .roadmap import Edge, Roadmap


@dataclass(frozen=True)
class WeightedSumParams:
    """Scalarization weight; alpha = 1 scores the primary cost alone."""

    alpha: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError("alpha must lie in (0, 1]")


@dataclass(frozen=True)
class EgsParams:
    """Budget cap and layer count for the expanded-graph search."""

    budget_max: float
    layers: int

    def __post_init__(self):
        if not (self.budget_max > 0.0):
            raise ValueError("budget_max must be positive")
        if self.layers < 1:
            raise ValueError("layers must be at least 1")

    @property
    def delta(self) -> float:
        return self.budget_max / self.layers


@dataclass
class LayerEntry:
    """Per-layer outcome: feasibility and the distance-optimal path."""

    feasible: bool
    path: Optional[PathResult] = None


@dataclass
class EgsFrontier:
    """Frontier over budget layers 1..L plus the selected solution.

    ``selected_layer`` is the smallest feasible layer (1-based), or
    None when no layer admits a path.
    """

    budget_max: float
    delta: float
    entries: List[LayerEntry] = field(default_factory=list)
    selected_layer: Optional[int] = None

    @property
    def selected(self) -> Optional[PathResult]:
        if self.selected_layer is None:
            return None
        return self.entries[self.selected_layer - 1].path


def dijkstra_scalar(
    roadmap: Roadmap, source: int, weight: Callable[[Edge], float]
):
    """Plain scalar Dijkstra; returns (dist, parent, parent_edge) lists."""
    n = roadmap.num_nodes
    dist: List[float] = [math.inf] * n
    parent: List[Optional[int]] = [None] * n
    parent_edge: List[Optional[Edge]] = [None] * n
    settled = [False] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, v = heapq.heappop(heap)
        if settled[v]:
            continue
        settled[v] = True
        for edge in roadmap.adj[v]:
            j = edge.target
            nd = d + weight(edge)
            if nd < dist[j]:
                dist[j] = nd
                parent[j] = v
                parent_edge[j] = edge
                heapq.heappush(heap, (nd, j))
    return dist, parent, parent_edge


def _walk_parents(source, goal, parent, parent_edge, K):
    nodes = [goal]
    edges: List[Edge] = []
    v = goal
    while v != source:
        edges.append(parent_edge[v])
        v = parent[v]
        nodes.append(v)
    nodes.reverse()
    edges.reverse()
    cost = [0.0] * K
    for e in edges:
        for k in range(K):
            cost[k] += e.cost[k]
    return PathResult(found=True, nodes=nodes, edges=edges, cost=tuple(cost))


def weighted_sum_search(
    roadmap: Roadmap, source: int, goal: int, params: WeightedSumParams
) -> PathResult:
    """Dijkstra over the blended weight; reports the true cost pair.

    Only defined for two-criterion roadmaps.  Ties in the blended
    weight break arbitrarily by queue order, which is the point of
    comparison against the prioritized search.
    """
    if roadmap.K != 2:
        raise ValueError("weighted-sum baseline needs exactly two criteria")
    a = params.alpha
    dist, parent, parent_edge = dijkstra_scalar(
        roadmap, source, lambda e: a * e.cost[0] + (1.0 - a) * e.cost[1]
    )
    if math.isinf(dist[goal]):
        return PathResult(found=False)
    return _walk_parents(source, goal, parent, parent_edge, 2)


def _layer_of(b: float, delta: float) -> int:
    """Layer index of an exact accumulated budget, ceil with float relief."""
    if b <= 0.0:
        return 0
    return max(0, math.ceil(b / delta - 1e-12))


class _Label:
    __slots__ = ("d", "b", "node", "parent", "edge")

    def __init__(self, d, b, node, parent, edge):
        self.d = d
        self.b = b
        self.node = node
        self.parent = parent
        self.edge = edge


def _pareto_search(
    roadmap: Roadmap, source: int, budget_cap: float, goal: Optional[int] = None
):
    """Label-setting search over (distance, primary budget) pairs.

    Returns per-node lists of settled non-dominated labels.  Labels pop
    in (d, b) order, so every settled label at a node beats all its
    successors on distance and must be beaten on budget: dominance
    reduces to comparing against the node's latest settled budget.

    When the goal is given, labels whose budget already matches or
    exceeds the goal's best settled budget are discarded: any
    completion of such a label is dominated at the goal.  The goal's
    own frontier stays exact; other fronts may then be partial.
    """
    n = roadmap.num_nodes
    fronts: List[List[_Label]] = [[] for _ in range(n)]
    min_b = [math.inf] * n
    goal_b = math.inf
    counter = 0
    start = _Label(0.0, 0.0, source, None, None)
    heap = [(0.0, 0.0, source, 0)]
    store = {0: start}
    adj = roadmap.adj
    pop = heapq.heappop
    push = heapq.heappush
    while heap:
        d, b, v, lid = pop(heap)
        lab = store.pop(lid)
        if min_b[v] <= b or goal_b <= b:
            continue
        fronts[v].append(lab)
        min_b[v] = b
        if v == goal:
            goal_b = b
        for edge in adj[v]:
            nb = b + edge.cost[0]
            if nb > budget_cap or goal_b <= nb:
                continue
            j = edge.target
            if min_b[j] <= nb:
                continue
            nd = d + edge.cost[1]
            counter += 1
            store[counter] = _Label(nd, nb, j, lab, edge)
            push(heap, (nd, nb, j, counter))
    return fronts


def _label_path(lab: _Label) -> PathResult:
    edges: List[Edge] = []
    nodes: List[int] = [lab.node]
    cur = lab
    while cur.parent is not None:
        edges.append(cur.edge)
        cur = cur.parent
        nodes.append(cur.node)
    nodes.reverse()
    edges.reverse()
    cost = [0.0, 0.0]
    for e in edges:
        cost[0] += e.cost[0]
        cost[1] += e.cost[1]
    return PathResult(found=True, nodes=nodes, edges=edges, cost=tuple(cost))


def expanded_graph_search(
    roadmap: Roadmap, source: int, goal: int, params: EgsParams
) -> EgsFrontier:
    """Single-pass frontier over all budget layers.

    For each layer l the entry holds the minimum-distance path whose
    exact accumulated primary cost is at most l * delta; distances are
    non-increasing in l.  The selected solution is the smallest
    feasible layer.  An all-infeasible frontier is a result, not an
    error.
    """
    if roadmap.K != 2:
        raise ValueError("expanded-graph baseline needs exactly two criteria")
    delta = params.delta
    cap = params.budget_max * (1.0 + 1e-12) + 1e-12
    fronts = _pareto_search(roadmap, source, cap, goal=goal)
    goal_labels = sorted(fronts[goal], key=lambda l: (l.b, l.d))
    frontier = EgsFrontier(budget_max=params.budget_max, delta=delta)
    for layer in range(1, params.layers + 1):
        best = None
        for lab in goal_labels:
            if _layer_of(lab.b, delta) <= layer:
                if best is None or lab.d < best.d:
                    best = lab
        if best is None:
            frontier.entries.append(LayerEntry(feasible=False))
        else:
            frontier.entries.append(LayerEntry(feasible=True, path=_label_path(best)))
            if frontier.selected_layer is None:
                frontier.selected_layer = layer
    return frontier


def expanded_graph_search_layered(
    roadmap: Roadmap, source: int, goal: int, params: EgsParams
) -> EgsFrontier:
    """Layer-by-layer rerun variant; one capped search per layer.

    Produces the same frontier as the single-pass version and exists
    for timing comparisons, since its cost grows with the layer count.
    """
    if roadmap.K != 2:
        raise ValueError("expanded-graph baseline needs exactly two criteria")
    delta = params.delta
    frontier = EgsFrontier(budget_max=params.budget_max, delta=delta)
    for layer in range(1, params.layers + 1):
        cap = (layer * delta) * (1.0 + 1e-12) + 1e-12
        fronts = _pareto_search(roadmap, source, cap, goal=goal)
        best = None
        for lab in fronts[goal]:
            if _layer_of(lab.b, delta) <= layer:
                if best is None or lab.d < best.d:
                    best = lab
        if best is None:
            frontier.entries.append(LayerEntry(feasible=False))
        else:
            frontier.entries.append(LayerEntry(feasible=True, path=_label_path(best)))
            if frontier.selected_layer is None:
                frontier.selected_layer = layer
    return frontier
