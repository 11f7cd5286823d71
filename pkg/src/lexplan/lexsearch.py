"""Lexicographic shortest-path search over cost-annotated roadmaps.

The search settles nodes in lexicographic label order, one label vector
per node.  Extraction narrows the candidate set level by level: among
unsettled nodes, keep those minimal in the top criterion, break
remaining ties by the next criterion, and so on; a tie that survives
every level resolves to the lowest node index.  Relaxation walks the
label levels top down: a strict improvement at level k rewrites levels
k and below and reparents the node, an equal label descends a level,
and a worse label stops.  Equality means within ``tie_eps``.

Two interchangeable queue disciplines drive extraction:

* ``linear-scan``: rescans unsettled labels each round, the quadratic
  variant whose simplicity makes its cost model easy to reason about;
* ``lex-heap``: a binary heap ordered by (label vector, node index)
  with lazy deletion, where stale entries are skipped on pop.

Both produce identical label sets up to the tie tolerance.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import List, Optional

from .costfield import TIE_EPS, lex_compare
from .roadmap import Edge, Roadmap

DISCIPLINES = ("linear-scan", "lex-heap")

_ALIASES = {
    "linear": "linear-scan",
    "linear-scan": "linear-scan",
    "heap": "lex-heap",
    "lex-heap": "lex-heap",
}


@dataclass
class SearchTree:
    """Result of a search from one source: labels and parent pointers.

    ``labels[v]`` is None while v is unreached; settled or tentative
    labels are tuples of length ``levels``.  ``settled_updates`` counts
    label rewrites on already-settled nodes, which the relaxation
    invariants say should never happen; it stays exposed so tests can
    assert that.
    """

    roadmap: Roadmap
    source: int
    levels: int
    tie_eps: float
    discipline: str
    labels: List[Optional[tuple]] = field(default_factory=list)
    parent: List[Optional[int]] = field(default_factory=list)
    parent_edge: List[Optional[Edge]] = field(default_factory=list)
    settled: List[bool] = field(default_factory=list)
    settled_updates: int = 0

    def reached(self, v: int) -> bool:
        return self.labels[v] is not None


@dataclass
class PathResult:
    """A path with its node sequence, edge geometry, and cost vector."""

    found: bool
    nodes: List[int] = field(default_factory=list)
    edges: List[Edge] = field(default_factory=list)
    cost: Optional[tuple] = None

    @property
    def geoms(self):
        return [e.geom for e in self.edges]


def lexicographic_search(
    roadmap: Roadmap,
    source: int,
    discipline: str = "lex-heap",
    tie_eps: float = TIE_EPS,
    levels: Optional[int] = None,
) -> SearchTree:
    """Settle lexicographically minimal labels from a source node.

    ``levels`` restricts comparison to the first j criteria, which
    evaluates a prefix of the hierarchy on the same roadmap; by default
    all K levels participate.
    """
    n = roadmap.num_nodes
    if not (0 <= source < n):
        raise ValueError(f"source index {source} out of range")
    if discipline not in _ALIASES:
        raise ValueError(f"unknown queue discipline: {discipline!r}")
    discipline = _ALIASES[discipline]
    K = roadmap.K if levels is None else int(levels)
    if not (1 <= K <= roadmap.K):
        raise ValueError(f"levels must be in 1..{roadmap.K}")

    tree = SearchTree(
        roadmap=roadmap,
        source=source,
        levels=K,
        tie_eps=tie_eps,
        discipline=discipline,
        labels=[None] * n,
        parent=[None] * n,
        parent_edge=[None] * n,
        settled=[False] * n,
    )
    tree.labels[source] = (0.0,) * K
    if discipline == "linear-scan":
        _run_linear(tree)
    else:
        _run_heap(tree)
    return tree


def _relax_from(tree: SearchTree, i: int, on_update) -> None:
    """Relax every edge out of a just-settled node, levels top down."""
    labels = tree.labels
    li = labels[i]
    K = tree.levels
    eps = tree.tie_eps
    for edge in tree.roadmap.adj[i]:
        j = edge.target
        c = edge.cost
        lj = labels[j]
        if lj is None:
            labels[j] = tuple(li[k] + c[k] for k in range(K))
            tree.parent[j] = i
            tree.parent_edge[j] = edge
            on_update(j)
            continue
        for k in range(K):
            diff = lj[k] - (li[k] + c[k])
            if diff > eps:
                labels[j] = lj[:k] + tuple(li[m] + c[m] for m in range(k, K))
                tree.parent[j] = i
                tree.parent_edge[j] = edge
                if tree.settled[j]:
                    tree.settled_updates += 1
                on_update(j)
                break
            if diff < -eps:
                break


def _run_linear(tree: SearchTree) -> None:
    active = [tree.source]
    eps = tree.tie_eps
    labels = tree.labels

    def on_update(j):
        if not tree.settled[j] and j not in active:
            active.append(j)

    while active:
        xs = active
        for k in range(tree.levels):
            m = min(labels[v][k] for v in xs)
            xs = [v for v in xs if labels[v][k] <= m + eps]
            if len(xs) == 1:
                break
        x = min(xs)
        active.remove(x)
        tree.settled[x] = True
        _relax_from(tree, x, on_update)


def _run_heap(tree: SearchTree) -> None:
    labels = tree.labels
    heap = [(labels[tree.source], tree.source)]

    def on_update(j):
        heapq.heappush(heap, (labels[j], j))

    while heap:
        lab, v = heapq.heappop(heap)
        if tree.settled[v] or labels[v] != lab:
            continue  # lazy deletion of stale entries
        tree.settled[v] = True
        _relax_from(tree, v, on_update)


def extract_path(tree: SearchTree, goal: int) -> PathResult:
    """Walk parent pointers from the goal back to the source.

    The returned cost is the componentwise sum of traversed edge cost
    vectors, which matches the goal label within the tie tolerance.
    An unreached goal yields an explicit not-found result.
    """
    n = tree.roadmap.num_nodes
    if not (0 <= goal < n):
        raise ValueError(f"goal index {goal} out of range")
    if tree.labels[goal] is None:
        return PathResult(found=False)
    nodes = [goal]
    edges: List[Edge] = []
    v = goal
    while v != tree.source:
        e = tree.parent_edge[v]
        p = tree.parent[v]
        if p is None or e is None:
            raise RuntimeError("broken parent chain")
        edges.append(e)
        nodes.append(p)
        v = p
    nodes.reverse()
    edges.reverse()
    cost = [0.0] * tree.levels
    for e in edges:
        for k in range(tree.levels):
            cost[k] += e.cost[k]
    return PathResult(found=True, nodes=nodes, edges=edges, cost=tuple(cost))


BRUTE_FORCE_MAX_NODES = 14


def brute_force_lex_optimum(
    roadmap: Roadmap,
    source: int,
    goal: int,
    tie_eps: float = TIE_EPS,
) -> PathResult:
    """Exhaustive lexicographic optimum over all simple paths.

    Valid as an oracle because cycles cost strictly more in the bottom
    criterion, so some optimal path is simple.  Ties resolve to fewer
    edges, then the lexicographically smallest node sequence.  Guarded
    to graphs of at most 14 nodes.
    """
    n = roadmap.num_nodes
    if n > BRUTE_FORCE_MAX_NODES:
        raise ValueError(
            f"brute force limited to {BRUTE_FORCE_MAX_NODES} nodes, got {n}"
        )
    if not (0 <= source < n and 0 <= goal < n):
        raise ValueError("source or goal out of range")
    K = roadmap.K
    best: Optional[tuple] = None  # (cost, nodes, edges)

    def consider(cost, nodes, edges):
        nonlocal best
        if best is None:
            best = (tuple(cost), list(nodes), list(edges))
            return
        cmp = lex_compare(cost, best[0], tie_eps)
        if cmp < 0:
            best = (tuple(cost), list(nodes), list(edges))
        elif cmp == 0:
            if len(edges) < len(best[2]) or (
                len(edges) == len(best[2]) and list(nodes) < best[1]
            ):
                best = (tuple(cost), list(nodes), list(edges))

    visited = [False] * n
    nodes_stack = [source]
    edges_stack: List[Edge] = []

    def dfs(v, cost):
        if v == goal:
            consider(cost, nodes_stack, edges_stack)
            return
        for edge in roadmap.adj[v]:
            j = edge.target
            if visited[j]:
                continue
            visited[j] = True
            nodes_stack.append(j)
            edges_stack.append(edge)
            dfs(j, tuple(cost[k] + edge.cost[k] for k in range(K)))
            edges_stack.pop()
            nodes_stack.pop()
            visited[j] = False

    visited[source] = True
    dfs(source, (0.0,) * K)
    if best is None:
        return PathResult(found=False)
    return PathResult(found=True, nodes=best[1], edges=best[2], cost=best[0])
