import math

import numpy as np
import pytest
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from lexplan import scenarios
from lexplan.costfield import Scenario, evaluate_edge
from lexplan.geometry import Configuration, Polygon, segment_collides
from lexplan.roadmap import (
    BuildParams,
    Edge,
    Roadmap,
    build_roadmap,
    default_k,
    insert_endpoint,
    nearest_node,
)


@pytest.fixture(scope="module")
def bicriteria():
    return scenarios.load("bicriteria")


@pytest.fixture(scope="module")
def small_roadmap(bicriteria):
    return build_roadmap(bicriteria, BuildParams(n=150, seed=7))


@pytest.fixture(scope="module")
def dubins_roadmap():
    sc = scenarios.load("bicriteria_dubins")
    return build_roadmap(sc, BuildParams(n=40, seed=3))


def test_default_k_grows_logarithmically():
    assert default_k(500) == math.ceil(2 * math.e * math.log(502))
    assert default_k(10) < default_k(10_000)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n=0, seed=1),
        dict(n=10, seed=-1),
        dict(n=10, seed=1, k=0),
        dict(n=10, seed=1, radius=0.0),
        dict(n=10, seed=1, step=0.0),
    ],
)
def test_build_params_validation(kwargs):
    with pytest.raises(ValueError):
        BuildParams(**kwargs)


# ---------------------------------------------------------------------------
# Construction invariants
# ---------------------------------------------------------------------------


def test_build_is_deterministic(bicriteria):
    a = build_roadmap(bicriteria, BuildParams(n=80, seed=11))
    b = build_roadmap(bicriteria, BuildParams(n=80, seed=11))
    assert a.to_json_text() == b.to_json_text()
    assert a.content_hash() == b.content_hash()
    c = build_roadmap(bicriteria, BuildParams(n=80, seed=12))
    assert c.content_hash() != a.content_hash()


def test_nodes_sampled_inside_bounds_and_outside_obstacles(small_roadmap):
    sc = small_roadmap.scenario
    xmin, ymin, xmax, ymax = sc.bounds
    for q in small_roadmap.nodes:
        assert xmin <= q.x <= xmax and ymin <= q.y <= ymax
        assert q.heading is None
        for poly in sc.obstacles:
            assert not poly.contains((q.x, q.y))


def test_edges_are_collision_free(small_roadmap):
    sc = small_roadmap.scenario
    for i, e in small_roadmap.iter_edges():
        seg = ((e.geom.q0.x, e.geom.q0.y), (e.geom.q1.x, e.geom.q1.y))
        assert not segment_collides(seg, sc.obstacles)


def test_holonomic_edges_are_symmetric(small_roadmap):
    seen = {}
    for i, e in small_roadmap.iter_edges():
        seen[(i, e.target)] = e.cost
    for (i, j), cost in seen.items():
        assert seen[(j, i)] == cost


def test_adjacency_is_sorted_and_clean(small_roadmap):
    for i, edges in enumerate(small_roadmap.adj):
        targets = [e.target for e in edges]
        assert targets == sorted(targets)
        assert i not in targets
        for e in edges:
            assert len(e.cost) == small_roadmap.K
            assert e.cost[-1] > 0.0
            assert e.cost[-1] == e.geom.length


def test_stored_costs_match_scalar_evaluation(small_roadmap):
    sc = small_roadmap.scenario
    sample = list(small_roadmap.iter_edges())[::17]
    assert sample
    for _, e in sample:
        assert evaluate_edge(e.geom, sc) == e.cost


def test_roadmap_is_mostly_connected(small_roadmap):
    n = small_roadmap.num_nodes
    rows, cols = [], []
    for i, e in small_roadmap.iter_edges():
        rows.append(i)
        cols.append(e.target)
    m = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    ncomp, labels = connected_components(m, directed=False)
    assert np.bincount(labels).max() >= 0.9 * n


def test_radius_connection_mode(bicriteria):
    rm = build_roadmap(bicriteria, BuildParams(n=60, seed=2, radius=8.0))
    assert rm.meta["radius"] == 8.0
    assert rm.meta["k"] is None
    for _, e in rm.iter_edges():
        assert e.geom.length <= 8.0 + 1e-9


def test_over_constrained_scenario_raises():
    sc = Scenario(
        bounds=(0.0, 0.0, 1.0, 1.0),
        obstacles=[Polygon([(-1, -1), (2, -1), (2, 2), (-1, 2)])],
    )
    with pytest.raises(RuntimeError, match="over-constrained"):
        build_roadmap(sc, BuildParams(n=3, seed=0))


# ---------------------------------------------------------------------------
# Curvature-bounded variant
# ---------------------------------------------------------------------------


def test_dubins_roadmap_edges(dubins_roadmap):
    assert all(q.heading is not None for q in dubins_roadmap.nodes)
    assert dubins_roadmap.num_edges > 0
    for _, e in dubins_roadmap.iter_edges():
        assert e.geom.kind == "dubins"
        assert e.geom.rho == dubins_roadmap.scenario.rho
        assert e.cost[-1] == e.geom.length


def test_dubins_round_trip_preserves_words(dubins_roadmap):
    again = Roadmap.from_json_text(dubins_roadmap.to_json_text())
    for (i, e), (i2, e2) in zip(dubins_roadmap.iter_edges(), again.iter_edges()):
        assert (i, e.target) == (i2, e2.target)
        assert e.cost == e2.cost
        assert e.geom.word == e2.geom.word
        assert e.geom.params == e2.geom.params


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def test_json_round_trip_is_byte_stable(small_roadmap):
    text = small_roadmap.to_json_text()
    again = Roadmap.from_json_text(text)
    assert again.to_json_text() == text
    assert again.num_nodes == small_roadmap.num_nodes
    assert again.K == small_roadmap.K
    assert again.num_edges == small_roadmap.num_edges
    for (i, e), (j, f) in zip(small_roadmap.iter_edges(), again.iter_edges()):
        assert (i, e.target, e.cost) == (j, f.target, f.cost)


def test_from_json_rejects_other_formats():
    with pytest.raises(ValueError, match="format"):
        Roadmap.from_json_text('{"format": "something-else"}')


def test_from_edge_list_infers_k():
    rm = Roadmap.from_edge_list(3, [(0, 1, (1.0, 2.0)), (1, 2, (3.0, 4.0))])
    assert rm.K == 2
    assert rm.num_edges == 2
    assert rm.scenario is None


# ---------------------------------------------------------------------------
# Endpoint handling
# ---------------------------------------------------------------------------


def test_nearest_node_picks_lowest_index_on_ties():
    rm = Roadmap.from_edge_list(4, [(0, 1, (1.0,))])
    assert nearest_node(rm, Configuration(1.5, 0.0)) == 1
    assert nearest_node(rm, Configuration(2.9, 0.0)) == 3
    pos = rm.positions()
    q = Configuration(1.2, 0.4)
    d = np.hypot(pos[:, 0] - q.x, pos[:, 1] - q.y)
    assert nearest_node(rm, q) == int(np.argmin(d))


def test_insert_endpoint_connects_both_ways(small_roadmap):
    before = small_roadmap.num_edges
    rm2, idx = insert_endpoint(small_roadmap, Configuration(4.0, 20.0))
    assert idx == small_roadmap.num_nodes
    assert rm2.num_nodes == small_roadmap.num_nodes + 1
    # the original is untouched
    assert small_roadmap.num_edges == before
    assert len(small_roadmap.adj) == rm2.num_nodes - 1
    out_edges = rm2.edges_from(idx)
    assert out_edges
    incoming = [i for i, e in rm2.iter_edges() if e.target == idx]
    assert incoming
    sc = rm2.scenario
    for e in out_edges:
        assert evaluate_edge(e.geom, sc) == e.cost


def test_insert_endpoint_validation(small_roadmap, dubins_roadmap):
    with pytest.raises(ValueError, match="obstacle"):
        insert_endpoint(small_roadmap, Configuration(27.5, 36.0))
    with pytest.raises(ValueError, match="heading"):
        insert_endpoint(small_roadmap, Configuration(4.0, 20.0, 0.5))
    with pytest.raises(ValueError, match="heading"):
        insert_endpoint(dubins_roadmap, Configuration(4.0, 20.0))
    bare = Roadmap.from_edge_list(2, [(0, 1, (1.0,))])
    with pytest.raises(ValueError, match="scenario"):
        insert_endpoint(bare, Configuration(0.5, 0.0))
