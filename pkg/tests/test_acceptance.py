"""End-to-end acceptance checks.

Each test verifies one release criterion and reports a single PASS or
FAIL line through the terminal summary hook in conftest.  Tolerances
are stated inline; timing budgets use wall-clock seconds.
"""

import json
import random
import statistics
import sys
import time
from contextlib import contextmanager

import pytest

import conftest
from conftest import random_cost_graph
from lexplan import scenarios
from lexplan.baselines import (
    EgsParams,
    WeightedSumParams,
    dijkstra_scalar,
    expanded_graph_search,
    weighted_sum_search,
)
from lexplan.bench import (
    ExperimentConfig,
    read_records_csv,
    run_experiment,
    summarize,
    write_records_csv,
)
from lexplan.costfield import lex_compare
from lexplan.geometry import Configuration
from lexplan.lexsearch import (
    brute_force_lex_optimum,
    extract_path,
    lexicographic_search,
)
from lexplan.roadmap import BuildParams, Roadmap, build_roadmap, insert_endpoint


def sum_edge_costs(roadmap, nodes):
    total = [0.0] * roadmap.K
    for u, v in zip(nodes, nodes[1:]):
        edge = next(e for e in roadmap.adj[u] if e.target == v)
        for k in range(roadmap.K):
            total[k] += edge.cost[k]
    return tuple(total)


@contextmanager
def criterion(name):
    info = {"detail": ""}
    try:
        yield info
    except BaseException:
        detail = f" ({info['detail']})" if info["detail"] else ""
        conftest.ACCEPTANCE_LINES.append(f"FAIL  {name}{detail}")
        raise
    else:
        detail = f" ({info['detail']})" if info["detail"] else ""
        conftest.ACCEPTANCE_LINES.append(f"PASS  {name}{detail}")


# ---------------------------------------------------------------------------
# Shared roadmap fleets
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def bicriteria_fleet():
    """Fifty 500-node roadmaps over the two-criterion scenario."""
    sc = scenarios.load("bicriteria")
    start = Configuration(4.0, 20.0)
    goal = Configuration(48.0, 20.0)
    fleet = []
    for seed in range(50):
        rm = build_roadmap(sc, BuildParams(n=500, seed=seed))
        rm, s = insert_endpoint(rm, start)
        rm, g = insert_endpoint(rm, goal)
        fleet.append((rm, s, g))
    return fleet


@pytest.fixture(scope="session")
def quad_fleet():
    """Twenty 1000-node roadmaps over the four-criterion scenario."""
    sc = scenarios.load("quad")
    start = Configuration(4.0, 20.0)
    goal = Configuration(56.0, 20.0)
    fleet = []
    for seed in range(20):
        rm = build_roadmap(sc, BuildParams(n=1000, seed=seed))
        rm, s = insert_endpoint(rm, start)
        rm, g = insert_endpoint(rm, goal)
        fleet.append((rm, s, g))
    return fleet


@pytest.fixture(scope="session")
def fleet_ls_results(bicriteria_fleet):
    out = []
    for rm, s, g in bicriteria_fleet:
        res = extract_path(lexicographic_search(rm, s), g)
        assert res.found
        out.append(res)
    return out


# ---------------------------------------------------------------------------
# Criteria
# ---------------------------------------------------------------------------


def test_criterion_1_oracle_equivalence():
    """500 random small graphs: search equals exhaustive enumeration."""
    with criterion("criterion 1/9 oracle-equivalence") as info:
        t0 = time.perf_counter()
        worst = 0.0
        for i in range(500):
            rng = random.Random(1000 + i)
            n = rng.randint(2, 10)
            K = rng.choice([1, 2, 3])
            rm = random_cost_graph(rng, n, K)
            got = extract_path(lexicographic_search(rm, 0), n - 1)
            ref = brute_force_lex_optimum(rm, 0, n - 1)
            assert got.found == ref.found
            if got.found:
                diff = max(abs(a - b) for a, b in zip(got.cost, ref.cost))
                worst = max(worst, diff)
                assert diff <= 1e-9
        elapsed = time.perf_counter() - t0
        assert elapsed < 30.0
        info["detail"] = f"500 graphs, max diff {worst:.2e}, {elapsed:.1f}s"


def test_criterion_2_worked_instance(six_node_roadmap):
    """Exact hand-checked values on the six-node example."""
    with criterion("criterion 2/9 worked-instance") as info:
        for discipline in ("lex-heap", "linear-scan"):
            tree = lexicographic_search(six_node_roadmap, 0, discipline=discipline)
            res = extract_path(tree, 5)
            assert res.nodes == [0, 1, 3, 4, 5]
            assert res.cost == (4.0, 14.0)
            # the risk-tied detour through node 2 costs (4, 17): same
            # exposure, three meters longer, so it must lose
            assert res.nodes != [0, 1, 2, 4, 5]
        detour = sum_edge_costs(six_node_roadmap, [0, 1, 2, 4, 5])
        assert detour == (4.0, 17.0)
        assert lex_compare((4.0, 14.0), detour) < 0
        ws_short = weighted_sum_search(six_node_roadmap, 0, 5, WeightedSumParams(0.5))
        assert ws_short.nodes == [0, 5]
        assert ws_short.cost == (9.0, 6.0)
        ws_safe = weighted_sum_search(six_node_roadmap, 0, 5, WeightedSumParams(0.9))
        assert ws_safe.cost == (4.0, 14.0)
        f = expanded_graph_search(
            six_node_roadmap, 0, 5, EgsParams(budget_max=10.0, layers=2)
        )
        assert f.entries[0].path.cost == (4.0, 14.0)
        assert f.entries[1].path.cost == (9.0, 6.0)
        assert f.selected_layer == 1
        info["detail"] = "both disciplines, weighted sum at 0.5/0.9, budget frontier"


def test_criterion_3_primary_cost_preservation(bicriteria_fleet, fleet_ls_results):
    """The full hierarchy keeps the primary cost a lone Dijkstra would get."""
    with criterion("criterion 3/9 primary-cost-preservation") as info:
        worst = 0.0
        for (rm, s, g), full in zip(bicriteria_fleet, fleet_ls_results):
            ref, _, _ = dijkstra_scalar(rm, s, lambda e: e.cost[0])
            top = lexicographic_search(rm, s, levels=1)
            for value in (ref[g], top.labels[g][0]):
                diff = abs(value - full.cost[0])
                worst = max(worst, diff)
                assert diff <= 1e-9
        info["detail"] = f"50 trials x 500 nodes, max primary diff {worst:.2e}"


def test_criterion_4_prefix_consistency(quad_fleet):
    """levels=j reproduces the first j components of the full search."""
    with criterion("criterion 4/9 prefix-consistency") as info:
        worst = 0.0
        for rm, s, g in quad_fleet:
            full = lexicographic_search(rm, s)
            assert full.labels[g] is not None
            for j in (1, 2, 3):
                part = lexicographic_search(rm, s, levels=j)
                for k in range(j):
                    diff = abs(part.labels[g][k] - full.labels[g][k])
                    worst = max(worst, diff)
                    assert diff <= 1e-9
        info["detail"] = f"20 trials x 1000 nodes, 4 levels, max diff {worst:.2e}"


def test_criterion_5_baseline_dominance(bicriteria_fleet, fleet_ls_results):
    """The prioritized result lexicographically dominates both baselines."""
    with criterion("criterion 5/9 baseline-dominance") as info:
        comparisons = 0
        for (rm, s, g), ls in zip(bicriteria_fleet, fleet_ls_results):
            for alpha in (0.5, 0.8, 0.9, 1.0):
                ws = weighted_sum_search(rm, s, g, WeightedSumParams(alpha))
                assert ws.found
                assert lex_compare(ls.cost, ws.cost) <= 0
                comparisons += 1
            budget = 2.0 * ls.cost[0]
            prev_bound = None
            for layers in (10, 50, 1000):
                params = EgsParams(budget_max=budget, layers=layers)
                f = expanded_graph_search(rm, s, g, params)
                assert f.selected is not None
                assert lex_compare(ls.cost, f.selected.cost) <= 0
                # refining the layering never loosens the selected bound
                bound = f.selected_layer * params.delta
                if prev_bound is not None:
                    assert bound <= prev_bound + 1e-9
                prev_bound = bound
                if layers == 1000:
                    # at the finest layering the budgeted primary cost
                    # sits within one layer width of the true optimum
                    assert f.selected.cost[0] - ls.cost[0] <= params.delta + 1e-9
                comparisons += 1
        info["detail"] = (
            f"{comparisons} comparisons over 50 trials, tie window 1e-9; "
            "nested budget bounds non-increasing, finest within one layer"
        )


def test_criterion_6_weighted_sum_witness(bicriteria_fleet, fleet_ls_results):
    """Some blended weight accepts measurably more exposure than the search."""
    with criterion("criterion 6/9 weighted-sum-witness") as info:
        witnesses = 0
        worst_gap = 0.0
        for (rm, s, g), ls in zip(bicriteria_fleet, fleet_ls_results):
            for alpha in (0.8, 0.9):
                ws = weighted_sum_search(rm, s, g, WeightedSumParams(alpha))
                gap = ws.cost[0] - ls.cost[0]
                if gap > 1e-6:
                    witnesses += 1
                    worst_gap = max(worst_gap, gap)
        assert witnesses >= 1
        info["detail"] = (
            f"{witnesses}/100 runs exceed the prioritized exposure, "
            f"largest excess {worst_gap:.3f}"
        )


def test_criterion_7_discipline_agreement():
    """Queue disciplines agree; deep hierarchies stay near flat-cost speed."""
    with criterion("criterion 7/9 discipline-agreement") as info:
        t0 = time.perf_counter()
        for i in range(100):
            rng = random.Random(7000 + i)
            n = rng.randint(2, 40)
            K = rng.choice([1, 2, 3, 4])
            rm = random_cost_graph(rng, n, K, p=0.15)
            heap_tree = lexicographic_search(rm, 0, discipline="lex-heap")
            lin_tree = lexicographic_search(rm, 0, discipline="linear-scan")
            for v in range(n):
                a, b = heap_tree.labels[v], lin_tree.labels[v]
                assert (a is None) == (b is None)
                if a is not None:
                    assert max(abs(x - y) for x, y in zip(a, b)) <= 1e-9

        sc = scenarios.load("quad")
        rm = build_roadmap(sc, BuildParams(n=2000, seed=1))
        rm, s = insert_endpoint(rm, Configuration(4.0, 20.0))
        rm, _ = insert_endpoint(rm, Configuration(56.0, 20.0))
        flat_times, deep_times = [], []
        for _ in range(20):
            t1 = time.perf_counter()
            lexicographic_search(rm, s, levels=1)
            flat_times.append(time.perf_counter() - t1)
            t1 = time.perf_counter()
            lexicographic_search(rm, s)
            deep_times.append(time.perf_counter() - t1)
        ratio = statistics.median(deep_times) / statistics.median(flat_times)
        assert ratio <= 8.0
        elapsed = time.perf_counter() - t0
        assert elapsed < 120.0
        info["detail"] = (
            f"100 graph agreements; 2000-node median depth-4 / depth-1 "
            f"time ratio {ratio:.2f} over 20 reps (limit 8), {elapsed:.0f}s total"
        )


def test_criterion_8_benchmark_determinism(tmp_path):
    """Re-running an experiment reproduces every non-timing column."""
    with criterion("criterion 8/9 benchmark-determinism") as info:
        config = {
            "scenario": str(scenarios.path("bicriteria")),
            "nodes": [60],
            "trials": 3,
            "seed": 21,
            "start": [4, 20],
            "goal": [48, 20],
            "algorithms": [
                {"algo": "ls"},
                {"algo": "ls", "levels": 1},
                {"algo": "ws", "alpha": 0.9},
                {"algo": "egs", "budget": 30.0, "layers": 5},
            ],
        }
        cfg_path = tmp_path / "experiment.json"
        cfg_path.write_text(json.dumps(config))
        cfg = ExperimentConfig.from_json(cfg_path)
        first = run_experiment(cfg)
        second = run_experiment(cfg)
        assert len(first) == 12

        def stable(r):
            return (r.trial, r.seed, r.nodes, r.algo, r.params, r.feasible, r.cost)

        assert [stable(r) for r in first] == [stable(r) for r in second]
        a_csv, b_csv = tmp_path / "a.csv", tmp_path / "b.csv"
        write_records_csv(first, a_csv)
        write_records_csv(second, b_csv)
        strip = lambda p: [
            ",".join(line.split(",")[:5] + line.split(",")[7:])
            for line in p.read_text().splitlines()
        ]
        assert strip(a_csv) == strip(b_csv)
        assert read_records_csv(a_csv) == first

        rows = summarize(first)
        assert rows == summarize(list(reversed(first)))
        info["detail"] = "12 records repeated byte-stable outside timing columns"


def test_criterion_9_interface_independence(tmp_path):
    """The library suite leans only on its own published file formats."""
    with criterion("criterion 9/9 interface-independence") as info:
        assert "lexfig" not in sys.modules  # no chart-package import anywhere
        for name in scenarios.names():
            sc = scenarios.load(name)
            assert sc.criteria[-1] == "dist"
        rm = build_roadmap(scenarios.load("bicriteria"), BuildParams(n=30, seed=0))
        text = rm.to_json_text()
        assert Roadmap.from_json_text(text).to_json_text() == text
        doc = json.loads(text)
        assert doc["format"] == "lexplan-roadmap-1"
        assert set(doc) == {"format", "meta", "nodes", "edges"}
        info["detail"] = (
            f"{len(scenarios.names())} bundled scenarios, "
            "roadmap JSON byte round-trip, no chart-package import"
        )
