"""Benchmark harness: repeated builds and searches over seeded trials.

An experiment config names a scenario, node counts, a trial count, a
base seed, start and goal, and the algorithm variants to compare.  Each
(node count, trial) cell builds one roadmap, seeded with base XOR trial,
and every algorithm searches that same graph; build and search times
are recorded separately.  Records serialize to CSV with the column
order: trial, seed, nodes, algo, params, build_ms, search_ms, feasible,
cost_1..cost_K.  Summaries report mean and nearest-rank 10th and 90th
percentiles per (node count, algorithm, metric) group.
"""

from __future__ import annotations

import csv
import math
import json
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Sequence

from .baselines import (
    EgsParams,
    WeightedSumParams,
    expanded_graph_search,
    expanded_graph_search_layered,
    weighted_sum_search,
)
from .costfield import Scenario, scenario_from_dict
from .geometry import Configuration
from .lexsearch import PathResult, extract_path, lexicographic_search
from .roadmap import BuildParams, Roadmap, build_roadmap, insert_endpoint, nearest_node


def load_scenario(path) -> Scenario:
    """Read and validate a scenario JSON file."""
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"scenario file is not valid JSON: {exc}") from exc
    return scenario_from_dict(data)


@dataclass(frozen=True)
class AlgoSpec:
    """One algorithm variant to benchmark."""

    algo: str
    discipline: str = "lex-heap"
    alpha: Optional[float] = None
    budget: Optional[float] = None
    layers: Optional[int] = None
    levels: Optional[int] = None
    layered: bool = True

    def __post_init__(self):
        if self.algo not in ("ls", "ws", "egs"):
            raise ValueError(f"algorithms: unknown algo {self.algo!r}")
        if self.algo == "ws" and self.alpha is None:
            raise ValueError("algorithms: ws entry needs 'alpha'")
        if self.algo == "egs" and (self.budget is None or self.layers is None):
            raise ValueError("algorithms: egs entry needs 'budget' and 'layers'")

    @classmethod
    def from_dict(cls, d: dict) -> "AlgoSpec":
        disc = d.get("discipline", "heap")
        disc = {"linear": "linear-scan", "heap": "lex-heap"}.get(disc, disc)
        return cls(
            algo=d.get("algo", ""),
            discipline=disc,
            alpha=d.get("alpha"),
            budget=d.get("budget"),
            layers=d.get("layers"),
            levels=d.get("levels"),
            layered=d.get("layered", True),
        )

    def ident(self) -> str:
        if self.algo == "ls":
            return "ls-linear" if self.discipline == "linear-scan" else "ls-heap"
        return self.algo

    def params_str(self) -> str:
        parts = []
        if self.algo == "ls" and self.levels is not None:
            parts.append(f"levels={self.levels}")
        if self.algo == "ws":
            parts.append(f"alpha={self.alpha:g}")
        if self.algo == "egs":
            parts.append(f"budget={self.budget:g};layers={self.layers}")
        return ";".join(parts)


@dataclass
class ExperimentConfig:
    """Parsed experiment description."""

    scenario_path: str
    nodes: Sequence[int]
    trials: int
    seed: int
    start: Configuration
    goal: Configuration
    algorithms: Sequence[AlgoSpec]
    endpoint_mode: str = "insert"
    step: float = 0.25

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("nodes: must list at least one node count")
        if self.trials < 1:
            raise ValueError("trials: must be at least 1")
        if self.seed < 0:
            raise ValueError("seed: must be non-negative")
        if not self.algorithms:
            raise ValueError("algorithms: must list at least one entry")
        if self.endpoint_mode not in ("insert", "snap"):
            raise ValueError("endpoint_mode: must be 'insert' or 'snap'")

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        path = Path(path)
        with open(path) as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ValueError(f"config file is not valid JSON: {exc}") from exc
        for key in ("scenario", "nodes", "trials", "seed", "start", "goal", "algorithms"):
            if key not in data:
                raise ValueError(f"{key}: missing from experiment config")
        scenario_path = Path(data["scenario"])
        if not scenario_path.is_absolute():
            scenario_path = path.parent / scenario_path
        return cls(
            scenario_path=str(scenario_path),
            nodes=[int(n) for n in data["nodes"]],
            trials=int(data["trials"]),
            seed=int(data["seed"]),
            start=parse_configuration(data["start"]),
            goal=parse_configuration(data["goal"]),
            algorithms=[AlgoSpec.from_dict(d) for d in data["algorithms"]],
            endpoint_mode=data.get("endpoint_mode", "insert"),
            step=float(data.get("step", 0.25)),
        )


def parse_configuration(value) -> Configuration:
    """Accept [x, y], [x, y, heading], or the same comma-separated."""
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
    else:
        parts = list(value)
    if len(parts) == 2:
        return Configuration(float(parts[0]), float(parts[1]))
    if len(parts) == 3:
        return Configuration(float(parts[0]), float(parts[1]), float(parts[2]))
    raise ValueError("configuration must be x,y or x,y,heading")


@dataclass
class TrialRecord:
    """One algorithm run on one roadmap."""

    trial: int
    seed: int
    nodes: int
    algo: str
    params: str
    build_ms: float
    search_ms: float
    feasible: bool
    cost: Optional[tuple]
    roadmap_hash: str = field(default="", compare=False)


def full_cost(result: PathResult, K: int) -> tuple:
    """Path cost under the full hierarchy, from the stored edge vectors."""
    cost = [0.0] * K
    for e in result.edges:
        for k in range(K):
            cost[k] += e.cost[k]
    return tuple(cost)


def run_algorithm(roadmap: Roadmap, source: int, goal: int, spec: AlgoSpec) -> PathResult:
    if spec.algo == "ls":
        tree = lexicographic_search(
            roadmap, source, discipline=spec.discipline, levels=spec.levels
        )
        return extract_path(tree, goal)
    if spec.algo == "ws":
        return weighted_sum_search(
            roadmap, source, goal, WeightedSumParams(alpha=float(spec.alpha))
        )
    params = EgsParams(budget_max=float(spec.budget), layers=int(spec.layers))
    search = expanded_graph_search_layered if spec.layered else expanded_graph_search
    frontier = search(roadmap, source, goal, params)
    selected = frontier.selected
    return selected if selected is not None else PathResult(found=False)


def prepare_cell(
    scenario: Scenario, cfg: ExperimentConfig, n: int, seed: int
):
    """Build the shared roadmap for one (node count, trial) cell."""
    rm = build_roadmap(scenario, BuildParams(n=n, seed=seed, step=cfg.step))
    if cfg.endpoint_mode == "insert":
        rm, s_idx = insert_endpoint(rm, cfg.start)
        rm, g_idx = insert_endpoint(rm, cfg.goal)
    else:
        s_idx = nearest_node(rm, cfg.start)
        g_idx = nearest_node(rm, cfg.goal)
    return rm, s_idx, g_idx


def run_experiment(cfg: ExperimentConfig) -> List[TrialRecord]:
    """Execute every cell and return one record per algorithm run."""
    scenario = load_scenario(cfg.scenario_path)
    records: List[TrialRecord] = []
    for n in cfg.nodes:
        for trial in range(cfg.trials):
            seed = cfg.seed ^ trial
            t0 = time.perf_counter()
            rm, s_idx, g_idx = prepare_cell(scenario, cfg, n, seed)
            build_ms = (time.perf_counter() - t0) * 1e3
            rhash = rm.content_hash()
            for spec in cfg.algorithms:
                t0 = time.perf_counter()
                result = run_algorithm(rm, s_idx, g_idx, spec)
                search_ms = (time.perf_counter() - t0) * 1e3
                records.append(
                    TrialRecord(
                        trial=trial,
                        seed=seed,
                        nodes=n,
                        algo=spec.ident(),
                        params=spec.params_str(),
                        build_ms=build_ms,
                        search_ms=search_ms,
                        feasible=result.found,
                        cost=full_cost(result, rm.K) if result.found else None,
                        roadmap_hash=rhash,
                    )
                )
    return records


# ---------------------------------------------------------------------------
# CSV persistence
# ---------------------------------------------------------------------------


def _max_cost_len(records: Sequence[TrialRecord]) -> int:
    return max((len(r.cost) for r in records if r.cost is not None), default=0)


def write_records_csv(records: Sequence[TrialRecord], path) -> None:
    kmax = _max_cost_len(records)
    header = [
        "trial",
        "seed",
        "nodes",
        "algo",
        "params",
        "build_ms",
        "search_ms",
        "feasible",
    ] + [f"cost_{k + 1}" for k in range(kmax)]
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for r in records:
            cost_cells = [""] * kmax
            if r.cost is not None:
                for k, c in enumerate(r.cost):
                    cost_cells[k] = repr(float(c))
            w.writerow(
                [
                    r.trial,
                    r.seed,
                    r.nodes,
                    r.algo,
                    r.params,
                    repr(float(r.build_ms)),
                    repr(float(r.search_ms)),
                    int(r.feasible),
                ]
                + cost_cells
            )


def read_records_csv(path) -> List[TrialRecord]:
    records: List[TrialRecord] = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return records
        cost_cols = [c for c in reader.fieldnames if c.startswith("cost_")]
        for row in reader:
            cells = [row[c] for c in cost_cols if row[c] != ""]
            cost = tuple(float(c) for c in cells) if cells else None
            records.append(
                TrialRecord(
                    trial=int(row["trial"]),
                    seed=int(row["seed"]),
                    nodes=int(row["nodes"]),
                    algo=row["algo"],
                    params=row["params"],
                    build_ms=float(row["build_ms"]),
                    search_ms=float(row["search_ms"]),
                    feasible=bool(int(row["feasible"])),
                    cost=cost,
                )
            )
    return records


# ---------------------------------------------------------------------------
# Summaries
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SummaryRow:
    nodes: int
    algo: str
    params: str
    metric: str
    mean: float
    p10: float
    p90: float


def percentile_nearest_rank(sorted_values: Sequence[float], p: float) -> float:
    """Nearest-rank percentile of an ascending value list."""
    if not sorted_values:
        raise ValueError("percentile of empty group")
    rank = max(1, math.ceil(p / 100.0 * len(sorted_values)))
    return sorted_values[min(rank, len(sorted_values)) - 1]


def summarize(records: Sequence[TrialRecord]) -> List[SummaryRow]:
    """Group records and report mean, p10, p90 per metric.

    Metrics are build_ms, search_ms, and each cost component of
    feasible runs.  Groups with no feasible record drop their cost
    metrics with a warning.  Output order is deterministic and
    independent of record order.
    """
    groups: dict = {}
    combos: dict = {}
    for r in records:
        combo = (r.nodes, r.algo, r.params)
        combos.setdefault(combo, 0)
        groups.setdefault(combo + ("build_ms",), []).append(r.build_ms)
        groups.setdefault(combo + ("search_ms",), []).append(r.search_ms)
        if r.feasible and r.cost is not None:
            combos[combo] += 1
            for k, c in enumerate(r.cost):
                groups.setdefault(combo + (f"cost_{k + 1}",), []).append(c)
    for combo, feasible_count in combos.items():
        if feasible_count == 0:
            warnings.warn(
                f"group {combo} has no feasible runs; cost metrics omitted",
                stacklevel=2,
            )
    rows = []
    for key in sorted(groups):
        vals = sorted(groups[key])
        rows.append(
            SummaryRow(
                nodes=key[0],
                algo=key[1],
                params=key[2],
                metric=key[3],
                mean=sum(vals) / len(vals),
                p10=percentile_nearest_rank(vals, 10.0),
                p90=percentile_nearest_rank(vals, 90.0),
            )
        )
    return rows


def write_summary_csv(rows: Sequence[SummaryRow], path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["nodes", "algo", "params", "metric", "mean", "p10", "p90"])
        for r in rows:
            w.writerow(
                [
                    r.nodes,
                    r.algo,
                    r.params,
                    r.metric,
                    repr(float(r.mean)),
                    repr(float(r.p10)),
                    repr(float(r.p90)),
                ]
            )


def read_summary_csv(path) -> List[SummaryRow]:
    rows: List[SummaryRow] = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append(
                SummaryRow(
                    nodes=int(row["nodes"]),
                    algo=row["algo"],
                    params=row["params"],
                    metric=row["metric"],
                    mean=float(row["mean"]),
                    p10=float(row["p10"]),
                    p90=float(row["p90"]),
                )
            )
    return rows
