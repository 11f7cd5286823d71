"""Command line front end.

Subcommands: build (sample a roadmap and write it to JSON), plan (search
a stored roadmap), bench (run an experiment config and write CSVs), and
oracle (check a search result against brute-force enumeration on small
graphs).  Exit codes: 0 success, 2 invalid input, 3 no path found,
4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import bench as bench_mod
from .bench import AlgoSpec, ExperimentConfig, parse_configuration
from .lexsearch import brute_force_lex_optimum, extract_path, lexicographic_search
from .roadmap import BuildParams, Roadmap, build_roadmap, insert_endpoint, nearest_node


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexplan",
        description="prioritized multi-criteria roadmap planning",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="sample a roadmap over a scenario")
    p.add_argument("--scenario", required=True, help="scenario JSON file")
    p.add_argument("--nodes", required=True, type=int, help="number of samples")
    p.add_argument("--seed", required=True, type=int, help="sampling seed")
    p.add_argument("--out", required=True, help="output roadmap JSON path")
    p.add_argument("--k", type=int, default=None, help="neighbours per node")
    p.add_argument("--radius", type=float, default=None, help="connection radius")
    p.add_argument("--step", type=float, default=0.25, help="collision check step")

    p = sub.add_parser("plan", help="search a stored roadmap")
    p.add_argument("--roadmap", required=True, help="roadmap JSON file")
    p.add_argument("--start", required=True, help="x,y or x,y,heading")
    p.add_argument("--goal", required=True, help="x,y or x,y,heading")
    p.add_argument("--algo", default="ls", choices=["ls", "ws", "egs"])
    p.add_argument(
        "--discipline",
        default="heap",
        choices=["heap", "linear", "lex-heap", "linear-scan"],
    )
    p.add_argument("--levels", type=int, default=None, help="criteria prefix depth")
    p.add_argument("--alpha", type=float, default=None, help="weighted-sum weight")
    p.add_argument("--budget", type=float, default=None, help="primary cost budget")
    p.add_argument("--layers", type=int, default=None, help="budget layer count")
    p.add_argument(
        "--snap",
        action="store_true",
        help="snap endpoints to nearest nodes instead of inserting them",
    )
    p.add_argument("--out", default=None, help="write result JSON here (default stdout)")

    p = sub.add_parser("bench", help="run a benchmark experiment")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--out", required=True, help="records CSV path")
    p.add_argument(
        "--summary-out",
        default=None,
        help="summary CSV path (default: records path with .summary.csv)",
    )

    p = sub.add_parser("oracle", help="cross-check search on a small roadmap")
    p.add_argument("--roadmap", required=True, help="roadmap JSON file")
    p.add_argument("--start", required=True, help="x,y or x,y,heading")
    p.add_argument("--goal", required=True, help="x,y or x,y,heading")
    p.add_argument("--tol", type=float, default=1e-9, help="per-component tolerance")

    return parser


def _load_roadmap(path: str) -> Roadmap:
    with open(path) as fh:
        return Roadmap.from_json_text(fh.read())


def _cmd_build(args) -> int:
    scenario = bench_mod.load_scenario(args.scenario)
    params = BuildParams(
        n=args.nodes, seed=args.seed, k=args.k, radius=args.radius, step=args.step
    )
    rm = build_roadmap(scenario, params)
    Path(args.out).write_text(rm.to_json_text())
    print(f"wrote {args.out}: {rm.num_nodes} nodes, {rm.num_edges} edges")
    return 0


def _endpoints(rm: Roadmap, args, snap: bool):
    start = parse_configuration(args.start)
    goal = parse_configuration(args.goal)
    if snap:
        return rm, nearest_node(rm, start), nearest_node(rm, goal)
    rm, s_idx = insert_endpoint(rm, start)
    rm, g_idx = insert_endpoint(rm, goal)
    return rm, s_idx, g_idx


def _cmd_plan(args) -> int:
    rm = _load_roadmap(args.roadmap)
    rm, s_idx, g_idx = _endpoints(rm, args, args.snap)
    spec = AlgoSpec.from_dict(
        {
            "algo": args.algo,
            "discipline": args.discipline,
            "levels": args.levels,
            "alpha": args.alpha,
            "budget": args.budget,
            "layers": args.layers,
        }
    )
    t0 = time.perf_counter()
    result = bench_mod.run_algorithm(rm, s_idx, g_idx, spec)
    search_ms = (time.perf_counter() - t0) * 1e3
    payload = {
        "found": result.found,
        "nodes": list(result.nodes),
        "cost": list(bench_mod.full_cost(result, rm.K)) if result.found else None,
        "polyline": _path_polyline(result) if result.found else [],
        "search_ms": search_ms,
    }
    text = json.dumps(payload, indent=1)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if not result.found:
        print("no path found", file=sys.stderr)
        return 3
    return 0


def _path_polyline(result, step: float = 0.1):
    points = []
    for e in result.edges:
        if e.geom is None:
            continue
        line = e.geom.polyline(step)
        if points:
            line = line[1:]
        points.extend([float(x), float(y)] for x, y in line)
    return points


def _cmd_bench(args) -> int:
    cfg = ExperimentConfig.from_json(args.config)
    records = bench_mod.run_experiment(cfg)
    bench_mod.write_records_csv(records, args.out)
    summary_path = args.summary_out
    if summary_path is None:
        out = Path(args.out)
        stem = out.name[: -len(".csv")] if out.name.endswith(".csv") else out.name
        summary_path = out.with_name(stem + ".summary.csv")
    bench_mod.write_summary_csv(bench_mod.summarize(records), summary_path)
    print(f"wrote {len(records)} records to {args.out}, summary to {summary_path}")
    return 0


def _cmd_oracle(args) -> int:
    rm = _load_roadmap(args.roadmap)
    s_idx = nearest_node(rm, parse_configuration(args.start))
    g_idx = nearest_node(rm, parse_configuration(args.goal))
    tree = lexicographic_search(rm, s_idx)
    result = extract_path(tree, g_idx)
    reference = brute_force_lex_optimum(rm, s_idx, g_idx)
    if not result.found and not reference.found:
        print("oracle match: no path from either method")
        return 0
    if result.found != reference.found:
        print(
            f"oracle mismatch: search found={result.found} "
            f"brute force found={reference.found}",
            file=sys.stderr,
        )
        return 4
    diff = max(abs(a - b) for a, b in zip(result.cost, reference.cost))
    if diff > args.tol:
        print(
            f"oracle mismatch: search cost {result.cost} vs "
            f"brute force {reference.cost} (max diff {diff:g})",
            file=sys.stderr,
        )
        return 4
    print(
        f"oracle match: cost {tuple(result.cost)} "
        f"(max component diff {diff:g}, tolerance {args.tol:g})"
    )
    return 0


_COMMANDS = {
    "build": _cmd_build,
    "plan": _cmd_plan,
    "bench": _cmd_bench,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, FileNotFoundError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
