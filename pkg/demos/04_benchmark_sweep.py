"""
A small benchmark sweep, end to end
===================================

Runs the experiment described by demos/configs/sweep.json: two node
counts, five seeded trials each, four planner variants sharing each
trial's roadmap.  Records and their summary land in demos/out/ as the
same CSV files the command line front end writes.
"""

from pathlib import Path

from lexplan.bench import (
    ExperimentConfig,
    run_experiment,
    summarize,
    write_records_csv,
    write_summary_csv,
)

HERE = Path(__file__).parent
OUT = HERE / "out"
OUT.mkdir(exist_ok=True)

cfg = ExperimentConfig.from_json(HERE / "configs" / "sweep.json")
print(f"scenario {Path(cfg.scenario_path).name}, nodes {list(cfg.nodes)}, "
      f"{cfg.trials} trials, {len(cfg.algorithms)} planners")

records = run_experiment(cfg)
write_records_csv(records, OUT / "sweep.csv")
rows = summarize(records)
write_summary_csv(rows, OUT / "sweep.summary.csv")
print(f"wrote {len(records)} records and {len(rows)} summary rows to {OUT}\n")

# A quick look at the summary: search time and the primary cost per
# planner at the larger node count.  Exposure should be lowest for the
# prioritized rows and the two disciplines should agree exactly.
n = max(cfg.nodes)
print(f"{'planner':>22s}  {'search ms (mean)':>16s}  {'exposure (mean)':>16s}")
for row in rows:
    if row.nodes != n or row.metric != "search_ms":
        continue
    exposure = next(
        (r.mean for r in rows
         if (r.nodes, r.algo, r.params, r.metric) == (n, row.algo, row.params, "cost_1")),
        float("nan"),
    )
    name = f"{row.algo} {row.params}".strip()
    print(f"{name:>22s}  {row.mean:16.2f}  {exposure:16.3f}")

print("\nsame sweep from the shell:")
print("  lexplan bench --config demos/configs/sweep.json --out demos/out/sweep.csv")
