import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[2]
BUNDLED_SCENARIO = REPO_ROOT / "src" / "lexplan" / "scenarios" / "bicriteria.json"

# One line per acceptance criterion, printed after the run so the
# verdicts survive output capture.  test_acceptance.py appends to this.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

SUMMARY_HEADER = "nodes,algo,params,metric,mean,p10,p90"

# Hand-written rows in the planner's summary format.  The 60-node ls
# search_ms group is the nearest-rank summary of the values 1..10
# (mean 5.5, p10 1, p90 9); rows are deliberately out of node order.
SUMMARY_ROWS = [
    "120,ls,,search_ms,7.25,3.0,11.0",
    "60,ls,,search_ms,5.5,1.0,9.0",
    "120,ws,alpha=0.5,search_ms,6.5,3.5,9.5",
    "60,ws,alpha=0.5,search_ms,4.0,2.0,6.0",
    "60,ls,,cost_1,10.375,10.294,10.402",
    "60,ls,,cost_2,0.30000000000000004,5.551115123125783e-17,64.25",
]

# Square obstacle with a threat near the origin: pixels behind the
# square are shadowed, pixels beside or in front of it are lit.
SQUARE_SCENARIO = {
    "bounds": {"xmin": 0.0, "ymin": 0.0, "xmax": 8.0, "ymax": 8.0},
    "obstacles": [[[3.0, 3.0], [5.0, 3.0], [5.0, 5.0], [3.0, 5.0]]],
    "threats": [[0.5, 0.5]],
}


@pytest.fixture(scope="session")
def summary_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("summary") / "bench_summary.csv"
    path.write_text("\n".join([SUMMARY_HEADER] + SUMMARY_ROWS) + "\n")
    return path


@pytest.fixture()
def square_scenario(tmp_path):
    path = tmp_path / "square.json"
    path.write_text(json.dumps(SQUARE_SCENARIO))
    return path


def write_json(path: Path, doc) -> Path:
    path.write_text(json.dumps(doc, indent=1))
    return path
