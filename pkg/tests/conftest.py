import random

import pytest
from hypothesis import HealthCheck, settings

from lexplan.roadmap import Roadmap

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


# One line per acceptance criterion, printed after the run so the
# verdicts survive output capture.  test_acceptance.py appends to this.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


SIX_NODE_EDGES = [
    (0, 1, (2.0, 4.0)),
    (0, 5, (9.0, 6.0)),
    (4, 5, (2.0, 3.0)),
    (1, 2, (0.0, 5.0)),
    (2, 4, (0.0, 5.0)),
    (1, 3, (0.0, 3.5)),
    (3, 4, (0.0, 3.5)),
]


@pytest.fixture
def six_node_roadmap():
    """The worked six-node example: costs are (threat, distance) pairs.

    Undirected; node 0 is the start corner and node 5 the goal.  The
    prioritized optimum is 0-1-3-4-5 at (4, 14) while the direct hop
    0-5 is shorter but far more exposed at (9, 6).
    """
    both = []
    for i, j, c in SIX_NODE_EDGES:
        both.append((i, j, c))
        both.append((j, i, c))
    return Roadmap.from_edge_list(6, both)


def random_cost_graph(rng: random.Random, n: int, K: int, p: float = 0.45):
    """Random connected-ish undirected graph with positive distances.

    Higher-priority components are exactly zero about 40% of the time,
    which floods the searches with ties; the bottom component stays
    strictly positive.
    """
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() > p and j != i + 1:
                continue
            cost = []
            for k in range(K - 1):
                cost.append(0.0 if rng.random() < 0.4 else round(rng.uniform(0.0, 4.0), 3))
            cost.append(round(rng.uniform(0.05, 5.0), 3))
            edges.append((i, j, tuple(cost)))
            edges.append((j, i, tuple(cost)))
    return Roadmap.from_edge_list(n, edges)
