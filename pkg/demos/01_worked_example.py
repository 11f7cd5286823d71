"""
A six-node tour of prioritized search and its baselines
=======================================================

Every edge in this tiny graph carries a (threat exposure, distance)
pair.  Walking through it by hand is the quickest way to see why the
prioritized search, the weighted sum, and the budgeted frontier can
all give different answers on the same graph.
"""

from lexplan import (
    EgsParams,
    Roadmap,
    WeightedSumParams,
    expanded_graph_search,
    extract_path,
    lexicographic_search,
    weighted_sum_search,
)

# The graph: node 0 is the start, node 5 the goal.  The direct hop
# 0-5 is short but exposed; the long way around the top keeps most of
# the route in shadow.
EDGES = [
    (0, 1, (2.0, 4.0)),
    (0, 5, (9.0, 6.0)),
    (4, 5, (2.0, 3.0)),
    (1, 2, (0.0, 5.0)),
    (2, 4, (0.0, 5.0)),
    (1, 3, (0.0, 3.5)),
    (3, 4, (0.0, 3.5)),
]

both_ways = [(i, j, c) for i, j, c in EDGES] + [(j, i, c) for i, j, c in EDGES]
graph = Roadmap.from_edge_list(6, both_ways)

# Prioritized search: exposure strictly outranks distance.  Both queue
# disciplines settle the same labels.
for discipline in ("lex-heap", "linear-scan"):
    tree = lexicographic_search(graph, 0, discipline=discipline)
    route = extract_path(tree, 5)
    print(f"{discipline:12s} -> nodes {route.nodes}, cost {route.cost}")

print()

# The weighted sum blends the two criteria into one number.  Small
# alpha barely charges for exposure, so it takes the direct hop; by
# alpha = 0.9 the blend recovers the cautious route.
for alpha in (0.5, 0.8, 0.9, 1.0):
    route = weighted_sum_search(graph, 0, 5, WeightedSumParams(alpha))
    blend = alpha * route.cost[0] + (1 - alpha) * route.cost[1]
    print(f"alpha={alpha:3.1f} -> nodes {route.nodes}, cost {route.cost}, blend {blend:.2f}")

print()

# The budgeted frontier splits exposure into layers and reports the
# shortest route inside each budget.  With budget 10 over two layers,
# layer 1 (exposure <= 5) holds the cautious route and layer 2 the
# direct hop; the planner selects the lowest feasible layer.
frontier = expanded_graph_search(graph, 0, 5, EgsParams(budget_max=10.0, layers=2))
for idx, entry in enumerate(frontier.entries, start=1):
    bound = idx * frontier.delta
    if entry.feasible:
        print(f"layer {idx} (exposure <= {bound:4.1f}): cost {entry.path.cost}")
    else:
        print(f"layer {idx} (exposure <= {bound:4.1f}): infeasible")
print(f"selected layer: {frontier.selected_layer}, route {frontier.selected.nodes}")
