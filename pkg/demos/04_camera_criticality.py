"""Which camera actually matters?

Switch each door's cameras off in turn and see how much alpha moves. The
elevator camera guards a route that has an unwatched alternative through
the stairs, so disabling it changes nothing.
"""

from surveillance_reliability import AnalysisConfig, BudgetPolicy, edge_criticality, extract_network, load_demo_twin

net = extract_network(load_demo_twin())
for budget in (5, 10.5):
    deltas = edge_criticality(net, AnalysisConfig(budgets=BudgetPolicy(budget)))
    watched = {door: d for door, d in deltas.items() if d != 0.0 or door == "elevator-office"}
    print(f"budget {budget}:")
    for door, d in sorted(watched.items(), key=lambda kv: -kv[1]):
        print(f"  {door:18s} delta alpha {d:+.4f}")
