"""How much privacy would an intruder trade for freedom of movement?

The bundled demo building has a 10-bit camera on the campus entrance. Any
budget at or below 10 bits leaves the campus cut off; just above it, the whole
building opens up. Common random numbers keep the sweep exactly monotone.
"""

import math

from surveillance_reliability import AnalysisConfig, alpha, budget_sweep, extract_network, load_demo_twin

net = extract_network(load_demo_twin())
print(f"{net.n_nodes} spaces, {net.n_edges} directed passages")

budgets = (1, 5, 9.9, 10, 10.5, 20, 100, math.inf)
for b, a in budget_sweep(net, AnalysisConfig(budget_sweep=budgets)):
    print(f"budget {b:>6}  alpha {a:.3f}  " + "#" * round(40 * a))

free = alpha(net, AnalysisConfig(cost_model="access")).alpha
print(f"access-only alpha (nobody cares about cameras): {free:.3f}")
