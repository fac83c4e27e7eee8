"""Bond percolation on a small square lattice.

Every bond is open with probability rho. We estimate how often opposite
corners are joined and watch the connection probability climb with rho.
The 2x2 case has a closed form, 2p^2 - p^4, printed alongside.
"""

from surveillance_reliability import AnalysisConfig, DemandMatrix, lattice_network
from surveillance_reliability.analysis import simulate

RHOS = [0.1, 0.25, 0.5, 0.75, 0.9]

for n in (2, 4, 6):
    net = lattice_network(n)
    corners = DemandMatrix({("v1_1", f"v{n}_{n}"): 1.0}, default_weight=0.0)
    cfg = AnalysisConfig(cost_model="bernoulli", replicates=2000, seed=3, demand=corners)
    ud = simulate(net, cfg, grid=RHOS)[0].mean(axis=0)
    row = "  ".join(f"{p:.3f}" for p in ud)
    print(f"{n}x{n} lattice  P(corner to corner) at rho={RHOS}: {row}")

print("2x2 closed form:", "  ".join(f"{2 * p**2 - p**4:.3f}" for p in RHOS))
