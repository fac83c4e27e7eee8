"""One door, five ways of pricing it.

A single door with access level 0.6 and a 4-bit camera that is down a
quarter of the time, and whose reader faults open 10% of the time. The
unaffected-demand curve shows what each model keeps and what it drops.
"""

from surveillance_reliability import AnalysisConfig, BudgetPolicy, Edge, alpha, build_network

attrs = dict(quality=0.6, monitor_bits=4, sensor_failure_prob=0.25,
             access_failure_prob=0.1, access_failure_mode="failopen", pair="door")
net = build_network(["Hall", "Lab"], [Edge("Hall", "Lab", **attrs), Edge("Lab", "Hall", **attrs)])

print("model                  alpha   UD at rho = 0.3 / 0.8")
for model in ("bernoulli", "access", "monitoring", "failure", "failure+access-faults"):
    report = alpha(net, AnalysisConfig(cost_model=model, replicates=2000, budgets=BudgetPolicy(2)))
    mid, late = report.ud_mean[30], report.ud_mean[80]
    print(f"{model:22s} {report.alpha:.3f}   {mid:.3f} / {late:.3f}")

# With a 2-bit budget a working camera blocks the door, so "monitoring" is 0.
# "failure" recovers the quarter of the time the camera is down, and the
# faulty reader adds passages above rho = 0.6 while the camera is also down.
