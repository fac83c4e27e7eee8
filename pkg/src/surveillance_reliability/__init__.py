"""Reliability index for smart surveillance networks.

Edges of a building (or any) network carry access levels, monitoring devices
and failure probabilities. The reliability index integrates, over an
intruder's access threshold, the expected share of origin-destination demand
an intruder can satisfy without exceeding a privacy budget. Lower is more
secure.
"""

from .analysis import (
    AnalysisConfig,
    ReliabilityReport,
    alpha,
    budget_sweep,
    edge_criticality,
    expected_ud,
    rho_grid,
)
from .costs import (
    CostModel,
    access_cost,
    bernoulli_cost,
    edge_cost,
    edge_costs,
    failure_cost,
    failure_with_access_faults_cost,
    monitoring_cost,
)
from .errors import ValidationError
from .network import (
    BudgetPolicy,
    DemandMatrix,
    Edge,
    Sensor,
    SurveillanceNetwork,
    build_network,
    lattice_network,
    load_network,
)
from .paths import min_cost_from, reachability, shortest_path, unaffected_demand
from .sampling import FailureSample, draw_sample
from .twin import ExtractionPolicy, TwinDocument, extract_network, load_demo_twin, load_twin, parse_twin

__version__ = "0.1.0"
