import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from surveillance_reliability.costs import (
    CostModel,
    access_cost,
    bernoulli_cost,
    edge_cost,
    draws_matter,
    edge_costs,
    edge_costs_grid,
    failure_cost,
    failure_with_access_faults_cost,
    monitoring_cost,
)
from surveillance_reliability.network import Edge, Sensor, build_network, lattice_network
from surveillance_reliability.sampling import draw_sample

INF = math.inf
GRID = np.linspace(0, 1, 11)


@pytest.mark.parametrize("z, rho, expected", [(0.3, 0.5, 0.0), (0.7, 0.5, INF), (0.0, 0.0, INF)])
def test_bernoulli(z, rho, expected):
    assert bernoulli_cost(z, rho) == expected


@pytest.mark.parametrize("q, rho, expected", [(0.75, 0.5, 0.0), (0.75, 0.75, INF), (1.0, 0.0, 0.0)])
def test_access(q, rho, expected):
    assert access_cost(q, rho) == expected


@pytest.mark.parametrize(
    "q, rho, m, expected", [(0.75, 0.5, 10, 10.0), (0.75, 0.5, 1, 1.0), (0.2, 0.9, 10, INF)]
)
def test_monitoring(q, rho, m, expected):
    assert monitoring_cost(q, rho, m) == expected


@pytest.mark.parametrize(
    "q, rho, m, f, z, expected",
    [
        (0.75, 0.5, 10, 0.01, 0.005, 0.0),
        (0.75, 0.5, 10, 0.01, 0.5, 10.0),
        (0.75, 0.8, 10, 0.01, 0.005, INF),
        (0.75, 0.5, 10, 0.25, 0.25, 10.0),  # z == f counts as working
    ],
)
def test_failure(q, rho, m, f, z, expected):
    assert failure_cost(q, rho, m, f, z) == expected


@pytest.mark.parametrize("z", [0.0, 0.3, 0.999])
def test_access_faults(z):
    failopen = Edge("A", "B", quality=0.5, monitor_bits=2, access_failure_prob=1.0, access_failure_mode="failopen")
    assert failure_with_access_faults_cost(failopen, 0.9, z, z) == 2.0
    failclosed = Edge("A", "B", quality=1.0, access_failure_prob=1.0, access_failure_mode="failclosed")
    assert failure_with_access_faults_cost(failclosed, 0.0, z, z) == INF
    healthy = Edge("A", "B", quality=0.5, monitor_bits=2, access_failure_prob=0.0)
    assert failure_with_access_faults_cost(healthy, 0.4, z, z) == failure_cost(0.5, 0.4, 2, 0, z) == 2.0


def test_multiple_sensors_add_working_bits():
    e = Edge("A", "B", sensors=(Sensor(1, 0.5), Sensor(2, 0.5)))
    assert failure_with_access_faults_cost(e, 0.0, [0.9, 0.9], 0.9) == 3.0
    assert failure_with_access_faults_cost(e, 0.0, [0.1, 0.9], 0.9) == 2.0
    assert failure_with_access_faults_cost(e, 0.0, [0.1, 0.1], 0.9) == 0.0
    assert edge_cost(e, "failure", 0.0, [0.9, 0.1]) == 1.0


UNIT = [0.0, 0.01, 0.25, 0.5, 0.75, 0.99, 1.0]
DRAWS = [0.0, 0.005, 0.25, 0.5, 0.9999]


def test_degeneracy_chain():
    for q, rho, m, z in itertools.product(UNIT, UNIT, [0, 1, 10], DRAWS):
        assert failure_cost(q, rho, m, 0.0, z) == monitoring_cost(q, rho, m)
        assert monitoring_cost(q, rho, 0) == access_cost(q, rho)
        # a bond drawn open has quality 1, closed has quality 0; at rho == 1
        # even quality 1 is closed, so the match holds only below 1
        if rho < 1.0:
            assert access_cost(1.0 if z < rho else 0.0, rho) == bernoulli_cost(z, rho)
        edge = Edge("A", "B", quality=q, monitor_bits=m, sensor_failure_prob=0.3)
        assert failure_with_access_faults_cost(edge, rho, z, z) == failure_cost(q, rho, m, 0.3, z)


def test_monotone_in_rho():
    for q, m, f, z in itertools.product(UNIT, [0, 3], [0, 0.3], DRAWS):
        edge = Edge("A", "B", quality=q, monitor_bits=m, sensor_failure_prob=f)
        for model in (CostModel.ACCESS, CostModel.MONITORING, CostModel.FAILURE, CostModel.FAILURE_ACCESS_FAULTS):
            costs = [edge_cost(edge, model, rho, z, z) for rho in GRID]
            assert all(a <= b for a, b in zip(costs, costs[1:]))
        # Bernoulli opens edges as rho grows
        costs = [bernoulli_cost(z, rho) for rho in GRID]
        assert all(a >= b for a, b in zip(costs, costs[1:]))


def test_model_parse():
    assert CostModel.parse("Failure+Access-Faults") is CostModel.FAILURE_ACCESS_FAULTS
    with pytest.raises(ValueError):
        CostModel.parse("magic")


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.floats(0, 1), st.floats(0, 20), st.floats(0, 1), st.floats(0, 1),
            st.sampled_from(["failopen", "failclosed"]), st.integers(0, 2),
        ),
        min_size=1,
        max_size=8,
    ),
    st.integers(0, 2**63),
    st.sampled_from(list(CostModel)),
    st.floats(0, 1),
)
def test_vectorised_matches_scalar(specs, seed, model, rho):
    edges = []
    for k, (q, m, f, fa, mode, extra) in enumerate(specs):
        sensors = tuple(Sensor(m / (j + 1), f) for j in range(extra + 1)) if extra else ()
        edges.append(
            Edge("A" if k % 2 else "B", "B" if k % 2 else "A", quality=q, monitor_bits=m,
                 sensor_failure_prob=f, access_failure_prob=fa, access_failure_mode=mode,
                 pair=f"p{k // 2}", sensors=sensors)
        )
    net = build_network(["A", "B"], edges)
    sample = draw_sample(net, seed, 0)
    vector = edge_costs(net, model, rho, sample)
    for k, e in enumerate(edges):
        z = sample[e.pair]
        assert vector[k] == edge_cost(e, model, rho, z["z_sensor"], z["z_access"])
    grid = [0.0, rho, 0.5, 1.0]
    assert np.array_equal(edge_costs_grid(net, model, grid, sample)[1], vector)


def test_deterministic_models_need_no_sample():
    net = lattice_network(2)
    assert np.all(edge_costs(net, "access", 0.5) == 0)
    with pytest.raises(ValueError):
        edge_costs(net, "bernoulli", 0.5)


def test_draws_matter():
    steady = build_network(["A", "B"], [Edge("A", "B", monitor_bits=3)])
    assert not draws_matter(steady, "failure")
    assert not draws_matter(steady, "failure+access-faults")
    assert draws_matter(steady, "bernoulli")
    flaky_reader = build_network(["A", "B"], [Edge("A", "B", access_failure_prob=0.1)])
    assert not draws_matter(flaky_reader, "failure")
    assert draws_matter(flaky_reader, "failure+access-faults")
    flaky_camera = build_network(["A", "B"], [Edge("A", "B", monitor_bits=3, sensor_failure_prob=0.1)])
    assert draws_matter(flaky_camera, "failure")
