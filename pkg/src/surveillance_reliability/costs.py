"""Edge cost functions.

Costs are in bits of identifying information revealed to the surveillance
system. A blocked edge costs ``math.inf``; Python floats already give the
absorbing addition and total order an infinite cost needs.

Each model exists twice: as scalar functions on one edge, and vectorised over
all directed edges of a network in :func:`edge_costs` (one ``rho``) and
:func:`edge_costs_grid` (many). The scalar form is the
reference the vectorised form is tested against.
"""

from __future__ import annotations

import enum
import math
from typing import Sequence

import numpy as np

from .network import FAILOPEN, Edge, SurveillanceNetwork
from .sampling import FailureSample

INFINITE = math.inf


class CostModel(str, enum.Enum):
    BERNOULLI = "bernoulli"
    ACCESS = "access"
    MONITORING = "monitoring"
    FAILURE = "failure"
    FAILURE_ACCESS_FAULTS = "failure+access-faults"

    @property
    def is_random(self) -> bool:
        return self in (CostModel.BERNOULLI, CostModel.FAILURE, CostModel.FAILURE_ACCESS_FAULTS)

    @classmethod
    def parse(cls, name) -> CostModel:
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown cost model {name!r}; choose one of {choices}") from None


def bernoulli_cost(z: float, rho: float) -> float:
    """Open (0) with probability ``rho``, otherwise closed."""
    return 0.0 if z < rho else INFINITE


def access_cost(q: float, rho: float) -> float:
    return 0.0 if q > rho else INFINITE


def monitoring_cost(q: float, rho: float, m: float) -> float:
    return float(m) if q > rho else INFINITE


def failure_cost(q: float, rho: float, m: float, f_sensor: float, z: float) -> float:
    """Monitoring cost that drops to zero while the sensor is down (``z < f_sensor``)."""
    if not q > rho:
        return INFINITE
    return 0.0 if z < f_sensor else float(m)


def failure_with_access_faults_cost(
    edge: Edge, rho: float, z_sensor: float | Sequence[float], z_access: float
) -> float:
    """Failure cost where the access reader may itself be faulty.

    A faulted reader leaves the edge open (failopen) or shut (failclosed)
    regardless of ``rho``. ``z_sensor`` holds one draw per sensor on the edge;
    each working sensor adds its bits.
    """
    if z_access < edge.access_failure_prob:
        accessible = edge.access_failure_mode == FAILOPEN
    else:
        accessible = edge.quality > rho
    if not accessible:
        return INFINITE
    zs = np.atleast_1d(np.asarray(z_sensor, dtype=float))
    total = 0.0
    for k, sensor in enumerate(edge.sensors):
        if zs[k] >= sensor.failure_prob:
            total += sensor.bits
    return float(total)


def edge_cost(
    edge: Edge,
    model: CostModel | str,
    rho: float,
    z_sensor: float | Sequence[float] = 0.0,
    z_access: float = 0.0,
) -> float:
    """Scalar cost of one directed edge under ``model``."""
    model = CostModel.parse(model)
    if model is CostModel.BERNOULLI:
        return bernoulli_cost(z_access, rho)
    if model is CostModel.ACCESS:
        return access_cost(edge.quality, rho)
    if model is CostModel.MONITORING:
        return monitoring_cost(edge.quality, rho, edge.monitor_bits)
    if model is CostModel.FAILURE:
        if len(edge.sensors) <= 1:
            z = float(np.atleast_1d(z_sensor)[0])
            return failure_cost(edge.quality, rho, edge.monitor_bits, edge.sensor_failure_prob, z)
        # several sensors: same as the fault-aware model with a reliable reader
        if not edge.quality > rho:
            return INFINITE
        zs = np.atleast_1d(z_sensor)
        return float(sum(s.bits for k, s in enumerate(edge.sensors) if zs[k] >= s.failure_prob))
    return failure_with_access_faults_cost(edge, rho, z_sensor, z_access)


def edge_costs(
    network: SurveillanceNetwork,
    model: CostModel | str,
    rho: float,
    sample: FailureSample | None = None,
) -> np.ndarray:
    """Cost of every directed edge, in edge order.

    ``sample`` may be omitted for the deterministic models (access,
    monitoring).
    """
    model = CostModel.parse(model)
    q = network.quality
    if model is CostModel.ACCESS:
        return np.where(q > rho, 0.0, INFINITE)
    if model is CostModel.MONITORING:
        return np.where(q > rho, network.sensor_bits.sum(axis=1), INFINITE)
    if sample is None:
        raise ValueError(f"cost model {model.value!r} needs a FailureSample")

    pair = network.edge_pair
    z_access = sample.z_access[pair]
    if model is CostModel.BERNOULLI:
        return np.where(z_access < rho, 0.0, INFINITE)

    z_sensor = sample.z_sensor[pair][:, : network.sensor_slots]
    working = z_sensor >= network.sensor_failure
    bits = (network.sensor_bits * working).sum(axis=1)
    open_ = q > rho
    if model is CostModel.FAILURE_ACCESS_FAULTS:
        faulted = z_access < network.access_failure_prob
        open_ = np.where(faulted, network.failopen, open_)
    return np.where(open_, bits, INFINITE)


def edge_costs_grid(
    network: SurveillanceNetwork,
    model: CostModel | str,
    rhos: Sequence[float],
    sample: FailureSample | None = None,
) -> np.ndarray:
    """:func:`edge_costs` for every ``rho`` at once, shape (len(rhos), E)."""
    model = CostModel.parse(model)
    rhos = np.asarray(rhos, dtype=float)[:, None]
    q = network.quality[None, :]
    if model is CostModel.ACCESS:
        return np.where(q > rhos, 0.0, INFINITE)
    if model is CostModel.MONITORING:
        return np.where(q > rhos, network.sensor_bits.sum(axis=1), INFINITE)
    if sample is None:
        raise ValueError(f"cost model {model.value!r} needs a FailureSample")

    pair = network.edge_pair
    z_access = sample.z_access[pair]
    if model is CostModel.BERNOULLI:
        return np.where(z_access[None, :] < rhos, 0.0, INFINITE)

    z_sensor = sample.z_sensor[pair][:, : network.sensor_slots]
    bits = (network.sensor_bits * (z_sensor >= network.sensor_failure)).sum(axis=1)
    open_ = q > rhos
    if model is CostModel.FAILURE_ACCESS_FAULTS:
        faulted = z_access < network.access_failure_prob
        open_ = np.where(faulted[None, :], network.failopen[None, :], open_)
    return np.where(open_, bits[None, :], INFINITE)


def draws_matter(network: SurveillanceNetwork, model: CostModel | str) -> bool:
    """False when ``model`` gives the same costs for every random draw."""
    model = CostModel.parse(model)
    if model is CostModel.BERNOULLI:
        return True
    if not model.is_random:
        return False
    sensors = bool(np.any((network.sensor_failure > 0) & (network.sensor_bits != 0)))
    if model is CostModel.FAILURE:
        return sensors
    return sensors or bool(np.any(network.access_failure_prob > 0))
