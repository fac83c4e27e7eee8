"""Minimum-cost paths, reachability and unaffected demand for one cost assignment."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidAttribute, ZeroTotalDemand
from .network import BudgetPolicy, DemandMatrix, Edge, SurveillanceNetwork

INFINITE = math.inf


@dataclass(frozen=True)
class PathResult:
    origin: str
    destination: str
    min_cost: float
    path: tuple[int, ...] | None  # directed edge indices, origin first

    def edges(self, network: SurveillanceNetwork) -> list[Edge]:
        return [network.edges[k] for k in self.path or ()]


def _check_costs(network: SurveillanceNetwork, costs) -> list[float]:
    costs = [float(c) for c in costs]
    if len(costs) != network.n_edges:
        raise InvalidAttribute(
            f"cost assignment has {len(costs)} entries for {network.n_edges} edges"
        )
    for k, c in enumerate(costs):
        if not c >= 0.0:
            raise InvalidAttribute(f"edge cost must be >= 0 or inf, got {c!r}", f"costs[{k}]")
    return costs


def _dijkstra(adjacency, targets, costs, source, n_nodes, track=False):
    dist = [INFINITE] * n_nodes
    pred = [-1] * n_nodes
    done = [False] * n_nodes
    dist[source] = 0.0
    heap = [(0.0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for k in adjacency[u]:
            c = costs[k]
            if c == INFINITE:
                continue
            v = targets[k]
            nd = d + c
            if nd < dist[v]:
                dist[v] = nd
                if track:
                    pred[v] = k
                heapq.heappush(heap, (nd, v))
    return dist, pred


def min_cost_from(
    network: SurveillanceNetwork, costs: Sequence[float], origin: str
) -> dict[str, float]:
    """Cheapest total cost from ``origin`` to every node (``inf`` if cut off)."""
    src = network.node_index(origin)
    costs = _check_costs(network, costs)
    dist, _ = _dijkstra(
        network.adjacency, network.edge_target.tolist(), costs, src, network.n_nodes
    )
    return dict(zip(network.nodes, dist))


def min_cost_matrix(
    network: SurveillanceNetwork, costs: Sequence[float], origins: Sequence[int] | None = None
) -> np.ndarray:
    """All-pairs cheapest costs, one single-source search per origin.

    With ``origins`` (node indices) only those rows are searched; the others
    are left at ``inf``.
    """
    costs = _check_costs(network, costs)
    targets = network.edge_target.tolist()
    n = network.n_nodes
    out = np.full((n, n), math.inf)
    for s in range(n) if origins is None else origins:
        out[s], _ = _dijkstra(network.adjacency, targets, costs, s, n)
    return out


def shortest_path(
    network: SurveillanceNetwork, costs: Sequence[float], origin: str, destination: str
) -> PathResult:
    src = network.node_index(origin)
    dst = network.node_index(destination)
    costs = _check_costs(network, costs)
    targets = network.edge_target.tolist()
    dist, pred = _dijkstra(network.adjacency, targets, costs, src, network.n_nodes, track=True)
    if dist[dst] == INFINITE:
        return PathResult(origin, destination, INFINITE, None)
    path = []
    v = dst
    while v != src:
        k = pred[v]
        path.append(k)
        v = int(network.edge_source[k])
    return PathResult(origin, destination, dist[dst], tuple(reversed(path)))


def reachability(c_star: float, budget: float) -> int:
    """1 when the cheapest path stays strictly under budget."""
    if not budget > 0:
        raise InvalidAttribute(f"budget must be > 0, got {budget!r}")
    return int(c_star < budget)


def ud_from_min_costs(c_star: np.ndarray, weights: np.ndarray, budgets: np.ndarray) -> float:
    """Demand-weighted share of reachable pairs; ``weights`` must have a zero diagonal."""
    total = weights.sum()
    if not total > 0:
        raise ZeroTotalDemand("total demand over distinct origin/destination pairs is zero")
    return float((weights * (c_star < budgets)).sum() / total)


def unaffected_demand(
    network: SurveillanceNetwork,
    costs: Sequence[float],
    demand: DemandMatrix | None = None,
    budgets: BudgetPolicy | None = None,
) -> float:
    demand = demand or DemandMatrix()
    budgets = budgets or BudgetPolicy()
    weights = demand.matrix(network)
    if not weights.sum() > 0:
        raise ZeroTotalDemand("total demand over distinct origin/destination pairs is zero")
    return ud_from_min_costs(min_cost_matrix(network, costs), weights, budgets.matrix(network))
