"""Analysis graph: spaces, directed traversal links, demand and budgets.

A :class:`SurveillanceNetwork` is immutable once built. Each directed edge
belongs to a *pair* (one physical door or bond); directed edges sharing a pair
share their random draws during Monte Carlo sampling.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DuplicateNode,
    InvalidAttribute,
    InvalidSize,
    SchemaError,
    SelfLoop,
    UnknownEndpoint,
    UnknownNode,
    ValidationError,
)

FAILOPEN = "failopen"
FAILCLOSED = "failclosed"
FAILURE_MODES = (FAILOPEN, FAILCLOSED)


@dataclass(frozen=True)
class Sensor:
    """A monitoring device on an edge: bits captured when working."""

    bits: float
    failure_prob: float = 0.0


@dataclass(frozen=True)
class Edge:
    """Directed traversal link.

    ``monitor_bits`` and ``sensor_failure_prob`` describe a single sensor. When
    ``sensors`` is given it takes precedence: ``monitor_bits`` becomes the sum
    of the sensor bits and ``sensor_failure_prob`` the chance that every
    sensor is down at once.
    """

    source: str
    target: str
    quality: float = 1.0
    monitor_bits: float = 0.0
    sensor_failure_prob: float = 0.0
    access_failure_prob: float = 0.0
    access_failure_mode: str = FAILCLOSED
    pair: str | None = None
    sensors: tuple[Sensor, ...] = ()

    def __post_init__(self):
        sensors = tuple(self.sensors)
        if sensors:
            object.__setattr__(self, "sensors", sensors)
            object.__setattr__(self, "monitor_bits", float(sum(s.bits for s in sensors)))
            object.__setattr__(
                self, "sensor_failure_prob", float(np.prod([s.failure_prob for s in sensors]))
            )
        elif self.monitor_bits or self.sensor_failure_prob:
            object.__setattr__(
                self, "sensors", (Sensor(float(self.monitor_bits), float(self.sensor_failure_prob)),)
            )

    def without_monitoring(self) -> Edge:
        """Copy of this edge with every sensor capturing zero bits."""
        sensors = tuple(Sensor(0.0, s.failure_prob) for s in self.sensors)
        return replace(self, sensors=sensors, monitor_bits=0.0)


def _check_unit(value, name, where):
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not 0.0 <= value <= 1.0:
        raise InvalidAttribute(f"{name} must be in [0, 1], got {value!r}", where)


def _validate_edge(edge: Edge, where: str) -> None:
    _check_unit(edge.quality, "quality", where)
    _check_unit(edge.access_failure_prob, "access_failure_prob", where)
    if edge.access_failure_mode not in FAILURE_MODES:
        raise InvalidAttribute(
            f"access_failure_mode must be one of {FAILURE_MODES}, got {edge.access_failure_mode!r}",
            where,
        )
    for k, s in enumerate(edge.sensors):
        _check_unit(s.failure_prob, "sensor_failure_prob", f"{where}.sensors[{k}]")
        if not isinstance(s.bits, (int, float)) or not (0.0 <= s.bits < math.inf):
            raise InvalidAttribute(f"monitor_bits must be finite and >= 0, got {s.bits!r}", where)
    if edge.source == edge.target:
        raise SelfLoop(f"self-loop on {edge.source!r}", where)


@dataclass(frozen=True, eq=False)
class SurveillanceNetwork:
    """Validated directed graph with dense node indices.

    Build through :func:`build_network`; the derived arrays are filled in
    there and must not be mutated.
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    index: dict = field(repr=False)
    adjacency: tuple = field(repr=False)
    pair_ids: tuple[str, ...] = field(repr=False)
    edge_pair: np.ndarray = field(repr=False)
    edge_source: np.ndarray = field(repr=False)
    edge_target: np.ndarray = field(repr=False)
    quality: np.ndarray = field(repr=False)
    access_failure_prob: np.ndarray = field(repr=False)
    failopen: np.ndarray = field(repr=False)
    sensor_bits: np.ndarray = field(repr=False)
    sensor_failure: np.ndarray = field(repr=False)
    sensor_slots: int = field(repr=False)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def node_index(self, label: str) -> int:
        try:
            return self.index[label]
        except KeyError:
            raise UnknownNode(f"unknown node {label!r}") from None

    def out_edges(self, label: str) -> list[Edge]:
        return [self.edges[k] for k in self.adjacency[self.node_index(label)]]

    def pair_edges(self, pair_id: str) -> list[int]:
        """Indices of the directed edges belonging to one physical pair."""
        p = self.pair_ids.index(pair_id)
        return [int(k) for k in np.flatnonzero(self.edge_pair == p)]

    def with_edges(self, edges: Iterable[Edge]) -> SurveillanceNetwork:
        return build_network(self.nodes, list(edges))

    def __eq__(self, other):
        if not isinstance(other, SurveillanceNetwork):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges

    def __hash__(self):
        return hash((self.nodes, self.edges))


def build_adjacency(n_nodes: int, sources: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    out: list[list[int]] = [[] for _ in range(n_nodes)]
    for k, a in enumerate(sources):
        out[a].append(k)
    return tuple(tuple(ks) for ks in out)


def build_network(nodes: Iterable[str], edges: Iterable[Edge]) -> SurveillanceNetwork:
    """Validate nodes and edges and assemble a :class:`SurveillanceNetwork`.

    Edges without an explicit ``pair`` form a pair of their own.
    """
    labels = tuple(str(n) for n in nodes)
    index: dict[str, int] = {}
    for i, label in enumerate(labels):
        if label in index:
            raise DuplicateNode(f"duplicate node {label!r}", f"nodes[{i}]")
        index[label] = i

    edges = list(edges)
    pair_ids: list[str] = []
    pair_index: dict[str, int] = {}
    edge_pair, src, dst = [], [], []
    for k, e in enumerate(edges):
        where = f"edges[{k}]"
        for end in (e.source, e.target):
            if end not in index:
                raise UnknownEndpoint(f"edge endpoint {end!r} is not a node", where)
        _validate_edge(e, where)
        pid = e.pair if e.pair is not None else f"#{k}"
        if e.pair is None:
            edges[k] = replace(e, pair=pid)
        if pid not in pair_index:
            pair_index[pid] = len(pair_ids)
            pair_ids.append(pid)
        edge_pair.append(pair_index[pid])
        src.append(index[e.source])
        dst.append(index[e.target])

    edges = tuple(edges)
    slots = max([len(e.sensors) for e in edges], default=0)
    slots = max(slots, 1)
    bits = np.zeros((len(edges), slots))
    fail = np.zeros((len(edges), slots))
    for k, e in enumerate(edges):
        for j, s in enumerate(e.sensors):
            bits[k, j] = s.bits
            fail[k, j] = s.failure_prob

    return SurveillanceNetwork(
        nodes=labels,
        edges=edges,
        index=index,
        adjacency=build_adjacency(len(labels), src),
        pair_ids=tuple(pair_ids),
        edge_pair=np.asarray(edge_pair, dtype=np.intp),
        edge_source=np.asarray(src, dtype=np.intp),
        edge_target=np.asarray(dst, dtype=np.intp),
        quality=np.array([e.quality for e in edges], dtype=float),
        access_failure_prob=np.array([e.access_failure_prob for e in edges], dtype=float),
        failopen=np.array([e.access_failure_mode == FAILOPEN for e in edges], dtype=bool),
        sensor_bits=bits,
        sensor_failure=fail,
        sensor_slots=slots,
    )


def lattice_network(n: int) -> SurveillanceNetwork:
    """Square ``n`` x ``n`` lattice; each bond becomes two directed edges.

    Nodes are labelled ``v{row}_{col}`` starting from 1, so the top-left corner
    is ``v1_1`` and the opposite corner ``v{n}_{n}``.
    """
    if not isinstance(n, int) or n < 2:
        raise InvalidSize(f"lattice size must be an integer >= 2, got {n!r}")
    label = lambda i, j: f"v{i}_{j}"  # noqa: E731
    nodes = [label(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    edges = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for di, dj in ((0, 1), (1, 0)):
                ii, jj = i + di, j + dj
                if ii > n or jj > n:
                    continue
                a, b = label(i, j), label(ii, jj)
                pid = f"{a}|{b}"
                edges.append(Edge(a, b, pair=pid))
                edges.append(Edge(b, a, pair=pid))
    return build_network(nodes, edges)


@dataclass(frozen=True)
class DemandMatrix:
    """Origin-destination weights; unlisted pairs take ``default_weight``.

    Pairs with origin equal to destination never count.
    """

    weights: Mapping[tuple[str, str], float] = field(default_factory=dict)
    default_weight: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.default_weight < math.inf):
            raise InvalidAttribute(f"default_weight must be >= 0, got {self.default_weight!r}")
        for (o, d), w in self.weights.items():
            if not (0.0 <= w < math.inf):
                raise InvalidAttribute(f"demand weight for ({o!r}, {d!r}) must be >= 0, got {w!r}")

    def matrix(self, network: SurveillanceNetwork) -> np.ndarray:
        n = network.n_nodes
        f = np.full((n, n), float(self.default_weight))
        for (o, d), w in self.weights.items():
            f[network.node_index(o), network.node_index(d)] = w
        np.fill_diagonal(f, 0.0)
        return f


@dataclass(frozen=True)
class BudgetPolicy:
    """Privacy budget in bits per origin-destination pair."""

    default_budget: float = math.inf
    overrides: Mapping[tuple[str, str], float] = field(default_factory=dict)

    def __post_init__(self):
        if not self.default_budget > 0:
            raise InvalidAttribute(f"budget must be > 0, got {self.default_budget!r}")
        for (o, d), b in self.overrides.items():
            if not b > 0:
                raise InvalidAttribute(f"budget for ({o!r}, {d!r}) must be > 0, got {b!r}")

    def with_default(self, budget: float) -> BudgetPolicy:
        return BudgetPolicy(budget, self.overrides)

    def matrix(self, network: SurveillanceNetwork) -> np.ndarray:
        n = network.n_nodes
        b = np.full((n, n), float(self.default_budget))
        for (o, d), v in self.overrides.items():
            b[network.node_index(o), network.node_index(d)] = v
        return b


# -- JSON network file -------------------------------------------------------

_EDGE_DEFAULTS = {
    "quality": 1.0,
    "monitor_bits": 0.0,
    "sensor_failure_prob": 0.0,
    "access_failure_prob": 0.0,
    "access_failure_mode": FAILCLOSED,
}


def _encode_budget(b: float):
    return "inf" if math.isinf(b) else b


def _decode_budget(v, where):
    if isinstance(v, str) and v.lower() in ("inf", "infinity"):
        return math.inf
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return float(v)
    raise SchemaError(f"budget must be a number or 'inf', got {v!r}", where)


def network_to_dict(
    network: SurveillanceNetwork,
    demand: DemandMatrix | None = None,
    budgets: BudgetPolicy | None = None,
) -> dict:
    edges = []
    for k, e in enumerate(network.edges):
        item = {
            "from": e.source,
            "to": e.target,
            "quality": e.quality,
            "monitor_bits": e.monitor_bits,
            "sensor_failure_prob": e.sensor_failure_prob,
            "access_failure_prob": e.access_failure_prob,
            "access_failure_mode": e.access_failure_mode,
            "pair": network.pair_ids[network.edge_pair[k]],
        }
        if len(e.sensors) > 1:
            item["sensors"] = [{"bits": s.bits, "failure_prob": s.failure_prob} for s in e.sensors]
        edges.append(item)
    doc = {"nodes": [{"label": n} for n in network.nodes], "edges": edges}
    if demand is not None:
        doc["demand"] = [{"from": o, "to": d, "weight": w} for (o, d), w in demand.weights.items()]
        doc["default_weight"] = demand.default_weight
    if budgets is not None:
        doc["budgets"] = {
            "default": _encode_budget(budgets.default_budget),
            "overrides": [
                {"from": o, "to": d, "budget": _encode_budget(b)}
                for (o, d), b in budgets.overrides.items()
            ],
        }
    return doc


def _require(obj, key, where):
    if not isinstance(obj, dict):
        raise SchemaError(f"expected an object, got {type(obj).__name__}", where)
    if key not in obj:
        raise SchemaError(f"missing field {key!r}", where)
    return obj[key]


def network_from_dict(doc: dict) -> tuple[SurveillanceNetwork, DemandMatrix, BudgetPolicy]:
    """Parse a network document. Missing edge attributes take their defaults."""
    nodes = _require(doc, "nodes", "$")
    raw_edges = _require(doc, "edges", "$")
    if not isinstance(nodes, list) or not isinstance(raw_edges, list):
        raise SchemaError("'nodes' and 'edges' must be arrays", "$")
    labels = [_require(n, "label", f"nodes[{i}]") for i, n in enumerate(nodes)]
    edges = []
    for k, item in enumerate(raw_edges):
        where = f"edges[{k}]"
        source = _require(item, "from", where)
        target = _require(item, "to", where)
        attrs = {key: item.get(key, default) for key, default in _EDGE_DEFAULTS.items()}
        sensors = ()
        if "sensors" in item:
            sensors = tuple(
                Sensor(float(_require(s, "bits", f"{where}.sensors[{j}]")), float(s.get("failure_prob", 0.0)))
                for j, s in enumerate(item["sensors"])
            )
        edges.append(Edge(source, target, pair=item.get("pair"), sensors=sensors, **attrs))
    network = build_network(labels, edges)

    # demand is an array of weights with a top-level default_weight; an
    # object {"weights": [...], "default_weight": w} is also accepted
    demand = DemandMatrix(default_weight=float(doc.get("default_weight", 1.0)))
    if "demand" in doc:
        raw = doc["demand"]
        default = float(doc.get("default_weight", 1.0))
        entries = raw
        if isinstance(raw, dict):
            entries = raw.get("weights", [])
            default = float(raw.get("default_weight", default))
        weights = {}
        for i, w in enumerate(entries):
            where = f"demand.weights[{i}]"
            o, d = _require(w, "from", where), _require(w, "to", where)
            for label in (o, d):
                if label not in network.index:
                    raise UnknownNode(f"unknown node {label!r}", where)
            weights[(o, d)] = float(_require(w, "weight", where))
        demand = DemandMatrix(weights, default)

    budgets = BudgetPolicy()
    if "budgets" in doc:
        raw = doc["budgets"]
        default = _decode_budget(raw.get("default", "inf"), "budgets.default")
        overrides = {}
        for i, b in enumerate(raw.get("overrides", [])):
            where = f"budgets.overrides[{i}]"
            o, d = _require(b, "from", where), _require(b, "to", where)
            for label in (o, d):
                if label not in network.index:
                    raise UnknownNode(f"unknown node {label!r}", where)
            overrides[(o, d)] = _decode_budget(_require(b, "budget", where), where)
        budgets = BudgetPolicy(default, overrides)
    return network, demand, budgets


def parse_json(text: str | bytes):
    """``json.loads`` with line-anchored errors."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None


def load_network(path) -> tuple[SurveillanceNetwork, DemandMatrix, BudgetPolicy]:
    return network_from_dict(parse_json(Path(path).read_text()))


def dump_network(network, path, demand=None, budgets=None) -> None:
    Path(path).write_text(json.dumps(network_to_dict(network, demand, budgets), indent=2) + "\n")


__all__ = [
    "FAILOPEN",
    "FAILCLOSED",
    "Sensor",
    "Edge",
    "SurveillanceNetwork",
    "DemandMatrix",
    "BudgetPolicy",
    "ValidationError",
    "build_network",
    "lattice_network",
    "network_to_dict",
    "network_from_dict",
    "load_network",
    "dump_network",
]
