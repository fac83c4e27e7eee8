"""Monte Carlo estimation of unaffected demand and the reliability index.

The reliability index is the area under the expected unaffected-demand curve
over the threshold ``rho`` in [0, 1], integrated with the trapezoidal rule on
a fixed grid.

Every replicate draws one :class:`FailureSample` and reuses it across the
whole ``rho`` grid and every budget, so per-replicate curves are exactly
monotone and budget comparisons use common random numbers.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .costs import CostModel, draws_matter, edge_costs_grid
from .errors import InvalidAttribute, ZeroTotalDemand
from .network import BudgetPolicy, DemandMatrix, SurveillanceNetwork
from .paths import min_cost_matrix
from .sampling import draw_sample

THREADS_ENV = "RELIABILITY_THREADS"
_CACHE_LIMIT = 20_000


def rho_grid(points: int = 101) -> tuple[float, ...]:
    if points < 2:
        raise InvalidAttribute(f"rho grid needs at least 2 points, got {points}")
    return tuple(float(x) for x in np.linspace(0.0, 1.0, points))


def _trapezoid(y, x) -> float:
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    return float(np.sum((y[1:] + y[:-1]) * np.diff(x)) / 2.0)


@dataclass(frozen=True)
class AnalysisConfig:
    rho_grid: tuple[float, ...] = field(default_factory=rho_grid)
    replicates: int = 200
    seed: int = 0
    cost_model: CostModel = CostModel.FAILURE_ACCESS_FAULTS
    demand: DemandMatrix = field(default_factory=DemandMatrix)
    budgets: BudgetPolicy = field(default_factory=BudgetPolicy)
    budget_sweep: tuple[float, ...] | None = None
    # None: read RELIABILITY_THREADS, else 1
    workers: int | None = None

    def __post_init__(self):
        grid = tuple(float(r) for r in self.rho_grid)
        object.__setattr__(self, "rho_grid", grid)
        object.__setattr__(self, "cost_model", CostModel.parse(self.cost_model))
        if len(grid) < 2 or grid[0] != 0.0 or grid[-1] != 1.0:
            raise InvalidAttribute("rho grid must start at 0, end at 1 and have >= 2 points")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise InvalidAttribute("rho grid must be strictly increasing")
        if int(self.replicates) < 1:
            raise InvalidAttribute(f"replicates must be >= 1, got {self.replicates}")
        if self.budget_sweep is not None:
            sweep = tuple(float(b) for b in self.budget_sweep)
            if not sweep:
                raise InvalidAttribute("budget sweep is empty")
            if any(not b > 0 for b in sweep):
                raise InvalidAttribute("sweep budgets must be > 0")
            object.__setattr__(self, "budget_sweep", sweep)

    def effective_workers(self) -> int:
        cap = os.environ.get(THREADS_ENV)
        cap = max(1, int(cap)) if cap else None
        if self.workers is None:
            return cap or 1
        return max(1, min(self.workers, cap) if cap else self.workers)


@dataclass
class ReliabilityReport:
    rho_grid: np.ndarray
    ud_mean: np.ndarray
    ud_stderr: np.ndarray
    alpha: float
    seed: int
    replicates: int
    cost_model: str
    budget: float
    sweep: list[tuple[float, float]] | None = None

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "config": {
                "seed": self.seed,
                "replicates": self.replicates,
                "cost_model": self.cost_model,
                "budget": _encode_inf(self.budget),
                "rho_points": len(self.rho_grid),
            },
            "ud_curve": [
                {"rho": float(r), "ud_mean": float(m), "ud_stderr": float(s)}
                for r, m, s in zip(self.rho_grid, self.ud_mean, self.ud_stderr)
            ],
            "sweep": None
            if self.sweep is None
            else [{"budget": _encode_inf(b), "alpha": a} for b, a in self.sweep],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> ReliabilityReport:
        curve = doc["ud_curve"]
        cfg = doc["config"]
        sweep = doc.get("sweep")
        return cls(
            rho_grid=np.array([c["rho"] for c in curve]),
            ud_mean=np.array([c["ud_mean"] for c in curve]),
            ud_stderr=np.array([c["ud_stderr"] for c in curve]),
            alpha=float(doc["alpha"]),
            seed=int(cfg["seed"]),
            replicates=int(cfg["replicates"]),
            cost_model=cfg["cost_model"],
            budget=_decode_inf(cfg["budget"]),
            sweep=None
            if sweep is None
            else [(_decode_inf(s["budget"]), float(s["alpha"])) for s in sweep],
        )

    def curve_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rho", "ud_mean", "ud_stderr"])
        for r, m, s in zip(self.rho_grid, self.ud_mean, self.ud_stderr):
            w.writerow([repr(float(r)), repr(float(m)), repr(float(s))])
        return buf.getvalue()


def sweep_csv(sweep: Sequence[tuple[float, float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["budget", "alpha"])
    for b, a in sweep:
        w.writerow([_encode_inf(b), repr(float(a))])
    return buf.getvalue()


def _encode_inf(x: float):
    return "inf" if math.isinf(x) else x


def _decode_inf(x) -> float:
    return math.inf if x == "inf" else float(x)


# -- simulation core ----------------------------------------------------------


def _check_monotone(ud: np.ndarray, model: CostModel, replicate: int) -> None:
    # raising rho closes edges, except under Bernoulli where it opens them
    steps = np.diff(ud, axis=-1)
    bad = steps < -1e-12 if model is CostModel.BERNOULLI else steps > 1e-12
    if bad.any():
        raise RuntimeError(f"replicate {replicate}: unaffected demand is not monotone in rho")


def _replicate_block(
    network: SurveillanceNetwork,
    model: CostModel,
    grid: Sequence[float],
    weights: np.ndarray,
    budget_mats: Sequence[np.ndarray],
    seed: int,
    replicates: Sequence[int],
) -> np.ndarray:
    """UD values with shape (n_budgets, len(replicates), len(grid))."""
    total = weights.sum()
    out = np.empty((len(budget_mats), len(replicates), len(grid)))
    cache: dict[bytes, np.ndarray] = {}
    # rows without demand never enter the sum
    origins = np.flatnonzero(weights.sum(axis=1) > 0).tolist()
    for i, r in enumerate(replicates):
        sample = draw_sample(network, seed, r) if model.is_random else None
        costs = edge_costs_grid(network, model, grid, sample)
        # each edge switches state at most once along the grid, so equal cost
        # vectors sit next to each other: collapse runs
        changed = np.any(costs[1:] != costs[:-1], axis=1)
        inverse = np.concatenate(([0], np.cumsum(changed)))
        distinct = costs[np.concatenate(([True], changed))]
        mats = np.empty((len(distinct), network.n_nodes, network.n_nodes))
        for k, row in enumerate(distinct):
            key = row.tobytes()
            c_star = cache.get(key)
            if c_star is None:
                if len(cache) >= _CACHE_LIMIT:
                    cache.clear()
                c_star = cache[key] = min_cost_matrix(network, row, origins)
            mats[k] = c_star
        for b, bm in enumerate(budget_mats):
            ud_distinct = (weights * (mats < bm)).sum(axis=(1, 2)) / total
            out[b, i] = ud_distinct[inverse]
            _check_monotone(out[b, i], model, r)
    return out


def simulate(
    network: SurveillanceNetwork,
    config: AnalysisConfig,
    budget_policies: Sequence[BudgetPolicy] | None = None,
    grid: Sequence[float] | None = None,
) -> np.ndarray:
    """Per-replicate UD curves, shape (n_budgets, replicates, len(grid)).

    When the draws cannot change any cost (a deterministic model, or sensors
    and readers that never fail) a single realisation is evaluated and
    repeated.
    """
    policies = list(budget_policies) if budget_policies is not None else [config.budgets]
    grid = tuple(config.rho_grid if grid is None else grid)
    weights = config.demand.matrix(network)
    if not weights.sum() > 0:
        raise ZeroTotalDemand("total demand over distinct origin/destination pairs is zero")
    budget_mats = [p.matrix(network) for p in policies]
    model = config.cost_model
    n_rep = int(config.replicates)

    if not draws_matter(network, model):
        one = _replicate_block(network, model, grid, weights, budget_mats, config.seed, [0])
        return np.repeat(one, n_rep, axis=1)

    workers = min(config.effective_workers(), n_rep)
    if workers <= 1:
        return _replicate_block(
            network, model, grid, weights, budget_mats, config.seed, range(n_rep)
        )
    chunks = [list(c) for c in np.array_split(np.arange(n_rep), workers) if len(c)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(
                _replicate_block, network, model, grid, weights, budget_mats, config.seed, chunk
            )
            for chunk in chunks
        ]
        parts = [f.result() for f in futures]
    return np.concatenate(parts, axis=1)


def _summarise(ud: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Mean and standard error over the replicate axis (axis 0)."""
    n = ud.shape[0]
    # where every replicate agrees, report the value itself rather than a
    # rounded average of copies
    same = np.all(ud == ud[0], axis=0)
    mean = np.where(same, ud[0], ud.mean(axis=0))
    if n < 2:
        return mean, np.zeros_like(mean)
    stderr = np.where(same, 0.0, ud.std(axis=0, ddof=1) / math.sqrt(n))
    return mean, stderr


# -- public operations ---------------------------------------------------------


def expected_ud(network: SurveillanceNetwork, config: AnalysisConfig, rho: float) -> tuple[float, float]:
    """Mean unaffected demand at one ``rho`` and its standard error."""
    if not 0.0 <= rho <= 1.0:
        raise InvalidAttribute(f"rho must be in [0, 1], got {rho!r}")
    ud = simulate(network, config, grid=[rho])[0, :, 0]
    mean, stderr = _summarise(ud)
    return float(mean), float(stderr)


def alpha(network: SurveillanceNetwork, config: AnalysisConfig) -> ReliabilityReport:
    """Reliability index for ``config.budgets``, with the UD curve behind it.

    When ``config.budget_sweep`` is set the report also carries the sweep.
    """
    policies = [config.budgets]
    if config.budget_sweep:
        policies += [config.budgets.with_default(b) for b in config.budget_sweep]
    ud = simulate(network, config, policies)
    grid = np.asarray(config.rho_grid)
    mean, stderr = _summarise(ud[0])
    sweep = None
    if config.budget_sweep:
        sweep = [
            (b, _trapezoid(ud[k + 1].mean(axis=0), grid))
            for k, b in enumerate(config.budget_sweep)
        ]
    return ReliabilityReport(
        rho_grid=grid,
        ud_mean=mean,
        ud_stderr=stderr,
        alpha=_trapezoid(mean, grid),
        seed=int(config.seed),
        replicates=int(config.replicates),
        cost_model=config.cost_model.value,
        budget=float(config.budgets.default_budget),
        sweep=sweep,
    )


def budget_sweep(network: SurveillanceNetwork, config: AnalysisConfig) -> list[tuple[float, float]]:
    """Reliability index for each budget in ``config.budget_sweep``.

    The sweep replaces the default budget; per-pair overrides stay fixed.
    """
    if not config.budget_sweep:
        raise InvalidAttribute("budget sweep is empty")
    policies = [config.budgets.with_default(b) for b in config.budget_sweep]
    ud = simulate(network, config, policies)
    grid = np.asarray(config.rho_grid)
    return [(b, _trapezoid(ud[k].mean(axis=0), grid)) for k, b in enumerate(config.budget_sweep)]


def edge_criticality(network: SurveillanceNetwork, config: AnalysisConfig) -> dict[str, float]:
    """Change in the reliability index when one door's sensors capture nothing.

    Keys are pair ids. A value near zero marks a sensor an intruder can route
    around. Doors without monitoring get 0.0 without a rerun.
    """
    base = alpha(network, _no_sweep(config)).alpha
    out = {}
    for p, pid in enumerate(network.pair_ids):
        members = np.flatnonzero(network.edge_pair == p)
        if not network.sensor_bits[members].any():
            out[pid] = 0.0
            continue
        edges = list(network.edges)
        for k in members:
            edges[k] = edges[k].without_monitoring()
        stripped = network.with_edges(edges)
        out[pid] = alpha(stripped, _no_sweep(config)).alpha - base
    return out


def _no_sweep(config: AnalysisConfig) -> AnalysisConfig:
    if config.budget_sweep is None:
        return config
    return replace(config, budget_sweep=None)
