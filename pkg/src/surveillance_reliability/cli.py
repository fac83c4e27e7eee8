"""Command line front end.

Exit status: 0 on success, 1 when the input fails validation, 2 on usage
errors. The input may be a twin document (``"schema": "surveillance-twin/1"``)
or a network document as written by ``extract``.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import analysis
from .analysis import AnalysisConfig, ReliabilityReport, sweep_csv
from .costs import CostModel, edge_costs
from .errors import ValidationError
from .network import BudgetPolicy, DemandMatrix, network_from_dict, network_to_dict, parse_json
from .paths import shortest_path
from .sampling import draw_sample
from .twin import ExtractionPolicy, extract_network, is_twin_document, twin_from_dict

DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _budget(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"budget must be > 0, got {text!r}")
    return value


def _budget_list(text: str) -> list[float]:
    return [_budget(part) for part in text.split(",") if part.strip()]


def _model(text: str) -> CostModel:
    try:
        return CostModel.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="surveil-reliability",
        description="Percolation-based reliability analysis of surveillance networks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, analysis_flags=True):
        p.add_argument("input", help="twin or network JSON file")
        p.add_argument("--no-reverse-traversal", action="store_true",
                       help="doors are traversable only in their stated direction")
        p.add_argument("--reverse-requires-access", action="store_true",
                       help="reverse traversal needs the same card as forward")
        p.add_argument("--one-way-sensors", action="store_true",
                       help="sensors only monitor the forward direction")
        if analysis_flags:
            p.add_argument("--model", type=_model, default=CostModel.FAILURE_ACCESS_FAULTS,
                           help="bernoulli, access, monitoring, failure, failure+access-faults")
            p.add_argument("--budget", type=_budget, default=None,
                           help="default privacy budget in bits (default: from file, else inf)")
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
            p.add_argument("-o", "--output", help="write here instead of stdout")
            p.add_argument("--format", choices=("json", "csv"), default=None)

    p = sub.add_parser("validate", help="check an input file")
    common(p, analysis_flags=False)

    p = sub.add_parser("extract", help="convert a twin into a network document")
    common(p, analysis_flags=False)
    p.add_argument("-o", "--output")

    for name, text in (
        ("analyze", "reliability index and unaffected-demand curve"),
        ("sweep", "reliability index for several budgets"),
        ("criticality", "change in the index when each door's sensors are removed"),
    ):
        p = sub.add_parser(name, help=text)
        common(p)
        p.add_argument("--rho-points", type=int, default=101)
        p.add_argument("--replicates", type=int, default=200)
        if name == "sweep":
            p.add_argument("--budgets", type=_budget_list, required=True,
                           help="comma separated, e.g. 1,5,10,10.5,inf")

    p = sub.add_parser("explain", help="cheapest path for one realisation")
    common(p)
    p.add_argument("--from", dest="origin", required=True)
    p.add_argument("--to", dest="destination", required=True)
    p.add_argument("--rho", type=float, required=True)
    p.add_argument("--replicate", type=int, default=0)
    return parser


def _load(args):
    path = Path(args.input)
    if not path.is_file():
        raise UsageError(f"no such file: {args.input}")
    doc = parse_json(path.read_bytes())
    if is_twin_document(doc):
        policy = ExtractionPolicy(
            reverse_traversal=not args.no_reverse_traversal,
            reverse_requires_access=args.reverse_requires_access,
            sensors_bidirectional=not args.one_way_sensors,
        )
        return extract_network(twin_from_dict(doc), policy), DemandMatrix(), BudgetPolicy()
    return network_from_dict(doc)


def _config(args, demand, budgets) -> AnalysisConfig:
    if args.budget is not None:
        budgets = budgets.with_default(args.budget)
    if args.rho_points < 2:
        raise UsageError("--rho-points must be >= 2")
    if args.replicates < 1:
        raise UsageError("--replicates must be >= 1")
    return AnalysisConfig(
        rho_grid=analysis.rho_grid(args.rho_points),
        replicates=args.replicates,
        seed=args.seed,
        cost_model=args.model,
        demand=demand,
        budgets=budgets,
        budget_sweep=getattr(args, "budgets", None),
    )


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _fmt_cost(c: float) -> str:
    return "inf" if math.isinf(c) else f"{c:g}"


def _run(args) -> None:
    network, demand, budgets = _load(args)
    cmd = args.command

    if cmd == "validate":
        print(f"ok: {network.n_nodes} nodes, {network.n_edges} directed edges, "
              f"{len(network.pair_ids)} doors")
        return

    if cmd == "extract":
        _emit(json.dumps(network_to_dict(network, demand, budgets), indent=2) + "\n", args.output)
        return

    if cmd == "explain":
        if not 0.0 <= args.rho <= 1.0:
            raise UsageError("--rho must be in [0, 1]")
        if args.budget is not None:
            budgets = budgets.with_default(args.budget)
        model = args.model
        sample = draw_sample(network, args.seed, args.replicate) if model.is_random else None
        costs = edge_costs(network, model, args.rho, sample)
        result = shortest_path(network, costs, args.origin, args.destination)
        budget = budgets.matrix(network)[
            network.node_index(args.origin), network.node_index(args.destination)
        ]
        steps = [
            {"from": network.edges[k].source, "to": network.edges[k].target,
             "door": network.edges[k].pair, "bits": costs[k]}
            for k in result.path or ()
        ]
        reachable = result.min_cost < budget
        if args.format == "json":
            doc = {
                "origin": args.origin,
                "destination": args.destination,
                "rho": args.rho,
                "budget": "inf" if math.isinf(budget) else budget,
                "min_cost": "inf" if math.isinf(result.min_cost) else result.min_cost,
                "reachable": bool(reachable),
                "path": steps,
            }
            _emit(json.dumps(doc, indent=2) + "\n", args.output)
            return
        lines = [f"{args.origin} -> {args.destination}  model={model.value} rho={args.rho:g} "
                 f"seed={args.seed} replicate={args.replicate}"]
        if result.path is None:
            lines.append("  no path: every route is blocked")
        for s in steps:
            lines.append(f"  {s['from']} -> {s['to']}  [{s['door']}]  {_fmt_cost(s['bits'])} bits")
        lines.append(f"  total {_fmt_cost(result.min_cost)} bits, budget {_fmt_cost(budget)}: "
                     + ("reachable" if reachable else "blocked"))
        _emit("\n".join(lines) + "\n", args.output)
        return

    config = _config(args, demand, budgets)
    if cmd == "analyze":
        report = analysis.alpha(network, config)
        text = report.curve_csv() if args.format == "csv" else report.to_json()
    elif cmd == "sweep":
        rows = analysis.budget_sweep(network, config)
        if args.format == "json":
            text = json.dumps(
                [{"budget": "inf" if math.isinf(b) else b, "alpha": a} for b, a in rows], indent=2
            ) + "\n"
        else:
            text = sweep_csv(rows)
    else:
        deltas = analysis.edge_criticality(network, config)
        if args.format == "csv":
            text = "edge,delta_alpha\n" + "".join(f"{k},{v!r}\n" for k, v in deltas.items())
        else:
            text = json.dumps({"delta_alpha": deltas}, indent=2) + "\n"
    _emit(text, args.output)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        _run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def read_report(path) -> ReliabilityReport:
    return ReliabilityReport.from_dict(json.loads(Path(path).read_text()))


if __name__ == "__main__":
    sys.exit(main())
