"""Command-line front end: value, solve, verify, casemap, curves, strategy.

Values print as exact rational strings; ``--decimal`` adds float columns
for plotting.  Errors exit nonzero with a machine-readable category on
stderr.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import line as line_mod
from . import multi, serialize, solver
from .errors import (
    InvalidStrategyError,
    NoClosedFormError,
    PatrolError,
    UnsupportedParametersError,
)
from .graphs import Graph, covering_number, fractional_weightings, line_graph
from .model import GameSpec, independent_attack, uniform_attack


def _add_instance_args(p):
    p.add_argument("--line", type=int, metavar="N", help="line graph on N nodes")
    p.add_argument("--graph", metavar="PATH", help="graph JSON file")
    p.add_argument("--period", type=int, required=True, metavar="T")
    p.add_argument("--duration", type=int, default=2, metavar="M")
    p.add_argument("--patrollers", type=int, default=1, metavar="K")


def _build_spec(args):
    if (args.line is None) == (args.graph is None):
        raise UnsupportedParametersError("give exactly one of --line or --graph")
    if args.line is not None:
        graph = line_graph(args.line)
    else:
        with open(args.graph) as fh:
            graph = Graph.from_json(json.load(fh))
    return GameSpec(graph, args.period, args.duration, args.patrollers)


def _line_n(args):
    return args.line if args.line is not None else None


def _closed_form(spec, n):
    """(value, description, case_id) if a closed form applies, else None."""
    if spec.duration != 2:
        return None
    k = spec.patrollers
    if n is not None:
        if k == 1:
            case = line_mod.classify_case(n, spec.period)
            return case.value, f"closed-form line case {case.case_id}", case.case_id
        if 2 * k <= n:
            case = line_mod.classify_case(n, spec.period)
            return (
                min(k * case.value, Fraction(1)),
                f"closed-form lifted line case {case.case_id} (k={k})",
                case.case_id,
            )
    if spec.period % 2 == 0:
        if k == 1:
            weighting = fractional_weightings(spec.graph)
            return 1 / weighting.total, "fractional covering duality", None
        cov, _ = covering_number(spec.graph)
        if k >= cov:
            return Fraction(1), "covering team saturates every node", None
    return None


def _solve_instance(spec, method):
    if spec.patrollers > 1:
        if method == "colgen":
            raise UnsupportedParametersError(
                "column generation is single-patroller; use --method exact"
            )
        return multi.solve_k_exact(spec)
    if method == "colgen":
        return solver.solve_column_generation(spec)
    try:
        return solver.solve_exact(spec)
    except PatrolError:
        if method == "exact":
            raise
        return solver.solve_column_generation(spec)


def cmd_value(args):
    started = time.perf_counter()
    spec = _build_spec(args)
    n = _line_n(args)
    closed = _closed_form(spec, n) if args.method in ("auto", "closed") else None
    if args.method == "closed" and closed is None:
        raise NoClosedFormError("no closed form; use --method exact")
    if closed is not None:
        value, method, case_id = closed
    else:
        solution = _solve_instance(spec, args.method)
        value, method, case_id = solution.value, solution.method, None
    out = {
        "value": serialize.fraction_str(value),
        "method": method,
        "diagnostics": {
            "case": case_id,
            "elapsed_ms": round((time.perf_counter() - started) * 1000, 3),
        },
    }
    if args.decimal:
        out["value_decimal"] = float(value)
    print(json.dumps(out))


def cmd_solve(args):
    started = time.perf_counter()
    spec = _build_spec(args)
    method = "exact" if args.method in ("auto", "closed") else args.method
    solution = _solve_instance(spec, method)
    solution.verify(spec)
    out = serialize.solution_to_json(solution)
    out["diagnostics"] = {
        "elapsed_ms": round((time.perf_counter() - started) * 1000, 3)
    }
    if args.decimal:
        out["value_decimal"] = float(solution.value)
    print(json.dumps(out))


def _analytic_value(spec, n):
    closed = _closed_form(spec, n)
    return closed[0] if closed else None


def cmd_verify(args):
    spec = _build_spec(args)
    with open(args.strategy) as fh:
        data = json.load(fh)
    n = _line_n(args)
    per_node = None
    if args.side == "patroller":
        if "teams" in data:
            strategy = serialize.team_strategy_from_json(data)
            probs = multi.per_attack_team_interception(spec, strategy)
            guarantee = multi.team_guarantee(spec, strategy)
        elif "walks" in data:
            strategy = serialize.walk_strategy_from_json(data)
            for walk, _ in strategy:
                spec.validate_walk(walk)
            probs = solver.per_attack_interception(spec, strategy)
            guarantee = min(probs)
        else:
            raise InvalidStrategyError("patroller strategy needs 'walks' or 'teams'")
        T = spec.period
        per_node = {
            node: serialize.fraction_str(min(probs[i * T : (i + 1) * T]))
            for i, node in enumerate(spec.graph.nodes)
        }
    else:
        if "attacks" not in data:
            raise InvalidStrategyError("attacker strategy needs 'attacks'")
        strategy = serialize.attack_strategy_from_json(data, spec.duration)
        for attack, _ in strategy:
            spec.validate_attack(attack)
        guarantee = solver.attacker_guarantee(spec, strategy)
    analytic = _analytic_value(spec, n)
    out = {
        "side": args.side,
        "guarantee": serialize.fraction_str(guarantee),
        "analytic_value": serialize.fraction_str(analytic) if analytic is not None else None,
        "matches_analytic": (guarantee == analytic) if analytic is not None else None,
    }
    if per_node is not None:
        out["per_node"] = per_node
    if args.decimal:
        out["guarantee_decimal"] = float(guarantee)
    print(json.dumps(out))


def _parse_range(text):
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def _emit_csv(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_casemap(args):
    n_lo, n_hi = _parse_range(args.n_range)
    t_lo, t_hi = _parse_range(args.t_range)
    _emit_csv(line_mod.casemap_csv(n_lo, n_hi, t_lo, t_hi, args.decimal), args.csv)


def cmd_curves(args):
    n_lo, n_hi = _parse_range(args.n_range)
    _emit_csv(line_mod.curves_csv(args.period, n_lo, n_hi, args.decimal), args.csv)


def cmd_strategy(args):
    spec = _build_spec(args)
    n = _line_n(args)
    name = args.name
    T = spec.period
    k = spec.patrollers
    if name == "unbiased-covering":
        strategy = line_mod.unbiased_covering_strategy(spec.graph, T)
    elif name == "biased-covering":
        strategy = line_mod.biased_covering_strategy(spec.graph, T)
    elif name in ("case4", "case5", "decomposed-case4", "lift", "tour-mixture"):
        if n is None:
            raise UnsupportedParametersError(f"{name} needs --line")
        if name == "case4":
            strategy = line_mod.case4_strategy(n, T)
        elif name == "case5":
            strategy = line_mod.case5_strategy(n, T)
        elif name == "decomposed-case4":
            strategy = line_mod.decomposed_case4_strategy(n, T)
        elif name == "lift":
            strategy = multi.lift_strategy(n, T, k)
        else:
            if T != 2 * (n - 1):
                raise UnsupportedParametersError(
                    f"tour-mixture on {n} nodes has period {2 * (n - 1)}"
                )
            strategy = line_mod.tour_with_end_oscillations(n)
    elif name == "four-patroller":
        if (n, T, k) != (7, 3, 4):
            raise UnsupportedParametersError(
                "four-patroller is the --line 7 --period 3 --patrollers 4 optimum"
            )
        strategy = multi.four_patroller_strategy()
    elif name == "uniform-attack":
        strategy = uniform_attack(spec)
    elif name == "independent-attack":
        strategy = independent_attack(spec, args.start)
    else:
        raise UnsupportedParametersError(f"unknown strategy name {name!r}")
    print(json.dumps(serialize.strategy_to_json(strategy)))


def build_parser():
    parser = argparse.ArgumentParser(
        prog="patrolgame",
        description="Exact solvers for periodic patrolling games on graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("value", help="game value (closed form when available)")
    _add_instance_args(p)
    p.add_argument(
        "--method",
        choices=["auto", "closed", "exact", "colgen"],
        default="auto",
    )
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_value)

    p = sub.add_parser("solve", help="value plus optimal strategies for both sides")
    _add_instance_args(p)
    p.add_argument(
        "--method", choices=["auto", "exact", "colgen"], default="auto"
    )
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="security level of a strategy file")
    _add_instance_args(p)
    p.add_argument("--strategy", required=True, metavar="PATH")
    p.add_argument("--side", choices=["patroller", "attacker"], required=True)
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("casemap", help="case partition of the (n, T) grid as CSV")
    p.add_argument("--n-range", required=True, metavar="LO:HI")
    p.add_argument("--t-range", required=True, metavar="LO:HI")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_casemap)

    p = sub.add_parser("curves", help="attack bound curves over n as CSV")
    p.add_argument("--period", type=int, required=True, metavar="T")
    p.add_argument("--n-range", required=True, metavar="LO:HI")
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--decimal", action="store_true")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("strategy", help="emit a named constructor's strategy JSON")
    _add_instance_args(p)
    p.add_argument("--name", required=True)
    p.add_argument("--start", type=int, default=1, help="independent attack start")
    p.set_defaults(func=cmd_strategy)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except PatrolError as exc:
        payload = {"error": {"category": exc.category, "message": str(exc)}}
        print(json.dumps(payload), file=sys.stderr)
        return 1
    except OSError as exc:
        payload = {"error": {"category": "io", "message": str(exc)}}
        print(json.dumps(payload), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
