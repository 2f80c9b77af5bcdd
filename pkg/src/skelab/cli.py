"""Reproducible experiment driver.

Subcommands wire sampling -> skeleton construction -> flows -> expansion
bounds, with deterministic CSV/JSON emission. Every run is a pure function
of its flags — seeds are explicit, never taken from the clock.

Exit codes: 0 success/verified, 1 verification failure, 2 usage error,
3 resource-cap error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import floor, log2
from statistics import median_low

from . import reports, verifiers
from .errors import ResourceCapError
from .expansion import degree_upper_bound, exact_cheeger
from .flows import RerouteConfig, expansion_lower_bound, reroute_flow
from .reports import frac, render_report, write_text
from .skeleton import (
    as_alpha,
    as_probability,
    build_exact_skeleton,
    build_Gd,
    dumps_graph,
    dumps_vertex_set,
    full_degree_vertices,
    sample_vertex_set,
)

EXACT_FLOW_MAX_VERTICES = 200


@dataclass
class ExperimentParams:
    n: int
    p: Fraction | None = None
    d: int = 1
    alpha: Fraction = Fraction(1, 2)
    seed: int = 0
    pairs: int | None = None
    mode: str = "exact"
    out: str | None = None
    format: str = "csv"


def select_d(n: int, p: Fraction, c0: float) -> int:
    """Odd target distance floor(0.5 log2 log2 n + c0 log2(1/p)), clamped
    to at least 1 and decremented to odd."""
    raw = floor(0.5 * log2(log2(n)) + c0 * log2(1 / float(p)))
    d = max(raw, 1)
    if d % 2 == 0:
        d -= 1
    return max(d, 1)


def _cmd_sample(args) -> int:
    V = sample_vertex_set(args.n, args.p, args.seed)
    write_text(args.out, dumps_vertex_set(V))
    return 0


def _cmd_skeleton(args) -> int:
    V = sample_vertex_set(args.n, args.p, args.seed)
    if args.method == "exact":
        graph = build_exact_skeleton(V)
        d = args.d
    else:
        d = args.d
        graph = build_Gd(V, d)
    report = reports.bound_report(
        n=args.n,
        p=args.p,
        d=d,
        seed=args.seed,
        V=V,
        graph=graph,
        full_degree_count=len(full_degree_vertices(V)),
    )
    text = render_report([report], args.format)
    if args.out:
        write_text(args.out + ".graph.txt", dumps_graph(graph))
        write_text(args.out + f".report.{args.format}", text)
    else:
        write_text(None, text)
    return 0


def run_flowbound(params: ExperimentParams, repair: bool = False):
    """Sample, reroute, bound. Returns (V, ledger, report, bound-or-None)."""
    V = sample_vertex_set(params.n, params.p, params.seed)
    if params.mode == "exact":
        if len(V) > EXACT_FLOW_MAX_VERTICES:
            raise ResourceCapError(
                f"exact all-pairs flow capped at |V|={EXACT_FLOW_MAX_VERTICES}, got {len(V)}"
            )
        budget = None
    else:
        budget = params.pairs if params.pairs is not None else 1000
    config = RerouteConfig(
        d=params.d,
        repair_with_G1=repair,
        alpha=params.alpha,
        pair_budget=budget,
        seed=params.seed,
    )
    ledger, rep = reroute_flow(V, config)
    bound = expansion_lower_bound(ledger, len(V)) if ledger.loads else None
    return V, ledger, rep, bound


def _cmd_flowbound(args) -> int:
    params = ExperimentParams(
        n=args.n, p=args.p, d=args.d, alpha=args.alpha, seed=args.seed,
        pairs=args.pairs, mode=args.mode, out=args.out, format=args.format,
    )
    V, ledger, rep, bound = run_flowbound(params, repair=args.repair)
    cheeger = None
    if args.mode == "exact" and len(V) <= 26 and len(V) >= 2:
        cheeger = exact_cheeger(build_exact_skeleton(V))
    report = reports.bound_report(
        n=args.n,
        p=args.p,
        d=args.d,
        seed=args.seed,
        V=V,
        ledger=ledger,
        bound=bound,
        cheeger=cheeger,
    )
    report["direct_routed"] = rep.direct_routed
    text = render_report([report], args.format)
    if args.out:
        from .flows import ledger_csv_lines, ledger_summary

        write_text(args.out + ".ledger.csv", "\n".join(ledger_csv_lines(ledger)) + "\n")
        write_text(
            args.out + ".summary.json",
            reports.render_json(ledger_summary(ledger, bound)),
        )
        write_text(args.out + f".report.{args.format}", text)
    else:
        write_text(None, text)
    return 0


def _cmd_verify(args) -> int:
    result = verifiers.run_check(args.lemma, seed=args.seed)
    row = {
        "schema": reports.SCHEMA,
        "lemma": args.lemma,
        "trials": result.trials,
        "violations": result.violations,
        "passed": result.passed,
    }
    for key, val in sorted(result.details.items()):
        row[f"detail_{key}"] = val if not isinstance(val, dict) else str(val)
    write_text(args.out, render_report([row], args.format))
    return 0 if result.passed else 1


def _cmd_trend(args) -> int:
    ns = [int(tok) for tok in str(args.n).split(",")]
    seeds = list(range(args.seed, args.seed + args.trials))
    rows = []
    for n in ns:
        bounds = []
        degree_bounds = []
        for seed in seeds:
            params = ExperimentParams(
                n=n, p=args.p, d=args.d, alpha=args.alpha, seed=seed,
                pairs=args.pairs, mode="sampled",
            )
            V, ledger, rep, bound = run_flowbound(params, repair=args.repair)
            graph = build_Gd(V, args.d)
            deg = degree_upper_bound(graph).value if len(V) >= 2 else None
            row = {
                "schema": reports.SCHEMA,
                "n": n,
                "seed": seed,
                "p": frac(args.p),
                "d": args.d,
                "c0": args.c0,
                "d_selected": select_d(n, args.p, args.c0),
                "vertex_count": len(V),
                "bound_value": frac(bound.value) if bound else None,
                "bound_kind": bound.kind if bound else None,
                "degree_upper_bound": frac(deg) if deg is not None else None,
                "pairs_routed": ledger.pairs_routed,
                "pairs_attempted": ledger.pairs_attempted,
            }
            row.update(reports.alpha_full_counts(V))
            rows.append(row)
            if bound:
                bounds.append(bound.value)
            if deg is not None:
                degree_bounds.append(deg)
        rows.append(
            {
                "schema": reports.SCHEMA,
                "n": n,
                "seed": "median",
                "p": frac(args.p),
                "d": args.d,
                "c0": args.c0,
                "d_selected": select_d(n, args.p, args.c0),
                "bound_value": frac(median_low(bounds)) if bounds else None,
                "degree_upper_bound": (
                    frac(median_low(degree_bounds)) if degree_bounds else None
                ),
            }
        )
    write_text(args.out, render_report(rows, args.format))
    return 0


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skelab",
        description="Experiments on skeleton graphs of random 0/1-polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp, *, n=True, p=True, seed=True, out=True, fmt=True):
        if n:
            sp.add_argument("--n", type=int, required=True, help="cube dimension")
        if p:
            sp.add_argument(
                "--p",
                type=_fraction,
                required=True,
                help="sampling probability, exact rational (e.g. 0.7 or 7/10)",
            )
        if seed:
            sp.add_argument("--seed", type=int, required=True, help="stream seed")
        if out:
            sp.add_argument("--out", help="output path (default: stdout)")
        if fmt:
            sp.add_argument(
                "--format", choices=("csv", "json"), default="csv", help="report format"
            )

    sp = sub.add_parser("sample", help="sample a vertex set and write it out")
    add_common(sp, fmt=False)
    sp.set_defaults(func=_cmd_sample)

    sp = sub.add_parser("skeleton", help="build a skeleton graph plus statistics")
    add_common(sp)
    sp.add_argument(
        "--method",
        choices=("exact", "gd"),
        default="gd",
        help="exact LP adjacency, or the distance-d subcube criterion",
    )
    sp.add_argument("--d", type=int, default=1, help="criterion distance")
    sp.set_defaults(func=_cmd_skeleton)

    sp = sub.add_parser(
        "flowbound", help="reroute an all-pairs flow and derive an expansion bound"
    )
    add_common(sp)
    sp.add_argument("--d", type=int, default=1, help="odd detour distance")
    sp.add_argument(
        "--mode",
        choices=("exact", "sampled"),
        default="exact",
        help="route all pairs (certificate) or a sampled budget (estimate)",
    )
    sp.add_argument("--pairs", type=int, help="pair budget for sampled mode")
    sp.add_argument(
        "--alpha", type=_fraction, default=Fraction(1, 2), help="fullness threshold"
    )
    sp.add_argument(
        "--repair",
        action="store_true",
        help="use 3-step unit-distance repair paths at dense endpoints (needs --d 3)",
    )
    sp.set_defaults(func=_cmd_flowbound)

    sp = sub.add_parser("verify", help="run a property check by catalog id")
    sp.add_argument(
        "--lemma",
        required=True,
        metavar="ID",
        help="check id: " + ", ".join(sorted(verifiers.CHECKS)),
    )
    sp.add_argument("--seed", type=int, default=0, help="stream seed")
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser(
        "trend", help="bound estimates across dimensions, medians over seeds"
    )
    sp.add_argument("--n", required=True, help="comma-separated dimensions, e.g. 8,10,12")
    sp.add_argument("--p", type=_fraction, required=True)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--seed", type=int, required=True, help="first seed")
    sp.add_argument("--trials", type=int, default=5, help="seeds per dimension")
    sp.add_argument("--pairs", type=int, default=500, help="pair budget per run")
    sp.add_argument("--alpha", type=_fraction, default=Fraction(1, 2))
    sp.add_argument("--repair", action="store_true")
    sp.add_argument(
        "--c0", type=float, default=0.5, help="coefficient in the d-selection preview"
    )
    sp.add_argument("--out", help="output path (default: stdout)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.set_defaults(func=_cmd_trend)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "p") and args.p is not None and not isinstance(args.p, int):
        try:
            args.p = as_probability(args.p)
        except ValueError as exc:
            print(f"skelab: {exc}", file=sys.stderr)
            return 2
    if hasattr(args, "alpha"):
        try:
            args.alpha = as_alpha(args.alpha)
        except ValueError as exc:
            print(f"skelab: {exc}", file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"skelab: resource cap: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"skelab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
