"""Report assembly and deterministic CSV/JSON emission.

Every emitted quantity that has an exact value is written as an exact
rational string ("18/5", "4"), never as a float, so identical runs produce
identical bytes. CSV schemas are versioned through a leading `schema`
column.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from math import comb

from .expansion import CheegerResult
from .flows import ExpansionBound, CongestionLedger
from .skeleton import SkeletonGraph, VertexSet, alpha_full_vertices, edge_length_histogram

SCHEMA = 1
ALPHA_SWEEP = (Fraction(1, 10), Fraction(1, 5), Fraction(3, 10), Fraction(1, 2))


def frac(x) -> str:
    return str(Fraction(x))


def derived_quantities(n: int, p: Fraction, d: int) -> dict:
    """N = 2^n, D = C(n,d), q = p (1-p)^(2^d - 2), and the flow budget nN/D."""
    N = 1 << n
    D = comb(n, d)
    q = p * (1 - p) ** (2**d - 2)
    return {
        "N": N,
        "D": D,
        "q": frac(q),
        "nN_over_D": frac(Fraction(n * N, D)),
    }


def degree_stats(G: SkeletonGraph) -> dict:
    degs = sorted(len(G.adj[m]) for m in G.adj)
    if not degs:
        return {"min_degree": None, "max_degree": None, "mean_degree": None}
    return {
        "min_degree": degs[0],
        "max_degree": degs[-1],
        "mean_degree": frac(Fraction(sum(degs), len(degs))),
    }


def alpha_full_counts(V: VertexSet, sweep=ALPHA_SWEEP) -> dict:
    return {f"alpha_full_{a}": len(alpha_full_vertices(V, a)) for a in sweep}


def bound_report(
    *,
    n: int,
    p: Fraction,
    d: int,
    seed: int,
    V: VertexSet,
    graph: SkeletonGraph | None = None,
    ledger: CongestionLedger | None = None,
    bound: ExpansionBound | None = None,
    cheeger: CheegerResult | None = None,
    full_degree_count: int | None = None,
) -> dict:
    report: dict = {"schema": SCHEMA, "n": n, "p": frac(p), "d": d, "seed": seed}
    report["vertex_count"] = len(V)
    report.update(derived_quantities(n, p, d))
    report.update(alpha_full_counts(V))
    if graph is not None:
        report["method"] = str(graph.method)
        report["edges"] = graph.edge_count
        report.update(degree_stats(graph))
        report["edge_length_histogram"] = json.dumps(
            edge_length_histogram(graph), sort_keys=True
        )
    if full_degree_count is not None:
        report["full_degree_count"] = full_degree_count
    if ledger is not None:
        report["pairs_attempted"] = ledger.pairs_attempted
        report["pairs_routed"] = ledger.pairs_routed
        report["pairs_failed"] = ledger.failures
        report["mode"] = ledger.mode
        report["max_load"] = frac(ledger.max_load()) if ledger.loads else None
    if bound is not None:
        report["bound_value"] = frac(bound.value)
        report["bound_kind"] = bound.kind
    if cheeger is not None:
        report["exact_cheeger"] = frac(cheeger.value)
    return report


def render_csv(rows: list[dict]) -> str:
    """One header line from the union of keys, insertion-ordered."""
    fields: list[str] = []
    for row in rows:
        for key in row:
            if key not in fields:
                fields.append(key)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in fields})
    return buf.getvalue()


def render_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def render_report(rows: list[dict], fmt: str) -> str:
    if fmt == "csv":
        return render_csv(rows)
    if fmt == "json":
        return render_json(rows if len(rows) != 1 else rows[0])
    raise ValueError(f"unknown format {fmt!r}")


def write_text(path: str | None, text: str) -> None:
    """Write to a file, or stdout when no path was given."""
    if path is None:
        print(text, end="")
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)
