"""Command-line front end: analyze, witness-lower, certify-upper, verify, census.

Exit codes: 0 ok, 2 input/parse error, 3 domain error, 4 resource limit,
5 failed check or tampered certificate.
"""
from __future__ import annotations

import argparse
import csv
import io as _stdio
import re
import sys

from . import io
from .engine import (
    DEFAULT_BUDGET,
    bounds,
    census,
    lower_bound_witness,
    upper_bound_certificate,
)
from .errors import InputError, RinftyError
from .graded_aut import DEFAULT_EXPLICIT_LIMIT, has_eigenvalue_one_upto, sample_members
from .graph import cycles_of, is_quotient_automorphism, quotient_graph
from .lie import DEFAULT_DIM_CAP, GradedPcLie, series_dims

DEFAULT_SEED = 0
DEFAULT_SAMPLES = 5


# psi-spec ----------------------------------------------------------------------------------

_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_psi(spec: str, classes: int) -> tuple:
    """Cycle notation over class indices, e.g. "(0 1)(2)"; unmentioned classes are fixed.

    Returns (psi, written cycles).  The identity may be written "()" or "".
    """
    text = spec.strip()
    if _CYCLE.sub("", text).strip():
        raise InputError("psi-spec: expected cycles like (0 1)(2), got %r" % spec)
    psi = list(range(classes))
    seen = set()
    written = []
    for body in _CYCLE.findall(text):
        items = body.replace(",", " ").split()
        if not items:
            continue
        try:
            cyc = [int(x) for x in items]
        except ValueError:
            raise InputError("psi-spec: non-integer class index in %r" % body) from None
        for x in cyc:
            if not 0 <= x < classes:
                raise InputError("psi-spec: class index %d out of range 0..%d" % (x, classes - 1))
            if x in seen:
                raise InputError("psi-spec: class index %d repeated" % x)
            seen.add(x)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            psi[a] = b
        written.append(tuple(cyc))
    return tuple(psi), written


def parse_signs(spec: str | None, psi: tuple, written: list) -> tuple:
    """Signs per cycle of psi in canonical order (cycles starting at their least class).

    If the written cycles cover every class the signs follow the written
    order; otherwise they follow the canonical order.
    """
    canon = cycles_of(psi)
    if spec is None or not spec.strip():
        return tuple(1 for _ in canon)
    signs = [io.parse_sign(s.strip()) for s in spec.split(",")]
    covered = sorted(x for c in written for x in c) == list(range(len(psi)))
    if covered and len(signs) == len(written):
        by_min = {min(c): s for c, s in zip(written, signs)}
        return tuple(by_min[c[0]] for c in canon)
    if len(signs) != len(canon):
        raise InputError("need %d signs (one per cycle %s), got %d"
                         % (len(canon), "".join("(%s)" % " ".join(map(str, c)) for c in canon), len(signs)))
    return tuple(signs)


# commands ----------------------------------------------------------------------------------

def _emit(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_report(g, args) -> dict:
    q = quotient_graph(g)
    lab = g.vertex_labels
    rep = {
        "format_version": io.FORMAT_VERSION,
        "kind": "report",
        "graph_digest": io.graph_digest(g),
        "vertex_count": g.vertex_count,
        "edge_count": len(g.edges),
        "vertices": list(lab),
        "coherent_components": [[lab[v] for v in c] for c in q.classes],
        "quotient": {"sizes": list(q.sizes), "qedges": sorted(sorted(e) for e in q.qedges)},
    }
    if g.edges:
        b = bounds(g)
        rep.update({"xi": b.xi, "Xi": b.Xi, "transposition_free": b.transposition_free,
                    "pinned_index": b.pinned_index, "statement": b.statement()})
    else:
        from .graph import is_transposition_free
        rep.update({"xi": "undefined", "Xi": "undefined", "transposition_free": is_transposition_free(g),
                    "pinned_index": None, "statement": "undefined for a graph without edges"})
    if args.class_bound:
        rep["layer_dims"] = series_dims(g, args.class_bound)
    if args.detail and g.edges:
        params = {"budget": args.budget, "dim_cap": args.dim_cap, "explicit_limit": DEFAULT_EXPLICIT_LIMIT}
        rep["lower_bound_witness"] = io.witness_to_doc(lower_bound_witness(g, **params), params)
        psi = tuple(range(len(q.sizes)))
        cert = upper_bound_certificate(g, psi, [1] * len(psi), dim_cap=args.dim_cap)
        rep["upper_bound_certificate"] = io.upper_to_doc(cert, {"dim_cap": args.dim_cap})
        rep["samples"] = _sample_report(g, b.Xi, args)
    return rep


def _sample_report(g, c, args) -> dict:
    L = GradedPcLie(g, max(c, 2), dim_cap=args.dim_cap, eager=False)
    found = []
    for M in sample_members(g, DEFAULT_SAMPLES, args.seed):
        ok, checks = has_eigenvalue_one_upto(L, M, c, early_exit=True)
        found.append(next((ch.degree for ch in checks if ch.vanishes), None) if ok else None)
    return {"seed": args.seed, "count": len(found), "class_bound": c,
            "eigenvalue_one_degree": found, "all_found": all(x is not None for x in found)}


def cmd_analyze(args) -> int:
    g = io.read_graph(args.graph, args.format)
    rep = build_report(g, args)
    _emit(io.dump(rep), args.output)
    if args.quotient_dot:
        _emit(io.quotient_to_dot(g), args.quotient_dot)
    if args.detail and g.edges and not rep["samples"]["all_found"]:
        return 5
    return 0


def cmd_witness_lower(args) -> int:
    g = io.read_graph(args.graph, args.format)
    params = {"budget": args.budget, "dim_cap": args.dim_cap, "explicit_limit": DEFAULT_EXPLICIT_LIMIT}
    w = lower_bound_witness(g, **params)
    _emit(io.dump(io.witness_to_doc(w, params)), args.output)
    return 0


def cmd_certify_upper(args) -> int:
    g = io.read_graph(args.graph, args.format)
    q = quotient_graph(g)
    psi, written = parse_psi(args.psi, len(q.sizes))
    if not is_quotient_automorphism(q, psi):
        raise InputError("psi-spec %r is not a size-preserving automorphism of the quotient graph" % args.psi)
    signs = parse_signs(args.signs, psi, written)
    L = None
    if args.class_bound:
        L = GradedPcLie(g, args.class_bound, dim_cap=args.dim_cap, eager=False)
    cert = upper_bound_certificate(g, psi, signs, L=L, dim_cap=args.dim_cap)
    _emit(io.dump(io.upper_to_doc(cert, {"dim_cap": args.dim_cap})), args.output)
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("%s: cannot read: %s" % (args.certificate, exc.strerror)) from None
    doc = io.load(text, args.certificate)
    fresh = io.verify_doc(doc)
    print("verified: %s (%s)" % (fresh["kind"], io.graph_digest(io.graph_from_doc(fresh["graph"]))[:16]))
    return 0


CENSUS_COLUMNS = ("n", "graphs", "transposition_free", "nonempty", "min_xi", "max_Xi")


def census_table(rows) -> str:
    buf = _stdio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CENSUS_COLUMNS)
    for r in rows:
        w.writerow([r.n, r.graphs, r.transposition_free, r.nonempty,
                    "" if r.min_xi is None else r.min_xi, "" if r.max_Xi is None else r.max_Xi])
    return buf.getvalue()


def census_detail(rows) -> str:
    buf = _stdio.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("n", "edges", "transposition_free", "xi", "Xi"))
    for r in rows:
        for e in r.entries:
            w.writerow([r.n, " ".join("%d-%d" % x for x in e.edges), int(e.transposition_free),
                        "" if e.xi is None else e.xi, "" if e.Xi is None else e.Xi])
    return buf.getvalue()


def cmd_census(args) -> int:
    if args.n < 1:
        raise InputError("census needs n >= 1")
    rows = census(args.n, jobs=args.jobs)
    _emit(census_table(rows), args.output)
    if args.detail:
        _emit(census_detail(rows), args.detail)
    return 0


# parser ------------------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("expected an integer, got %r" % text) from None
    if v < 1:
        raise argparse.ArgumentTypeError("expected a positive integer, got %d" % v)
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rinfty", description="Bounds and certificates for the "
                                "R-infinity nilpotency index of right-angled Artin groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("graph", help="graph file (edge list or structured document)")
        sp.add_argument("--format", choices=("edgelist", "doc"), help="input format (default: detect)")
        sp.add_argument("--dim-cap", type=_positive, default=DEFAULT_DIM_CAP, help="largest layer built explicitly")
        sp.add_argument("-o", "--output", help="output file (default: stdout)")
        return sp

    sp = graph_cmd("analyze", "components, quotient graph and bounds")
    sp.add_argument("--class-bound", type=_positive, help="also report layer dimensions up to this degree")
    sp.add_argument("--detail", action="store_true", help="embed certificates and sampled checks")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for sampled automorphisms")
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="exponent-vector budget")
    sp.add_argument("--quotient-dot", help="also write the quotient graph as DOT to this file")
    sp.set_defaults(func=cmd_analyze)

    sp = graph_cmd("witness-lower", "automorphism with no eigenvalue one up to degree xi - 1")
    sp.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="exponent-vector budget")
    sp.set_defaults(func=cmd_witness_lower)

    sp = graph_cmd("certify-upper", "eigenvalue-one certificate at degree Xi for a quotient automorphism")
    sp.add_argument("--psi", default="()", help="cycles of class indices, e.g. '(0 1)(2)'")
    sp.add_argument("--signs", help="one sign per cycle, e.g. '+,-' (default all +)")
    sp.add_argument("--class-bound", type=_positive, help="Lie algebra class bound (default Xi)")
    sp.set_defaults(func=cmd_certify_upper)

    sp = sub.add_parser("verify", help="recompute a certificate and compare every field")
    sp.add_argument("certificate")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("census", help="unlabeled graphs up to n vertices with bound statistics")
    sp.add_argument("n", type=int)
    sp.add_argument("--jobs", type=_positive, default=1, help="worker processes")
    sp.add_argument("--detail", help="write per-graph rows to this file")
    sp.add_argument("-o", "--output", help="table output file (default: stdout)")
    sp.set_defaults(func=cmd_census)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except RinftyError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
