"""Text formats: graph input, quotient export, certificate documents.

Every document starts with `format_version: 1`.  Rationals are written as
"p/q" strings, bracket words in nested-pair notation such as `[[a,b],c]`.
Certificates carry a sha256 digest of their canonical payload; verification
recomputes the certificate from the graph and parameters, so the stored
`verified` flag and every other claim are never trusted.
"""
from __future__ import annotations

import hashlib
import json
from typing import Any

import yaml

from .errors import InputError, TheoremViolation
from .graph import Graph, QuotientGraph, quotient_graph
from .linalg import frac_str, mat_from_doc, mat_to_doc, parse_frac

FORMAT_VERSION = 1


# graph input -------------------------------------------------------------------------------

def parse_edgelist(text: str, source: str = "<input>") -> Graph:
    """First non-blank line `n`, then one `i j` pair per line (0-based); `#` starts a comment."""
    n = None
    edges = []
    seen = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            tokens.append((tok, col + 1))
            col += len(tok)
        if n is None:
            if len(tokens) != 1:
                raise _err(source, lineno, tokens[min(1, len(tokens) - 1)][1], "expected a single vertex count")
            n = _int_token(source, lineno, *tokens[0])
            if n < 0:
                raise _err(source, lineno, tokens[0][1], "negative vertex count")
            continue
        if len(tokens) != 2:
            where = tokens[2][1] if len(tokens) > 2 else len(line.rstrip()) + 1
            raise _err(source, lineno, where, "expected two vertex indices")
        a = _int_token(source, lineno, *tokens[0])
        b = _int_token(source, lineno, *tokens[1])
        for v, (_, c) in ((a, tokens[0]), (b, tokens[1])):
            if not 0 <= v < n:
                raise _err(source, lineno, c, "vertex %d out of range 0..%d" % (v, n - 1))
        if a == b:
            raise _err(source, lineno, tokens[0][1], "self-loop at vertex %d" % a)
        key = frozenset((a, b))
        if key in seen:
            raise _err(source, lineno, tokens[0][1], "duplicate edge (first on line %d)" % seen[key])
        seen[key] = lineno
        edges.append((a, b))
    if n is None:
        raise _err(source, 1, 1, "missing vertex count")
    return Graph.from_edges(n, edges)


def _int_token(source, lineno, tok, col) -> int:
    try:
        return int(tok)
    except ValueError:
        raise _err(source, lineno, col, "expected an integer, got %r" % tok) from None


def _err(source, line, col, msg) -> InputError:
    e = InputError("%s:%d:%d: %s" % (source, line, col, msg))
    e.line, e.column = line, col
    return e


def _mark(node) -> tuple:
    return node.start_mark.line + 1, node.start_mark.column + 1


def parse_graph_doc(text: str, source: str = "<input>") -> Graph:
    """Structured document with `vertices` (labels) and `edges` (label pairs)."""
    try:
        root = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line, col = (mark.line + 1, mark.column + 1) if mark else (1, 1)
        raise _err(source, line, col, "malformed document: %s" % getattr(exc, "problem", exc)) from None
    if not isinstance(root, yaml.MappingNode):
        raise _err(source, *(_mark(root) if root else (1, 1)), "expected a mapping with vertices and edges")
    fields = {k.value: v for k, v in root.value}
    if "format_version" in fields and fields["format_version"].value not in ("1",):
        raise _err(source, *_mark(fields["format_version"]), "unsupported format_version")
    for key in ("vertices", "edges"):
        if key not in fields:
            raise _err(source, *_mark(root), "missing field %r" % key)
    vnode, enode = fields["vertices"], fields["edges"]
    if not isinstance(vnode, yaml.SequenceNode):
        raise _err(source, *_mark(vnode), "vertices must be a list")
    labels = []
    for item in vnode.value:
        if not isinstance(item, yaml.ScalarNode) or item.value == "":
            raise _err(source, *_mark(item), "vertex label must be a non-empty scalar")
        if item.value in labels:
            raise _err(source, *_mark(item), "duplicate vertex label %r" % item.value)
        labels.append(item.value)
    index = {lab: i for i, lab in enumerate(labels)}
    if not isinstance(enode, yaml.SequenceNode):
        raise _err(source, *_mark(enode), "edges must be a list")
    edges, seen = [], set()
    for item in enode.value:
        if not isinstance(item, yaml.SequenceNode) or len(item.value) != 2 or \
                not all(isinstance(x, yaml.ScalarNode) for x in item.value):
            raise _err(source, *_mark(item), "edge must be a pair of labels")
        ends = []
        for x in item.value:
            if x.value not in index:
                raise _err(source, *_mark(x), "unknown vertex %r" % x.value)
            ends.append(index[x.value])
        if ends[0] == ends[1]:
            raise _err(source, *_mark(item), "self-loop at %r" % item.value[0].value)
        key = frozenset(ends)
        if key in seen:
            raise _err(source, *_mark(item), "duplicate edge")
        seen.add(key)
        edges.append(tuple(ends))
    return Graph.from_edges(len(labels), edges, labels)


def detect_format(text: str, path: str | None = None) -> str:
    if path and path.endswith((".yaml", ".yml", ".doc")):
        return "doc"
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            return "edgelist" if line.lstrip("-").isdigit() else "doc"
    return "edgelist"


def read_graph(path: str, fmt: str | None = None) -> Graph:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError("%s: cannot read: %s" % (path, exc.strerror)) from None
    return parse_graph(text, fmt, path)


def parse_graph(text: str, fmt: str | None = None, source: str = "<input>") -> Graph:
    fmt = fmt or detect_format(text, source)
    if fmt == "edgelist":
        return parse_edgelist(text, source)
    if fmt == "doc":
        return parse_graph_doc(text, source)
    raise InputError("unknown graph format %r" % fmt)


def graph_to_doc(g: Graph) -> dict:
    lab = g.vertex_labels
    return {"vertices": list(lab), "edges": [[lab[a], lab[b]] for a, b in g.sorted_edges()]}


def graph_from_doc(doc: Any) -> Graph:
    return parse_graph_doc(dump(doc))


def edgelist_text(g: Graph) -> str:
    return "\n".join([str(g.vertex_count)] + ["%d %d" % e for e in g.sorted_edges()]) + "\n"


def graph_digest(g: Graph) -> str:
    """sha256 over the vertex count and sorted index edges (labels excluded)."""
    canon = "%d;%s" % (g.vertex_count, ";".join("%d-%d" % e for e in g.sorted_edges()))
    return hashlib.sha256(canon.encode()).hexdigest()


# quotient export ---------------------------------------------------------------------------

def _qedge_list(q: QuotientGraph) -> list:
    return sorted(sorted(e) for e in q.qedges)


def quotient_to_doc(g: Graph, q: QuotientGraph | None = None) -> dict:
    q = q or quotient_graph(g)
    return {
        "format_version": FORMAT_VERSION,
        "classes": [[g.vertex_labels[v] for v in cls] for cls in q.classes],
        "sizes": list(q.sizes),
        "qedges": _qedge_list(q),
    }


def quotient_to_dot(g: Graph, q: QuotientGraph | None = None) -> str:
    q = q or quotient_graph(g)
    out = ["graph quotient {"]
    for k, size in enumerate(q.sizes):
        members = ",".join(g.vertex_labels[v] for v in q.classes[k])
        out.append('  l%d [label="λ%d (size %d)", tooltip="%s"];' % (k, k, size, members))
    for e in _qedge_list(q):
        a, b = (e[0], e[0]) if len(e) == 1 else e
        out.append("  l%d -- l%d;" % (a, b))
    out.append("}")
    return "\n".join(out) + "\n"


# structured text ---------------------------------------------------------------------------

def dump(doc: Any) -> str:
    return yaml.safe_dump(doc, sort_keys=False, allow_unicode=True, default_flow_style=None, width=100)


def load(text: str, source: str = "<input>") -> Any:
    try:
        return yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line, col = (mark.line + 1, mark.column + 1) if mark else (1, 1)
        raise _err(source, line, col, "malformed document: %s" % getattr(exc, "problem", exc)) from None


def payload_digest(doc: dict) -> str:
    body = {k: v for k, v in doc.items() if k != "payload_sha256"}
    return hashlib.sha256(json.dumps(body, sort_keys=True, separators=(",", ":")).encode()).hexdigest()


def _seal(doc: dict) -> dict:
    doc["payload_sha256"] = payload_digest(doc)
    return doc


# certificates ------------------------------------------------------------------------------

def _layer_doc(ch) -> dict:
    out = {"degree": ch.degree, "dim": ch.dim, "method": ch.method}
    if ch.method == "explicit":
        out["det_minus_identity"] = frac_str(ch.det)
    else:
        out["group_norms"] = [
            {"exponents": [list(p) for p in cn.exponents], "multiplicity": cn.multiplicity,
             "norm": cn.norm, "stabilizer": cn.stabilizer}
            for cn in ch.norms
        ]
        # the product of the norms can run to tens of thousands of digits; its size is enough
        from .spectral import layer_abs_det
        out["abs_det_minus_identity_bits"] = layer_abs_det(ch.norms).numerator.bit_length()
    out["nonzero"] = not ch.vanishes
    return out


def witness_to_doc(w, params: dict) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "lower_bound_witness",
        "graph": graph_to_doc(w.graph),
        "parameters": dict(params),
        "xi": w.xi,
        "class_bound": w.c,
        "abelian_case": w.abelian,
        "base_polynomials": [list(p) for p in w.base_polys],
        "root_exponents": list(w.exponents),
        "polynomials": [list(p) for p in w.polys],
        "exponent_check": w.exponent_check,
        "matrix": mat_to_doc(w.matrix),
        "layers": [_layer_doc(ch) for ch in w.checks],
        "verified": bool(w.verified),
    }
    return _seal(doc)


def _dispatch_doc(d) -> dict | None:
    if d is None:
        return None
    return {"lemma": d.lemma, "item": d.item, "case": d.case, "exchanged": d.exchanged}


def upper_to_doc(cert, params: dict) -> dict:
    from .engine import raw_root_angle
    from .words import bw_to_str
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "upper_bound_certificate",
        "graph": graph_to_doc(cert.graph),
        "parameters": dict(params),
        "Xi": cert.c,
        "psi": list(cert.psi),
        "signs": ["+" if s == 1 else "-" for s in cert.signs],
        "qedge": list(cert.qedge),
        "cycle_a": list(cert.cycle_a),
        "cycle_b": list(cert.cycle_b),
        "case": cert.case,
        "dispatch": _dispatch_doc(cert.dispatch),
        "lemma_indices": list(cert.lemma_indices),
        "symbols": [
            {"name": s.name, "side": s.side, "member": s.member, "root": s.root,
             "sign": s.sign, "cycle_length": s.k, "multiplicity": w, "vertex": cert.graph.vertex_labels[v]}
            for s, w, v in zip(cert.symbols, cert.weight, cert.kappa)
        ],
        "angles": [frac_str(raw_root_angle(s.k, s.root, s.sign))
                   for s, w in zip(cert.symbols, cert.weight) for _ in range(w)],
        "angle_total": frac_str(cert.angle),
        "word": bw_to_str(cert.word) if cert.word is not None else None,
        "c2_terms": [[frac_str(c), cert.graph.vertex_labels[a], cert.graph.vertex_labels[b]]
                     for c, a, b in cert.c2_terms],
        "checks": dict(cert.checks),
        "verified": bool(cert.verified),
    }
    return _seal(doc)


def index2_to_doc(g: Graph, ev) -> dict:
    """Report-only rendering of an index-2 vector (not a verifiable certificate kind)."""
    lab = g.vertex_labels
    if ev.case == "C1":
        terms = [lab[v] for v in ev.terms]
    else:
        terms = [[frac_str(c), lab[a], lab[b]] for c, a, b in ev.terms]
    return {"case": ev.case, "psi": list(ev.psi), "signs": ["+" if s == 1 else "-" for s in ev.signs],
            "degree": ev.degree, "terms": terms, "fixed": ev.fixed, "nonzero": ev.nonzero}


# verification ------------------------------------------------------------------------------

def _diff(a: Any, b: Any, path: str = "") -> str | None:
    if isinstance(a, dict) and isinstance(b, dict):
        for k in list(a) + [k for k in b if k not in a]:
            if k not in a or k not in b:
                return "%s.%s" % (path, k)
            d = _diff(a[k], b[k], "%s.%s" % (path, k))
            if d:
                return d
        return None
    if isinstance(a, list) and isinstance(b, list):
        if len(a) != len(b):
            return path + "[len]"
        for i, (x, y) in enumerate(zip(a, b)):
            d = _diff(x, y, "%s[%d]" % (path, i))
            if d:
                return d
        return None
    if type(a) is not type(b) or a != b:
        return path or "."
    return None


def recompute(doc: dict) -> dict:
    """Rebuild the certificate that `doc` claims, from its graph and parameters only."""
    from .engine import lower_bound_witness, upper_bound_certificate
    if not isinstance(doc, dict):
        raise TheoremViolation("certificate is not a mapping")
    if doc.get("format_version") != FORMAT_VERSION:
        raise TheoremViolation("unsupported or missing format_version")
    kind = doc.get("kind")
    try:
        g = graph_from_doc(doc.get("graph"))
        params = doc.get("parameters")
        if not isinstance(params, dict):
            raise InputError("parameters missing")
        if kind == "lower_bound_witness":
            p = _params(params, ("budget", "dim_cap", "explicit_limit"))
            w = lower_bound_witness(g, **p)
            return witness_to_doc(w, p)
        if kind == "upper_bound_certificate":
            p = _params(params, ("dim_cap",))
            psi = [int(x) for x in doc["psi"]]
            signs = [parse_sign(s) for s in doc["signs"]]
            cert = upper_bound_certificate(g, psi, signs, dim_cap=p["dim_cap"])
            return upper_to_doc(cert, p)
    except (InputError, KeyError, TypeError, ValueError) as exc:
        raise TheoremViolation("certificate cannot be recomputed: %s" % exc) from None
    raise TheoremViolation("unknown certificate kind %r" % kind)


def _params(params: dict, keys: tuple) -> dict:
    if set(params) != set(keys):
        raise InputError("parameters must be exactly %s" % ", ".join(keys))
    out = {}
    for k in keys:
        v = params[k]
        if type(v) is not int or v < 1:
            raise InputError("parameter %s must be a positive integer" % k)
        out[k] = v
    return out


def parse_sign(s) -> int:
    if s in ("+", "+1", 1):
        return 1
    if s in ("-", "-1", -1):
        return -1
    raise InputError("sign must be + or -, got %r" % (s,))


def verify_doc(doc: dict) -> dict:
    """Recompute and compare; raises TheoremViolation naming the first differing field."""
    if not isinstance(doc, dict):
        raise TheoremViolation("certificate is not a mapping")
    if doc.get("payload_sha256") != payload_digest(doc):
        raise TheoremViolation("payload digest mismatch")
    fresh = recompute(doc)
    where = _diff(fresh, doc)
    if where:
        raise TheoremViolation("certificate field %s does not match recomputation" % where)
    if fresh.get("verified") is not True:
        raise TheoremViolation("recomputed certificate does not verify")
    return fresh


def matrix_from_doc(rows) -> tuple:
    return mat_from_doc(rows)


__all__ = [
    "FORMAT_VERSION", "parse_edgelist", "parse_graph_doc", "parse_graph", "read_graph", "detect_format",
    "graph_to_doc", "graph_from_doc", "edgelist_text", "graph_digest", "quotient_to_doc", "quotient_to_dot",
    "dump", "load", "payload_digest", "witness_to_doc", "upper_to_doc", "index2_to_doc", "recompute",
    "verify_doc", "parse_sign", "parse_frac", "matrix_from_doc",
]
