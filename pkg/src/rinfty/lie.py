"""The graded partially commutative Lie algebra L(G, c) over the rationals.

Non-adjacent vertices commute.  Each layer is realised inside the enveloping
algebra, the trace monoid algebra in which non-adjacent letters commute and
every monomial is stored in lexicographic normal form.  The enveloping map is
injective on the Lie algebra, so the image of a Lyndon basis element of the
free Lie algebra is zero exactly when that element lies in the defining ideal.

Per weight (letter content) the Lyndon elements are visited from the largest
word down and kept when their image is independent of everything larger.
This selects exactly the non-pivot columns of the ideal row-reduced with
pivots in Lyndon order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping, Sequence

from .errors import DomainError, InputError, ResourceError
from .graph import Graph, is_connected_set
from .words import (
    bracket_words_of_weight,
    bw_length,
    divisors,
    is_leaf,
    lyndon_words,
    mobius,
    standard_bracketing,
    standard_factorization,
    witt_number,
    _sub_weights,
)

DEFAULT_DIM_CAP = 5000
FREE_WORK_FACTOR = 10


def free_layer_basis(alphabet_size: int, i: int) -> list:
    """Lyndon words of length i paired with their standard bracketing."""
    if i < 1:
        raise InputError("degree must be positive")
    return [(w, standard_bracketing(w)) for w in lyndon_words(alphabet_size, i)]


def content(word: Sequence[int], n: int) -> tuple:
    c = [0] * n
    for a in word:
        c[a] += 1
    return tuple(c)


@dataclass(frozen=True)
class LieElement:
    degree: int
    coeffs: Mapping  # basis index -> Fraction, zero entries removed

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "LieElement") -> "LieElement":
        if other.degree != self.degree:
            raise DomainError("cannot add elements of degrees %d and %d" % (self.degree, other.degree))
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return LieElement(self.degree, out)

    def scale(self, t) -> "LieElement":
        t = Fraction(t)
        if t == 0:
            return LieElement(self.degree, {})
        return LieElement(self.degree, {k: v * t for k, v in self.coeffs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def dense(self, dim: int) -> list:
        out = [Fraction(0)] * dim
        for k, v in self.coeffs.items():
            out[k] = v
        return out


def _addto(acc: dict, key, val) -> None:
    s = acc.get(key, 0) + val
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class _Block:
    """Echelon data for one weight component: rows keyed by their least word."""

    def __init__(self):
        self.rows = {}      # pivot word -> (vector, combination over kept Lyndon words)
        self.kept = []      # kept Lyndon words, discovery order (descending)

    def reduce(self, vec: dict):
        vec = dict(vec)
        combo = {}
        while vec:
            k = min(vec)
            row = self.rows.get(k)
            if row is None:
                break
            rv, rc = row
            f = Fraction(vec[k]) / rv[k]
            for key, val in rv.items():
                _addto(vec, key, -f * val)
            for key, val in rc.items():
                _addto(combo, key, f * val)
        return vec, combo


@dataclass
class _Layer:
    degree: int
    basis: list                 # kept Lyndon words, ascending
    index: dict                 # word -> position in basis
    weights: list               # content tuple per basis element
    blocks: dict                # content -> _Block
    expansion: dict = field(default_factory=dict)   # every Lyndon word -> coordinate dict

    @property
    def dim(self) -> int:
        return len(self.basis)


class GradedPcLie:
    """Truncation L(G, c) with exact rational bases, weights and brackets.

    Layers are materialised on first use.  ``eager=True`` builds every layer up
    to the class bound at construction; otherwise a layer whose free Lie
    dimension exceeds the cap raises a resource error only when requested.
    """

    def __init__(self, graph: Graph, class_bound: int, dim_cap: int = DEFAULT_DIM_CAP, eager: bool = True):
        if class_bound < 2:
            raise DomainError("class bound must be at least 2, got %d" % class_bound)
        self.graph = graph
        self.class_bound = class_bound
        self.dim_cap = dim_cap
        n = graph.vertex_count
        self.n = n
        self._blocked = [frozenset(graph.neighbors(a) | {a}) for a in range(n)]
        self._nf_memo = {}
        self._img_memo = {}
        self._layers = {}
        self._sc = {}
        self._series = None
        if eager:
            for i in range(1, class_bound + 1):
                self.layer(i)

    # enveloping algebra -------------------------------------------------
    def normal_form(self, word: tuple) -> tuple:
        r = self._nf_memo.get(word)
        if r is not None:
            return r
        w = list(word)
        out = []
        blocked = self._blocked
        while w:
            best, best_i = None, -1
            earlier = set()
            for idx, a in enumerate(w):
                if blocked[a].isdisjoint(earlier) and (best is None or a < best):
                    best, best_i = a, idx
                earlier.add(a)
            out.append(best)
            del w[best_i]
        r = tuple(out)
        self._nf_memo[word] = r
        return r

    def _mul(self, x: dict, y: dict) -> dict:
        out = {}
        nf = self.normal_form
        for a, ca in x.items():
            for b, cb in y.items():
                _addto(out, nf(a + b), ca * cb)
        return out

    def _commutator(self, x: dict, y: dict) -> dict:
        out = self._mul(x, y)
        for k, v in self._mul(y, x).items():
            _addto(out, k, -v)
        return out

    def lyndon_image(self, w: tuple) -> dict:
        """Image of the standard-bracketed Lyndon element in the enveloping algebra."""
        r = self._img_memo.get(w)
        if r is not None:
            return r
        if len(w) == 1:
            r = {w: 1}
        else:
            u, v = standard_factorization(w)
            r = self._commutator(self.lyndon_image(u), self.lyndon_image(v))
        self._img_memo[w] = r
        return r

    def image(self, x: LieElement) -> dict:
        lay = self.layer(x.degree)
        out = {}
        for k, c in x.coeffs.items():
            for word, v in self.lyndon_image(lay.basis[k]).items():
                _addto(out, word, c * v)
        return out

    # layers ---------------------------------------------------------------
    def free_dim(self, i: int) -> int:
        return witt_number(self.n, i)

    def expected_dim(self, i: int) -> int:
        """dim L_i from the clique series, available without building the layer."""
        if self._series is None or len(self._series) < i:
            self._series = series_dims(self.graph, max(i, self.class_bound))
        return self._series[i - 1]

    def layer(self, i: int) -> _Layer:
        lay = self._layers.get(i)
        if lay is not None:
            return lay
        if not 1 <= i <= self.class_bound:
            raise DomainError("degree %d outside 1..%d" % (i, self.class_bound))
        if self.expected_dim(i) > self.dim_cap:
            raise ResourceError("degree %d: dimension %d exceeds cap %d"
                                % (i, self.expected_dim(i), self.dim_cap))
        if self.free_dim(i) > FREE_WORK_FACTOR * self.dim_cap:
            raise ResourceError("degree %d: %d Lyndon words exceed the work limit %d"
                                % (i, self.free_dim(i), FREE_WORK_FACTOR * self.dim_cap))
        words = lyndon_words(self.n, i)
        by_weight = {}
        for w in words:
            by_weight.setdefault(content(w, self.n), []).append(w)
        blocks = {}
        local_exp = {}
        for wt, ws in by_weight.items():
            blk = _Block()
            for w in reversed(ws):
                rem, combo = blk.reduce(self.lyndon_image(w))
                if rem:
                    piv = min(rem)
                    combo = {k: -v for k, v in combo.items()}
                    combo[w] = Fraction(1)
                    blk.rows[piv] = (rem, combo)
                    blk.kept.append(w)
                    local_exp[w] = {w: Fraction(1)}
                else:
                    local_exp[w] = combo
            blocks[wt] = blk
        basis = sorted(w for blk in blocks.values() for w in blk.kept)
        index = {w: k for k, w in enumerate(basis)}
        lay = _Layer(i, basis, index, [content(w, self.n) for w in basis], blocks)
        lay.expansion = {w: {index[u]: c for u, c in ex.items()} for w, ex in local_exp.items()}
        self._layers[i] = lay
        return lay

    def dim(self, i: int) -> int:
        return self.layer(i).dim

    def dims(self) -> list:
        return [self.dim(i) for i in range(1, self.class_bound + 1)]

    def basis_weight(self, i: int, k: int) -> tuple:
        return self.layer(i).weights[k]

    def coords(self, u: dict, i: int) -> LieElement:
        """Coordinates of an enveloping-algebra element known to lie in layer i."""
        lay = self.layer(i)
        parts = {}
        for word, c in u.items():
            if c:
                parts.setdefault(content(word, self.n), {})[word] = Fraction(c)
        out = {}
        for wt, vec in parts.items():
            blk = lay.blocks.get(wt)
            if blk is None:
                raise DomainError("element is not in the Lie subalgebra (weight %r)" % (wt,))
            rem, combo = blk.reduce(vec)
            if rem:
                raise DomainError("element is not in the Lie subalgebra")
            for w, c in combo.items():
                _addto(out, lay.index[w], c)
        return LieElement(i, out)

    # elements -------------------------------------------------------------
    def generator(self, v: int) -> LieElement:
        if not 0 <= v < self.n:
            raise InputError("vertex %r out of range" % (v,))
        return LieElement(1, {self.layer(1).index[(v,)]: Fraction(1)})

    def degree_one(self, coeffs: Mapping) -> LieElement:
        """Linear combination of vertices, given as vertex -> coefficient."""
        out = LieElement(1, {})
        for v, c in coeffs.items():
            out = out + self.generator(v).scale(c)
        return out

    def zero(self, i: int) -> LieElement:
        return LieElement(i, {})

    def lyndon_element(self, w: tuple) -> LieElement:
        lay = self.layer(len(w))
        return LieElement(len(w), dict(lay.expansion[tuple(w)]))

    def bracket_basis(self, p: int, s: int, q: int, t: int) -> dict:
        """Structure constants: [b_s, b_t] for basis elements of degrees p and q."""
        key = (p, s, q, t)
        r = self._sc.get(key)
        if r is not None:
            return r
        if p + q > self.class_bound:
            raise DomainError("bracket degree %d exceeds class bound %d" % (p + q, self.class_bound))
        x = self.lyndon_image(self.layer(p).basis[s])
        y = self.lyndon_image(self.layer(q).basis[t])
        r = dict(self.coords(self._commutator(x, y), p + q).coeffs)
        self._sc[key] = r
        return r

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        p, q = x.degree, y.degree
        if p + q > self.class_bound:
            raise DomainError("bracket degree %d exceeds class bound %d" % (p + q, self.class_bound))
        out = {}
        for s, a in x.coeffs.items():
            for t, b in y.coeffs.items():
                ab = a * b
                for k, v in self.bracket_basis(p, s, q, t).items():
                    _addto(out, k, ab * v)
        return LieElement(p + q, out)

    def structure_constants(self) -> dict:
        """Every basis bracket [b_s, b_t] with s-degree <= t-degree, as nested dicts."""
        out = {}
        c = self.class_bound
        for p in range(1, c):
            for q in range(p, c - p + 1):
                for s in range(self.dim(p)):
                    for t in range(self.dim(q)):
                        r = self.bracket_basis(p, s, q, t)
                        if r:
                            out[(p, s, q, t)] = r
        return out

    # bracket words ----------------------------------------------------------
    def evaluate(self, b, leaf_values: Mapping | None = None) -> LieElement:
        """Image of a bracket word; leaves are vertices or keys of leaf_values."""
        if bw_length(b) > self.class_bound:
            raise DomainError("bracket word of length %d exceeds class bound %d"
                              % (bw_length(b), self.class_bound))
        return self._eval(b, leaf_values, {})

    def _eval(self, b, leaf_values, memo):
        key = b
        r = memo.get(key)
        if r is not None:
            return r
        if is_leaf(b):
            if leaf_values is not None and b in leaf_values:
                r = leaf_values[b]
                if not isinstance(r, LieElement) or r.degree != 1:
                    raise InputError("leaf value for %r must be a degree-1 element" % (b,))
            else:
                r = self.generator(b)
        else:
            left = self._eval(b[0], leaf_values, memo)
            right = self._eval(b[1], leaf_values, memo)
            if left.is_zero() or right.is_zero():
                r = self.zero(left.degree + right.degree)
            else:
                r = self.bracket(left, right)
        memo[key] = r
        return r

    def weight_component_dim(self, e: Sequence[int]) -> int:
        e = tuple(e)
        d = sum(e)
        if d < 1 or d > self.class_bound:
            return 0
        blk = self.layer(d).blocks.get(e)
        return len(blk.kept) if blk else 0

    # export ---------------------------------------------------------------
    def to_doc(self, with_structure: bool = True) -> dict:
        doc = {
            "format_version": 1,
            "vertex_count": self.n,
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "class_bound": self.class_bound,
            "dims": self.dims(),
            "layers": [],
        }
        for i in range(1, self.class_bound + 1):
            lay = self.layer(i)
            doc["layers"].append({
                "degree": i,
                "basis": ["".join(chr(97 + a) if self.n <= 26 else "%d." % a for a in w) for w in lay.basis],
                "weights": [list(w) for w in lay.weights],
            })
        if with_structure:
            doc["structure_constants"] = [
                {"left": [p, s], "right": [q, t],
                 "value": {str(k): _frac_str(v) for k, v in sorted(r.items())}}
                for (p, s, q, t), r in sorted(self.structure_constants().items())
            ]
        return doc


def _frac_str(x: Fraction) -> str:
    x = Fraction(x)
    return "%d/%d" % (x.numerator, x.denominator)


def build_pc_lie(g: Graph, c: int, dim_cap: int = DEFAULT_DIM_CAP, eager: bool = True) -> GradedPcLie:
    return GradedPcLie(g, c, dim_cap=dim_cap, eager=eager)


def evaluate_bracket_word(L: GradedPcLie, b, leaf_values: Mapping | None = None) -> LieElement:
    return L.evaluate(b, leaf_values)


# weight multiplicities from the clique series ---------------------------------

def independent_sets(g: Graph) -> list:
    """Vertex sets that are pairwise non-adjacent (these pairwise commute)."""
    out = [()]
    for v in range(g.vertex_count):
        out += [s + (v,) for s in out if all(not g.adjacent(u, v) for u in s)]
    return out


def independent_set_counts(g: Graph) -> list:
    counts = [0] * (g.vertex_count + 1)
    for s in independent_sets(g):
        counts[len(s)] += 1
    return counts


def _series_log_coeffs(g: Graph, box: tuple) -> dict:
    """Coefficients of -log(sum over independent sets K of (-1)^|K| x^K) inside a box."""
    n = g.vertex_count
    q = {}   # 1 - P restricted to the box, P the signed independent-set polynomial
    for s in independent_sets(g):
        if not s:
            continue
        mon = [0] * n
        for v in s:
            mon[v] = 1
        mon = tuple(mon)
        if all(m <= b for m, b in zip(mon, box)):
            q[mon] = q.get(mon, 0) - (-1) ** len(s)
    total = sum(box)
    out = {}
    power = {tuple([0] * n): Fraction(1)}
    for r in range(1, total + 1):
        nxt = {}
        for m1, c1 in power.items():
            for m2, c2 in q.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if all(a <= b for a, b in zip(m, box)):
                    nxt[m] = nxt.get(m, 0) + c1 * c2
        power = nxt
        if not power:
            break
        for m, cval in power.items():
            out[m] = out.get(m, 0) + cval / r
    return out


def weight_multiplicity(g: Graph, e: Sequence[int], _logs: dict | None = None) -> int:
    """Dimension of the weight-e component, by Moebius inversion of the clique series."""
    e = tuple(e)
    d = sum(e)
    if d == 0:
        return 0
    logs = _logs if _logs is not None else _series_log_coeffs(g, e)
    from math import gcd
    gg = 0
    for x in e:
        gg = gcd(gg, x)
    acc = Fraction(0)
    for k in divisors(gg):
        sub = tuple(x // k for x in e)
        acc += mobius(k) * (d // k) * logs.get(sub, 0)
    m = acc / d
    if m.denominator != 1:
        raise AssertionError("non-integral weight multiplicity %s" % m)
    return int(m)


def weight_multiplicities(g: Graph, box: Sequence[int]) -> dict:
    """All weight multiplicities for weights dominated by box."""
    box = tuple(box)
    logs = _series_log_coeffs(g, box)
    out = {}
    for e in iproduct(*[range(b + 1) for b in box]):
        if sum(e):
            m = weight_multiplicity(g, e, logs)
            if m:
                out[e] = m
    return out


def series_dims(g: Graph, c: int) -> list:
    """dim L_i for i = 1..c from the one-variable clique series."""
    counts = independent_set_counts(g)
    poly = [(-1) ** k * counts[k] if k < len(counts) else 0 for k in range(c + 1)]
    # log of 1/poly via the recurrence for power-series logarithms
    a = [Fraction(0)] * (c + 1)     # coefficients of -log(poly)
    for m in range(1, c + 1):
        s = Fraction(-m * poly[m])
        for j in range(1, m):
            s -= poly[m - j] * a[j] * j
        a[m] = s / m
    dims = [0] * (c + 1)
    for m in range(1, c + 1):
        dims[m] = (a[m] * m - sum(dims[i] * i for i in divisors(m) if i < m)) / m
    out = []
    for m in range(1, c + 1):
        if dims[m].denominator != 1:
            raise AssertionError("non-integral dimension")
        out.append(int(dims[m]))
    return out


# bracket-word search ------------------------------------------------------------

def _weight_key(e: Mapping) -> tuple:
    return tuple(sorted((k, v) for k, v in e.items() if v > 0))


class _WordSearch:
    """Per weight, a list of bracket words whose values span that weight component.

    Spanning words are generated by bracketing spanning words of complementary
    sub-weights, visiting splits in the canonical order of the full enumeration.
    """

    def __init__(self, L: GradedPcLie, leaf_values: Mapping | None = None):
        self.L = L
        self.leaf_values = leaf_values
        self.memo = {}

    def value(self, sym):
        if self.leaf_values is not None:
            return self.leaf_values[sym]
        return self.L.generator(sym)

    def spanning(self, items: tuple) -> list:
        r = self.memo.get(items)
        if r is not None:
            return r
        total = sum(c for _, c in items)
        if total == 1:
            val = self.value(items[0][0])
            r = [] if val.is_zero() else [(items[0][0], val)]
            self.memo[items] = r
            return r
        full = dict(items)
        subs = [s for s in _sub_weights(items) if 0 < sum(c for _, c in s) < total]
        subs.sort(key=lambda s: (sum(c for _, c in s), s))
        rows = {}
        r = []
        for right in subs:
            rd = dict(right)
            left = tuple((k, full[k] - rd.get(k, 0)) for k, _ in items if full[k] - rd.get(k, 0) > 0)
            for lw, lv in self.spanning(left):
                for rw, rv in self.spanning(right):
                    val = self.L.bracket(lv, rv)
                    if val.is_zero():
                        continue
                    vec = dict(val.coeffs)
                    while vec:
                        k = min(vec)
                        if k not in rows:
                            break
                        row = rows[k]
                        f = Fraction(vec[k]) / row[k]
                        for key, x in row.items():
                            _addto(vec, key, -f * x)
                    if vec:
                        rows[min(vec)] = vec
                        r.append(((lw, rw), val))
        self.memo[items] = r
        return r


def layer_fits(L: GradedPcLie, i: int) -> bool:
    """Whether layer i can be built under the dimension and work guards."""
    return L.expected_dim(i) <= L.dim_cap and L.free_dim(i) <= FREE_WORK_FACTOR * L.dim_cap


def envelope_value(L: GradedPcLie, b, leaf_values: Mapping | None = None, memo: dict | None = None) -> dict:
    """Image of a bracket word in the enveloping algebra, without building any layer above 1.

    A value of degree at most the class bound is zero iff this image is zero.
    """
    if bw_length(b) > L.class_bound:
        raise DomainError("bracket word of length %d exceeds class bound %d" % (bw_length(b), L.class_bound))
    memo = {} if memo is None else memo
    return _envelope(L, b, leaf_values, memo)


def _envelope(L, b, leaf_values, memo):
    r = memo.get(b)
    if r is not None:
        return r
    if is_leaf(b):
        if leaf_values is not None and b in leaf_values:
            x = leaf_values[b]
            if not isinstance(x, LieElement) or x.degree != 1:
                raise InputError("leaf value for %r must be a degree-1 element" % (b,))
            r = {k: Fraction(v) for k, v in L.image(x).items()}
        else:
            r = {(b,): Fraction(1)}
    else:
        left = _envelope(L, b[0], leaf_values, memo)
        right = _envelope(L, b[1], leaf_values, memo)
        r = L._commutator(left, right) if left and right else {}
    memo[b] = r
    return r


def find_nonzero_bracket_word(L: GradedPcLie, e: Mapping):
    """A bracket word of weight e (vertex -> multiplicity) with nonzero value, or None.

    When the layer fits, spanning words are grown weight by weight.  Otherwise
    bracket words are enumerated in canonical order and evaluated in the
    enveloping algebra with shared sub-word images; the first nonzero one wins.
    """
    items = _weight_key(e)
    if not items:
        raise InputError("empty weight")
    d = sum(c for _, c in items)
    if d > L.class_bound:
        raise DomainError("weight degree exceeds class bound")
    if layer_fits(L, d):
        found = _WordSearch(L).spanning(items)
        return found[0][0] if found else None
    memo = {}
    for b in bracket_words_of_weight(dict(items)):
        if _envelope(L, b, None, memo):
            return b
    return None


def bracket_word_is_nonzero(L: GradedPcLie, b, leaf_values: Mapping | None = None) -> bool:
    d = bw_length(b)
    if layer_fits(L, d):
        return not L.evaluate(b, leaf_values).is_zero()
    return bool(envelope_value(L, b, leaf_values))


def find_nonzero_bracket_word_general(L: GradedPcLie, W: Sequence[LieElement], kappa: Sequence[int],
                                      e: Sequence[int]):
    """Bracket word over indices of W with weight e and nonzero value.

    kappa[j] is the vertex of A attached to W[j]; A is the image of kappa.  The
    word is found on A for the pushed-forward weight and each leaf is then
    replaced by an element of its kappa-fibre, respecting the multiplicities e.
    """
    g = L.graph
    if len(kappa) != len(W) or len(e) != len(W):
        raise InputError("W, kappa and e must have equal length")
    A = sorted(set(kappa))
    if len(A) < 2:
        raise DomainError("A must have at least two vertices")
    if not is_connected_set(g, A):
        raise DomainError("A is not connected")
    if any(x <= 0 for x in e):
        raise DomainError("supp(e) must equal W")
    Aset = set(A)
    for j, w in enumerate(W):
        if w.degree != 1:
            raise InputError("W[%d] is not of degree 1" % j)
        vec = w.dense(L.n)
        if vec[kappa[j]] == 0:
            raise DomainError("W[%d] has zero coordinate at kappa(W[%d])" % (j, j))
        for v in range(L.n):
            if vec[v] and v != kappa[j] and v in Aset:
                raise DomainError("W[%d] is not in the span of kappa(W[%d]) and V minus A" % (j, j))
    if sum(e) > L.class_bound:
        raise DomainError("weight degree exceeds class bound")
    pushed = {}
    for j, k in enumerate(kappa):
        pushed[k] = pushed.get(k, 0) + e[j]
    base = find_nonzero_bracket_word(L, pushed)
    if base is None:
        raise AssertionError("no nonzero bracket word on a connected support")
    queues = {}
    for j in range(len(W)):
        queues.setdefault(kappa[j], []).extend([j] * e[j])
    pos = {k: 0 for k in queues}

    def lift(b):
        if is_leaf(b):
            j = queues[b][pos[b]]
            pos[b] += 1
            return j
        left = lift(b[0])
        return (left, lift(b[1]))

    word = lift(base)
    if not bracket_word_is_nonzero(L, word, {j: W[j] for j in range(len(W))}):
        raise AssertionError("lifted bracket word evaluates to zero")
    return word
