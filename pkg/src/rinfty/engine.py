"""Certificates for the bounds on the R-infinity nilpotency index.

Lower bounds come from block companion matrices of Pisot-unit polynomials
whose induced layer maps have no eigenvalue one.  Upper bounds come from root
of unity bookkeeping (exact angle arithmetic) plus a nonzero bracket word in
eigenvector symbols.  Transposition-free graphs get an explicit index-2
eigenvector.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product as iproduct
from math import comb, gcd
from typing import Sequence

from .errors import DomainError, InputError, ResourceError, TheoremViolation
from .graded_aut import (
    LayerMaps,
    block_diagonal,
    cycle_product,
    has_eigenvalue_one_upto,
    DEFAULT_EXPLICIT_LIMIT,
)
from .graph import (
    Graph,
    Xi,
    cycles_of,
    edge_cost_upper,
    is_automorphism,
    is_quotient_automorphism,
    is_transposition_free,
    open_neighborhood,
    quotient_graph,
    xi,
)
from .lie import (
    DEFAULT_DIM_CAP,
    GradedPcLie,
    LieElement,
    bracket_word_is_nonzero,
    find_nonzero_bracket_word_general,
)
from .linalg import det, identity, mat_sub
from .polynomials import (
    companion_matrix,
    pisot_family_poly as _pisot_family_poly,
    power_root_poly,
    root_product_norm,
    verify_family_poly,
)
from .spectral import _class_combos
from .words import bw_leaves, bw_map, is_leaf


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# angles ------------------------------------------------------------------------------------

@dataclass(frozen=True)
class AngleRat:
    """The unimodular number exp(i pi q), with q kept in [0, 2)."""
    q: Fraction

    def __post_init__(self):
        q = Fraction(self.q)
        object.__setattr__(self, "q", q - 2 * (q // 2))

    def __add__(self, other: "AngleRat") -> "AngleRat":
        return AngleRat(self.q + other.q)

    def is_one(self) -> bool:
        return self.q == 0

    def __str__(self):
        return "%d/%d" % (self.q.numerator, self.q.denominator)


def raw_root_angle(k: int, t: int, sign: int) -> Fraction:
    """Angle (in units of pi, unreduced) of the t-th k-th root of sign."""
    if k < 1 or not 1 <= t <= k:
        raise InputError("root index %d outside 1..%d" % (t, k))
    if sign not in (1, -1):
        raise InputError("sign must be +1 or -1")
    return Fraction((0 if sign == 1 else 1) + 2 * (t - 1), k)


def root_angle(k: int, t: int, sign: int) -> AngleRat:
    return AngleRat(raw_root_angle(k, t, sign))


def angle_total(roots: Sequence[tuple]) -> Fraction:
    """Sum of the unreduced angles of roots given as (k, t, sign)."""
    return sum((raw_root_angle(k, t, s) for k, t, s in roots), Fraction(0))


def is_even_integer(x: Fraction) -> bool:
    return x.denominator == 1 and x.numerator % 2 == 0


# root index lemmas -------------------------------------------------------------------------

@dataclass(frozen=True)
class RootIndices:
    lemma: str          # "same_sign" or "diff_sign"
    item: str           # "i", "ii" or "iii"
    indices: tuple      # (s, t) or (s, r, t)
    roots: tuple        # (k, index, sign) per factor

    @property
    def angle(self) -> Fraction:
        return angle_total(self.roots)


def _bezout(a: int, b: int) -> tuple:
    u = pow(a, -1, b) if b > 1 else 0
    return u, (1 - u * a) // b


def _solve_indices(k: int, l: int, h: int) -> tuple:
    """s in 1..k, t in 1..l with (s-1) M/k + (t-1) M/l = h mod M."""
    M = lcm(k, l)
    u, v = _bezout(M // k, M // l)
    return (h * u) % k + 1, (h * v) % l + 1


def _checked(res: RootIndices) -> RootIndices:
    if not is_even_integer(res.angle):
        raise TheoremViolation("root indices %r do not multiply to one (angle %s)" % (res.indices, res.angle))
    return res


def root_index_same_sign(k: int, l: int, signs: tuple = (1, 1), item: str | None = None) -> RootIndices:
    """Roots of equal signs whose product is one: a k-th root times an l-th root, or two k-th and one l-th."""
    if k < 1 or l < 1:
        raise InputError("k and l must be positive")
    e1, e2 = signs
    if e1 != e2:
        raise DomainError("signs differ; use root_index_diff_sign")
    M = lcm(k, l)
    a, b = M // k, M // l
    if e1 == 1:
        if item not in (None, "i"):
            raise DomainError("items ii and iii need both signs -1")
        return _checked(RootIndices("same_sign", "i", (1, 1), ((k, 1, 1), (l, 1, 1))))
    if item == "i":
        raise DomainError("item i needs both signs +1")
    if item is None:
        if (a + b) % 2 == 0:
            item = "ii"
        elif a % 2 == 1 and b % 2 == 0:
            item = "iii"
        else:
            raise DomainError("M/k is even and M/l is odd: exchange k and l")
    if item == "ii":
        if (a + b) % 2:
            raise DomainError("M(1/k + 1/l) = %d is odd" % (a + b))
        s, t = _solve_indices(k, l, -(a + b) // 2)
        return _checked(RootIndices("same_sign", "ii", (s, t), ((k, s, -1), (l, t, -1))))
    if item == "iii":
        if a % 2 == 0:
            raise DomainError("M/k = %d is even" % a)
        if b % 2 == 1:
            raise DomainError("M/l = %d is odd" % b)
        r = 1
        s, t = _solve_indices(k, l, -a - b // 2)
        return _checked(RootIndices("same_sign", "iii", (s, r, t), ((k, s, -1), (k, r, -1), (l, t, -1))))
    raise InputError("unknown item %r" % item)


def root_index_diff_sign(k: int, l: int, item: str | None = None) -> RootIndices:
    """k-th roots of -1 and l-th roots of +1 multiplying to one."""
    if k < 1 or l < 1:
        raise InputError("k and l must be positive")
    M = lcm(k, l)
    a = M // k
    if item is None:
        item = "i" if a % 2 == 0 else "ii"
    if item == "i":
        if a % 2:
            raise DomainError("M/k = %d is odd" % a)
        s, t = _solve_indices(k, l, -a // 2)
        return _checked(RootIndices("diff_sign", "i", (s, t), ((k, s, -1), (l, t, 1))))
    if item == "ii":
        if a % 2 == 0:
            raise DomainError("M/k = %d is even" % a)
        r = 1
        s, t = _solve_indices(k, l, -a)
        return _checked(RootIndices("diff_sign", "ii", (s, r, t), ((k, s, -1), (k, r, -1), (l, t, 1))))
    raise InputError("unknown item %r" % item)


def distribute_root_indices(k: int, s: int, factor_signs: Sequence[int]) -> list:
    """Indices s_1..s_n with sum of angles of R_{k s_i}(sign_i) equal to that of R_{k s}(product of signs).

    All but the last index are 1; the last one runs through 1..k, which reaches
    every k-th root of the product.
    """
    if not 1 <= s <= k:
        raise InputError("s outside 1..k")
    if not factor_signs:
        raise InputError("need at least one factor")
    eps = 1
    for x in factor_signs:
        eps *= x
    target = root_angle(k, s, eps)
    head = [1] * (len(factor_signs) - 1)
    base = sum((root_angle(k, 1, x) for x in factor_signs[:-1]), AngleRat(Fraction(0)))
    for last in range(1, k + 1):
        if base + root_angle(k, last, factor_signs[-1]) == target:
            return head + [last]
    raise TheoremViolation("no distribution of root index %d over %r" % (s, list(factor_signs)))


@dataclass(frozen=True)
class Dispatch:
    lemma: str
    item: str
    case: str           # "P1", "P2" or "P3"
    exchanged: bool     # lemma applied with the roles of (k, alpha) and (l, beta) exchanged


def table_dispatch_parities(odd_k: bool, odd_l: bool, sign_alpha: int, sign_beta: int) -> Dispatch:
    """Which root lemma produces the eigenvalue one, from the parities of M/k, M/l and the two signs."""
    if sign_alpha == 1 and sign_beta == 1:
        return Dispatch("same_sign", "i", "P1", False)
    if sign_alpha == -1 and sign_beta == -1:
        if odd_k == odd_l:
            return Dispatch("same_sign", "ii", "P1", False)
        if odd_k:
            return Dispatch("same_sign", "iii", "P2", False)
        return Dispatch("same_sign", "iii", "P3", True)
    if sign_alpha == -1:
        return Dispatch("diff_sign", "ii" if odd_k else "i", "P2" if odd_k else "P1", False)
    return Dispatch("diff_sign", "ii" if odd_l else "i", "P3" if odd_l else "P1", True)


def table_dispatch(k: int, l: int, sign_alpha: int, sign_beta: int) -> Dispatch:
    M = lcm(k, l)
    return table_dispatch_parities((M // k) % 2 == 1, (M // l) % 2 == 1, sign_alpha, sign_beta)


def dispatch_indices(k: int, l: int, sign_alpha: int, sign_beta: int) -> tuple:
    """(dispatch, alpha-side root indices, beta-side root indices) for distinct cycles."""
    d = table_dispatch(k, l, sign_alpha, sign_beta)
    if d.lemma == "same_sign":
        res = root_index_same_sign(l, k, (sign_beta, sign_alpha), d.item) if d.exchanged \
            else root_index_same_sign(k, l, (sign_alpha, sign_beta), d.item)
    else:
        res = root_index_diff_sign(l, k, d.item) if d.exchanged else root_index_diff_sign(k, l, d.item)
    idx = res.indices
    if len(idx) == 2:
        first, second = [idx[0]], [idx[1]]
    else:
        first, second = [idx[0], idx[1]], [idx[2]]
    if d.exchanged:
        first, second = second, first
    return d, res, first, second


# bounds ------------------------------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    xi: int
    Xi: int
    transposition_free: bool

    @property
    def pinned_index(self) -> int | None:
        return 2 if self.transposition_free else None

    def statement(self) -> str:
        if self.pinned_index is not None:
            return "R-infinity nilpotency index = 2 (transposition-free)"
        if self.xi == self.Xi:
            return "R-infinity nilpotency index = %d" % self.xi
        return "R-infinity nilpotency index in [%d, %d]" % (self.xi, self.Xi)


def bounds(g: Graph) -> Bounds:
    return Bounds(xi(g), Xi(g), is_transposition_free(g))


def pisot_family_poly(d: int) -> list:
    p = _pisot_family_poly(d)
    if not verify_family_poly(p):
        raise AssertionError("family polynomial of degree %d failed verification" % d)
    return p


# lower bound -------------------------------------------------------------------------------

DEFAULT_BUDGET = 10 ** 5
MAX_EXPONENT_TRIES = 64


def exponent_vector_count(sizes: Sequence[int], c: int) -> int:
    """Nonzero vectors in N^(sum sizes) with entry sum at most c."""
    return comb(c + sum(sizes), sum(sizes)) - 1


def _odd_vectors(n: int):
    top = 1
    while True:
        for v in iproduct(range(1, top + 1, 2), repeat=n):
            if max(v) == top:
                yield v
        top += 2


def unit_product_free(polys: Sequence, sizes: Sequence[int], c: int) -> bool:
    """Whether no unbalanced exponent vector of total degree <= c multiplies the roots to one.

    Vectors are grouped by their per-class exponent multisets; each group is
    decided by a norm over the splitting algebras, which vanishes iff some
    labelling of the roots gives product one.
    """
    for total in range(1, c + 1):
        for combo in _class_combos(sizes, total):
            if all(len(set(part)) <= 1 for part in combo):
                continue
            norm, _ = root_product_norm(polys, combo)
            if norm == 0:
                return False
    return True


def make_exponent_safe(polys: Sequence, c: int, budget: int = DEFAULT_BUDGET) -> tuple:
    """(polys', odd exponents m): roots replaced by their m-th powers so that unbalanced
    exponent vectors of total degree <= c never multiply the roots to one."""
    sizes = [len(p) - 1 for p in polys]
    count = exponent_vector_count(sizes, c)
    if count > budget:
        raise ResourceError("exponent check needs %d vectors, budget %d" % (count, budget))
    for tries, ms in enumerate(_odd_vectors(len(polys))):
        if tries >= MAX_EXPONENT_TRIES:
            break
        cand = [list(p) if m == 1 else power_root_poly(p, m) for p, m in zip(polys, ms)]
        if unit_product_free(cand, sizes, c):
            return cand, tuple(ms)
    raise ResourceError("no safe odd exponents among the first %d candidates" % MAX_EXPONENT_TRIES)


def companion_block_matrix(g: Graph, polys: Sequence) -> tuple:
    q = quotient_graph(g)
    return block_diagonal(q, {lam: companion_matrix(p) for lam, p in enumerate(polys)})


@dataclass
class LowerBoundWitness:
    graph: Graph
    xi: int
    c: int
    base_polys: list
    exponents: tuple
    polys: list
    matrix: tuple
    checks: list                 # LayerCheck per degree; degree-1 check only in the abelian case
    abelian: bool = False
    exponent_check: str = "verified"   # or "skipped (budget)"

    @property
    def verified(self) -> bool:
        return all(not ch.vanishes for ch in self.checks) and len(self.checks) == self.c


def lower_bound_witness(g: Graph, budget: int = DEFAULT_BUDGET, dim_cap: int = DEFAULT_DIM_CAP,
                        explicit_limit: int = DEFAULT_EXPLICIT_LIMIT) -> LowerBoundWitness:
    """An automorphism of the class c = xi - 1 quotient whose layer maps avoid eigenvalue one."""
    from .graded_aut import LayerCheck
    if not g.edges:
        raise DomainError("xi undefined for empty graph")
    q = quotient_graph(g)
    x = xi(g)
    c = x - 1
    base = [pisot_family_poly(size) for size in q.sizes]
    status = "verified"
    try:
        polys, ms = make_exponent_safe(base, c, budget)
    except ResourceError:
        polys, ms = [list(p) for p in base], tuple(1 for _ in base)
        status = "skipped (budget)"
    B = companion_block_matrix(g, polys)
    if c == 1:
        d = det(mat_sub(B, identity(g.vertex_count)))
        checks = [LayerCheck(1, g.vertex_count, "explicit", d)]
        abelian = True
    else:
        L = GradedPcLie(g, c, dim_cap=dim_cap, eager=False)
        _, checks = has_eigenvalue_one_upto(L, B, c, explicit_limit=explicit_limit)
        abelian = False
    w = LowerBoundWitness(g, x, c, base, ms, polys, B, checks, abelian, status)
    if not w.verified:
        bad = [ch.degree for ch in checks if ch.vanishes]
        raise TheoremViolation("lower-bound matrix has eigenvalue one at degree(s) %r" % bad)
    return w


# upper bound -------------------------------------------------------------------------------

PLACEHOLDER_SETS = 3


@dataclass(frozen=True)
class Symbol:
    """Eigenvector symbol: member `member` of the classes of cycle side `side`, root index `root`."""
    side: str           # "a" (cycle through lambda) or "b" (cycle through mu)
    member: int         # 1-based position inside the class
    root: int           # 1-based root index
    sign: int           # sign whose k-th root is taken
    k: int              # cycle length

    @property
    def name(self) -> str:
        return "%s%d_%d" % (self.side, self.member, self.root)


@dataclass
class UpperBoundCertificate:
    graph: Graph
    c: int
    qedge: tuple                 # (lambda, mu); equal for a loop
    psi: tuple
    signs: tuple                 # per cycle of psi, in cycles_of order
    cycle_a: tuple               # cycle through lambda, rotated to start at lambda
    cycle_b: tuple               # cycle through mu, rotated to start at mu
    case: str                    # P1, P2, P3, diagonal, C1, C2
    dispatch: Dispatch | None
    lemma_indices: tuple
    symbols: tuple               # Symbol per element of W
    weight: tuple                # multiplicity per symbol
    kappa: tuple                 # vertex per symbol
    word: object                 # bracket word over symbol names, or a C2 sum
    angle: Fraction              # unreduced angle sum, an even integer when valid
    c2_terms: tuple = ()         # (coefficient, vertex, vertex) terms of the C2 sum
    checks: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(self.checks.values())


def _rotate(cycle: Sequence[int], start: int) -> tuple:
    i = list(cycle).index(start)
    return tuple(cycle[i:]) + tuple(cycle[:i])


def _leaf_values(L: GradedPcLie, q, symbols, cycles: dict, coeff_set: int) -> dict:
    """Degree-1 stand-ins for eigenvectors: sum over the cycle of the member, nonzero coefficients."""
    rng = random.Random(coeff_set)
    out = {}
    for sym in symbols:
        cyc = cycles[sym.side]
        coeffs = {}
        for lam in cyc:
            v = q.classes[lam][sym.member - 1]
            coeffs[v] = Fraction(1) if coeff_set == 0 else Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        out[sym.name] = L.degree_one(coeffs)
    return out


def choose_qedge(g: Graph) -> tuple:
    q = quotient_graph(g)
    best = None
    for e in q.sorted_qedges():
        lam, mu = (e[0], e[0]) if len(e) == 1 else e
        cost = edge_cost_upper(q, lam, mu)
        if best is None or cost < best[0]:
            best = (cost, lam, mu)
    return best[1], best[2]


def _signed_map(vertex_cycles: Sequence[Sequence[int]], signs: Sequence[int]) -> dict:
    """v -> (sign, image) for the product of T(sigma_i, (sign_i)) on singleton classes."""
    out = {}
    for cy, sg in zip(vertex_cycles, signs):
        for j, v in enumerate(cy):
            out[v] = (1, cy[j + 1]) if j + 1 < len(cy) else (sg, cy[0])
    return out


def _orbit_sum(smap: dict, a: int, b: int, count: int) -> tuple:
    """Terms (coefficient, x, y) of sum_{m=1..count} T^m [a, b] under the signed map T."""
    coef = 1
    terms = []
    for _ in range(count):
        sa, a = smap[a]
        sb, b = smap[b]
        coef *= sa * sb
        terms.append((coef, a, b))
    return tuple(terms)


def _c2_count(k: int, s: int, t: int) -> int:
    return k // 2 if (2 * (s - t)) % k == 0 else k


def _pair_sum(L: GradedPcLie, terms) -> LieElement:
    out = L.zero(2)
    for coef, a, b in terms:
        out = out + L.bracket(L.generator(a), L.generator(b)).scale(coef)
    return out


def upper_bound_certificate(g: Graph, psi: Sequence[int], signs: Sequence[int],
                            L: GradedPcLie | None = None, dim_cap: int = DEFAULT_DIM_CAP) -> UpperBoundCertificate:
    """Eigenvalue-one certificate at c = Xi for every automorphism reducing to (psi, signs)."""
    if not g.edges:
        raise DomainError("Xi undefined for empty graph")
    q = quotient_graph(g)
    psi = tuple(psi)
    if not is_quotient_automorphism(q, psi):
        raise InputError("psi is not a size-preserving automorphism of the quotient graph")
    cycles = cycles_of(psi)
    signs = tuple(int(s) for s in signs)
    if len(signs) != len(cycles) or any(s not in (1, -1) for s in signs):
        raise InputError("need one sign +1/-1 per cycle (%d cycles)" % len(cycles))
    c = Xi(g)
    if L is None:
        L = GradedPcLie(g, c, dim_cap=dim_cap, eager=False)
    if L.class_bound < c:
        raise DomainError("Lie algebra class bound %d below Xi = %d" % (L.class_bound, c))
    lam, mu = choose_qedge(g)
    ia = next(i for i, cy in enumerate(cycles) if lam in cy)
    ib = next(i for i, cy in enumerate(cycles) if mu in cy)
    cyc_a = _rotate(cycles[ia], lam)
    cyc_b = _rotate(cycles[ib], mu)
    for cy in (cyc_a, cyc_b):
        if len({q.sizes[x] for x in cy}) != 1:
            raise AssertionError("cycle with classes of different sizes")
    n, m = q.sizes[lam], q.sizes[mu]
    k, l = len(cyc_a), len(cyc_b)
    sa, sb = signs[ia], signs[ib]
    lam_v, mu_v = q.classes[lam], q.classes[mu]
    dispatch = None
    c2_terms = ()
    if ia == ib and n == 1:
        # lambda != mu, single vertices on one cycle: degree 1 or an explicit degree-2 sum
        if sa == 1:
            case = "C1"
            res = root_index_same_sign(k, k, (1, 1), "i")
            symbols = (Symbol("a", 1, 1, 1, k),)
            weight = (1,)
            kappa = (lam_v[0],)
            word = symbols[0].name
        else:
            case = "C2"
            res = root_index_same_sign(k, k, (-1, -1), "ii")
            s_, t_ = res.indices
            symbols = (Symbol("a", 1, s_, -1, k), Symbol("a", 1, t_, -1, k))
            weight = (1, 1)
            kappa = (lam_v[0], mu_v[0])
            word = None
            cyc_vertices = [q.classes[x][0] for x in cyc_a]
            smap = _signed_map([cyc_vertices], [-1])
            t_pos = cyc_a.index(mu) + 1
            c2_terms = _orbit_sum(smap, cyc_vertices[0], cyc_vertices[t_pos - 1], _c2_count(k, 1, t_pos))
        roots = res.roots
        lemma_indices = res.indices
    elif ia == ib:
        case = "diagonal"
        res = root_index_same_sign(k, k, (sa, sa), "i" if sa == 1 else "ii")
        s_, t_ = res.indices
        reps = [sa] + [1] * (n - 1)
        ss = distribute_root_indices(k, s_, reps)
        ts = distribute_root_indices(k, t_, reps)
        symbols, weight, kappa = [], [], []
        for i in range(1, n + 1):
            kap = mu_v[0] if i == 1 else lam_v[i - 1]
            pair = [ss[i - 1], ts[i - 1]]
            for j in sorted(set(pair)):
                symbols.append(Symbol("a", i, j, reps[i - 1], k))
                weight.append(pair.count(j))
                kappa.append(kap)
        roots = tuple((k, sym.root, sym.sign) for sym, w in zip(symbols, weight) for _ in range(w))
        lemma_indices = res.indices
        word = None
    else:
        dispatch, res, first, second = dispatch_indices(k, l, sa, sb)
        case = dispatch.case
        reps_a = [sa] + [1] * (n - 1)
        reps_b = [sb] + [1] * (m - 1)
        dist_a = [distribute_root_indices(k, x, reps_a) for x in first]
        dist_b = [distribute_root_indices(l, x, reps_b) for x in second]
        symbols, weight, kappa = [], [], []
        for side, dist, reps, kk, verts in (("a", dist_a, reps_a, k, lam_v), ("b", dist_b, reps_b, l, mu_v)):
            size = len(reps)
            for i in range(1, size + 1):
                chosen = [d[i - 1] for d in dist]
                for j in sorted(set(chosen)):
                    symbols.append(Symbol(side, i, j, reps[i - 1], kk))
                    weight.append(chosen.count(j))
                    kappa.append(verts[i - 1])
        roots = tuple((sym.k, sym.root, sym.sign) for sym, w in zip(symbols, weight) for _ in range(w))
        lemma_indices = res.indices
        word = None
    symbols, weight, kappa = tuple(symbols), tuple(weight), tuple(kappa)
    angle = angle_total(roots)
    cycles_by_side = {"a": cyc_a, "b": cyc_b}
    if case not in ("C1", "C2"):
        W = [_leaf_values(L, q, symbols, cycles_by_side, 0)[s.name] for s in symbols]
        found = find_nonzero_bracket_word_general(L, W, list(kappa), list(weight))
        word = bw_map(found, lambda j: symbols[j].name)
    cert = UpperBoundCertificate(g, c, (lam, mu), psi, signs, cyc_a, cyc_b, case, dispatch, tuple(lemma_indices),
                                 symbols, weight, kappa, word, angle, c2_terms)
    cert.checks = check_upper_certificate(cert, L)
    if not cert.verified:
        raise TheoremViolation("upper-bound certificate failed: %r" % cert.checks)
    return cert


def check_upper_certificate(cert: UpperBoundCertificate, L: GradedPcLie) -> dict:
    """Recompute the independent facts a certificate claims."""
    g = cert.graph
    q = quotient_graph(g)
    checks = {}
    checks["angle_even"] = is_even_integer(cert.angle) and \
        cert.angle == angle_total([(s.k, s.root, s.sign) for s, w in zip(cert.symbols, cert.weight) for _ in range(w)])
    total = sum(cert.weight)
    checks["degree_within_bound"] = total <= cert.c
    n, m = q.sizes[cert.qedge[0]], q.sizes[cert.qedge[1]]
    expected = {"P1": n + m, "P2": 2 * n + m, "P3": n + 2 * m, "diagonal": 2 * n, "C1": 1, "C2": 2}[cert.case]
    checks["degree_matches_case"] = total == expected
    if cert.case == "C2":
        blocks = []
        cycles = cycles_of(cert.psi)
        for cy, s in zip(cycles, cert.signs):
            size = q.sizes[cy[0]]
            B = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
            B[0][0] = Fraction(s)
            blocks.append(B)
        M = cycle_product(q, cycles, blocks)
        x = _pair_sum(L, cert.c2_terms)
        checks["word_nonzero"] = not x.is_zero()
        F = LayerMaps(L, M)[2]
        vec = x.dense(L.dim(2))
        img = [sum((Fraction(int(F[r, j].p), int(F[r, j].q)) * vec[j] for j in range(len(vec))), Fraction(0))
               for r in range(len(vec))]
        checks["fixed_vector"] = img == vec
        return checks
    names = {s.name: s for s in cert.symbols}
    leaves = bw_leaves(cert.word) if not is_leaf(cert.word) else [cert.word]
    leaf_weight = {}
    for x in leaves:
        leaf_weight[x] = leaf_weight.get(x, 0) + 1
    checks["word_weight"] = all(x in names for x in leaves) and \
        all(leaf_weight.get(s.name, 0) == w for s, w in zip(cert.symbols, cert.weight))
    cycles_by_side = {"a": cert.cycle_a, "b": cert.cycle_b}
    ok = True
    for cs in range(PLACEHOLDER_SETS):
        vals = _leaf_values(L, q, cert.symbols, cycles_by_side, cs)
        ok = ok and bracket_word_is_nonzero(L, cert.word, vals)
    checks["word_nonzero"] = ok
    return checks


# transposition-free graphs ------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeCase:
    case: str           # "i": edge inside cycle i; "ii": edge between cycles i != j
    i: int
    j: int
    s: int
    t: int


def _check_tf(g: Graph, psi: Sequence[int]) -> None:
    if not g.edges:
        raise DomainError("graph has no edges")
    if not is_transposition_free(g):
        raise DomainError("graph is not transposition-free")
    if len(psi) != g.vertex_count or sorted(psi) != list(range(g.vertex_count)) or not is_automorphism(g, psi):
        raise InputError("psi is not an automorphism of the graph")


def transposition_free_case(g: Graph, psi: Sequence[int]) -> EdgeCase:
    """An edge inside one cycle of psi, or between cycles with lcm(k_i,k_j)(1/k_i + 1/k_j) even."""
    _check_tf(g, psi)
    cycles = cycles_of(psi)
    where = {}
    for i, cy in enumerate(cycles):
        for s, v in enumerate(cy):
            where[v] = (i, s + 1)
    edges = g.sorted_edges()
    for a, b in edges:
        (i, s), (j, t) = where[a], where[b]
        if i == j:
            return EdgeCase("i", i, i, min(s, t), max(s, t))
    for a, b in edges:
        (i, s), (j, t) = where[a], where[b]
        ki, kj = len(cycles[i]), len(cycles[j])
        if (lcm(ki, kj) // ki + lcm(ki, kj) // kj) % 2 == 0:
            if i > j:
                i, j, s, t = j, i, t, s
            return EdgeCase("ii", i, j, s, t)
    raise TheoremViolation("no admissible edge for psi = %r" % (tuple(psi),))


@dataclass
class Index2Eigenvector:
    case: str                   # C1, C2 or C3
    psi: tuple
    signs: tuple
    degree: int
    vector: LieElement
    terms: tuple                # vertices (C1) or (coefficient, vertex, vertex) terms (C2, C3)
    edge_case: EdgeCase | None
    fixed: bool
    nonzero: bool

    @property
    def verified(self) -> bool:
        return self.fixed and self.nonzero


def signed_cycle_matrix(g: Graph, psi: Sequence[int], signs: Sequence[int]) -> tuple:
    """Product of T(sigma_i, (sign_i)) on a graph with singleton classes."""
    q = quotient_graph(g)
    cycles = cycles_of(psi)
    return cycle_product(q, cycles, [[[Fraction(s)]] for s in signs])


def index2_eigenvector(g: Graph, L: GradedPcLie, psi: Sequence[int], signs: Sequence[int]) -> Index2Eigenvector:
    """A nonzero vector of degree <= 2 fixed by the signed cycle matrix of psi."""
    _check_tf(g, psi)
    psi = tuple(psi)
    cycles = cycles_of(psi)
    signs = tuple(int(s) for s in signs)
    if len(signs) != len(cycles) or any(s not in (1, -1) for s in signs):
        raise InputError("need one sign +1/-1 per cycle (%d cycles)" % len(cycles))
    if L.class_bound < 2:
        raise DomainError("class bound must be at least 2")
    M = signed_cycle_matrix(g, psi, signs)
    maps = LayerMaps(L, M)
    ec = None
    if 1 in signs:
        i = signs.index(1)
        case, degree = "C1", 1
        terms = tuple(cycles[i])
        x = L.degree_one({v: 1 for v in terms})
    else:
        ec = transposition_free_case(g, psi)
        degree = 2
        smap = _signed_map(cycles, signs)
        ki, kj = len(cycles[ec.i]), len(cycles[ec.j])
        a, b = cycles[ec.i][ec.s - 1], cycles[ec.j][ec.t - 1]
        if ec.case == "i":
            case = "C2"
            terms = _orbit_sum(smap, a, b, _c2_count(ki, ec.s, ec.t))
        else:
            case = "C3"
            terms = _orbit_sum(smap, a, b, lcm(ki, kj))
        x = _pair_sum(L, terms)
    F = maps[degree]
    vec = x.dense(L.dim(degree))
    img = [sum((Fraction(int(F[r, j].p), int(F[r, j].q)) * vec[j] for j in range(len(vec))), Fraction(0))
           for r in range(len(vec))]
    out = Index2Eigenvector(case, psi, signs, degree, x, terms, ec, img == vec, not x.is_zero())
    if not out.verified:
        raise TheoremViolation("index-2 vector not verified for psi = %r, signs = %r" % (psi, signs))
    return out


def neighbours_between_cycles_holds(g: Graph, psi: Sequence[int]) -> bool:
    """gcd(k_i, k_j) | (s - t) implies equal open neighbourhoods of v_is, v_it inside cycle j."""
    cycles = cycles_of(psi)
    for ci in cycles:
        for cj in cycles:
            Vj = set(cj)
            d = gcd(len(ci), len(cj))
            for s in range(len(ci)):
                for t in range(len(ci)):
                    if (s - t) % d == 0:
                        if open_neighborhood(g, ci[s]) & Vj != open_neighborhood(g, ci[t]) & Vj:
                            return False
    return True


# census ------------------------------------------------------------------------------------

MAX_CENSUS_N = 7


def _invariant(n: int, adj: list) -> tuple:
    deg = [bin(a).count("1") for a in adj]
    nbr = sorted((deg[v], tuple(sorted(deg[w] for w in range(n) if adj[v] >> w & 1))) for v in range(n))
    tri = sum(1 for a, b, c in combinations(range(n), 3) if adj[a] >> b & 1 and adj[b] >> c & 1 and adj[a] >> c & 1)
    return (tuple(nbr), tri)


def _isomorphic(n: int, A: list, B: list) -> bool:
    dA = [bin(a).count("1") for a in A]
    dB = [bin(b).count("1") for b in B]
    image = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return True
        for w in range(n):
            if used[w] or dA[v] != dB[w]:
                continue
            if any((A[u] >> v & 1) != (B[image[u]] >> w & 1) for u in range(v)):
                continue
            image[v] = w
            used[w] = True
            if extend(v + 1):
                return True
            used[w] = False
        image[v] = -1
        return False

    return extend(0)


def unlabeled_graphs(n: int) -> list:
    """One adjacency-bitmask list per isomorphism class on n vertices, in a fixed order.

    Graphs on n vertices arise from representatives on n-1 vertices plus a new
    vertex with any neighbourhood; candidates are bucketed by an invariant and
    compared by backtracking isomorphism tests.
    """
    if n < 0:
        raise InputError("negative n")
    if n == 0:
        return [[]]
    reps = [[]]
    for size in range(1, n + 1):
        buckets = {}
        order = []
        for base in reps:
            for mask in range(1 << (size - 1)):
                adj = [base[v] | ((mask >> v & 1) << (size - 1)) for v in range(size - 1)] + [mask]
                key = _invariant(size, adj)
                bucket = buckets.setdefault(key, [])
                if not bucket:
                    order.append(key)
                if any(_isomorphic(size, adj, other) for other in bucket):
                    continue
                bucket.append(adj)
        reps = [adj for key in order for adj in buckets[key]]
    return reps


def graph_from_adjacency(n: int, adj: list) -> Graph:
    return Graph.from_edges(n, [(a, b) for a in range(n) for b in range(a + 1, n) if adj[a] >> b & 1])


@dataclass(frozen=True)
class CensusEntry:
    edges: tuple
    transposition_free: bool
    nonempty: bool
    xi: int | None
    Xi: int | None


def census_entry(n: int, adj: list) -> CensusEntry:
    g = graph_from_adjacency(n, adj)
    if g.edges:
        return CensusEntry(tuple(g.sorted_edges()), is_transposition_free(g), True, xi(g), Xi(g))
    return CensusEntry((), is_transposition_free(g), False, None, None)


def _entry_job(args):
    return census_entry(*args)


@dataclass
class CensusRow:
    n: int
    graphs: int
    transposition_free: int
    nonempty: int
    min_xi: int | None
    max_Xi: int | None
    pairs: dict
    entries: list


def census(n_max: int, jobs: int = 1) -> list:
    """Per n <= n_max: counts of unlabeled graphs and their bound statistics."""
    if n_max > MAX_CENSUS_N:
        raise ResourceError("census limited to n <= %d" % MAX_CENSUS_N)
    rows = []
    for n in range(1, n_max + 1):
        work = [(n, adj) for adj in unlabeled_graphs(n)]
        if jobs > 1 and len(work) > 1:
            from concurrent.futures import ProcessPoolExecutor
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                entries = list(ex.map(_entry_job, work, chunksize=32))
        else:
            entries = [census_entry(*w) for w in work]
        entries.sort(key=lambda e: (len(e.edges), e.edges))
        ne = [e for e in entries if e.nonempty]
        pairs = {}
        for e in ne:
            pairs[(e.xi, e.Xi)] = pairs.get((e.xi, e.Xi), 0) + 1
        rows.append(CensusRow(n, len(entries), sum(e.transposition_free for e in entries), len(ne),
                              min((e.xi for e in ne), default=None), max((e.Xi for e in ne), default=None),
                              dict(sorted(pairs.items())), entries))
    return rows
