"""Graded automorphisms on the degree-1 space: generators, membership and layer maps.

Matrices act on column vectors indexed by vertices; column v holds the image
of the vertex v.
"""
from __future__ import annotations

import random
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import flint

from .errors import DomainError, InputError
from .graph import (
    Graph,
    QuotientGraph,
    cycles_of,
    dominates,
    equivalent,
    quotient_automorphisms,
    quotient_graph,
    section_r,
)
from .lie import GradedPcLie
from .linalg import (
    char_poly,
    mat_vec,
    nullspace,
    poly_of_matrix,
    rank,
    transpose,
    det,
    fmpq_to_fraction,
    identity,
    inverse,
    is_integer_like_poly,
    jordan_chevalley_semisimple,
    mat,
    mat_mul,
    to_fmpq,
)


# generators -----------------------------------------------------------------------

def transvection(g: Graph, v: int, w: int, t) -> tuple:
    """Identity plus t at entry (v, w): w maps to w + t v."""
    if not dominates(g, v, w):
        raise DomainError("transvection needs v dominated by w; %d does not precede %d" % (v, w))
    if equivalent(g, v, w):
        raise DomainError("transvection needs v and w inequivalent; %d and %d are equivalent" % (v, w))
    n = g.vertex_count
    M = [list(r) for r in identity(n)]
    M[v][w] = Fraction(t)
    return mat(M)


def permutation_matrix(perm: Sequence[int]) -> tuple:
    n = len(perm)
    M = [[Fraction(0)] * n for _ in range(n)]
    for v, pv in enumerate(perm):
        M[pv][v] = Fraction(1)
    return mat(M)


def perm_part(q: QuotientGraph, psi: Sequence[int]) -> tuple:
    from .graph import is_quotient_automorphism
    if not is_quotient_automorphism(q, psi):
        raise InputError("psi is not an automorphism of the quotient graph")
    return permutation_matrix(section_r(q, psi))


def block_diagonal(q: QuotientGraph, blocks: Mapping[int, Sequence[Sequence]]) -> tuple:
    """Identity except for the given per-class blocks (rows/columns in class order)."""
    n = sum(q.sizes)
    M = [list(r) for r in identity(n)]
    for lam, B in blocks.items():
        members = q.classes[lam]
        if len(B) != len(members) or any(len(r) != len(members) for r in B):
            raise InputError("block for class %d must be %dx%d" % (lam, len(members), len(members)))
        for a, va in enumerate(members):
            for b, vb in enumerate(members):
                M[va][vb] = Fraction(B[a][b])
    return mat(M)


def block_companion(q: QuotientGraph, sigma: Sequence[int], B: Sequence[Sequence]) -> tuple:
    """T(sigma, B): class sigma[m] maps identically onto sigma[m+1], the last onto the first via B."""
    sigma = list(sigma)
    sizes = {q.sizes[lam] for lam in sigma}
    if len(sizes) != 1:
        raise InputError("cycle contains classes of different sizes")
    if len(set(sigma)) != len(sigma):
        raise InputError("cycle repeats a class")
    nn = sizes.pop()
    if len(B) != nn or any(len(r) != nn for r in B):
        raise InputError("B must be %dx%d" % (nn, nn))
    if len(sigma) == 1:
        return block_diagonal(q, {sigma[0]: B})
    n = sum(q.sizes)
    M = [list(r) for r in identity(n)]
    cyc_vertices = [v for lam in sigma for v in q.classes[lam]]
    for v in cyc_vertices:
        for w in cyc_vertices:
            M[v][w] = Fraction(0)
    k = len(sigma)
    for m in range(k - 1):
        src, dst = q.classes[sigma[m]], q.classes[sigma[m + 1]]
        for i in range(nn):
            M[dst[i]][src[i]] = Fraction(1)
    first, last = q.classes[sigma[0]], q.classes[sigma[-1]]
    for a in range(nn):
        for b in range(nn):
            M[first[a]][last[b]] = Fraction(B[a][b])
    return mat(M)


def cycle_product(q: QuotientGraph, cycles: Sequence[Sequence[int]], blocks: Sequence) -> tuple:
    """Product of T(sigma_i, B_i) over disjoint cycles."""
    n = sum(q.sizes)
    M = identity(n)
    for sigma, B in zip(cycles, blocks):
        M = mat_mul(M, block_companion(q, sigma, B))
    return M


# membership and layer maps ------------------------------------------------------------

def _column(M, v) -> dict:
    return {u: M[u][v] for u in range(len(M)) if M[u][v] != 0}


def is_graded_extension(L: GradedPcLie, M) -> bool:
    """True iff M preserves the degree-2 relations: [Mv, Mw] = 0 for every non-edge."""
    M = mat(M)
    if len(M) != L.n:
        raise InputError("matrix size %d does not match %d vertices" % (len(M), L.n))
    if det(M) == 0:
        raise InputError("matrix is singular")
    for v, w in L.graph.non_edges():
        x = L.degree_one(_column(M, v))
        y = L.degree_one(_column(M, w))
        if not L.bracket(x, y).is_zero():
            return False
    return True


class _Generation:
    """A basis of L_i made of brackets [a, b_j] with a a vertex, plus its inverse change of basis."""

    def __init__(self, L: GradedPcLie, i: int):
        lay = L.layer(i)
        prev = L.layer(i - 1)
        n = L.n
        self.ad = []
        for a in range(n):
            A = flint.fmpq_mat(lay.dim, prev.dim)
            for j in range(prev.dim):
                for k, v in L.bracket_basis(1, a, i - 1, j).items():
                    A[k, j] = flint.fmpq(v.numerator, v.denominator)
            self.ad.append(A)
        # choose pairs per weight block
        pairs = []
        by_weight = {}
        for j in range(prev.dim):
            by_weight.setdefault(prev.weights[j], []).append(j)
        columns = []
        for wt in sorted(lay.blocks):
            target = len(lay.blocks[wt].kept)
            if not target:
                continue
            rows = {}
            found = 0
            for a in range(n):
                if wt[a] == 0:
                    continue
                sub = list(wt)
                sub[a] -= 1
                for j in by_weight.get(tuple(sub), []):
                    vec = dict(L.bracket_basis(1, a, i - 1, j))
                    red = dict(vec)
                    while red:
                        k = min(red)
                        if k not in rows:
                            break
                        row = rows[k]
                        f = Fraction(red[k]) / row[k]
                        for key, val in row.items():
                            s = red.get(key, 0) - f * val
                            if s:
                                red[key] = s
                            else:
                                red.pop(key, None)
                    if red:
                        rows[min(red)] = red
                        pairs.append((a, j))
                        columns.append(vec)
                        found += 1
                        if found == target:
                            break
                if found == target:
                    break
            if found != target:
                raise AssertionError("degree-one brackets do not span weight %r" % (wt,))
        self.pairs = pairs
        K = flint.fmpq_mat(lay.dim, lay.dim)
        for col, vec in enumerate(columns):
            for k, v in vec.items():
                K[k, col] = flint.fmpq(v.numerator, v.denominator)
        self.Kinv = K.inv()


class LayerMaps:
    """Induced matrices M_1, M_2, ... of a graded extension, computed degree by degree.

    With [a, b_j] spanning L_i:  M_i [a, b_j] = sum_a' M[a', a] [a', M_{i-1} b_j].
    """

    def __init__(self, L: GradedPcLie, M, check: bool = True):
        self.L = L
        self.M = mat(M)
        if check and not is_graded_extension(L, self.M):
            raise DomainError("matrix does not extend to a graded automorphism")
        self._maps = {1: to_fmpq(self.M)}

    def __getitem__(self, i: int) -> flint.fmpq_mat:
        r = self._maps.get(i)
        if r is not None:
            return r
        if i < 1 or i > self.L.class_bound:
            raise DomainError("degree %d outside 1..%d" % (i, self.L.class_bound))
        prev = self[i - 1]
        gen = _generation(self.L, i)
        L = self.L
        n = L.n
        dim_i = L.dim(i)
        dim_prev = L.dim(i - 1)
        T = flint.fmpq_mat(dim_i, dim_i)
        for a2 in range(n):
            P = flint.fmpq_mat(dim_prev, dim_i)
            nz = False
            for col, (a, j) in enumerate(gen.pairs):
                m = self.M[a2][a]
                if m:
                    P[j, col] = flint.fmpq(m.numerator, m.denominator)
                    nz = True
            if nz:
                T += gen.ad[a2] * (prev * P)
        r = T * gen.Kinv
        self._maps[i] = r
        return r


def _generation(L: GradedPcLie, i: int) -> _Generation:
    cache = L.__dict__.setdefault("_generation_cache", {})
    gen = cache.get(i)
    if gen is None:
        gen = _Generation(L, i)
        cache[i] = gen
    return gen


def induced_layer_map(L: GradedPcLie, M, i: int) -> tuple:
    """Exact matrix of the graded extension of M on the degree-i basis."""
    F = LayerMaps(L, M)[i]
    return tuple(tuple(fmpq_to_fraction(F[r, c]) for c in range(F.ncols())) for r in range(F.nrows()))


def layer_det_minus_identity(F: flint.fmpq_mat) -> Fraction:
    n = F.nrows()
    I = flint.fmpq_mat(n, n)
    for k in range(n):
        I[k, k] = 1
    return fmpq_to_fraction((F - I).det())


# reductive part -------------------------------------------------------------------------

def _class_dominates(g: Graph, q: QuotientGraph, nu: int, mu: int) -> bool:
    return dominates(g, q.classes[nu][0], q.classes[mu][0])


def class_permutation(g: Graph, M) -> tuple:
    """The quotient automorphism psi of a member M, read off its block pattern.

    In column block lam the nonzero row blocks are psi(lam) and classes strictly
    below it, so psi(lam) is the unique class dominating all the others.
    """
    q = quotient_graph(g)
    k = len(q.sizes)
    psi = []
    for lam in range(k):
        rows = []
        for mu in range(k):
            if any(M[v][w] != 0 for v in q.classes[mu] for w in q.classes[lam]):
                rows.append(mu)
        top = [mu for mu in rows if all(nu == mu or (_class_dominates(g, q, nu, mu)
                                                     and not _class_dominates(g, q, mu, nu)) for nu in rows)]
        if len(top) != 1:
            raise DomainError("not reduced: no unique leading block in column class %d" % lam)
        psi.append(top[0])
    if sorted(psi) != list(range(k)):
        raise DomainError("not reduced: leading blocks do not form a permutation")
    return tuple(psi)


def reductive_part(g: Graph, M) -> tuple:
    """(psi, R): the block-monomial part of M, keeping only blocks (psi(lam), lam)."""
    q = quotient_graph(g)
    psi = class_permutation(g, M)
    n = g.vertex_count
    R = [[Fraction(0)] * n for _ in range(n)]
    for lam, members in enumerate(q.classes):
        for v in q.classes[psi[lam]]:
            for w in members:
                R[v][w] = Fraction(M[v][w])
    return psi, mat(R)


@dataclass(frozen=True)
class ReducedForm:
    cycles: tuple          # tuple of class cycles, 1-cycles included
    cycle_sizes: tuple     # common class size per cycle
    blocks: tuple          # integral semisimple matrix per cycle
    conjugator: tuple      # Q with Q R Q^-1 = product of T(sigma_i, B'_i), B_i the semisimple part of B'_i
    char_poly: tuple       # characteristic polynomial of M on degree one


def _block(M, rows, cols) -> tuple:
    return tuple(tuple(M[r][c] for c in cols) for r in rows)


def _rational_canonical_integral(S) -> tuple:
    """(C, P) with C = P^-1 S P block diagonal of companion matrices.

    S is semisimple, so its space splits into cyclic pieces, one per irreducible
    factor f of the characteristic polynomial and per multiplicity; each piece
    contributes the companion matrix of f. With an integer-like characteristic
    polynomial every monic factor is integral with constant term +-1 (Gauss).
    """
    n = len(S)
    cp = char_poly(S)
    den = 1
    for x in cp:
        den = den * x.denominator // gcd(den, x.denominator)
    fz = flint.fmpz_poly([int(x * den) for x in cp])
    _, factors = fz.factor()
    basis = []
    for f, _mult in factors:
        fc = [Fraction(int(f[k])) for k in range(f.degree() + 1)]
        fc = [x / fc[-1] for x in fc]
        kernel = nullspace(poly_of_matrix(fc, S))
        local = []
        for v in kernel:
            if rank(local + [v]) == len(local):
                continue
            chain = [v]
            for _ in range(len(fc) - 2):
                chain.append(mat_vec(S, chain[-1]))
            local.extend(chain)
        basis.extend(local)
    if len(basis) != n:
        raise DomainError("not reduced: cycle block is not semisimple")
    P = transpose(mat(basis))
    return mat_mul(inverse(P), mat_mul(S, P)), P


def reduced_form(g: Graph, L: GradedPcLie, M) -> ReducedForm:
    """Cycles of psi with integral semisimple blocks B_i such that prod T(sigma_i, B_i)
    has the characteristic polynomial of M on every layer up to the class bound.

    The unipotent radical does not change layer characteristic polynomials, so
    the work is done on the block-monomial part R of M: per cycle the basis
    lam_1, R lam_1, ..., R^(k-1) lam_1 puts R into T(sigma, B~) form, and B~ is
    replaced by its semisimple part, made integral when needed.
    """
    M = mat(M)
    if not is_graded_extension(L, M):
        raise DomainError("matrix is not a member of the graded automorphism group")
    cp = char_poly(M)
    if not is_integer_like_poly(cp):
        raise DomainError("matrix is not integer-like")
    q = quotient_graph(g)
    psi, R = reductive_part(g, M)
    n = g.vertex_count
    Qinv = [[Fraction(0)] * n for _ in range(n)]   # columns: new basis vectors in old coordinates
    cycles, sizes, blocks = [], [], []
    for cyc in cycles_of(psi):
        nn = q.sizes[cyc[0]]
        first = q.classes[cyc[0]]
        # images of lam_1 under R^m land in class cyc[m]
        cur = {v: {v: Fraction(1)} for v in first}
        for m, lam in enumerate(cyc):
            for i, v in enumerate(first):
                col = cur[v]
                for u, x in col.items():
                    Qinv[u][q.classes[lam][i]] = x
            nxt = {}
            for v in first:
                col = cur[v]
                img = {}
                for u, x in col.items():
                    for r in range(n):
                        if R[r][u]:
                            img[r] = img.get(r, 0) + R[r][u] * x
                nxt[v] = {r: x for r, x in img.items() if x}
            cur = nxt
        # after k steps R^k lam_1 lands back in lam_1: that is B~ in the lam_1 basis
        Bt = tuple(tuple(cur[first[b]].get(first[a], Fraction(0)) for b in range(nn)) for a in range(nn))
        S = jordan_chevalley_semisimple(Bt)
        if S == Bt and all(x.denominator == 1 for r in S for x in r):
            B, P = S, identity(nn)
        else:
            B, P = _rational_canonical_integral(S)
        if any(x.denominator != 1 for r in B for x in r):
            raise DomainError("not reduced: could not make the cycle block integral")
        if abs(det(B)) != 1:
            raise DomainError("not reduced: cycle block has determinant %s" % det(B))
        # fold P into the basis: new lam_m vectors are old ones combined by P
        if P != identity(nn):
            for m, lam in enumerate(cyc):
                cols = [[Qinv[u][q.classes[lam][i]] for u in range(n)] for i in range(nn)]
                for j in range(nn):
                    for u in range(n):
                        Qinv[u][q.classes[lam][j]] = sum(cols[i][u] * P[i][j] for i in range(nn))
        cycles.append(tuple(cyc))
        sizes.append(nn)
        blocks.append(B)
    Q = inverse(mat(Qinv))
    return ReducedForm(tuple(cycles), tuple(sizes), tuple(blocks), Q, tuple(cp))


def reduced_form_matrix(g: Graph, rf: ReducedForm) -> tuple:
    return cycle_product(quotient_graph(g), rf.cycles, rf.blocks)


# sampling ------------------------------------------------------------------------------

TRANSVECTION_PARAMETERS = (-2, -1, 1, 2)
MAX_WORD_LENGTH = 12


def generator_pool(g: Graph) -> list:
    """Integral generators: quotient symmetries, in-class moves and transvections."""
    q = quotient_graph(g)
    n = g.vertex_count
    pool = []
    for psi in quotient_automorphisms(q):
        if list(psi) != list(range(len(psi))):
            pool.append(("perm", psi))
    for lam, members in enumerate(q.classes):
        for a in members:
            pool.append(("flip", a))
        for a in members:
            for b in members:
                if a != b:
                    pool.append(("elem", (a, b)))
                    if a < b:
                        pool.append(("swap", (a, b)))
    for v in range(n):
        for w in range(n):
            if v != w and dominates(g, v, w) and not equivalent(g, v, w):
                pool.append(("transvection", (v, w)))
    return pool


def generator_matrix(g: Graph, gen, rng: random.Random | None = None, t=None) -> tuple:
    kind, data = gen
    n = g.vertex_count
    if kind == "perm":
        return perm_part(quotient_graph(g), data)
    if kind == "flip":
        M = [list(r) for r in identity(n)]
        M[data][data] = Fraction(-1)
        return mat(M)
    if kind == "swap":
        a, b = data
        perm = list(range(n))
        perm[a], perm[b] = b, a
        return permutation_matrix(perm)
    if t is None:
        t = rng.choice(TRANSVECTION_PARAMETERS)
    if kind == "elem":
        a, b = data
        M = [list(r) for r in identity(n)]
        M[a][b] = Fraction(t)
        return mat(M)
    if kind == "transvection":
        return transvection(g, data[0], data[1], t)
    raise InputError("unknown generator kind %r" % kind)


def sample_members(g: Graph, count: int, seed: int = 0) -> list:
    """Deterministic pseudo-random integral members: words of length 1..12 in the generators."""
    rng = random.Random(seed)
    pool = generator_pool(g)
    out = []
    for _ in range(count):
        length = rng.randint(1, MAX_WORD_LENGTH)
        M = identity(g.vertex_count)
        for _ in range(length):
            gen = pool[rng.randrange(len(pool))]
            M = mat_mul(M, generator_matrix(g, gen, rng))
        out.append(M)
    return out


# eigenvalue one --------------------------------------------------------------------------

DEFAULT_EXPLICIT_LIMIT = 400


@dataclass(frozen=True)
class LayerCheck:
    degree: int
    dim: int
    method: str            # "explicit": det(M_i - I); "spectral": group norms
    det: Fraction | None
    norms: tuple = ()

    @property
    def vanishes(self) -> bool:
        if self.method == "explicit":
            return self.det == 0
        return any(cn.norm == 0 for cn in self.norms)


def has_eigenvalue_one_upto(L: GradedPcLie, M, c: int, early_exit: bool = False,
                            explicit_limit: int = DEFAULT_EXPLICIT_LIMIT) -> tuple:
    """(found, checks): whether some M_i with i <= c has eigenvalue 1, with per-layer evidence.

    Layers of dimension at most explicit_limit are handled by det(M_i - I); once a
    layer is larger, the remaining ones use the spectral group norms, which need
    every class mapped to itself and integral block characteristic polynomials.
    """
    from .errors import ResourceError
    from .spectral import block_polynomials, layer_norms
    if c > L.class_bound:
        raise DomainError("c = %d exceeds class bound %d" % (c, L.class_bound))
    maps = LayerMaps(L, M)
    checks = []
    found = False
    spectral = False
    polys = None
    for i in range(1, c + 1):
        dim = L.expected_dim(i)
        if not spectral and dim > explicit_limit and i > 1:
            spectral = True
        if not spectral:
            d = layer_det_minus_identity(maps[i])
            checks.append(LayerCheck(i, dim, "explicit", d))
        else:
            if polys is None:
                try:
                    polys = block_polynomials(L.graph, maps.M)
                except DomainError as exc:
                    raise ResourceError("degree %d: layer dimension %d exceeds the explicit limit %d "
                                        "and the spectral test does not apply (%s)"
                                        % (i, dim, explicit_limit, exc))
            checks.append(LayerCheck(i, dim, "spectral", None, tuple(layer_norms(L.graph, polys, i))))
        if checks[-1].vanishes:
            found = True
            if early_exit:
                break
    return found, checks
