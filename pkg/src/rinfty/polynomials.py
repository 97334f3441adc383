"""Exact univariate polynomials, root location, Pisot units and splitting algebras.

Polynomials are lists of coefficients in ascending degree order (index k holds
the coefficient of X^k), with integer or Fraction entries.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import factorial
from typing import Sequence

import flint

from .errors import ResourceError


def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence) -> int:
    return len(trim(p)) - 1


def padd(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def pneg(p):
    return [-a for a in p]


def psub(p, q):
    return padd(p, pneg(q))


def pmul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def pscale(p, t):
    return trim([a * t for a in p])


def pdivmod(p, q):
    p, q = trim(p), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = [Fraction(a) for a in p]
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lead = Fraction(q[-1])
    while len(p) >= len(q) and p:
        f = p[-1] / lead
        shift = len(p) - len(q)
        quo[shift] = f
        for i, b in enumerate(q):
            p[i + shift] -= f * b
        p = trim(p)
    return trim(quo), p


def pmonic(p):
    p = trim(p)
    lead = Fraction(p[-1])
    return [Fraction(a) / lead for a in p]


def pgcd(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, pdivmod(p, q)[1]
    return pmonic(p) if p else []


def pderiv(p):
    return trim([i * p[i] for i in range(1, len(p))])


def peval(p, x):
    acc = 0
    for a in reversed(p):
        acc = acc * x + a
    return acc


def squarefree_part(p):
    """p / gcd(p, p'), made monic."""
    g = pgcd(p, pderiv(p))
    return pmonic(pdivmod(p, g)[0])


def as_int_poly(p) -> list:
    out = []
    for a in p:
        a = Fraction(a)
        if a.denominator != 1:
            raise ValueError("polynomial has non-integral coefficient %s" % a)
        out.append(int(a))
    return out


def poly_to_str(p, var="X") -> str:
    terms = []
    for k in range(len(p) - 1, -1, -1):
        a = p[k]
        if a == 0:
            continue
        sign = "-" if a < 0 else "+"
        mag = abs(a)
        if k == 0:
            body = str(mag)
        else:
            body = ("" if mag == 1 else str(mag)) + (var if k == 1 else "%s^%d" % (var, k))
        terms.append((sign, body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += " %s %s" % (sign, body)
    return s


# real roots ---------------------------------------------------------------------

def sturm_sequence(p) -> list:
    seq = [trim([Fraction(a) for a in p]), pderiv([Fraction(a) for a in p])]
    while seq[-1] and degree(seq[-1]) > 0:
        r = pdivmod(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append(pneg(r))
    return [s for s in seq if s]


def _sign_changes(values) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def _value_at_infinity(p, positive=True):
    p = trim(p)
    lead = p[-1]
    if positive or degree(p) % 2 == 0:
        return lead
    return -lead


def count_real_roots(p, lo=None, hi=None) -> int:
    """Distinct real roots in the half-open interval (lo, hi]; None means infinite."""
    seq = sturm_sequence(squarefree_part(p))
    va = [(_value_at_infinity(s, False) if lo is None else peval(s, lo)) for s in seq]
    vb = [(_value_at_infinity(s, True) if hi is None else peval(s, hi)) for s in seq]
    return _sign_changes(va) - _sign_changes(vb)


def reverse_poly(p):
    return list(reversed(trim(p)))


def roots_inside_unit_disk(p):
    """Number of roots with |z| < 1, or None when the Schur-Cohn recursion is singular.

    Real coefficients: T f = f(0) f - a_n f*, where f* is the reversed polynomial;
    the count is the number of negative partial products of the T^k f(0).
    """
    f = trim([Fraction(a) for a in p])
    n = len(f) - 1
    prod = Fraction(1)
    inside = 0
    for _ in range(n):
        m = len(f) - 1
        a0, am = f[0], f[m]
        g = [a0 * f[i] - am * f[m - i] for i in range(m)]
        if g[0] == 0:
            return None
        prod *= g[0]
        if prod < 0:
            inside += 1
        f = g
    return inside


def is_pisot_unit_poly(p) -> bool:
    """Monic integer polynomial, constant +-1, one real root > 1 and all others inside |z| < 1.

    Such a polynomial is automatically irreducible: a factor missing the large
    root would be a monic integer polynomial with constant +-1 and all roots
    strictly inside the unit disk, which is impossible.
    """
    p = trim(p)
    try:
        ip = as_int_poly(p)
    except ValueError:
        return False
    if ip[-1] != 1 or abs(ip[0]) != 1:
        return False
    d = degree(ip)
    if d < 1:
        return False
    if count_real_roots(ip, 1, None) != 1 or peval(ip, 1) == 0:
        return False
    if d == 1:
        return True
    return small_roots_radius(ip, d - 1) is not None


def small_roots_radius(p, count: int, max_steps: int = 60):
    """A rational r < 1 with exactly `count` roots of p inside |z| < r, or None.

    For unit polynomials the recursion at radius 1 is always singular, so the
    disk is shrunk to r = 1 - 2^-k until the exact count is certified.
    """
    p = trim([Fraction(a) for a in p])
    for k in range(1, max_steps + 1):
        r = 1 - Fraction(1, 2 ** k)
        scaled = [a * r ** i for i, a in enumerate(p)]
        got = roots_inside_unit_disk(scaled)
        if got == count:
            return r
    return None


def d_bonacci(d: int) -> list:
    """X^d - X^(d-1) - ... - X - 1."""
    return [-1] * d + [1]


def _root_product(p) -> int:
    """Product of the roots of a monic polynomial."""
    d = degree(p)
    return (-1) ** d * p[0]


def pisot_family_poly(d: int) -> list:
    """Monic integer polynomial of degree d with root product -1.

    d = 1 gives X + 1.  For d >= 2 the d-bonacci polynomial is used when its
    root product is -1 (even d); otherwise the first polynomial with constant
    term (-1)^(d+1) and coefficients in [-2, 2], enumerated in a fixed order,
    that passes the exact Pisot-unit check.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    if d == 1:
        return [1, 1]
    cand = d_bonacci(d)
    if _root_product(cand) == -1 and is_pisot_unit_poly(cand):
        return cand
    const = (-1) ** (d + 1)
    for middle in iproduct(range(-2, 3), repeat=d - 1):
        # ordered from the X^(d-1) coefficient downwards, starting at -2
        cand = [const] + list(reversed(middle)) + [1]
        if _root_product(cand) == -1 and is_pisot_unit_poly(cand):
            return cand
    raise AssertionError("no Pisot unit polynomial of degree %d found" % d)


def verify_family_poly(p) -> bool:
    d = degree(p)
    if _root_product(p) != -1:
        return False
    if d == 1:
        return list(p) == [1, 1]
    return is_pisot_unit_poly(p)


# matrices attached to polynomials ------------------------------------------------

def companion_matrix(p) -> list:
    """Companion matrix (integer/Fraction entries) of a monic polynomial; columns map x^k -> x^(k+1)."""
    p = trim(p)
    d = degree(p)
    if p[-1] != 1:
        raise ValueError("companion matrix needs a monic polynomial")
    C = [[0] * d for _ in range(d)]
    for i in range(1, d):
        C[i][i - 1] = 1
    for i in range(d):
        C[i][d - 1] = -p[i]
    return C


def power_root_poly(p, m: int) -> list:
    """Monic integer polynomial whose roots are the m-th powers of the roots of p."""
    C = flint.fmpz_mat(companion_matrix(as_int_poly(p)))
    P = C ** m
    cp = P.charpoly()
    return [int(cp[k]) for k in range(cp.degree() + 1)]


# universal splitting algebra -------------------------------------------------------

def _kron(A: flint.fmpz_mat, B: flint.fmpz_mat) -> flint.fmpz_mat:
    ar, ac, br, bc = A.nrows(), A.ncols(), B.nrows(), B.ncols()
    out = flint.fmpz_mat(ar * br, ac * bc)
    for i in range(ar):
        for j in range(ac):
            a = A[i, j]
            if a == 0:
                continue
            for k in range(br):
                for l in range(bc):
                    b = B[k, l]
                    if b != 0:
                        out[i * br + k, j * bc + l] = a * b
    return out


def _identity(n: int) -> flint.fmpz_mat:
    I = flint.fmpz_mat(n, n)
    for i in range(n):
        I[i, i] = 1
    return I


class SplittingAlgebra:
    """Universal splitting algebra of a monic integer polynomial of degree d.

    Dimension d!.  ``roots[j]`` is the integer matrix of multiplication by the
    j-th generic root.  The characteristic polynomial of multiplication by a
    monomial in the roots is the product over all orderings of the roots.
    """

    def __init__(self, p):
        p = as_int_poly(trim(p))
        if p[-1] != 1:
            raise ValueError("monic polynomial required")
        self.poly = p
        d = len(p) - 1
        self.degree = d
        D = 1
        roots = []
        coeffs = [flint.fmpz_mat([[c]]) for c in p]   # current p_j over the algebra built so far
        for j in range(d):
            m = len(coeffs) - 1
            newD = D * m
            Im = _identity(m)
            X = flint.fmpz_mat(newD, newD)
            for r in range(m - 1):
                for a in range(D):
                    X[(r + 1) * D + a, r * D + a] = 1
            for r in range(m):
                C = coeffs[r]
                for a in range(D):
                    for b in range(D):
                        v = C[a, b]
                        if v != 0:
                            X[r * D + a, (m - 1) * D + b] = -v
            roots = [_kron(Im, R) for R in roots] + [X]
            lifted = [_kron(Im, C) for C in coeffs]
            # next polynomial: (p_j(T) - p_j(x_j)) / (T - x_j)
            powers = [_identity(newD)]
            for _ in range(m):
                powers.append(powers[-1] * X)
            nxt = []
            for r in range(m):
                acc = flint.fmpz_mat(newD, newD)
                for s in range(r + 1, m + 1):
                    acc += lifted[s] * powers[s - 1 - r]
                nxt.append(acc)
            coeffs = nxt
            D = newD
        self.dim = D
        self.roots = roots
        self._pow = {}

    def root_power(self, j: int, k: int) -> flint.fmpz_mat:
        key = (j, k)
        r = self._pow.get(key)
        if r is None:
            r = self.roots[j] ** k
            self._pow[key] = r
        return r

    def monomial(self, exponents: Sequence[int]) -> flint.fmpz_mat:
        Y = _identity(self.dim)
        for j, k in enumerate(exponents):
            if k:
                Y = Y * self.root_power(j, k)
        return Y


_ALGEBRAS = {}


def splitting_algebra(p) -> SplittingAlgebra:
    key = tuple(as_int_poly(trim(p)))
    alg = _ALGEBRAS.get(key)
    if alg is None:
        alg = SplittingAlgebra(key)
        _ALGEBRAS[key] = alg
    return alg


def root_product_norm(polys: Sequence, exponents: Sequence[Sequence[int]], limit: int = 5040):
    """det(I - Y) where Y multiplies by prod_i prod_j alpha_ij^e_ij in the tensor
    product of splitting algebras.

    It vanishes iff some labelling of the roots makes the product equal to 1.
    Returns (norm, algebra dimension).  Balanced exponent rows contribute the
    scalar (root product)^e and need no algebra.
    """
    scalar = Fraction(1)
    mats = []
    dim = 1
    for p, e in zip(polys, exponents):
        e = list(e)
        if all(x == e[0] for x in e):
            scalar *= Fraction(_root_product(as_int_poly(p))) ** e[0]
            continue
        alg_dim = factorial(len(e))
        dim *= alg_dim
        if dim > limit:
            raise ResourceError("splitting algebra dimension %d exceeds limit %d" % (dim, limit))
        mats.append(splitting_algebra(p).monomial(sorted(e, reverse=True)))
    if not mats:
        return int(1 - scalar), 1
    Y = mats[0]
    for Z in mats[1:]:
        Y = _kron(Y, Z)
    s = int(scalar)
    N = _identity(Y.nrows()) - Y * s
    return int(N.det()), Y.nrows()
