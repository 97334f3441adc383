"""Exact rational matrices as tuples of tuples of Fractions, plus flint conversions."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import flint

from .polynomials import pderiv, squarefree_part


def mat(rows: Sequence[Sequence]) -> tuple:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> tuple:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> tuple:
    m = n if m is None else m
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def mat_mul(A, B) -> tuple:
    Bt = list(zip(*B))
    return tuple(tuple(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in Bt) for row in A)


def mat_add(A, B) -> tuple:
    return tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_sub(A, B) -> tuple:
    return tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(A, B))


def mat_scale(A, t) -> tuple:
    return tuple(tuple(a * t for a in r) for r in A)


def mat_vec(A, x) -> list:
    return [sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A]


def transpose(A) -> tuple:
    return tuple(zip(*A))


def is_square(A) -> bool:
    return all(len(r) == len(A) for r in A)


def det(A) -> Fraction:
    """Fraction-free Bareiss elimination on the common-denominator integer matrix."""
    n = len(A)
    if n == 0:
        return Fraction(1)
    den = 1
    for r in A:
        for x in r:
            den = den * x.denominator // _gcd(den, x.denominator)
    M = [[int(x * den) for x in r] for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return Fraction(sign * M[n - 1][n - 1], den ** n)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def inverse(A) -> tuple:
    n = len(A)
    M = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        f = M[c][c]
        M[c] = [x / f for x in M[c]]
        for i in range(n):
            if i != c and M[i][c] != 0:
                g = M[i][c]
                M[i] = [x - g * y for x, y in zip(M[i], M[c])]
    return tuple(tuple(r[n:]) for r in M)


def rank(A) -> int:
    M = [list(r) for r in A]
    rk = 0
    cols = len(M[0]) if M else 0
    for c in range(cols):
        piv = next((i for i in range(rk, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(rk + 1, len(M)):
            if M[i][c] != 0:
                f = M[i][c] / M[rk][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[rk])]
        rk += 1
    return rk


def char_poly(A) -> list:
    """Characteristic polynomial det(X I - A), ascending coefficients (Faddeev-LeVerrier).

    Only divisions by the integers 1..n occur, so the computation stays exact.
    """
    n = len(A)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = zeros(n)
    I = identity(n)
    for k in range(1, n + 1):
        Mk = mat_add(mat_mul(A, Mk), mat_scale(I, coeffs[n - k + 1]))
        AM = mat_mul(A, Mk)
        tr = sum(AM[i][i] for i in range(n))
        coeffs[n - k] = -tr / k
    return coeffs


def is_integer_like_poly(p) -> bool:
    return all(Fraction(a).denominator == 1 for a in p) and abs(p[0]) == 1


def is_integer_like(A) -> bool:
    return is_integer_like_poly(char_poly(A))


def poly_of_matrix(p, A) -> tuple:
    """Horner evaluation of a polynomial at a square matrix."""
    n = len(A)
    R = zeros(n)
    I = identity(n)
    for a in reversed(list(p)):
        R = mat_add(mat_mul(R, A), mat_scale(I, a))
    return R


def jordan_chevalley_semisimple(A) -> tuple:
    """Semisimple part S of A as a polynomial in A, via Newton iteration on the squarefree part.

    S_{k+1} = S_k - f(S_k) f'(S_k)^{-1} with f the squarefree part of the
    characteristic polynomial; it stops when f(S_k) = 0.
    """
    f = squarefree_part(char_poly(A))
    df = pderiv(f)
    S = mat(A)
    n = len(A)
    for _ in range(max(2, n.bit_length() + 2)):
        fS = poly_of_matrix(f, S)
        if all(x == 0 for r in fS for x in r):
            return S
        S = mat_sub(S, mat_mul(fS, inverse(poly_of_matrix(df, S))))
    if any(x != 0 for r in poly_of_matrix(f, S) for x in r):
        raise ArithmeticError("Newton iteration did not converge")
    return S


def is_nilpotent(N) -> bool:
    P = identity(len(N))
    for _ in range(len(N)):
        P = mat_mul(P, N)
    return all(x == 0 for r in P for x in r)


def nullspace(A) -> list:
    """Basis of {x : A x = 0} as lists of Fractions (reduced row echelon form)."""
    M = [list(r) for r in A]
    cols = len(M[0]) if M else 0
    pivots = []
    rk = 0
    for c in range(cols):
        piv = next((i for i in range(rk, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[rk], M[piv] = M[piv], M[rk]
        f = M[rk][c]
        M[rk] = [x / f for x in M[rk]]
        for i in range(len(M)):
            if i != rk and M[i][c] != 0:
                g = M[i][c]
                M[i] = [x - g * y for x, y in zip(M[i], M[rk])]
        pivots.append(c)
        rk += 1
    out = []
    for free in (c for c in range(cols) if c not in pivots):
        x = [Fraction(0)] * cols
        x[free] = Fraction(1)
        for r, pc in enumerate(pivots):
            x[pc] = -M[r][free]
        out.append(x)
    return out


# flint bridges --------------------------------------------------------------------

def to_fmpq(A) -> flint.fmpq_mat:
    n = len(A)
    m = len(A[0]) if n else 0
    M = flint.fmpq_mat(n, m)
    for i, r in enumerate(A):
        for j, x in enumerate(r):
            if x:
                M[i, j] = flint.fmpq(x.numerator, x.denominator)
    return M


def fmpq_to_fraction(x) -> Fraction:
    return Fraction(int(x.p), int(x.q))


def from_fmpq(M) -> tuple:
    return tuple(tuple(fmpq_to_fraction(M[i, j]) for j in range(M.ncols())) for i in range(M.nrows()))


def fmpq_char_poly(M: flint.fmpq_mat) -> list:
    cp = M.charpoly()
    return [fmpq_to_fraction(cp[k]) for k in range(cp.degree() + 1)]


# integers above this many bits are written in hex, which the interpreter's
# decimal conversion limit does not cover
_DECIMAL_BITS = 12000


def _int_str(n: int) -> str:
    if n.bit_length() <= _DECIMAL_BITS:
        return "%d" % n
    return ("-" if n < 0 else "") + "0x%x" % abs(n)


def frac_str(x) -> str:
    x = Fraction(x)
    return "%s/%s" % (_int_str(x.numerator), _int_str(x.denominator))


def parse_frac(s) -> Fraction:
    if isinstance(s, int):
        return Fraction(s)
    text = str(s).strip()
    if "0x" in text:
        num, _, den = text.partition("/")
        return Fraction(int(num, 16), int(den or "1", 16) if den.startswith("0x") else int(den or "1"))
    return Fraction(text)


def mat_to_doc(A) -> list:
    return [[frac_str(x) for x in r] for r in A]


def mat_from_doc(rows) -> tuple:
    return tuple(tuple(parse_frac(x) for x in r) for r in rows)
