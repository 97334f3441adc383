"""Exact polynomial and matrix helpers, checked against flint and floating-point roots."""
from fractions import Fraction
from itertools import permutations, product

import flint
import numpy as np
from hypothesis import given, settings, strategies as st

from rinfty.linalg import (
    char_poly,
    det,
    identity,
    inverse,
    is_nilpotent,
    jordan_chevalley_semisimple,
    mat,
    mat_mul,
    mat_sub,
    mat_vec,
    nullspace,
    poly_of_matrix,
    rank,
)
from rinfty.polynomials import (
    companion_matrix,
    is_pisot_unit_poly,
    pisot_family_poly,
    power_root_poly,
    root_product_norm,
    verify_family_poly,
)

small_int_mats = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))


@settings(max_examples=200, deadline=None)
@given(small_int_mats)
def test_det_rank_charpoly_against_flint(A):
    F = flint.fmpz_mat(A)
    assert det(mat(A)) == int(F.det())
    assert rank(mat(A)) == F.rank()
    cp = F.charpoly()
    assert char_poly(mat(A)) == [Fraction(int(cp[k])) for k in range(cp.degree() + 1)]


@settings(max_examples=100, deadline=None)
@given(small_int_mats)
def test_nullspace_and_inverse(A):
    M = mat(A)
    ns = nullspace(M)
    assert len(ns) == len(A) - rank(M)
    for x in ns:
        assert all(v == 0 for v in mat_vec(M, x))
    if det(M) != 0:
        assert mat_mul(M, inverse(M)) == identity(len(A))


@settings(max_examples=100, deadline=None)
@given(small_int_mats)
def test_jordan_chevalley_split(A):
    M = mat(A)
    S = jordan_chevalley_semisimple(M)
    N = mat_sub(M, S)
    assert mat_mul(S, N) == mat_mul(N, S)
    assert is_nilpotent(N)
    # S is diagonalisable: its minimal polynomial divides the squarefree part of the char poly
    cp = flint.fmpq_poly([flint.fmpq(x.numerator, x.denominator) for x in char_poly(M)])
    sq = cp / cp.gcd(cp.derivative()) if cp.degree() > 0 else cp
    coeffs = [Fraction(int(sq[k].p), int(sq[k].q)) for k in range(sq.degree() + 1)]
    assert all(x == 0 for r in poly_of_matrix(coeffs, S) for x in r)


def test_jordan_block_semisimple_part():
    J = mat([[2, 1, 0], [0, 2, 1], [0, 0, 2]])
    assert jordan_chevalley_semisimple(J) == mat([[2, 0, 0], [0, 2, 0], [0, 0, 2]])


def test_family_polynomials():
    assert pisot_family_poly(1) == [1, 1]
    assert pisot_family_poly(3) == [1, -1, -2, 1]
    for d in range(1, 8):
        p = pisot_family_poly(d)
        assert verify_family_poly(p)
        assert p[-1] == 1 and len(p) == d + 1
        assert (-1) ** d * p[0] == -1
        fac = flint.fmpz_poly(p).factor()[1]
        assert len(fac) == 1 and fac[0][1] == 1
        if d == 1:
            continue
        roots = np.roots(list(reversed(p)))
        big = [z for z in roots if abs(z) > 1]
        assert len(big) == 1 and abs(big[0].imag) < 1e-9
        assert all(abs(z) < 1 - 1e-9 for z in roots if abs(z) <= 1)


def test_pisot_check_rejects():
    assert not is_pisot_unit_poly([1, 0, 1])          # X^2 + 1, roots on the circle
    assert not is_pisot_unit_poly([2, -3, 1])         # constant 2
    assert not is_pisot_unit_poly([-1, -1, -1, 1, 1])  # two roots outside


def test_companion_and_power_roots():
    for d in range(1, 6):
        p = pisot_family_poly(d)
        C = companion_matrix(p)
        assert char_poly(mat(C)) == [Fraction(x) for x in p]
        for m in (1, 2, 3, 5):
            q = power_root_poly(p, m)
            r1 = sorted(np.roots(list(reversed(p))) ** m, key=lambda z: (round(z.real, 6), round(z.imag, 6)))
            r2 = sorted(np.roots(list(reversed(q))), key=lambda z: (round(z.real, 6), round(z.imag, 6)))
            assert np.allclose(r1, r2, atol=1e-6)


def _numeric_norm(polys, exps):
    root_sets = [np.roots(list(reversed(p))) for p in polys]
    total = 1
    orderings = [list(permutations(range(len(e)))) if len(set(e)) > 1 else [tuple(range(len(e)))]
                 for e in exps]
    for choice in product(*orderings):
        val = 1
        for roots, e, perm in zip(root_sets, exps, choice):
            for j, x in enumerate(e):
                val *= roots[perm[j]] ** x
        total *= (1 - val)
    return total


def test_root_product_norm_matches_numeric():
    cases = [
        ([pisot_family_poly(2)], [(1, 0)]),
        ([pisot_family_poly(2)], [(2, 1)]),
        ([pisot_family_poly(3)], [(2, 1, 0)]),
        ([pisot_family_poly(2), pisot_family_poly(1)], [(1, 0), (1,)]),
        ([pisot_family_poly(2), pisot_family_poly(2)], [(1, 0), (2, 2)]),
        ([[1, 0, 1], [1, 1]], [(1, 0), (2,)]),       # (+-i) * 1 is never 1
        ([[1, 0, 1]], [(2, 0)]),                     # i^2 = -1 never 1 -> nonzero
        ([[1, 0, 1]], [(3, 1)]),                     # both labellings give -1
        ([[1, 0, 1]], [(4, 0)]),                     # i^4 = 1 -> zero
    ]
    for polys, exps in cases:
        norm, _ = root_product_norm(polys, exps)
        num = _numeric_norm(polys, exps)
        assert abs(num.imag) < 1e-6
        assert abs(norm - num.real) < 1e-6 * max(1, abs(norm))


def test_balanced_rows_are_scalars():
    p = pisot_family_poly(3)          # root product -1
    assert root_product_norm([p], [(1, 1, 1)]) == (2, 1)
    assert root_product_norm([p], [(2, 2, 2)]) == (0, 1)
