"""Exact eigenvalue-one test on large layers without building them.

When every coherent class is mapped to itself, the degree-i map has the same
characteristic polynomial as the block-diagonal part diag(B_lam).  Its
eigenvalues are the products prod_v alpha_v^e_v over vertex weights e of
degree i, counted with the weight multiplicity, where alpha_v runs over the
roots of the characteristic polynomial of the block of v's class (twins can
be relabelled freely, so the labelling is irrelevant).  Weights that differ by
permuting exponents inside classes are grouped; for each group the norm
det(I - Y) in the tensor product of universal splitting algebras vanishes
iff 1 is among its eigenvalues.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Sequence

from .errors import DomainError
from .graph import Graph, quotient_graph
from .lie import weight_multiplicity
from .linalg import char_poly
from .polynomials import root_product_norm


def _partitions(total: int, parts: int, largest: int | None = None):
    """Non-increasing tuples of `parts` non-negative integers summing to total."""
    if largest is None:
        largest = total
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        if first * parts < total:
            break
        for rest in _partitions(total - first, parts - 1, first):
            yield (first,) + rest


def _class_combos(sizes: Sequence[int], total: int):
    """Per-class exponent multisets (non-increasing tuples) of overall degree total."""
    if not sizes:
        if total == 0:
            yield ()
        return
    for t in range(total + 1):
        for part in _partitions(t, sizes[0]):
            for rest in _class_combos(sizes[1:], total - t):
                yield (part,) + rest


def _orbit_count(part: Sequence[int]) -> int:
    out = factorial(len(part))
    for x in set(part):
        out //= factorial(part.count(x))
    return out


@dataclass(frozen=True)
class ComboNorm:
    exponents: tuple        # per-class non-increasing exponent tuples
    multiplicity: int       # weight multiplicity of each weight in the group
    norm: int               # det(I - Y) over the splitting algebras
    stabilizer: int         # labellings hitting each weight of the group

    @property
    def has_one(self) -> bool:
        return self.norm == 0


def block_polynomials(g: Graph, M) -> list:
    """Characteristic polynomials of the diagonal class blocks; requires each class fixed."""
    from .graded_aut import class_permutation
    q = quotient_graph(g)
    psi = class_permutation(g, M)
    if any(psi[lam] != lam for lam in range(len(psi))):
        raise DomainError("spectral test needs every coherent class mapped to itself")
    polys = []
    for members in q.classes:
        B = [[M[v][w] for w in members] for v in members]
        cp = char_poly(B)
        if any(Fraction(x).denominator != 1 for x in cp):
            raise DomainError("spectral test needs integral block characteristic polynomials")
        polys.append([int(x) for x in cp])
    return polys


def layer_norms(g: Graph, polys: Sequence, i: int, limit: int = 5040) -> list:
    """ComboNorm for every weight group of degree i with nonzero multiplicity."""
    q = quotient_graph(g)
    out = []
    for combo in _class_combos(q.sizes, i):
        e = [0] * g.vertex_count
        for members, part in zip(q.classes, combo):
            for v, x in zip(members, part):
                e[v] = x
        m = weight_multiplicity(g, e)
        if not m:
            continue
        norm, dim = root_product_norm(polys, combo, limit)
        stab = 1
        for part in combo:
            if len(set(part)) > 1:
                stab *= factorial(len(part)) // _orbit_count(part)
        out.append(ComboNorm(tuple(combo), m, int(norm), stab))
    return out


def layer_abs_det(norms: Sequence[ComboNorm]) -> Fraction:
    """|det(I - M_i)| reassembled from the group norms."""
    acc = Fraction(1)
    for cn in norms:
        if cn.norm == 0:
            return Fraction(0)
        root = _int_root(abs(cn.norm), cn.stabilizer)
        acc *= Fraction(root) ** cn.multiplicity
    return acc


def _int_root(x: int, k: int) -> int:
    if k == 1:
        return x
    r = round(x ** (1.0 / k))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == x:
            return cand
    lo, hi = 0, 1
    while hi ** k < x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < x:
            lo = mid + 1
        else:
            hi = mid
    if lo ** k != x:
        raise AssertionError("group norm %d is not a %d-th power" % (x, k))
    return lo
