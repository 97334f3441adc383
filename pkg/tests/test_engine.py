from fractions import Fraction
from itertools import product

import pytest

import oracles
from helpers import graphs_up_to
from rinfty.errors import DomainError, InputError, ResourceError
from rinfty.engine import (
    MAX_CENSUS_N,
    angle_total,
    bounds,
    census,
    distribute_root_indices,
    index2_eigenvector,
    lcm,
    lower_bound_witness,
    make_exponent_safe,
    neighbours_between_cycles_holds,
    pisot_family_poly,
    raw_root_angle,
    root_index_diff_sign,
    root_index_same_sign,
    table_dispatch,
    transposition_free_case,
    unit_product_free,
    upper_bound_certificate,
)
from rinfty.graded_aut import class_permutation, has_eigenvalue_one_upto, sample_members
from rinfty.graph import (
    Graph,
    complete_graph,
    cycles_of,
    graph_automorphisms,
    is_transposition_free,
    path_graph,
    quotient_automorphisms,
    quotient_graph,
)
from rinfty.lie import GradedPcLie

FIGURE = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])
TWO_EDGES = Graph.from_edges(4, [(0, 1), (2, 3)])
K = 12


def _parity(x):
    return "o" if x % 2 else "e"


# worked examples -------------------------------------------------------------------------------

def test_bounds_report():
    b = bounds(FIGURE)
    assert (b.xi, b.Xi, b.pinned_index) == (2, 3, None)
    assert "[2, 3]" in b.statement()
    assert bounds(path_graph(4)).pinned_index == 2
    assert bounds(complete_graph(3)).statement().endswith("= 6")


def test_family_poly_degree_three_has_root_product_minus_one():
    p = pisot_family_poly(3)
    assert p == [1, -1, -2, 1]
    assert (-1) ** 3 * p[0] == -1


def test_exponent_safety_examples():
    phi = pisot_family_poly(2)
    assert unit_product_free([phi], [2], 3)
    assert unit_product_free([[1, 1], [1, 1]], [1, 1], 2)
    polys, ms = make_exponent_safe([phi], 3)
    assert polys == [phi] and ms == (1,)
    with pytest.raises(ResourceError):
        make_exponent_safe([pisot_family_poly(3)] * 3, 9, budget=10)


def test_root_index_examples():
    assert root_index_same_sign(1, 1, (1, 1)).indices == (1, 1)
    r = root_index_same_sign(2, 2, (-1, -1))
    assert r.item == "ii" and r.angle % 2 == 0
    r = root_index_same_sign(2, 1, (-1, -1))
    assert (r.item, r.indices) == ("iii", (1, 1, 1))
    assert root_index_diff_sign(1, 2).indices == (1, 2)
    assert root_index_diff_sign(1, 1).indices == (1, 1, 1)
    assert root_index_diff_sign(3, 3).item == "ii"
    with pytest.raises(DomainError, match="odd"):
        root_index_same_sign(1, 2, (-1, -1), item="ii")


def test_distribute_examples():
    assert distribute_root_indices(5, 3, [1]) == [3]
    assert distribute_root_indices(2, 1, [-1, -1]) == [1, 2]
    assert distribute_root_indices(1, 1, [-1, 1, -1]) == [1, 1, 1]


def test_lower_witness_examples():
    w = lower_bound_witness(complete_graph(2))
    assert w.c == 3 and w.verified
    assert w.checks[0].det == -1
    w = lower_bound_witness(path_graph(3))
    assert w.c == 2 and [ch.degree for ch in w.checks] == [1, 2]
    w = lower_bound_witness(FIGURE)
    assert w.abelian and w.c == 1 and w.checks[0].det != 0


def test_upper_certificate_examples():
    c = upper_bound_certificate(complete_graph(2), (0,), (1,))
    assert c.case == "diagonal" and c.weight == (2, 2) and c.c == 4
    c = upper_bound_certificate(TWO_EDGES, (1, 0), (-1,))
    assert c.case == "diagonal" and c.lemma_indices == (1, 2) and c.verified
    c = upper_bound_certificate(FIGURE, (0, 1, 2), (1, 1, 1))
    assert c.case == "P1" and c.weight == (1, 1) and sum(c.weight) == 2
    with pytest.raises(InputError):
        upper_bound_certificate(FIGURE, (2, 1, 0), (1, 1))


def test_transposition_free_examples():
    g = path_graph(4)
    psi = (3, 2, 1, 0)
    ec = transposition_free_case(g, psi)
    assert ec.case == "i" and cycles_of(psi)[ec.i] == (1, 2)
    assert transposition_free_case(g, (0, 1, 2, 3)).case == "ii"
    L = GradedPcLie(g, 2)
    v = index2_eigenvector(g, L, psi, (-1, -1))
    assert v.case == "C2" and v.degree == 2 and v.verified
    assert index2_eigenvector(g, L, (0, 1, 2, 3), (1, 1, 1, 1)).case == "C1"
    with pytest.raises(DomainError, match="transposition-free"):
        transposition_free_case(TWO_EDGES, (2, 3, 0, 1))


def test_census_small_rows():
    rows = census(4)
    assert [r.graphs for r in rows] == [1, 2, 4, 11]
    assert rows[0].transposition_free == 1 and rows[1].transposition_free == 0
    with pytest.raises(ResourceError):
        census(MAX_CENSUS_N + 1)


# root lemmas against brute force -------------------------------------------------------------

def test_same_sign_lemma_exhaustive():
    for k, l in product(range(1, K + 1), repeat=2):
        M = lcm(k, l)
        a, b = M // k, M // l
        res = root_index_same_sign(k, l, (1, 1))
        assert res.indices in oracles.solutions_two(k, l, 1, 1)
        two = oracles.solutions_two(k, l, -1, -1)
        if (a + b) % 2 == 0:
            res = root_index_same_sign(k, l, (-1, -1), "ii")
            assert res.indices in two
        else:
            assert not two
            with pytest.raises(DomainError):
                root_index_same_sign(k, l, (-1, -1), "ii")
        if a % 2 == 1 and b % 2 == 0:
            res = root_index_same_sign(k, l, (-1, -1), "iii")
            assert res.indices in oracles.solutions_three(k, l, -1, -1)
        else:
            with pytest.raises(DomainError):
                root_index_same_sign(k, l, (-1, -1), "iii")


def test_diff_sign_lemma_exhaustive():
    for k, l in product(range(1, K + 1), repeat=2):
        a = lcm(k, l) // k
        res = root_index_diff_sign(k, l)
        if a % 2 == 0:
            assert res.item == "i" and res.indices in oracles.solutions_two(k, l, -1, 1)
        else:
            assert not oracles.solutions_two(k, l, -1, 1)
            assert res.item == "ii" and res.indices in oracles.solutions_three(k, l, -1, 1)


def test_distribute_exhaustive():
    for k in range(1, 9):
        for signs in product((1, -1), repeat=3):
            eps = signs[0] * signs[1] * signs[2]
            for s in range(1, k + 1):
                idx = distribute_root_indices(k, s, list(signs))
                z = 1
                for x, e in zip(idx, signs):
                    z *= oracles.root(k, x, e)
                assert abs(z - oracles.root(k, s, eps)) < 1e-9


def test_dispatch_matches_table():
    for k, l in product(range(1, K + 1), repeat=2):
        M = lcm(k, l)
        for sa, sb in product((1, -1), repeat=2):
            d = table_dispatch(k, l, sa, sb)
            assert (d.lemma, d.item, d.case) == oracles.TABLE[(sa, sb, _parity(M // k), _parity(M // l))]


def test_angles_match_complex_roots():
    import cmath
    for k in range(1, 9):
        for t in range(1, k + 1):
            for sign in (1, -1):
                z = cmath.exp(1j * cmath.pi * float(raw_root_angle(k, t, sign)))
                assert abs(z - oracles.root(k, t, sign)) < 1e-9
    assert angle_total([(2, 1, -1), (2, 2, -1)]) == Fraction(2)


# certificates against direct layer computation -----------------------------------------------

def _members_with(g, psi, count=40, seed=1):
    return [M for M in sample_members(g, count, seed=seed) if class_permutation(g, M) == tuple(psi)]


def test_upper_certificates_all_psi_and_signs():
    for g in graphs_up_to(4, nonempty=True):
        q = quotient_graph(g)
        L = GradedPcLie(g, bounds(g).Xi, eager=False)
        for psi in quotient_automorphisms(q):
            for signs in product((1, -1), repeat=len(cycles_of(psi))):
                cert = upper_bound_certificate(g, psi, signs, L)
                assert cert.verified
                assert sum(cert.weight) <= cert.c


def test_sampled_members_have_eigenvalue_one_at_upper_bound():
    for g in [FIGURE, complete_graph(2), path_graph(3), path_graph(4), TWO_EDGES]:
        c = bounds(g).Xi
        L = GradedPcLie(g, c, eager=False)
        for M in sample_members(g, 10, seed=4):
            found, _ = has_eigenvalue_one_upto(L, M, c, early_exit=True)
            assert found


def test_index2_over_all_automorphisms():
    for g in graphs_up_to(5, nonempty=True):
        if not is_transposition_free(g):
            continue
        L = GradedPcLie(g, 2)
        for psi in graph_automorphisms(g):
            assert neighbours_between_cycles_holds(g, psi)
            transposition_free_case(g, psi)
            for signs in product((1, -1), repeat=len(cycles_of(psi))):
                assert index2_eigenvector(g, L, psi, signs).verified
