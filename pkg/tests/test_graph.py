from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from rinfty.errors import DomainError, InputError, ResourceError
from rinfty.graph import (
    Graph,
    Xi,
    coherent_components,
    complete_graph,
    compose,
    dominates,
    edgeless_graph,
    equivalent,
    graph_automorphisms,
    inverse,
    is_transposition_free,
    path_graph,
    project_to_quotient,
    quotient_automorphisms,
    quotient_graph,
    section_r,
    xi,
)
from helpers import graphs_up_to

FIGURE = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


@st.composite
def graphs(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, b in zip(pairs, mask) if b])


# worked examples ---------------------------------------------------------------------------

def test_dominates_on_path():
    p = path_graph(3)
    assert dominates(p, 0, 1)
    assert not dominates(p, 1, 0)
    assert all(dominates(p, v, v) for v in range(3))


def test_coherent_components_examples():
    assert coherent_components(FIGURE).classes == ((0,), (1, 2), (3,))
    for r in range(1, 6):
        assert coherent_components(complete_graph(r)).classes == (tuple(range(r)),)
    assert coherent_components(path_graph(3)).classes == ((0, 2), (1,))


def test_quotient_examples():
    q = quotient_graph(FIGURE)
    assert q.sizes == (1, 2, 1)
    assert q.qedges == {frozenset({0, 1}), frozenset({1}), frozenset({0, 2})}
    k2 = quotient_graph(complete_graph(2))
    assert k2.sizes == (2,) and k2.qedges == {frozenset({0})}
    e = quotient_graph(edgeless_graph(4))
    assert e.sizes == (4,) and not e.qedges


def test_bound_examples():
    assert (xi(FIGURE), Xi(FIGURE)) == (2, 3)
    for r in range(2, 6):
        assert xi(complete_graph(r)) == Xi(complete_graph(r)) == 2 * r
    assert (xi(path_graph(3)), Xi(path_graph(3))) == (3, 5)


def test_bounds_need_an_edge():
    for f in (xi, Xi):
        with pytest.raises(DomainError, match="undefined for empty graph"):
            f(edgeless_graph(3))


def test_transposition_free_examples():
    assert is_transposition_free(path_graph(4))
    assert not is_transposition_free(FIGURE)
    assert is_transposition_free(Graph.from_edges(1, []))


def test_automorphism_examples():
    assert graph_automorphisms(path_graph(3)) == [(0, 1, 2), (2, 1, 0)]
    assert len(graph_automorphisms(complete_graph(3))) == 6
    assert graph_automorphisms(path_graph(4)) == [(0, 1, 2, 3), (3, 2, 1, 0)]
    with pytest.raises(ResourceError):
        graph_automorphisms(edgeless_graph(11))


def test_section_examples():
    q = quotient_graph(path_graph(3))
    assert quotient_automorphisms(q) == [(0, 1)]
    assert section_r(q, (0, 1)) == (0, 1, 2)
    two = Graph.from_edges(4, [(0, 1), (2, 3)])
    q2 = quotient_graph(two)
    assert q2.classes == ((0, 1), (2, 3))
    assert section_r(q2, (1, 0)) == (2, 3, 0, 1)
    with pytest.raises(InputError):
        section_r(quotient_graph(path_graph(3)), (1, 0))


def test_parser_contract_in_graph():
    with pytest.raises(InputError, match="self-loop"):
        Graph.from_edges(2, [(1, 1)])
    with pytest.raises(InputError):
        Graph.from_edges(2, [(0, 2)])


# exhaustive against oracles -------------------------------------------------------------

def test_components_match_transposition_oracle_exhaustive():
    for g in graphs_up_to(6):
        assert [list(c) for c in coherent_components(g).classes] == oracles.transposition_classes(g)


def test_bounds_match_definition_exhaustive():
    for g in graphs_up_to(6, nonempty=True):
        assert (xi(g), Xi(g)) == oracles.bounds_from_definition(g)


def test_automorphisms_match_brute_force():
    for g in graphs_up_to(5):
        assert graph_automorphisms(g) == oracles.brute_automorphisms(g)


# properties ------------------------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(graphs())
def test_equivalence_is_transposition_symmetry(g):
    for v, w in combinations(range(g.vertex_count), 2):
        assert equivalent(g, v, w) == oracles.swap_preserves_edges(g, v, w)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_quotient_edges_are_complete_between_classes(g):
    q = quotient_graph(g)
    for e in q.qedges:
        lam, mu = (tuple(e) * 2)[:2] if len(e) == 1 else tuple(e)
        for v in q.classes[lam]:
            for w in q.classes[mu]:
                if v != w:
                    assert g.adjacent(v, w)


@settings(max_examples=150, deadline=None)
@given(graphs())
def test_bounds_sandwich(g):
    if g.edges:
        assert xi(g) <= Xi(g) <= 2 * g.vertex_count


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=7))
def test_section_splits_projection(g):
    q = quotient_graph(g)
    auts = set(graph_automorphisms(g))
    for psi in quotient_automorphisms(q):
        r = section_r(q, psi)
        assert r in auts
        assert project_to_quotient(q, r) == tuple(psi)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=6))
def test_automorphisms_form_a_group(g):
    auts = set(graph_automorphisms(g))
    assert tuple(range(g.vertex_count)) in auts
    for a in auts:
        assert inverse(a) in auts
        for b in auts:
            assert compose(a, b) in auts
