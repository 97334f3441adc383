from fractions import Fraction
from itertools import combinations, product

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from helpers import graphs_up_to
from rinfty.errors import DomainError, ResourceError
from rinfty.graph import Graph, complete_graph, cycle_graph, edgeless_graph, path_graph
from rinfty.lie import (
    GradedPcLie,
    bracket_word_is_nonzero,
    envelope_value,
    find_nonzero_bracket_word,
    find_nonzero_bracket_word_general,
    series_dims,
    weight_multiplicities,
    weight_multiplicity,
)
from rinfty.words import (
    bracket_words_of_weight,
    bw_parse,
    bw_to_str,
    bw_weight,
    is_lyndon,
    lyndon_words,
    standard_factorization,
    witt_number,
)


def test_witt_numbers_known_values():
    # necklace counts for two and three letters
    assert [witt_number(2, i) for i in range(1, 9)] == [2, 1, 2, 3, 6, 9, 18, 30]
    assert [witt_number(3, i) for i in range(1, 7)] == [3, 3, 8, 18, 48, 116]


def test_lyndon_words_against_definition():
    for k in (1, 2, 3):
        for i in range(1, 7):
            brute = [w for w in product(range(k), repeat=i)
                     if all(w < w[j:] + w[:j] for j in range(1, i))]
            assert lyndon_words(k, i) == sorted(brute)
            assert len(brute) == witt_number(k, i)


def test_standard_factorization_parts_are_lyndon():
    for w in lyndon_words(3, 5):
        u, v = standard_factorization(w)
        assert u + v == w and is_lyndon(u) and is_lyndon(v) and u < v


def test_bracket_word_text_round_trip():
    b = (("a", "b"), "c")
    assert bw_to_str(b) == "[[a,b],c]"
    assert bw_parse("[[a,b],c]") == b
    with pytest.raises(ValueError):
        bw_parse("[a,b")


def test_bracket_words_of_weight_counts():
    # binary trees with labelled leaves: n = 3 distinct leaves gives 2 shapes * 3! = 12
    words = list(bracket_words_of_weight({"x": 1, "y": 1, "z": 1}))
    assert len(words) == len(set(words)) == 12
    assert all(bw_weight(w) == {"x": 1, "y": 1, "z": 1} for w in words)


def test_dims_match_free_lie_oracle_and_series():
    for g in graphs_up_to(4):
        expected = oracles.pc_lie_dims(g, 4)
        assert GradedPcLie(g, 4).dims() == expected
        assert series_dims(g, 4) == expected


def test_free_and_abelian_extremes():
    assert GradedPcLie(complete_graph(3), 6).dims() == [3, 3, 8, 18, 48, 116]
    assert GradedPcLie(edgeless_graph(3), 3).dims() == [3, 0, 0]


def test_lazy_layers_match_eager():
    g = cycle_graph(5)
    assert GradedPcLie(g, 5, eager=False).dims() == GradedPcLie(g, 5).dims()


def test_dim_cap_guard():
    L = GradedPcLie(complete_graph(3), 8, dim_cap=50, eager=False)
    assert L.dim(5) == 48
    with pytest.raises(ResourceError):
        L.dim(6)


def _basis(L):
    return [(i, k) for i in range(1, L.class_bound + 1) for k in range(L.dim(i))]


def _elem(L, i, k):
    from rinfty.lie import LieElement
    return LieElement(i, {k: Fraction(1)})


def test_antisymmetry_and_jacobi_on_structure_constants():
    for g in graphs_up_to(4, nonempty=True):
        L = GradedPcLie(g, 4)
        B = _basis(L)
        for (p, s), (q, t) in product(B, B):
            if p + q > 4:
                continue
            x, y = _elem(L, p, s), _elem(L, q, t)
            assert (L.bracket(x, y) + L.bracket(y, x)).is_zero()
        for (p, s), (q, t), (r, u) in product(B, B, B):
            if p + q + r > 4:
                continue
            x, y, z = _elem(L, p, s), _elem(L, q, t), _elem(L, r, u)
            j = L.bracket(x, L.bracket(y, z)) + L.bracket(y, L.bracket(z, x)) + L.bracket(z, L.bracket(x, y))
            assert j.is_zero()


def test_weight_components_add_up():
    for g in graphs_up_to(4, nonempty=True):
        L = GradedPcLie(g, 4)
        mults = weight_multiplicities(g, [4] * g.vertex_count)
        for i in range(1, 5):
            assert sum(m for e, m in mults.items() if sum(e) == i) == L.dim(i)
            for e, m in mults.items():
                if sum(e) == i:
                    assert L.weight_component_dim(e) == m


def test_envelope_agrees_with_layers():
    g = path_graph(4)
    L = GradedPcLie(g, 4)
    for b in bracket_words_of_weight({0: 1, 1: 2, 2: 1}):
        assert (not L.evaluate(b).is_zero()) == bool(envelope_value(L, b))


def test_nonzero_word_exists_iff_weight_multiplicity_positive():
    for g in graphs_up_to(4, nonempty=True):
        L = GradedPcLie(g, 4)
        n = g.vertex_count
        for e in product(range(3), repeat=n):
            if not 1 <= sum(e) <= 4:
                continue
            w = find_nonzero_bracket_word(L, {v: x for v, x in enumerate(e) if x})
            if weight_multiplicity(g, e):
                assert w is not None and bracket_word_is_nonzero(L, w)
                assert dict(bw_weight(w)) == {v: x for v, x in enumerate(e) if x}
            else:
                assert w is None


def test_general_word_search_on_eigenvector_stand_ins():
    g = complete_graph(3)
    L = GradedPcLie(g, 4)
    W = [L.degree_one({0: 1}), L.degree_one({1: 2}), L.degree_one({1: -1})]
    word = find_nonzero_bracket_word_general(L, W, [0, 1, 1], [2, 1, 1])
    assert sorted(bw_weight(word).items()) == [(0, 2), (1, 1), (2, 1)]
    assert bracket_word_is_nonzero(L, word, dict(enumerate(W)))
    with pytest.raises(DomainError):
        find_nonzero_bracket_word_general(GradedPcLie(edgeless_graph(2), 2),
                                          [L.degree_one({0: 1}), L.degree_one({1: 1})], [0, 1], [1, 1])


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.booleans(), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2))))
def test_series_matches_construction_random(data):
    n, mask = data
    pairs = list(combinations(range(n), 2))
    g = Graph.from_edges(n, [p for p, b in zip(pairs, mask) if b])
    assert GradedPcLie(g, 4, eager=False).dims() == series_dims(g, 4)
