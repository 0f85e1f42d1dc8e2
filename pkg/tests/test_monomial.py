from itertools import product

from hypothesis import given, settings, strategies as st

from brmult import monomial as mono


def _count_upto(gens, weights, top):
    return {d: mono.count_standard_monomials(gens, weights, d) for d in range(top + 1)}


def test_minimal_covers_examples():
    assert mono.minimal_covers([(1, 1)], 2) == [frozenset({0}), frozenset({1})]
    assert mono.minimal_covers([(2, 1)], 2) == [frozenset({0}), frozenset({1})]
    assert mono.minimal_covers([(2, 0), (1, 1)], 2) == [frozenset({0})]
    assert mono.minimal_covers([(0, 0)], 2) == []


def test_upoly_division():
    assert mono.upoly_div_one_minus_t_pow({0: 1, 2: -1}, 2) == {0: 1}
    assert mono.upoly_div_one_minus_t_pow({0: 1, 1: -1}, 2) is None
    assert mono.series_to_polynomial({0: 1, 1: -2, 2: 1}, [1, 1]) == {0: 1}


def test_leading_series_data():
    # k[x,y]/(x^2, xy, y^2): finite, D = 0, length 3
    K = mono.hilbert_numerator([(2, 0), (1, 1), (0, 2)], (1, 1))
    assert mono.leading_series_data(K, [1, 1])[0] == 0
    assert mono.upoly_value_at_one(mono.series_to_polynomial(K, [1, 1])) == 3
    # cusp: leading term ideal (y^2) with weights (2, 3)
    D, c = mono.leading_series_data(mono.hilbert_numerator([(0, 2)], (2, 3)), [2, 3])
    assert (D, c) == (1, 1)


def test_zero_weight_numerator():
    # k[u,z]/(z^2) with z of weight 0: two copies of k[u]
    K = mono.hilbert_numerator([(0, 2)], (1, 0))
    assert K == {0: 2}


exps = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))


@settings(max_examples=80)
@given(st.lists(exps, min_size=1, max_size=4), st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3)))
def test_numerator_matches_counting(gens, weights):
    K = mono.hilbert_numerator(gens, weights)
    series = mono.series_coefficients(K, list(weights), 12)
    counted = _count_upto(mono.minimalize(gens), weights, 12)
    for d in range(13):
        assert series.get(d, 0) == counted[d]


@settings(max_examples=60)
@given(st.lists(exps.filter(any), min_size=1, max_size=4))
def test_dimension_matches_bruteforce(gens):
    assert mono.monomial_dimension(gens, 3) == 3 - mono.min_cover_size_bruteforce(gens, 3)


def test_monomials_of_degree_counts():
    assert len(mono.monomials_of_degree((1, 1), 2)) == 3
    assert len(mono.monomials_of_degree((2, 3), 6)) == 2
    assert sorted(mono.monomials_of_degree((1, 0), 1, {1: 2})) == [(1, 0), (1, 1)]
    all_small = [e for e in product(range(4), repeat=2) if e[0] * 2 + e[1] * 3 == 6]
    assert sorted(mono.monomials_of_degree((2, 3), 6)) == sorted(all_small)
