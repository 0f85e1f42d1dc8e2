import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from brmult.errors import ResourceError, RingMismatchError
from brmult.exact import PrimeField
from brmult.groebner import (
    FreeModuleElement,
    elimination_ideal,
    groebner_basis,
    ideal_groebner,
    is_groebner,
    normal_form,
    reduce_poly,
    s_pair,
)
from brmult.polyring import PolyRing, QuotientRing
from instances import random_ideal
from oracles import brute_hilbert_function, sympy_groebner


def _ideal_elements(R, polys):
    return [FreeModuleElement.from_coords(R, [p]) for p in polys]


def test_single_generator_is_basis():
    R = PolyRing(["x", "y"])
    x, _ = R.gens()
    G = groebner_basis([FreeModuleElement.from_coords(R, [x, 0])])
    assert [g.coords() for g in G.elements] == [[x, R.zero()]]


def test_coprime_leading_terms():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    assert ideal_groebner([x, y]) == [x, y]


def test_hand_computed_basis():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    G = ideal_groebner([x**2 - y, x**3])
    assert set(G) == {x**2 - y, x * y, y**2}
    assert is_groebner(groebner_basis(_ideal_elements(R, [x**2 - y, x**3])))


def test_normal_form_examples():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    G = groebner_basis(_ideal_elements(R, [x, y]))
    one = FreeModuleElement.from_coords(R, [R.one()])
    assert normal_form(one, G) == one
    for g in G.elements:
        assert normal_form(g, G).is_zero()
    assert reduce_poly(x**3, ideal_groebner([x**2 - y])) == x * y


def test_elimination_examples():
    R = PolyRing(["t", "x", "y"])
    t, x, y = R.gens()
    elim = elimination_ideal([x - t**2, y - t**3], ["t"])
    assert len(elim) == 1
    g = elim[0]
    # the eliminant vanishes on the parametrization
    T = PolyRing(["s"])
    s = T.var(0)
    assert g.substitute([T.zero(), s**2, s**3], T).is_zero()
    assert set(elimination_ideal([x, y], [])) == {x, y}
    assert elimination_ideal([x - t], ["t"]) == []


def test_hilbert_function_examples():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    G = groebner_basis(_ideal_elements(R, [x**2, x * y, y**2]))
    assert [G.hilbert_function(d) for d in range(4)] == [1, 2, 0, 0]
    T = PolyRing(["t"])
    t = T.var(0)
    D = groebner_basis([FreeModuleElement.from_coords(T, [t**2, 0]), FreeModuleElement.from_coords(T, [0, t**3])])
    assert sum(D.hilbert_function(d) for d in range(10)) == 5


def test_free_module_hilbert_function():
    from brmult.modules import SubmoduleOfFree

    R = PolyRing(["x", "y"])
    zero = SubmoduleOfFree(R, 1, [])
    assert zero.gb.hilbert_function(2) == 3


def test_quotient_ring_lifting():
    W = PolyRing(["x", "y"], [2, 3])
    C = QuotientRing(W, [W.var(1) ** 2 - W.var(0) ** 3])
    x, y = C.gens()
    G = groebner_basis([FreeModuleElement.from_coords(C, [x])])
    # y^2 = x^3 lies in (x) modulo the relation
    assert G.contains(FreeModuleElement.from_coords(C, [y**2]))
    assert not G.contains(FreeModuleElement.from_coords(C, [y]))


def test_mixed_modules_rejected():
    R = PolyRing(["x", "y"])
    S = PolyRing(["u"])
    with pytest.raises(RingMismatchError):
        groebner_basis([FreeModuleElement.from_coords(R, [R.var(0)]), FreeModuleElement.from_coords(S, [S.var(0)])])


def test_budget_exhaustion():
    R = PolyRing(["x", "y", "z"])
    x, y, z = R.gens()
    with pytest.raises(ResourceError):
        ideal_groebner([x**3 - y * z**2, y**3 - x * z**2, z**3 - x * y**2, x**2 * y - z**3], budget=5)


def test_s_pair_positions():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    a = FreeModuleElement.from_coords(R, [x, 0])
    b = FreeModuleElement.from_coords(R, [0, y])
    assert s_pair(a, b, R.order) is None
    c = FreeModuleElement.from_coords(R, [y, x])
    s = s_pair(a, c, R.order)
    assert s is not None


@pytest.mark.parametrize("seed", range(15))
def test_matches_sympy(seed):
    rng = random.Random(seed)
    R, gens = random_ideal(rng)
    ours = [g.terms for g in ideal_groebner(gens)]
    theirs = sympy_groebner(gens, R.names)
    assert sorted(map(sorted_items, ours)) == sorted(map(sorted_items, theirs))


def sorted_items(d):
    # both bases are reduced, so they agree up to one scalar per element
    lead = d[max(d)]
    return tuple(sorted((e, Fraction(c) / Fraction(lead)) for e, c in d.items()))


@pytest.mark.parametrize("seed", range(10))
def test_hilbert_function_vs_linear_algebra(seed):
    rng = random.Random(100 + seed)
    R, gens = random_ideal(rng, max_vars=3, max_gens=3, max_deg=3)
    G = groebner_basis(_ideal_elements(R, gens))
    coords = [[g.terms] for g in gens]
    for d in range(6):
        assert G.hilbert_function(d) == brute_hilbert_function(coords, [], R.weights, (0,), d)


def test_module_hilbert_function_vs_linear_algebra():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    shifts = (0, 1)
    cols = [[x**2, y], [y**3, x * y], [R.zero(), x]]
    G = groebner_basis([FreeModuleElement.from_coords(R, c) for c in cols], shifts=shifts)
    coords = [[c.terms for c in col] for col in cols]
    for d in range(6):
        assert G.hilbert_function(d) == brute_hilbert_function(coords, [], R.weights, shifts, d)


coeff = st.integers(-3, 3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.lists(st.tuples(coeff, coeff, coeff), min_size=1, max_size=3))
def test_membership_round_trip(seed, multipliers):
    rng = random.Random(seed)
    R, gens = random_ideal(rng, max_gens=3, max_deg=3)
    G = groebner_basis(_ideal_elements(R, gens))
    combo = R.zero()
    for g, (a, b, c) in zip(gens, multipliers):
        mult = R.const(a) + R.const(b) * R.var(0) + R.const(c) * R.var(R.nvars - 1) ** 2
        combo = combo + mult * g
    assert G.contains(FreeModuleElement.from_coords(R, [combo]))
    nf = normal_form(FreeModuleElement.from_coords(R, [combo + R.var(0) ** 7]), G)
    assert normal_form(nf, G) == nf  # idempotent


@pytest.mark.parametrize("seed", range(10))
def test_rational_vs_prime_field(seed):
    rng = random.Random(200 + seed)
    R, gens = random_ideal(rng)
    Rp = R.with_field(PrimeField(2**31 - 1))
    G = groebner_basis(_ideal_elements(R, gens))
    Gp = groebner_basis(_ideal_elements(Rp, [g.change_ring(Rp) for g in gens]))
    for d in range(7):
        assert G.hilbert_function(d) == Gp.hilbert_function(d)
