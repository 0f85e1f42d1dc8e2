import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from brmult.errors import BrimError, HomogeneityError, HypothesisError, NotContainedError
from brmult.modules import (
    INFINITE,
    SubmoduleOfFree,
    declared_prime,
    fitting_ideal_0,
    generic_rank,
    length_at_prime,
    minimal_primes,
    prime_records,
    quotient_by_prime,
    quotient_length,
    quotient_length_by_degrees,
    residue_degree,
)
from brmult.polyring import PolyRing, QuotientRing, krull_dimension
from instances import random_dvr_module
from oracles import snf_length


@pytest.fixture
def kxy():
    R = QuotientRing.polynomial(["x", "y"])
    return R, R.gens()


def test_length_of_residue_field(kxy):
    R, (x, y) = kxy
    m = SubmoduleOfFree.ideal(R, [x, y])
    F = SubmoduleOfFree.free(R, 1)
    assert quotient_length(m, F) == 1
    assert quotient_length_by_degrees(m, F) == 1


def test_length_of_square(kxy):
    R, (x, y) = kxy
    m2 = SubmoduleOfFree.ideal(R, [x**2, x * y, y**2])
    F = SubmoduleOfFree.free(R, 1)
    assert quotient_length(m2, F) == 3


def test_infinite_length(kxy):
    R, (x, y) = kxy
    M = SubmoduleOfFree.ideal(R, [x])
    F = SubmoduleOfFree.free(R, 1)
    assert quotient_length(M, F) is INFINITE
    assert quotient_length_by_degrees(M, F) is INFINITE


def test_not_contained(kxy):
    R, (x, y) = kxy
    with pytest.raises(NotContainedError):
        quotient_length(SubmoduleOfFree.ideal(R, [x]), SubmoduleOfFree.ideal(R, [y]))


def test_inhomogeneous_column_rejected(kxy):
    R, (x, y) = kxy
    with pytest.raises(HomogeneityError):
        SubmoduleOfFree.ideal(R, [x + y**2])


def test_dvr_diagonal():
    T = QuotientRing.polynomial(["t"])
    t = T.var(0)
    z = T.ambient.zero()
    M = SubmoduleOfFree(T, 2, [[t**2, z], [z, t**3]])
    F = SubmoduleOfFree.free(T, 2)
    assert quotient_length(M, F) == 5
    assert quotient_length_by_degrees(M, F) == 5
    fit = fitting_ideal_0(M)
    assert quotient_length(fit, SubmoduleOfFree.free(T, 1)) == 5


def test_fitting_with_too_few_columns():
    T = QuotientRing.polynomial(["t"])
    M = SubmoduleOfFree(T, 2, [[T.var(0), T.ambient.zero()]])
    assert fitting_ideal_0(M).is_zero()


def test_residue_degree_examples():
    assert residue_degree(QuotientRing.polynomial(["x"])) == 1
    W = PolyRing(["u", "z"], [1, 0])
    z = W.var(1)
    assert residue_degree(QuotientRing(W, [z**2 + 1])) == 2
    assert residue_degree(QuotientRing(W, [(z**2 + 1) ** 2])) == 2
    with pytest.raises(BrimError):
        residue_degree(QuotientRing(W, [z**2 - 1]))


def test_length_divides_by_residue_degree():
    W = PolyRing(["u", "z"], [1, 0])
    u, z = W.gens()
    G = QuotientRing(W, [z**2 + 1])
    M = SubmoduleOfFree.ideal(G, [u**3])
    assert quotient_length(M, SubmoduleOfFree.free(G, 1)) == 3


@pytest.mark.parametrize("seed", range(12))
def test_dvr_lengths_vs_smith_form(seed):
    rng = random.Random(seed)
    f = rng.randint(1, 3)
    T, M, diag = random_dvr_module(rng, f)
    F = SubmoduleOfFree.free(T, f, M.shifts)
    rows = [[{e[0]: c for e, c in M.columns[j][i].terms.items()} for j in range(f)] for i in range(f)]
    expected = snf_length(rows, f)
    assert expected == sum(diag)
    assert quotient_length(M, F) == expected
    assert quotient_length_by_degrees(M, F) == expected


def test_chain_additivity(kxy):
    R, (x, y) = kxy
    F = SubmoduleOfFree.free(R, 2, (0, 1))
    z = R.ambient.zero()
    M = SubmoduleOfFree(R, 2, [[x**3, z], [y**3, z], [z, x**2], [z, y**2], [x * y, x]], (0, 1))
    L = SubmoduleOfFree(R, 2, M.columns + [[x**2, z], [z, y]], (0, 1))
    a, b, c = quotient_length(M, L), quotient_length(L, F), quotient_length(M, F)
    assert a + b == c
    assert quotient_length_by_degrees(M, F) == c


def test_generator_set_independence(kxy):
    R, (x, y) = kxy
    F = SubmoduleOfFree.free(R, 1)
    A = SubmoduleOfFree.ideal(R, [x**2, y**2])
    B = SubmoduleOfFree.ideal(R, [y**2, x**2 + y**2, x**2 - 3 * y**2])
    assert A.equals(B)
    assert quotient_length(A, F) == quotient_length(B, F) == 4


def test_monomial_minimal_primes():
    R = PolyRing(["x", "y", "z"])
    x, y, z = R.gens()
    primes = minimal_primes([x * y, x * z])
    assert sorted(p.var_indices for p in primes) == [(0,), (1, 2)]
    primes = minimal_primes([x**2 * y])
    lens = {p.var_indices: length_at_prime([x**2 * y], p) for p in primes}
    assert lens == {(0,): 2, (1,): 1}


def test_prime_records_need_monomial_ring():
    W = PolyRing(["x", "y"], [2, 3])
    C = QuotientRing(W, [W.var(1) ** 2 - W.var(0) ** 3])
    with pytest.raises(HypothesisError):
        prime_records(C)
    P = declared_prime(C, [])
    assert P.ell == 1 and P.d == 1


def test_declared_prime_hypersurface_order():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    Q = QuotientRing(R, [x**2 * y])
    assert declared_prime(Q, [x]).ell == 2
    assert declared_prime(Q, [y]).ell == 1
    with pytest.raises(HypothesisError):
        declared_prime(Q, [R.one()])


def test_declared_length_disagreement_noted():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    Q = QuotientRing(R, [x**2 * y])
    rec = declared_prime(Q, [x], ell=5)
    assert rec.ell == 5 and rec.notes


@pytest.mark.parametrize("seed", range(8))
def test_squarefree_lengths_are_one(seed):
    rng = random.Random(seed)
    R = PolyRing(["x", "y", "z", "w"])
    gens = []
    for _ in range(rng.randint(1, 4)):
        support = rng.sample(range(4), rng.randint(1, 3))
        gens.append(R.monomial(tuple(1 if i in support else 0 for i in range(4))))
    Q = QuotientRing(R, gens)
    recs = prime_records(Q)
    assert all(r.ell == 1 for r in recs)
    assert max(r.d for r in recs) == krull_dimension(Q)


def test_generic_rank_and_quotient_by_prime():
    R = PolyRing(["x", "y"])
    x, y = R.gens()
    Q = QuotientRing(R, [x * y])
    xq, yq = Q.gens()
    z = R.zero()
    N = SubmoduleOfFree(Q, 2, [[xq, z], [z, xq]])
    px, py = sorted(prime_records(Q), key=lambda p: p.var_indices)
    assert generic_rank(N, px) == 0
    assert generic_rank(N, py) == 2
    Np = quotient_by_prime(N, py)
    assert Np.ring.relations and Np.rank == 2


matrix_entries = st.lists(st.integers(-2, 2), min_size=6, max_size=6)


@settings(max_examples=30, deadline=None)
@given(matrix_entries, st.integers(0, 5))
def test_rank_bounds_and_permutation_invariance(vals, k):
    R = QuotientRing.polynomial(["x", "y"])
    x, y = R.gens()
    lin = [a * x + b * y for a, b in zip(vals[::2], vals[1::2])]
    cols = [[lin[0], lin[1]], [lin[1], lin[2]], [lin[2], lin[0]]]
    N = SubmoduleOfFree(R, 2, cols)
    [p] = prime_records(R)
    r = generic_rank(N, p)
    assert r <= min(2, 3)
    perms = list(permutations(range(2)))
    P = N.permuted(perms[k % 2])
    assert generic_rank(P, p) == r
