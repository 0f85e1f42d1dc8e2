import pytest
from hypothesis import given, settings, strategies as st

from brmult.errors import HypothesisError
from brmult.formulas import (
    AlgebraExtension,
    check_additivity,
    check_dvr_fitting,
    check_hs_consistency,
    check_projection,
    compute_pure_degree,
    multiplicity_report,
)
from brmult.modules import SubmoduleOfFree, declared_prime
from brmult.polyring import PolyRing, QuotientRing
from instances import (
    curve_family,
    curve_module_family,
    cusp_normalization,
    cusp_ring,
    gaussian_family,
    hypersurface_family,
    node_diagonal_family,
    split_family,
)


# --- pure degree ----------------------------------------------------------------

def test_identity_has_degree_one():
    R = QuotientRing.polynomial(["x", "y"])
    assert compute_pure_degree(AlgebraExtension.identity(R)).delta == 1


def test_square_map_has_degree_two():
    _, ext, _, _ = curve_family(2, 1)
    pd = compute_pure_degree(ext)
    assert pd.delta == 2
    assert pd.fiber == 2


def test_cusp_normalization_is_birational():
    C, ext, _, _, primes = cusp_normalization()
    assert compute_pure_degree(ext, primes).delta == 1


def test_declared_degree_mismatch_is_noted():
    U = QuotientRing.polynomial(["u"])
    T = QuotientRing.polynomial(["t"])
    ext = AlgebraExtension(U, T, [T.var(0) ** 3], degree=2)
    pd = compute_pure_degree(ext)
    assert pd.delta == 3 and pd.provenance == "declared" and pd.notes


def test_rank_varying_over_components_is_rejected():
    P = PolyRing(["x", "y"])
    x, y = P.gens()
    A = QuotientRing(P, [x * y])
    # k[x,y]/(xy) -> k[x]: rank 1 over the branch y = 0, rank 0 over x = 0
    B = QuotientRing(P, [y])
    ext = AlgebraExtension(A, B, [P.var(0), P.zero()])
    with pytest.raises(HypothesisError):
        compute_pure_degree(ext)


# --- projection -----------------------------------------------------------------

def test_projection_identity():
    R = QuotientRing.polynomial(["x", "y"])
    x, y = R.gens()
    M = SubmoduleOfFree.ideal(R, [x**2, y**3])
    rep = check_projection(R, AlgebraExtension.identity(R), M, SubmoduleOfFree.free(R, 1))
    assert rep.verdict is True
    assert rep.lhs == rep.rhs == 6


@pytest.mark.parametrize("a", [1, 2, 3])
@pytest.mark.parametrize("b", [1, 2, 3])
def test_projection_curve_family(a, b):
    rep = check_projection(*curve_family(a, b))
    assert rep.verdict is True
    assert rep.delta == a
    assert rep.lhs == a * b


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
def test_projection_module_family(a, b1, b2):
    rep = check_projection(*curve_module_family(a, b1, b2))
    assert rep.verdict is True
    assert rep.lhs == a * (b1 + b2)


def test_projection_cusp():
    C, ext, q, F, primes = cusp_normalization()
    rep = check_projection(C, ext, q, F, primes)
    assert rep.verdict is True
    assert (rep.delta, rep.lhs) == (1, 2)


def test_projection_residue_degree_two():
    rep = check_projection(*gaussian_family())
    assert rep.verdict is True
    [(m, res)] = rep.components
    assert m.delta == 2 and res.e == 1
    assert rep.lhs == rep.rhs == 2


def test_projection_two_maximal_ideals():
    rep = check_projection(*split_family())
    assert rep.verdict is True
    assert [m.delta for m, _ in rep.components] == [1, 1]
    assert rep.lhs == rep.rhs == 2


def test_projection_hypothesis_short_circuit():
    U, ext, _, F = curve_family(2, 1)
    rep = check_projection(U, ext, SubmoduleOfFree.ideal(U, []), F)
    assert rep.verdict is None
    assert any(not h.ok for h in rep.hypotheses)
    assert rep.base is None


def test_projection_rejects_non_finite_extension():
    U = QuotientRing.polynomial(["u"])
    T = QuotientRing.polynomial(["u", "t"])
    ext = AlgebraExtension(U, T, [T.var(0)])
    rep = check_projection(U, ext, SubmoduleOfFree.ideal(U, [U.var(0)]), SubmoduleOfFree.free(U, 1))
    assert rep.verdict is None
    assert [h.name for h in rep.hypotheses if not h.ok] == ["module-finite"]


# --- expansion over minimal primes ------------------------------------------------

@pytest.mark.parametrize("a,b", [(1, 1), (2, 1), (2, 2), (3, 1)])
def test_additivity_hypersurfaces(a, b):
    rep = check_additivity(*hypersurface_family(a, b))
    assert rep.verdict is True
    assert rep.lhs == a + b


def test_additivity_module_over_node():
    rep = check_additivity(*node_diagonal_family())
    assert rep.verdict is True
    assert rep.lhs == 4


def test_additivity_domain_is_one_term():
    C = cusp_ring()
    x, y = C.gens()
    rep = check_additivity(C, SubmoduleOfFree.ideal(C, [x, y]), SubmoduleOfFree.free(C, 1),
                           [declared_prime(C, [])])
    assert rep.verdict is True and rep.declared
    assert len(rep.terms) == 1 and rep.rhs == rep.lhs == 2


def test_additivity_needs_primes_for_non_monomial_ring():
    C = cusp_ring()
    x, y = C.gens()
    rep = check_additivity(C, SubmoduleOfFree.ideal(C, [x, y]), SubmoduleOfFree.free(C, 1))
    assert rep.verdict is None


# --- DVR and Hilbert-Samuel --------------------------------------------------------

def test_dvr_examples():
    T = QuotientRing.polynomial(["t"])
    t = T.var(0)
    z = T.ambient.zero()
    F = SubmoduleOfFree.free(T, 2)
    rep = check_dvr_fitting(SubmoduleOfFree(T, 2, [[t**2, z], [z, t**3]]), F)
    assert (rep.e, rep.length, rep.fitting_length) == (5, 5, 5)
    rep = check_dvr_fitting(SubmoduleOfFree.ideal(T, [t]), SubmoduleOfFree.free(T, 1))
    assert (rep.e, rep.length, rep.fitting_length) == (1, 1, 1)
    rep = check_dvr_fitting(F, F)
    assert (rep.e, rep.length, rep.fitting_length) == (0, 0, 0)


def test_dvr_rejects_other_rings():
    R = QuotientRing.polynomial(["x", "y"])
    rep = check_dvr_fitting(SubmoduleOfFree.ideal(R, list(R.gens())), SubmoduleOfFree.free(R, 1))
    assert rep.verdict is None


@pytest.mark.parametrize("a", [1, 2, 3])
def test_hs_powers_of_maximal_ideal(a):
    R = QuotientRing.polynomial(["x", "y"])
    x, y = R.gens()
    q = SubmoduleOfFree.ideal(R, [x**i * y ** (a - i) for i in range(a + 1)])
    rep = check_hs_consistency(q)
    assert rep.verdict is True
    assert rep.rees == rep.powers == a * a


def test_hs_cusp():
    C = cusp_ring()
    rep = check_hs_consistency(SubmoduleOfFree.ideal(C, list(C.gens())))
    assert rep.rees == rep.powers == 2


def test_multiplicity_report_transcript():
    R = QuotientRing.polynomial(["x", "y"])
    x, y = R.gens()
    rep = multiplicity_report(SubmoduleOfFree.ideal(R, [x]), SubmoduleOfFree.free(R, 1))
    assert rep.verdict is None
    assert rep.hypotheses[-1].name == "finite length" and not rep.hypotheses[-1].ok
