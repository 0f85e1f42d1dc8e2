"""Verifiers for the projection and expansion formulas and related identities.

Each check first runs its hypothesis checks, recording every one in a
transcript; if any fails the report carries ``verdict = None`` and no
formula comparison is attempted.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial, prod

from . import config
from . import monomial as mono
from .errors import BrimError, HomogeneityError, HypothesisError
from .groebner import ideal_groebner, reduce_poly
from .modules import (
    INFINITE,
    SubmoduleOfFree,
    fitting_ideal_0,
    prime_records,
    quotient_by_prime,
    quotient_length,
    quotient_length_by_degrees,
    residue_degree,
    with_ranks,
)
from .polyring import Poly, QuotientRing, as_quotient, krull_dimension, univariate_factors, weighted_degree
from .rees import MultiplicityResult, br_multiplicity, fit_polynomial, s_invariant


@dataclass
class HypothesisCheck:
    name: str
    ok: bool
    detail: str = ""

    def to_payload(self) -> dict:
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


class _Transcript(list):
    def add(self, name, ok, detail=""):
        self.append(HypothesisCheck(name, bool(ok), detail))
        return ok

    def failed(self) -> bool:
        return any(not h.ok for h in self)


def _rat(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


# --- extensions ----------------------------------------------------------------

@dataclass
class MaximalIdealRecord:
    generators: tuple  # Poly in the target's ambient ring
    delta: int | None = None
    s: int | None = None
    in_phi: bool = False
    declared: bool = False
    flags: list = field(default_factory=list)
    component: QuotientRing | None = None

    def label(self) -> str:
        return "(" + ", ".join(str(g) for g in self.generators) + ")"


class AlgebraExtension:
    """A graded ring map R -> R' making R' a module-finite R-algebra.

    ``images[i]`` is the image of the i-th variable of R.  Each image must be
    homogeneous of degree lambda * weight for one rational scaling lambda.
    ``degree`` optionally declares the pure degree; ``maximal_ideals``
    optionally declares the graded maximal ideals of R' by generators.
    """

    def __init__(self, source, target, images, degree=None, maximal_ideals=None, name=None):
        self.source = as_quotient(source)
        self.target = as_quotient(target)
        amb = self.target.ambient
        self.images = [amb(g) for g in images]
        if len(self.images) != self.source.nvars:
            raise ValueError(f"need {self.source.nvars} images, got {len(self.images)}")
        self.declared_degree = degree
        self.declared_maximal = (
            [tuple(amb(g) for g in m) for m in maximal_ideals] if maximal_ideals is not None else None
        )
        self.name = name
        self._delta = None

    @classmethod
    def identity(cls, R) -> AlgebraExtension:
        R = as_quotient(R)
        return cls(R, R, list(R.gens()))

    @property
    def scaling(self) -> Fraction:
        """The factor lambda with deg(image of x) = lambda * deg(x)."""
        lam = None
        for i, (g, w) in enumerate(zip(self.images, self.source.weights)):
            if self.target.is_zero(g):
                continue
            d = weighted_degree(g)
            if d is None:
                raise HomogeneityError(f"image {g} of {self.source.names[i]} is not homogeneous")
            if w == 0:
                if d != 0:
                    raise HomogeneityError(f"weight-0 variable {self.source.names[i]} maps to degree {d}")
                continue
            r = Fraction(d, w)
            if lam is None:
                lam = r
            elif lam != r:
                raise HomogeneityError(f"images scale degrees by both {lam} and {r}")
        if lam is None or lam <= 0:
            raise HomogeneityError("structure map does not scale degrees by a positive factor")
        return lam

    def map_poly(self, f: Poly, target_ring=None) -> Poly:
        amb = (target_ring or self.target).ambient
        return self.source.ambient(f).substitute([g.change_ring(amb) for g in self.images], amb)

    def base_change(self, U: SubmoduleOfFree, component=None) -> SubmoduleOfFree:
        """Submodule of R'^f generated by the images of U's generators."""
        ring = component or self.target
        lam = self.scaling
        shifts = [lam * s for s in U.shifts]
        if any(s.denominator != 1 for s in shifts):
            raise HomogeneityError("degree scaling makes basis shifts non-integral")
        cols = [[self.map_poly(a, ring) for a in c] for c in U.columns]
        return SubmoduleOfFree(ring, U.rank, cols, [int(s) for s in shifts])

    # hypothesis helpers -------------------------------------------------------

    def is_well_defined(self) -> bool:
        return all(self.target.is_zero(self.map_poly(r)) for r in self.source.relations)

    def is_module_finite(self) -> bool:
        """R'/(images of positive-weight variables) is finite-dimensional over k."""
        pos = [g for g, w in zip(self.images, self.source.weights) if w > 0]
        return krull_dimension(self.target.quotient(pos)) == 0

    def maximal_ideals(self) -> list:
        if self.declared_maximal is not None:
            return [MaximalIdealRecord(m, declared=True) for m in self.declared_maximal]
        T = self.target
        pos = [T.var(i) for i in T.positive_weight_vars()]
        zero = T.zero_weight_vars()
        if not zero:
            return [MaximalIdealRecord(tuple(pos))]
        if len(zero) > 1:
            raise HypothesisError("maximal ideals", "several weight-0 variables: declare the maximal ideals")
        z = zero[0]
        g = _degree0_relation(T, z)
        return [MaximalIdealRecord(tuple(pos) + (h,)) for h, _ in univariate_factors(g, z)]


def _degree0_relation(T: QuotientRing, z: int) -> Poly:
    cands = [g for g in T.gb if all(all(k == 0 for i, k in enumerate(e) if i != z) for e in g.terms)]
    if len(cands) != 1:
        raise BrimError("could not isolate the degree-0 relation")
    return cands[0]


def _numerator_at_top(R: QuotientRing):
    pos = [w for w in R.weights if w > 0]
    return mono.leading_series_data(R.hilbert_numerator(), pos)


def _finite_dimension(R: QuotientRing) -> int | None:
    """dim_k R when finite (via the Hilbert series), else None."""
    pos = [w for w in R.weights if w > 0]
    q = mono.series_to_polynomial(R.hilbert_numerator(), pos)
    return None if q is None else mono.upoly_value_at_one(q)


def affine_fiber_dimension(ext: AlgebraExtension, point) -> int | None:
    """dim_k R'/(x_i - a_i)R' for a point a of the base (a polynomial ring)."""
    T = ext.target
    amb = T.ambient
    gens = list(T.relations) + [g - amb.const(T.field(a)) for g, a in zip(ext.images, point)]
    gb = ideal_groebner(gens)
    lms = [g.leading_term()[0] for g in gb]
    ones = (1,) * amb.nvars
    q = mono.series_to_polynomial(mono.hilbert_numerator(lms, ones), ones)
    return None if q is None else mono.upoly_value_at_one(q)


@dataclass
class PureDegree:
    delta: int | None
    provenance: str  # "computed" or "declared"
    per_prime: dict = field(default_factory=dict)
    fiber: int | None = None
    notes: list = field(default_factory=list)


def compute_pure_degree(ext: AlgebraExtension, primes=None, seed: int = 0) -> PureDegree:
    """Generic rank of R' over R, checked for constancy on the minimal primes.

    On the component cut out by a minimal prime p of R the rank is
    lambda^{d_p} c(R'/pR') / c(R/p), where c is the normalized leading
    coefficient of the Hilbert series and lambda the degree scaling.  If R
    is a polynomial ring the value is compared with the k-dimension of a
    random fiber.
    """
    R, T = ext.source, ext.target
    lam = ext.scaling
    if primes is None and R.is_monomial_ring():
        primes = prime_records(R)
    notes = []
    if primes is None:
        groups = [("(0)", R, T)]
        notes.append("minimal primes of the base unknown; rank measured on the top-dimensional part only")
    else:
        groups = []
        for p in primes:
            groups.append((p.label(), R.quotient(p.generators), T.quotient([ext.map_poly(g) for g in p.generators])))
    per = {}
    for label, Rp, Tp in groups:
        D, c = _numerator_at_top(Rp)
        D2, c2 = _numerator_at_top(Tp)
        if D2 < D:
            per[label] = Fraction(0)
        elif D2 > D:
            raise HypothesisError("module-finite", f"R' has larger dimension than R over {label}")
        else:
            per[label] = lam**D * c2 / c
    values = set(per.values())
    if len(values) != 1:
        raise HypothesisError(
            "pure degree", "rank varies over the minimal primes: "
            + ", ".join(f"{k}: {v}" for k, v in per.items())
        )
    rank = values.pop()
    if rank.denominator != 1 or rank < 1:
        raise HypothesisError("pure degree", f"generic rank {rank} is not a positive integer")
    out = PureDegree(int(rank), "computed", {k: int(v) for k, v in per.items()}, notes=notes)
    if not R.relations and not R.zero_weight_vars():
        rng = random.Random(seed)
        point = [rng.randint(1, 10**6) for _ in range(R.nvars)]
        out.fiber = affine_fiber_dimension(ext, point)
        if out.fiber != out.delta:
            out.notes.append(f"random fiber has dimension {out.fiber}, expected {out.delta}")
    if ext.declared_degree is not None:
        out.provenance = "declared"
        if ext.declared_degree != out.delta:
            out.notes.append(f"declared degree {ext.declared_degree} differs from computed {out.delta}")
    return out


def component_ring(T: QuotientRing, m: MaximalIdealRecord) -> QuotientRing:
    """The graded component of R' at m: R' / (m_0)^K with m_0 the degree-0 part of m.

    K = dim_k R'_0 bounds the nilpotency of the maximal ideal of each local
    factor of the Artinian ring R'_0, so (m_0)^K cuts out exactly that factor.
    """
    zero_gens = [g for g in m.generators if weighted_degree(g) == 0 and not g.is_zero() and not _is_unit_const(g)]
    if not zero_gens:
        return T
    K = _degree0_dimension(T)
    powers = [prod(c, start=T.ambient.one()) for c in combinations_with_replacement(zero_gens, K)]
    return T.quotient(powers)


def _is_unit_const(g: Poly) -> bool:
    return all(not any(e) for e in g.terms)


def _degree0_dimension(T: QuotientRing) -> int:
    zero = T.zero_weight_vars()
    lms = T.leading_monomials()
    bounds = mono.zero_weight_bounds(lms, T.weights)
    count = 0
    for zexp in mono._box([bounds[i] for i in zero]):
        e = [0] * T.nvars
        for i, k in zip(zero, zexp):
            e[i] = k
        if not mono.in_ideal(tuple(e), lms):
            count += 1
    return count


# --- reports -------------------------------------------------------------------

def _mult_payload(r: MultiplicityResult | None):
    return None if r is None else r.to_payload(config.current().verbose)


@dataclass
class ProjectionReport:
    hypotheses: list
    delta: int | None = None
    delta_provenance: str | None = None
    lhs: int | None = None
    rhs: int | None = None
    base: MultiplicityResult | None = None
    components: list = field(default_factory=list)  # (MaximalIdealRecord, MultiplicityResult)
    notes: list = field(default_factory=list)

    @property
    def verdict(self):
        if self.lhs is None:
            return None
        return self.lhs == self.rhs

    def to_payload(self) -> dict:
        return {
            "verdict": self.verdict,
            "delta": self.delta,
            "delta_provenance": self.delta_provenance,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "base": _mult_payload(self.base),
            "components": [
                {
                    "maximal_ideal": m.label(),
                    "delta_m": m.delta,
                    "s_m": m.s,
                    "in_phi": m.in_phi,
                    "declared": m.declared,
                    "flags": list(m.flags),
                    "contribution": m.delta * r.e if m.in_phi else None,
                    "multiplicity": _mult_payload(r),
                }
                for m, r in self.components
            ],
            "notes": list(self.notes),
        }


def _common_hypotheses(tr: _Transcript, R, M, N):
    d = krull_dimension(R)
    if not tr.add("positive dimension", d > 0, f"dim R = {d}"):
        return False
    if not tr.add("M contained in N", N.contains(M)):
        return False
    L = quotient_length(M, N, check=False)
    return tr.add("finite length", L is not INFINITE, f"length(N/M) = {L}")


def _generic_freeness(tr: _Transcript, N, primes, seed):
    R = N.ring
    if primes is None and not R.is_monomial_ring():
        if N.is_full():
            return tr.add("generically free of positive rank", True, f"N is free of rank {N.rank}")
        return tr.add(
            "generically free of positive rank", True,
            "not verified: minimal primes undeclared; s read from the Rees algebra",
        )
    recs = with_ranks(prime_records(R, primes), N, seed=seed)
    bad = [p for p in recs if not p.r]
    detail = ", ".join(f"r{p.label()} = {p.r}" for p in recs)
    return tr.add("generically free of positive rank", not bad, detail)


def check_projection(R, ext: AlgebraExtension, M: SubmoduleOfFree, N: SubmoduleOfFree,
                     primes=None, seed=None) -> ProjectionReport:
    """Compare delta * e(M,N) with the sum over m in Phi of delta_m * e(M'_m, N'_m)."""
    if seed is None:
        seed = config.current().seed
    R = as_quotient(R)
    tr = _Transcript()
    rep = ProjectionReport(tr)
    if not tr.add("same base ring", ext.source == R == N.ring):
        return rep
    if not _common_hypotheses(tr, R, M, N):
        return rep
    if not _generic_freeness(tr, N, primes, seed):
        return rep
    try:
        lam = ext.scaling
        tr.add("graded structure map", True, f"degree scaling {lam}")
    except HomogeneityError as exc:
        tr.add("graded structure map", False, str(exc))
        return rep
    if not tr.add("ring map well defined", ext.is_well_defined(), "relations of R map into the ideal of R'"):
        return rep
    if not tr.add("module-finite", ext.is_module_finite(), "R'/(image of the maximal ideal) is finite-dimensional"):
        return rep
    try:
        pd = compute_pure_degree(ext, primes, seed)
    except HypothesisError as exc:
        tr.add("pure degree", False, exc.detail)
        return rep
    tr.add("pure degree", True, f"delta = {pd.delta}" + (f"; {'; '.join(pd.notes)}" if pd.notes else ""))
    rep.delta = ext.declared_degree if ext.declared_degree is not None else pd.delta
    rep.delta_provenance = pd.provenance
    rep.notes.extend(pd.notes)
    try:
        mids = ext.maximal_ideals()
    except HypothesisError as exc:
        tr.add("maximal ideals", False, exc.detail)
        return rep
    except BrimError as exc:
        tr.add("maximal ideals", False, str(exc))
        return rep
    base_rd = residue_degree(R)
    for m in mids:
        quo = ext.target.quotient(m.generators)
        dim = _finite_dimension(quo)
        if dim is None or krull_dimension(quo) != 0:
            tr.add("maximal ideals", False, f"{m.label()} does not have finite colength in R'")
            return rep
        if dim % base_rd:
            tr.add("maximal ideals", False, f"residue degree of {m.label()} not a multiple of that of R")
            return rep
        m.delta = dim // base_rd
        m.flags.extend(_maximality_flags(quo))
        m.component = component_ring(ext.target, m)
        if m.component is not ext.target:
            m.component.declared_residue_degree = dim
    tr.add("maximal ideals", True, ", ".join(f"{m.label()}: delta_m = {m.delta}" for m in mids))
    rep.base = br_multiplicity(M, N, primes=primes, seed=seed)
    s = rep.base.s
    rep.lhs = rep.delta * rep.base.e
    total = 0
    for m in mids:
        Mm = ext.base_change(M, m.component)
        Nm = ext.base_change(N, m.component)
        res = br_multiplicity(Mm, Nm, seed=seed)
        m.s = res.s
        m.in_phi = res.s == s
        if m.in_phi:
            total += m.delta * res.e
        rep.components.append((m, res))
    rep.rhs = total
    return rep


def _maximality_flags(quo: QuotientRing) -> list:
    """Flags for maximal ideals whose maximality is not verified."""
    zero = quo.zero_weight_vars()
    if not zero:
        return []
    if len(zero) > 1:
        return ["maximality not verified (several weight-0 variables)"]
    try:
        residue_degree(quo)
    except BrimError:
        return ["not maximal: degree-0 quotient is not a field"]
    g = _degree0_relation(quo, zero[0])
    facs = univariate_factors(g, zero[0])
    if len(facs) != 1 or facs[0][1] != 1:
        return ["not maximal: degree-0 quotient is not a field"]
    return []


@dataclass
class AdditivityReport:
    hypotheses: list
    lhs: int | None = None
    rhs: int | None = None
    s: int | None = None
    base: MultiplicityResult | None = None
    terms: list = field(default_factory=list)  # (MinimalPrimeRecord, MultiplicityResult)
    declared: bool = False

    @property
    def verdict(self):
        if self.lhs is None:
            return None
        return self.lhs == self.rhs

    def to_payload(self) -> dict:
        return {
            "verdict": self.verdict,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "s": self.s,
            "declared_primes": self.declared,
            "base": _mult_payload(self.base),
            "terms": [
                {**p.to_payload(), "contribution": p.ell * r.e, "multiplicity": _mult_payload(r)}
                for p, r in self.terms
            ],
        }


def check_additivity(R, M: SubmoduleOfFree, N: SubmoduleOfFree, primes=None, seed=None) -> AdditivityReport:
    """Compare e(M,N) with the sum over p in Lambda of l_p * e(M(p), N(p))."""
    if seed is None:
        seed = config.current().seed
    R = as_quotient(R)
    tr = _Transcript()
    rep = AdditivityReport(tr, declared=primes is not None)
    if not tr.add("same base ring", R == N.ring):
        return rep
    if not _common_hypotheses(tr, R, M, N):
        return rep
    try:
        recs = with_ranks(prime_records(R, primes), N, seed=seed)
    except HypothesisError as exc:
        tr.add(exc.clause, False, exc.detail)
        return rep
    tr.add("minimal primes", True, ", ".join(p.label() for p in recs))
    missing = [p for p in recs if p.ell is None]
    if not tr.add("lengths at primes", not missing, ", ".join(f"l{p.label()} = {p.ell}" for p in recs)):
        return rep
    bad = [p for p in recs if not p.r]
    if not tr.add("generically free of positive rank", not bad, ", ".join(f"r{p.label()} = {p.r}" for p in recs)):
        return rep
    s = s_invariant(N, recs)
    rep.s = s
    rep.base = br_multiplicity(M, N, primes=primes, seed=seed)
    rep.lhs = rep.base.e
    total = 0
    for p in recs:
        if p.d + p.r - 1 != s:
            continue
        Np = quotient_by_prime(N, p)
        Mp = quotient_by_prime(M, p)
        res = br_multiplicity(Mp, Np, seed=seed)
        total += p.ell * res.e
        rep.terms.append((p, res))
    rep.rhs = total
    return rep


@dataclass
class FittingReport:
    hypotheses: list
    e: int | None = None
    length: int | None = None
    fitting_length: int | None = None
    base: MultiplicityResult | None = None

    @property
    def verdict(self):
        if self.e is None:
            return None
        return self.e == self.length == self.fitting_length

    def to_payload(self) -> dict:
        return {
            "verdict": self.verdict,
            "e": self.e,
            "length": self.length,
            "fitting_length": self.fitting_length,
            "base": _mult_payload(self.base),
        }


def check_dvr_fitting(M: SubmoduleOfFree, N: SubmoduleOfFree, seed=None) -> FittingReport:
    """e(M,N) = length(N/M) = length(R/Fitt_0(N/M)) over k[t] with N free."""
    if seed is None:
        seed = config.current().seed
    R = N.ring
    tr = _Transcript()
    rep = FittingReport(tr)
    ok = R.nvars == 1 and not R.relations and R.weights[0] > 0
    if not tr.add("base ring k[t]", ok, f"{R!r}"):
        return rep
    if not tr.add("N is the full free module", N.is_full()):
        return rep
    if not _common_hypotheses(tr, R, M, N):
        return rep
    rep.base = br_multiplicity(M, N, seed=seed)
    rep.e = rep.base.e
    rep.length = quotient_length(M, N)
    fitt = fitting_ideal_0(M)
    rep.fitting_length = quotient_length(fitt, SubmoduleOfFree.free(R, 1))
    return rep


@dataclass
class HSReport:
    hypotheses: list
    rees: int | None = None
    powers: int | None = None
    base: MultiplicityResult | None = None
    power_coeffs: list = field(default_factory=list)
    power_window: tuple | None = None

    @property
    def verdict(self):
        if self.rees is None:
            return None
        return self.rees == self.powers

    def to_payload(self) -> dict:
        return {
            "verdict": self.verdict,
            "e": self.rees,
            "e_from_powers": self.powers,
            "power_polynomial": [_rat(c) for c in self.power_coeffs],
            "power_window": list(self.power_window) if self.power_window else None,
            "base": _mult_payload(self.base),
        }


def ideal_power(q: SubmoduleOfFree, n: int) -> SubmoduleOfFree:
    """q^n by multiplying generator polynomials directly."""
    gens = [c[0] for c in q.columns if not c[0].is_zero()]
    current = {q.ring.ambient.one()}
    for _ in range(n):
        current = {a * g for a in current for g in gens}
    return SubmoduleOfFree.ideal(q.ring, sorted(current, key=str))


def check_hs_consistency(q: SubmoduleOfFree, R=None, seed=None) -> HSReport:
    """e(q, R) by the Rees route against length(R/q^n) counted degree by degree."""
    if seed is None:
        seed = config.current().seed
    R = as_quotient(R) if R is not None else q.ring
    tr = _Transcript()
    rep = HSReport(tr)
    if not tr.add("ideal of R", q.rank == 1 and q.ring == R):
        return rep
    F = SubmoduleOfFree.free(R, 1)
    if not _common_hypotheses(tr, R, q, F):
        return rep
    rep.base = br_multiplicity(q, F, seed=seed)
    rep.rees = rep.base.e
    d = krull_dimension(R)

    def sample(n):
        v = quotient_length_by_degrees(ideal_power(q, n), F)
        if v is INFINITE:
            raise HypothesisError("finite length", f"R/q^{n} has infinite length")
        return v

    poly = fit_polynomial(sample, d)
    rep.power_coeffs = poly.coeffs
    rep.power_window = poly.window
    lead = poly.coeffs[d] if poly.degree == d else Fraction(0)
    rep.powers = int(lead * factorial(d)) if (lead * factorial(d)).denominator == 1 else None
    return rep


@dataclass
class MultiplicityReport:
    hypotheses: list
    result: MultiplicityResult | None = None

    @property
    def verdict(self):
        return None if self.result is None else True

    def to_payload(self) -> dict:
        return _mult_payload(self.result) or {}


def multiplicity_report(M: SubmoduleOfFree, N: SubmoduleOfFree, primes=None, seed=None) -> MultiplicityReport:
    """br_multiplicity preceded by recorded hypothesis checks."""
    if seed is None:
        seed = config.current().seed
    tr = _Transcript()
    rep = MultiplicityReport(tr)
    if not tr.add("common free module", M.same_ambient(N)):
        return rep
    if not _common_hypotheses(tr, N.ring, M, N):
        return rep
    try:
        if not _generic_freeness(tr, N, primes, seed):
            return rep
    except HypothesisError as exc:
        tr.add(exc.clause, False, exc.detail)
        return rep
    rep.result = br_multiplicity(M, N, primes=primes, seed=seed)
    return rep
