"""Submodules of graded free modules and their numerical invariants."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from . import monomial as mono
from .errors import BrimError, HomogeneityError, HypothesisError, NotContainedError, RingMismatchError
from .groebner import FreeModuleElement, GroebnerBasis, groebner_basis, ideal_groebner, reduce_poly
from .polyring import Poly, QuotientRing, as_quotient, krull_dimension, univariate_factors


class _Infinite:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "infinite"


INFINITE = _Infinite()


class SubmoduleOfFree:
    """The submodule of R^rank generated by ``columns``.

    ``shifts[i]`` is the degree of the i-th basis vector, so an entry ``a``
    in row ``i`` contributes degree ``deg(a) + shifts[i]``; every column must
    be homogeneous for this grading.
    """

    def __init__(self, ring, rank: int, columns, shifts=None, name=None):
        ring = as_quotient(ring)
        self.ring = ring
        self.rank = rank
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        if len(self.shifts) != rank:
            raise ValueError("one shift per basis vector required")
        cols = []
        for col in columns:
            col = [ring.ambient(a) for a in col]
            if len(col) != rank:
                raise ValueError(f"column of length {len(col)} in a free module of rank {rank}")
            cols.append(tuple(col))
        self.columns = cols
        self.name = name
        self.column_degrees = [self._column_degree(c) for c in cols]

    def _column_degree(self, col):
        degs = set()
        for i, a in enumerate(col):
            for e in a.terms:
                degs.add(mono.weighted_deg(e, self.ring.weights) + self.shifts[i])
        if len(degs) > 1:
            raise HomogeneityError(
                "generator (" + ", ".join(str(a) for a in col) + f") is not homogeneous for shifts {list(self.shifts)}"
            )
        return degs.pop() if degs else None

    @classmethod
    def free(cls, ring, rank: int, shifts=None, name=None) -> SubmoduleOfFree:
        ring = as_quotient(ring)
        amb = ring.ambient
        cols = [[amb.one() if i == j else amb.zero() for i in range(rank)] for j in range(rank)]
        return cls(ring, rank, cols, shifts, name=name)

    @classmethod
    def ideal(cls, ring, gens, name=None) -> SubmoduleOfFree:
        ring = as_quotient(ring)
        return cls(ring, 1, [[g] for g in gens], (0,), name=name)

    def __repr__(self):
        cols = "; ".join("(" + ", ".join(str(a) for a in c) + ")" for c in self.columns)
        return f"SubmoduleOfFree(rank={self.rank}, shifts={list(self.shifts)}, columns=[{cols}])"

    @property
    def ncols(self) -> int:
        return len(self.columns)

    def generators(self):
        return [FreeModuleElement.from_coords(self.ring, c) for c in self.columns]

    @cached_property
    def gb(self) -> GroebnerBasis:
        return groebner_basis(self.generators(), shifts=self.shifts, rank=self.rank) if self.columns else \
            _empty_basis(self)

    def same_ambient(self, other) -> bool:
        return self.ring == other.ring and self.rank == other.rank and self.shifts == other.shifts

    def contains_element(self, v: FreeModuleElement) -> bool:
        return self.gb.normal_form(v).is_zero()

    def contains(self, other: SubmoduleOfFree) -> bool:
        if not self.same_ambient(other):
            raise RingMismatchError("submodules of different free modules")
        return all(self.contains_element(g) for g in other.generators())

    def equals(self, other: SubmoduleOfFree) -> bool:
        return self.contains(other) and other.contains(self)

    def is_full(self) -> bool:
        """True when the submodule is the whole free module."""
        return all(
            self.contains_element(FreeModuleElement.unit(self.ring, self.rank, p)) for p in range(self.rank)
        )

    def is_zero(self) -> bool:
        return all(self.ring.is_zero(a) for c in self.columns for a in c)

    def over(self, ring, shifts=None) -> SubmoduleOfFree:
        """Same generator matrix read over another ring on the same variables."""
        return SubmoduleOfFree(ring, self.rank, self.columns, shifts or self.shifts)

    def with_field(self, field) -> SubmoduleOfFree:
        ring = self.ring.with_field(field)
        cols = [[a.change_ring(ring.ambient) for a in c] for c in self.columns]
        return SubmoduleOfFree(ring, self.rank, cols, self.shifts, self.name)

    def permuted(self, perm) -> SubmoduleOfFree:
        """Apply the basis permutation e_i -> e_perm[i]."""
        rank = self.rank
        cols = []
        for c in self.columns:
            new = [None] * rank
            for i, a in enumerate(c):
                new[perm[i]] = a
            cols.append(new)
        shifts = [0] * rank
        for i, s in enumerate(self.shifts):
            shifts[perm[i]] = s
        return SubmoduleOfFree(self.ring, rank, cols, shifts)

    def hilbert_numerator(self) -> dict:
        """Numerator of the Hilbert series of F/U (lifted over the ambient ring)."""
        return self.gb.hilbert_numerator()

    def quotient_dimension(self) -> int:
        """Krull dimension of F/U."""
        return self.gb.krull_dimension()


def _empty_basis(M: SubmoduleOfFree) -> GroebnerBasis:
    ring = M.ring
    if ring.relations:
        gens = []
        for r in ring.gb:
            for p in range(M.rank):
                coords = [r if i == p else ring.ambient.zero() for i in range(M.rank)]
                gens.append(FreeModuleElement.from_coords(ring.ambient, coords))
        if gens:
            gb = groebner_basis(gens, shifts=M.shifts, rank=M.rank)
            gb.quotient = ring
            return gb
    return GroebnerBasis(ring.ambient, M.rank, M.shifts, ring.ambient.order, [], True, None)


# --- lengths ------------------------------------------------------------------

def residue_degree(R) -> int:
    """Degree over k of the residue field of a graded-local ring.

    Rings without weight-0 variables have residue field k.  With one weight-0
    variable z the degree-0 subring is k[z]/(g); it is local iff g is a power
    of one irreducible, whose degree is returned.  Several weight-0 variables
    need ``R.declared_residue_degree``.
    """
    R = as_quotient(R)
    declared = getattr(R, "declared_residue_degree", None)
    if declared:
        return declared
    zero = R.zero_weight_vars()
    if not zero:
        return 1
    if len(zero) > 1:
        raise BrimError("residue degree with several weight-0 variables must be declared")
    z = zero[0]
    degree0 = [g for g in R.gb if all(all(k == 0 for i, k in enumerate(e) if i != z) for e in g.terms)]
    if len(degree0) != 1:
        raise BrimError("could not isolate the degree-0 relation")
    facs = univariate_factors(degree0[0], z)
    if len(facs) != 1:
        raise BrimError(
            "ring is not local: its degree-0 part splits as "
            + " * ".join(f"({f})^{m}" for f, m in facs)
            + "; split it into components first"
        )
    return facs[0][0].total_degree()


def _difference_length(KM, KN, pos_weights):
    delta = mono.upoly_sub(KM, KN)
    q = mono.series_to_polynomial(delta, pos_weights)
    if q is None:
        return None
    return mono.upoly_value_at_one(q)


def quotient_length(M: SubmoduleOfFree, N: SubmoduleOfFree, check: bool = True):
    """Length of N/M, or :data:`INFINITE`.

    Computed from the Hilbert series: HS(F/M) - HS(F/N) = HS(N/M) is a
    polynomial exactly when N/M has finite length, and its value at t = 1 is
    the k-dimension.  The k-dimension is divided by the residue degree.
    """
    if not M.same_ambient(N):
        raise RingMismatchError("M and N must live in the same free module")
    if check and not N.contains(M):
        raise NotContainedError("M is not contained in N")
    pos_w = [w for w in M.ring.weights if w > 0]
    dim = _difference_length(M.hilbert_numerator(), N.hilbert_numerator(), pos_w)
    if dim is None:
        return INFINITE
    if dim == 0:
        return 0
    rd = residue_degree(M.ring)
    if dim % rd:
        raise BrimError(f"k-dimension {dim} not divisible by residue degree {rd}")
    return dim // rd


def quotient_length_by_degrees(M: SubmoduleOfFree, N: SubmoduleOfFree, slack: int = 10):
    """Length of N/M summed degree by degree from standard-monomial counts.

    The sum starts at the lowest generator degree of N and stops once a run of
    ``max weight`` consecutive zero degrees beyond the top generator degree of
    N certifies that the quotient vanishes from there on (N/M is generated in
    degrees <= top and R in degrees <= max weight).  If no such run shows up
    within ``slack`` degrees past the top Groebner degree of M, or if F/M has
    larger positive dimension than F/N, the result is reported as infinite.
    """
    if not N.contains(M):
        raise NotContainedError("M is not contained in N")
    if M.quotient_dimension() > max(0, N.quotient_dimension()):
        return INFINITE
    degs = [d for d in N.column_degrees if d is not None]
    if not degs:
        return 0
    lo, top = min(degs), max(degs)
    maxw = max(M.ring.weights) or 1
    GM, GN = M.gb, N.gb
    total, run, d = 0, 0, lo
    # past the top Groebner degree of M plus slack we stop looking
    lt_degs = [mono.weighted_deg(e, M.ring.weights) + M.shifts[p] for p, e in GM.leading_terms()]
    limit = max(lt_degs + [top]) + slack + maxw
    while d <= limit:
        v = GM.hilbert_function(d) - GN.hilbert_function(d)
        total += v
        run = run + 1 if v == 0 else 0
        if d > top and run >= maxw:
            return total // residue_degree(M.ring)
        d += 1
    return INFINITE


# --- Fitting ideals -----------------------------------------------------------

def _det(rows):
    """Determinant of a square matrix of Poly by memoized Laplace expansion."""
    n = len(rows)
    if n == 0:
        return None
    memo: dict = {}

    def rec(r, cols):
        if r == n:
            return rows[0][0].ring.one()
        if cols in memo:
            return memo[cols]
        total = rows[0][0].ring.zero()
        sign = 1
        for k, c in enumerate(cols):
            a = rows[r][c]
            if not a.is_zero():
                sub = rec(r + 1, cols[:k] + cols[k + 1:])
                term = a * sub
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[cols] = total
        return total

    return rec(0, tuple(range(n)))


def maximal_minors(M: SubmoduleOfFree):
    f = M.rank
    out = []
    for cols in combinations(range(M.ncols), f):
        rows = [[M.columns[j][i] for j in cols] for i in range(f)]
        out.append(_det(rows))
    return out


def fitting_ideal_0(M: SubmoduleOfFree) -> SubmoduleOfFree:
    """Ideal of the f x f minors of the generator matrix (f = ambient rank).

    With fewer than f columns this is the zero ideal, returned as an ideal
    with no generators.
    """
    if M.ncols < M.rank:
        return SubmoduleOfFree.ideal(M.ring, [])
    minors = [m for m in maximal_minors(M) if not m.is_zero()]
    return SubmoduleOfFree.ideal(M.ring, minors)


# --- minimal primes -----------------------------------------------------------

@dataclass
class MinimalPrimeRecord:
    """A minimal prime p of the base ring with d_p, l_p and r_p."""

    generators: tuple  # Poly generators of p in the ambient ring
    var_indices: tuple | None = None  # set when p is generated by variables
    d: int | None = None
    ell: int | None = None
    r: int | None = None
    declared: bool = False
    notes: list = field(default_factory=list)

    def label(self) -> str:
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def to_payload(self) -> dict:
        return {
            "prime": self.label(),
            "d": self.d,
            "ell": self.ell,
            "r": self.r,
            "declared": self.declared,
        }


def _monomial_exps(I):
    exps = []
    for g in I:
        if g.is_zero():
            continue
        if not g.is_monomial():
            raise ValueError(f"{g} is not a monomial; declare the primes instead")
        exps.append(next(iter(g.terms)))
    return exps


def minimal_primes(I, ring=None):
    """Minimal primes of a monomial ideal (list of monomial Poly generators).

    Each prime is generated by a set of variables; the records carry only the
    generators.  ``ring`` (a PolyRing) is needed when ``I`` is empty.
    """
    I = list(I)
    amb = ring.ambient if ring is not None else I[0].ring
    exps = _monomial_exps(I)
    covers = mono.minimal_covers(exps, amb.nvars)
    out = []
    for c in covers:
        idx = tuple(sorted(c))
        out.append(MinimalPrimeRecord(tuple(amb.var(i) for i in idx), idx))
    return out


def length_at_prime(I, p, ring=None) -> int:
    """Length of R_p for R = k[x]/I, I monomial and p a minimal prime of I.

    Setting the variables outside p to 1 gives an ideal of k[p-variables]
    primary to the maximal ideal; its number of standard monomials is l_p.
    """
    I = list(I)
    amb = ring.ambient if ring is not None else I[0].ring
    exps = _monomial_exps(I)
    pv = tuple(sorted(p.var_indices if isinstance(p, MinimalPrimeRecord) else p))
    covers = [tuple(sorted(c)) for c in mono.minimal_covers(exps, amb.nvars)]
    if pv not in covers:
        raise ValueError(f"prime on variables {pv} is not minimal over the ideal")
    restricted = [tuple(e[i] for i in pv) for e in exps]
    K = mono.hilbert_numerator(restricted, (1,) * len(pv))
    q = mono.series_to_polynomial(K, (1,) * len(pv))
    if q is None:
        raise BrimError("localized ideal is not primary to the maximal ideal")
    return mono.upoly_value_at_one(q)


def _matrix_rank(rows, field) -> int:
    m = [list(r) for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = field.one / m[rank][c]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def matrix_rank(rows, field) -> int:
    """Rank of a matrix of field elements (Gaussian elimination)."""
    if not rows:
        return 0
    return _matrix_rank(rows, field)


def generic_rank(N: SubmoduleOfFree, p: MinimalPrimeRecord, seed: int = 0, trials: int = 5) -> int:
    """Rank of N's generator matrix at the generic point of V(p).

    For primes generated by variables the matrix is evaluated at random points
    of V(p) (variables of p set to 0, the rest drawn from 1..10^6) and the
    maximum rank over ``trials`` draws is returned.  For other primes the rank
    is the size of the largest minor that is nonzero modulo p.
    """
    if N.ncols == 0:
        return 0
    field = N.ring.field
    if p.var_indices is not None:
        rng = random.Random(seed)
        best = 0
        zeroed = set(p.var_indices)
        for _ in range(trials):
            point = [0 if i in zeroed else rng.randint(1, 10**6) for i in range(N.ring.nvars)]
            point = [field(v) for v in point]
            rows = [[N.columns[j][i].evaluate(point) for j in range(N.ncols)] for i in range(N.rank)]
            best = max(best, matrix_rank(rows, field))
        return best
    return rank_modulo_prime(N, p)


def rank_modulo_prime(N: SubmoduleOfFree, p: MinimalPrimeRecord) -> int:
    """Largest r with an r x r minor of N's matrix outside I + p (exact)."""
    gb = ideal_groebner(list(N.ring.relations) + list(p.generators))
    for r in range(min(N.rank, N.ncols), 0, -1):
        for rows in combinations(range(N.rank), r):
            for cols in combinations(range(N.ncols), r):
                m = [[N.columns[j][i] for j in cols] for i in rows]
                if not reduce_poly(_det(m), gb).is_zero():
                    return r
    return 0


def quotient_by_prime(N: SubmoduleOfFree, p: MinimalPrimeRecord) -> SubmoduleOfFree:
    """N(p): the image of N in (R/p)^f, generated by N's columns mod p."""
    Rp = N.ring.quotient(p.generators)
    return SubmoduleOfFree(Rp, N.rank, N.columns, N.shifts)


def prime_ring(R: QuotientRing, p: MinimalPrimeRecord) -> QuotientRing:
    return R.quotient(p.generators)


def _contains_ideal(gens_big, gens_small) -> bool:
    gb = ideal_groebner(list(gens_big))
    return all(reduce_poly(g, gb).is_zero() for g in gens_small)


def declared_prime(R: QuotientRing, gens, ell=None) -> MinimalPrimeRecord:
    """A user-declared minimal prime p of R, given by generators modulo I.

    The only check made is that p is a proper ideal of R.  l_p is taken from
    ``ell`` when given.  Otherwise it is 1 when p equals the defining ideal (a domain declaring its zero prime), or, for a hypersurface
    I = (f) with p = (g), the multiplicity of g in a factorization of f.
    """
    amb = R.ambient
    gens = tuple(amb(g) for g in gens if not amb(g).is_zero())
    if krull_dimension(R.quotient(gens)) < 0:
        raise HypothesisError("declared prime", f"({', '.join(map(str, gens))}) is the unit ideal")
    var_idx = None
    if all(g.is_monomial() and sum(next(iter(g.terms))) == 1 for g in gens):
        var_idx = tuple(sorted(next(iter(g.terms)).index(1) for g in gens))
    rec = MinimalPrimeRecord(gens, var_idx, declared=True)
    rec.d = krull_dimension(R.quotient(gens))
    computed = _declared_length(R, gens)
    if ell is not None:
        rec.ell = ell
        if computed is not None and computed != ell:
            rec.notes.append(f"declared length {ell} disagrees with factorization ({computed})")
    else:
        rec.ell = computed
    return rec


def _declared_length(R, gens):
    if _contains_ideal(R.relations, gens):
        return 1
    if len(R.relations) == 1 and len(gens) == 1:
        # hypersurface (f) and principal prime (g): l_p is the g-adic order of f
        f, g = R.relations[0], gens[0]
        m = 0
        while _contains_ideal([g ** (m + 1)], [f]):
            m += 1
        return m or None
    return None


def prime_records(R: QuotientRing, declared=None):
    """Minimal primes of R with d_p and l_p filled in.

    Uses ``declared`` records if given; otherwise the defining ideal must be
    monomial.  Raises :class:`HypothesisError` when neither applies.
    """
    if declared is not None:
        return [_copy_record(r) for r in declared]
    if not R.is_monomial_ring():
        raise HypothesisError(
            "minimal primes", "defining ideal is not monomial; declare the minimal primes"
        )
    gens = list(R.gb)
    recs = minimal_primes(gens, R.ambient)
    for rec in recs:
        rec.d = krull_dimension(R.quotient(rec.generators))
        rec.ell = length_at_prime(gens, rec, R.ambient)
    return recs


def _copy_record(r: MinimalPrimeRecord) -> MinimalPrimeRecord:
    return MinimalPrimeRecord(r.generators, r.var_indices, r.d, r.ell, r.r, r.declared, list(r.notes))


def with_ranks(records, N: SubmoduleOfFree, seed: int = 0):
    out = []
    for rec in records:
        rec = _copy_record(rec)
        rec.r = N.rank if N.is_full() else generic_rank(N, rec, seed=seed)
        out.append(rec)
    return out
