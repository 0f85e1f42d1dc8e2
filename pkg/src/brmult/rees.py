"""Graded pieces of Rees algebras of modules and the Buchsbaum-Rim polynomial.

For N inside a free module F the Rees algebra is taken to be the subalgebra
of Sym(F) generated by N; its degree-n piece R_n(N) is spanned by n-fold
products of generators of N.  The Buchsbaum-Rim function is
n -> length(R_n(N)/R_n(M)); for large n it is a polynomial of degree at most
s(N) whose normalized coefficient of n^s is e(M,N).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from . import config
from .errors import HypothesisError, MultiplicityError, NotContainedError, ResourceError
from .groebner import elimination_ideal
from .modules import INFINITE, SubmoduleOfFree, prime_records, quotient_length, with_ranks
from .polyring import PolyRing, QuotientRing, krull_dimension

log = logging.getLogger(__name__)

RANK_WARNING = 10_000


@dataclass(frozen=True)
class SymmetricPowerBasis:
    """Monomial basis of Sym^n of a free module with basis shifts ``shifts``."""

    rank: int
    power: int
    shifts: tuple

    @property
    def indices(self):
        return _multi_indices(self.rank, self.power)

    @property
    def index(self) -> dict:
        return {a: i for i, a in enumerate(self.indices)}

    @property
    def basis_shifts(self) -> tuple:
        return tuple(sum(a * s for a, s in zip(alpha, self.shifts)) for alpha in self.indices)

    def __len__(self):
        return comb(self.power + self.rank - 1, self.rank - 1) if self.rank else int(self.power == 0)


def _multi_indices(f: int, n: int):
    """Exponent vectors of total degree n in f slots, lexicographically descending."""
    if f == 0:
        return [()] if n == 0 else []
    if f == 1:
        return [(n,)]
    out = []
    for a in range(n, -1, -1):
        out.extend((a,) + rest for rest in _multi_indices(f - 1, n - a))
    return out


def _column_dict(col):
    out = {}
    for i, a in enumerate(col):
        if not a.is_zero():
            e = tuple(1 if k == i else 0 for k in range(len(col)))
            out[e] = a
    return out


def _sym_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, pa in a.items():
        for eb, pb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = out.get(e)
            out[e] = pa * pb if v is None else v + pa * pb
    return {e: p for e, p in out.items() if not p.is_zero()}


def rees_graded_generators(N: SubmoduleOfFree, n: int) -> SubmoduleOfFree:
    """R_n(N) as a submodule of Sym^n(F), generated by n-fold column products."""
    if n < 0:
        raise ValueError("n must be non-negative")
    basis = SymmetricPowerBasis(N.rank, n, N.shifts)
    if len(basis) > RANK_WARNING:
        log.warning("Sym^%d of a rank %d module has rank %d", n, N.rank, len(basis))
    shifts = basis.basis_shifts
    if n == 0:
        return SubmoduleOfFree.free(N.ring, 1, (0,))
    if n == 1:
        return N
    if N.is_full():
        return SubmoduleOfFree.free(N.ring, len(basis), shifts)
    cols = []
    seen = set()
    for c in N.columns:
        d = _column_dict(c)
        key = frozenset(d.items())
        if d and key not in seen:
            seen.add(key)
            cols.append(d)
    index = basis.index
    zero = N.ring.ambient.zero()
    out = []
    emitted = set()
    prefix = {(): {tuple([0] * N.rank): N.ring.ambient.one()}}
    for level in range(1, n + 1):
        nxt = {}
        for ms, prod in prefix.items():
            start = ms[-1] if ms else 0
            for j in range(start, len(cols)):
                nxt[ms + (j,)] = _sym_mul(prod, cols[j])
        prefix = nxt
    for prod in prefix.values():
        key = frozenset(prod.items())
        if not prod or key in emitted:
            continue
        emitted.add(key)
        col = [zero] * len(basis)
        for e, p in prod.items():
            col[index[e]] = p
        out.append(col)
    return SubmoduleOfFree(N.ring, len(basis), out, shifts)


def br_length(M: SubmoduleOfFree, N: SubmoduleOfFree, n: int, check: bool = False):
    """length(R_n(N)/R_n(M)); may be :data:`INFINITE`."""
    if check and not N.contains(M):
        raise NotContainedError("M is not contained in N")
    return quotient_length(rees_graded_generators(M, n), rees_graded_generators(N, n), check=False)


# --- the invariant s(N) --------------------------------------------------------

def s_invariant(N: SubmoduleOfFree, primes) -> int:
    """max over minimal primes of d_p + r_p - 1; every r_p must be positive."""
    if not primes:
        raise HypothesisError("minimal primes", "no minimal primes supplied")
    for p in primes:
        if p.r is None or p.r < 1:
            raise HypothesisError(
                "generically free of positive rank",
                f"N has rank {p.r} at the minimal prime {p.label()}",
            )
    return max(p.d + p.r - 1 for p in primes)


def rees_dimension(N: SubmoduleOfFree) -> int:
    """Krull dimension of the subalgebra of Sym(F) generated by N.

    Presents it as k[x, T]/J with J the kernel of T_j -> sum_i a_ij Y_i,
    found by eliminating the Y variables.  Gradings: Y_i gets shift_i + c and
    T_j gets (column degree) + c, which keeps the map homogeneous.
    """
    R = N.ring
    cols = [c for c, d in zip(N.columns, N.column_degrees) if d is not None]
    degs = [d for d in N.column_degrees if d is not None]
    c = 1 - min(list(N.shifts) + [0])
    g, f = len(cols), N.rank
    ynames = [f"_y{i}" for i in range(f)]
    tnames = [f"_t{j}" for j in range(g)]
    big = PolyRing(
        ynames + list(R.names) + tnames,
        [s + c for s in N.shifts] + list(R.weights) + [d + c for d in degs],
        R.field,
    )
    off = f
    xs = [big.var(off + k) for k in range(R.nvars)]

    def lift(p):
        return p.substitute(xs, big)

    gens = [lift(r) for r in R.relations]
    for j, col in enumerate(cols):
        expr = big.var(off + R.nvars + j)
        for i, a in enumerate(col):
            if not a.is_zero():
                expr = expr - lift(a) * big.var(i)
        gens.append(expr)
    kept = elimination_ideal(gens, list(range(f)))
    sub = PolyRing(list(R.names) + tnames, list(R.weights) + [d + c for d in degs], R.field)
    images = [sub.zero()] * f + list(sub.gens())
    J = [p.substitute(images, sub) for p in kept]
    return krull_dimension(QuotientRing(sub, J))


def compute_s(N: SubmoduleOfFree, primes=None, seed: int = 0):
    """Return ``(s, records, source)``.

    ``source`` is "primes" when s came from minimal-prime records, "free"
    when N is the whole free module (s = dim R + f - 1), and "rees" when it was
    read off the Krull dimension of the Rees algebra.
    """
    R = N.ring
    if primes is not None or R.is_monomial_ring():
        recs = with_ranks(prime_records(R, primes), N, seed=seed)
        return s_invariant(N, recs), recs, "primes"
    if N.is_full():
        return krull_dimension(R) + N.rank - 1, [], "free"
    return rees_dimension(N) - 1, [], "rees"


# --- interpolation -------------------------------------------------------------

def interpolate(points) -> list:
    """Coefficients (constant first) of the polynomial through ``points``.

    ``points`` is a list of (n, value) with distinct n; Newton divided
    differences in exact rationals.
    """
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(y) for _, y in points]
    k = len(xs)
    newton = [table[0]]
    for level in range(1, k):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(k - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)]
    basis = [Fraction(1)]  # prod (n - x_i) so far
    for level, a in enumerate(newton):
        coeffs = _padd(coeffs, [a * b for b in basis])
        basis = _pmul(basis, [-xs[level], Fraction(1)])
    return _trim(coeffs)


def _padd(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def peval(coeffs, n):
    return sum((c * n**i for i, c in enumerate(coeffs)), Fraction(0))


def format_polynomial(coeffs, var: str = "n") -> str:
    if not coeffs:
        return "0"
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        parts.append((sign, body))
    head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return head + "".join(f" {s} {b}" for s, b in parts[1:])


@dataclass
class BRPolynomial:
    coeffs: list  # Fraction, constant term first
    window: tuple  # (first, last) n used for the fit and confirmation
    samples: dict  # n -> length

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __call__(self, n):
        return peval(self.coeffs, n)

    def __str__(self):
        return format_polynomial(self.coeffs)


def fit_polynomial(sample, s: int, n0: int = 1, nmax=None, confirm: int = 2) -> BRPolynomial:
    """Fit a polynomial of degree <= s to an eventually polynomial function.

    s+1 consecutive values of ``sample`` determine a candidate; it is accepted
    once it also predicts the next ``confirm`` values, otherwise the window
    slides up by one.  Gives up past ``nmax`` (default 12 + s).
    """
    if nmax is None:
        nmax = config.current().nmax or 12 + s
    need = s + 1 + confirm
    samples: dict = {}

    def value(n):
        if n not in samples:
            samples[n] = sample(n)
            log.debug("sample(%d) = %d", n, samples[n])
        return samples[n]

    start = n0
    while start + need - 1 <= nmax:
        cand = interpolate([(n, value(n)) for n in range(start, start + s + 1)])
        if all(peval(cand, n) == value(n) for n in range(start + s + 1, start + need)):
            return BRPolynomial(cand, (start, start + need - 1), dict(sorted(samples.items())))
        start += 1
    raise ResourceError(
        f"length function did not stabilize for n <= {nmax}; "
        f"last window {start - 1}..{start + need - 2}; raise --nmax"
    )


def br_polynomial(M: SubmoduleOfFree, N: SubmoduleOfFree, s: int, n0: int = 1, nmax=None,
                  confirm: int = 2) -> BRPolynomial:
    """The Buchsbaum-Rim polynomial, fitted from samples of :func:`br_length`."""

    def sample(n):
        v = br_length(M, N, n)
        if v is INFINITE:
            raise HypothesisError("finite length", f"R_{n}(N)/R_{n}(M) has infinite length")
        return v

    return fit_polynomial(sample, s, n0, nmax, confirm)


@dataclass
class MultiplicityResult:
    s: int
    polynomial: BRPolynomial
    e: int
    primes: list = field(default_factory=list)
    s_source: str = "primes"

    @property
    def coeffs(self):
        return self.polynomial.coeffs

    @property
    def window(self):
        return self.polynomial.window

    @property
    def samples(self):
        return self.polynomial.samples

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def degree_exact(self) -> bool:
        return self.degree == self.s

    def to_payload(self, verbose: bool = False) -> dict:
        out = {
            "e": self.e,
            "s": self.s,
            "s_source": self.s_source,
            "degree": self.degree,
            "polynomial": str(self.polynomial),
            "coefficients": [_rat(c) for c in self.coeffs],
            "window": list(self.window),
            "primes": [p.to_payload() for p in self.primes],
        }
        if verbose:
            out["samples"] = {str(k): v for k, v in self.samples.items()}
        return out


def _rat(c) -> str:
    c = Fraction(c)
    return f"{c.numerator}/{c.denominator}"


def br_multiplicity(M: SubmoduleOfFree, N: SubmoduleOfFree, primes=None, seed=None, n0: int = 1,
                    nmax=None) -> MultiplicityResult:
    """e(M, N) from the leading coefficient of the Buchsbaum-Rim polynomial."""
    if seed is None:
        seed = config.current().seed
    if not M.same_ambient(N):
        raise HypothesisError("common free module", "M and N live in different free modules")
    if krull_dimension(N.ring) < 1:
        raise HypothesisError("positive dimension", "base ring has Krull dimension 0")
    if not N.contains(M):
        raise NotContainedError("M is not contained in N")
    if quotient_length(M, N, check=False) is INFINITE:
        raise HypothesisError("finite length", "N/M does not have finite length")
    s, recs, source = compute_s(N, primes, seed=seed)
    poly = br_polynomial(M, N, s, n0=n0, nmax=nmax)
    if poly.degree > s:
        raise MultiplicityError(f"fitted polynomial has degree {poly.degree} > s = {s}")
    lead = poly.coeffs[s] if poly.degree == s else Fraction(0)
    e = lead * factorial(s)
    if e.denominator != 1:
        raise MultiplicityError(f"s! * leading coefficient = {e} is not an integer")
    if e < 0:
        raise MultiplicityError(f"negative multiplicity {e}")
    return MultiplicityResult(s, poly, int(e), recs, source)
