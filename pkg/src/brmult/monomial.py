"""Combinatorics of monomial ideals.

Monomials are exponent tuples.  Everything here is exact integer work:
minimal generators, minimal primes (minimal vertex covers of the supports),
Krull dimension, standard-monomial enumeration, and Hilbert-series numerators
("K-polynomials") with respect to a weight vector.

Univariate integer (Laurent) polynomials are plain ``dict[int, int]``
mapping exponent to coefficient.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a, b):
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_colon(a, b):
    """Generator of the colon ideal (a) : b."""
    return tuple(x - y if x > y else 0 for x, y in zip(a, b))


def weighted_deg(a, weights) -> int:
    return sum(e * w for e, w in zip(a, weights))


def support(a) -> frozenset:
    return frozenset(i for i, e in enumerate(a) if e)


def minimalize(gens):
    """Minimal generating set of the monomial ideal generated by ``gens``."""
    out = []
    for g in sorted(set(gens), key=sum):
        if not any(divides(h, g) for h in out):
            out.append(g)
    return out


def in_ideal(m, gens) -> bool:
    return any(divides(g, m) for g in gens)


# --- minimal primes -------------------------------------------------------

def minimal_covers(gens, nvars: int):
    """Minimal primes of a monomial ideal, as frozensets of variable indices.

    A prime generated by variables contains the ideal iff its variable set
    meets the support of every generator; the minimal primes are therefore
    the minimal transversals (vertex covers) of the support hypergraph.
    """
    supports = minimalize_sets([support(g) for g in gens])
    if any(not s for s in supports):
        return []  # unit ideal: no primes
    covers: set[frozenset] = set()

    def extend(chosen: frozenset, idx: int):
        while idx < len(supports) and supports[idx] & chosen:
            idx += 1
        if idx == len(supports):
            covers.add(chosen)
            return
        for v in sorted(supports[idx]):
            extend(chosen | {v}, idx + 1)

    extend(frozenset(), 0)
    minimal = [c for c in covers if not any(o < c for o in covers)]
    return sorted(minimal, key=lambda c: (len(c), sorted(c)))


def minimalize_sets(sets):
    uniq = sorted(set(sets), key=len)
    out = []
    for s in uniq:
        if not any(o <= s for o in out):
            out.append(s)
    return out


def monomial_dimension(gens, nvars: int) -> int:
    """Krull dimension of k[x]/J for a monomial ideal J (-1 for the unit ideal)."""
    if not gens:
        return nvars
    covers = minimal_covers(gens, nvars)
    if not covers:
        return -1
    return nvars - min(len(c) for c in covers)


def min_cover_size_bruteforce(gens, nvars: int) -> int:
    """Exhaustive minimum vertex cover; an oracle for :func:`monomial_dimension`."""
    supports = [support(g) for g in gens]
    for k in range(nvars + 1):
        for combo in combinations(range(nvars), k):
            cs = set(combo)
            if all(s & cs for s in supports):
                return k
    return -1


# --- standard monomials ---------------------------------------------------

def monomials_of_degree(weights, d: int, bounds=None):
    """Exponent tuples of weighted degree ``d``.

    Weight-zero variables need an exponent bound (exclusive) in ``bounds``.
    """
    n = len(weights)
    bounds = bounds or {}
    out = []
    cur = [0] * n

    def rec(i, rest):
        if i == n:
            if rest == 0:
                out.append(tuple(cur))
            return
        w = weights[i]
        if w == 0:
            top = bounds.get(i)
            if top is None:
                raise ValueError(f"weight-0 variable {i} needs an exponent bound")
            for e in range(top):
                cur[i] = e
                rec(i + 1, rest)
        else:
            for e in range(rest // w + 1):
                cur[i] = e
                rec(i + 1, rest - e * w)
        cur[i] = 0

    if d >= 0:
        rec(0, d)
    return out


def zero_weight_bounds(gens, weights):
    """Exclusive exponent bounds for weight-0 variables from pure powers in ``gens``."""
    bounds = {}
    for i, w in enumerate(weights):
        if w:
            continue
        best = None
        for g in gens:
            if g[i] and all(e == 0 for j, e in enumerate(g) if j != i):
                best = g[i] if best is None else min(best, g[i])
        if best is None:
            raise ValueError(f"no pure power of weight-0 variable {i}: degree-0 part infinite")
        bounds[i] = best
    return bounds


def count_standard_monomials(gens, weights, d: int) -> int:
    bounds = zero_weight_bounds(gens, weights) if 0 in weights else None
    return sum(1 for m in monomials_of_degree(weights, d, bounds) if not in_ideal(m, gens))


# --- univariate integer polynomials --------------------------------------

def upoly_add(a, b, scale=1, shift=0):
    out = dict(a)
    for k, v in b.items():
        kk = k + shift
        nv = out.get(kk, 0) + scale * v
        if nv:
            out[kk] = nv
        else:
            out.pop(kk, None)
    return out


def upoly_mul(a, b):
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def upoly_sub(a, b):
    return upoly_add(a, b, scale=-1)


def upoly_value_at_one(a) -> int:
    return sum(a.values())


def upoly_div_one_minus_t_pow(a, w: int):
    """Exact quotient of ``a`` by ``1 - t^w``, or ``None`` if it does not divide."""
    if not a:
        return {}
    lo, hi = min(a), max(a)
    q: dict[int, int] = {}
    for k in range(lo, hi - w + 1):
        v = a.get(k, 0) + q.get(k - w, 0)
        if v:
            q[k] = v
    for k in range(max(lo, hi - w + 1), hi + 1):
        if a.get(k, 0) + q.get(k - w, 0) != 0:
            return None
    return q


def series_to_polynomial(numer, weights):
    """Divide ``numer`` by prod(1 - t^w); ``None`` when the series is not a polynomial."""
    q = dict(numer)
    for w in weights:
        q = upoly_div_one_minus_t_pow(q, w)
        if q is None:
            return None
    return q


def series_coefficients(numer, weights, upto: int):
    """Power-series coefficients of numer / prod(1 - t^w), degrees ``min(numer)..upto``."""
    if not numer:
        return {}
    lo = min(numer)
    coeffs = {k: numer.get(k, 0) for k in range(lo, upto + 1)}
    for w in weights:
        for k in range(lo + w, upto + 1):
            coeffs[k] += coeffs[k - w]
    return coeffs


def leading_series_data(numer, weights):
    """Dimension D and normalized multiplicity c of numer / prod(1 - t^w).

    Near t = 1 the series behaves like c / (1 - t)^D.  For a zero series
    returns ``(-1, Fraction(0))``.
    """
    if not numer:
        return -1, Fraction(0)
    cur = dict(numer)
    order = 0
    while upoly_value_at_one(cur) == 0:
        cur = upoly_div_one_minus_t_pow(cur, 1)
        order += 1
    denom = 1
    for w in weights:
        denom *= w
    return len(weights) - order, Fraction(upoly_value_at_one(cur), denom)


# --- Hilbert numerators ---------------------------------------------------

def _coprime_supports(gens) -> bool:
    seen: set = set()
    for g in gens:
        s = support(g)
        if s & seen:
            return False
        seen |= s
    return True


def _kpoly(gens: frozenset, weights, memo) -> dict:
    if not gens:
        return {0: 1}
    if gens in memo:
        return memo[gens]
    if any(not any(g) for g in gens):
        memo[gens] = {}
        return {}
    if _coprime_supports(gens):
        out = {0: 1}
        for g in gens:
            out = upoly_mul(out, {0: 1, weighted_deg(g, weights): -1})
        memo[gens] = out
        return out
    # pivot on the variable shared by most generators
    n = len(weights)
    counts = [sum(1 for g in gens if g[i]) for i in range(n)]
    i = max(range(n), key=lambda j: counts[j])
    e = min(g[i] for g in gens if g[i])
    piv = tuple(e if j == i else 0 for j in range(n))
    plus = frozenset(minimalize([g for g in gens if not g[i]] + [piv]))
    colon = frozenset(minimalize([mono_colon(g, piv) for g in gens]))
    out = upoly_add(_kpoly(plus, weights, memo), _kpoly(colon, weights, memo), shift=e * weights[i])
    memo[gens] = out
    return out


def hilbert_numerator(gens, weights) -> dict:
    """K-polynomial of k[x]/J: the Hilbert series is K(t) / prod_{w>0} (1 - t^w).

    Weight-zero variables must have pure powers in J; their contribution is
    summed out explicitly over the finitely many standard z-monomials.
    """
    gens = minimalize(gens)
    if any(not any(g) for g in gens):
        return {}
    n = len(weights)
    pos = [i for i in range(n) if weights[i] > 0]
    zero = [i for i in range(n) if weights[i] == 0]
    pw = [weights[i] for i in pos]
    if not zero:
        return _kpoly(frozenset(gens), tuple(weights), {})
    bounds = zero_weight_bounds(gens, weights)
    memo: dict = {}
    total: dict[int, int] = {}
    for zexp in _box([bounds[i] for i in zero]):
        mz = [0] * n
        for i, e in zip(zero, zexp):
            mz[i] = e
        mz = tuple(mz)
        if in_ideal(mz, gens):
            continue
        restricted = []
        for g in gens:
            if all(g[i] <= mz[i] for i in zero):
                restricted.append(tuple(g[i] for i in pos))
        restricted = frozenset(minimalize(restricted))
        total = upoly_add(total, _kpoly(restricted, tuple(pw), memo))
    return total


def _box(bounds):
    if not bounds:
        yield ()
        return
    for e in range(bounds[0]):
        for rest in _box(bounds[1:]):
            yield (e,) + rest
