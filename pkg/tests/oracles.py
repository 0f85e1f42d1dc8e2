"""Independent reference computations used by the tests.

None of these touch the Groebner engine: they are brute-force linear algebra,
sympy, or closed formulas.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy
from sympy.matrices.normalforms import smith_normal_form

from brmult import monomial as mono


def naive_mul(f: dict, g: dict) -> dict:
    """Term-by-term convolution of exponent -> coefficient dicts."""
    out: dict = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def rank_of(rows) -> int:
    """Rank over QQ (or a prime field if entries support it) by elimination."""
    m = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c] != 0:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def brute_hilbert_function(gens, relations, weights, shifts, d: int) -> int:
    """dim_k of the degree-d piece of F/(U + I F) by linear algebra.

    ``gens`` are module elements as lists of coordinate dicts (exponent ->
    Fraction); ``relations`` are dicts for the ring's defining ideal.  All
    weights must be positive.
    """
    n = len(weights)
    rank = len(shifts)
    basis = []
    for p in range(rank):
        for e in mono.monomials_of_degree(weights, d - shifts[p]):
            basis.append((p, e))
    index = {b: i for i, b in enumerate(basis)}
    full = list(gens)
    for r in relations:
        for p in range(rank):
            full.append([r if q == p else {} for q in range(rank)])
    rows = []
    for g in full:
        gdeg = None
        for p, coord in enumerate(g):
            for e in coord:
                gdeg = mono.weighted_deg(e, weights) + shifts[p]
                break
            if gdeg is not None:
                break
        if gdeg is None or gdeg > d:
            continue
        for m in mono.monomials_of_degree(weights, d - gdeg):
            row = [Fraction(0)] * len(basis)
            for p, coord in enumerate(g):
                for e, c in coord.items():
                    row[index[(p, tuple(a + b for a, b in zip(e, m)))]] += c
            rows.append(row)
    return len(basis) - rank_of(rows)


def snf_length(matrix_rows, f: int) -> int:
    """length of k[t]^f / (column span) via sympy's Smith normal form.

    ``matrix_rows`` are lists of t-exponent -> coefficient dicts.  Returns the
    sum of t-adic valuations of the invariant factors (the quotient must have
    finite length).
    """
    t = sympy.Symbol("t")
    mat = sympy.Matrix([[sum(sympy.Rational(c) * t**k for k, c in entry.items()) for entry in row]
                        for row in matrix_rows])
    snf = smith_normal_form(mat, domain=sympy.QQ[t])
    total = 0
    for i in range(f):
        d = sympy.Poly(snf[i, i], t)
        if d.is_zero:
            raise ValueError("infinite length")
        total += min(m[0] for m in d.monoms())
    return total


def sympy_groebner(polys, names, weights=None):
    """Reduced grevlex basis from sympy as exponent dicts (standard grading only)."""
    syms = sympy.symbols(names)
    exprs = []
    for f in polys:
        exprs.append(sum(sympy.Rational(c.numerator, c.denominator) * sympy.prod(s**k for s, k in zip(syms, e))
                         for e, c in f.terms.items()))
    G = sympy.groebner(exprs, *syms, order="grevlex")
    out = []
    for g in G.exprs:
        P = sympy.Poly(g, *syms)
        out.append({m: Fraction(int(c.p), int(c.q)) for m, c in zip(P.monoms(), P.coeffs())})
    return out


def ideal_power_length(n: int, gens_exps, nvars: int) -> int:
    """length(k[x]/J^n) for a monomial ideal J by enumerating monomials."""
    power = {tuple([0] * nvars)}
    for _ in range(n):
        power = {tuple(a + b for a, b in zip(m, g)) for m in power for g in gens_exps}
    power = mono.minimalize(list(power))
    bound = max(max(g) for g in power) + 1
    count = 0
    for e in product(range(bound), repeat=nvars):
        if not mono.in_ideal(e, power):
            count += 1
    return count


def binomial_length_mxy(n: int) -> int:
    """length(k[x,y]/(x,y)^n) = n(n+1)/2."""
    return n * (n + 1) // 2
