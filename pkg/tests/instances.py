"""Seeded random instance generators shared by tests and acceptance checks."""
from __future__ import annotations

import random
from fractions import Fraction

from brmult import monomial as mono
from brmult.formulas import AlgebraExtension
from brmult.modules import SubmoduleOfFree, declared_prime
from brmult.polyring import Poly, PolyRing, QuotientRing


def random_homogeneous(rng: random.Random, R: PolyRing, degree: int, max_terms: int = 3) -> Poly:
    mons = mono.monomials_of_degree(R.weights, degree)
    picked = rng.sample(mons, min(len(mons), rng.randint(1, max_terms)))
    terms = {}
    for m in picked:
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[m] = Fraction(c)
    return Poly(R, terms)


def random_ideal(rng: random.Random, max_vars: int = 3, max_gens: int = 4, max_deg: int = 4):
    n = rng.randint(1, max_vars)
    R = PolyRing(["x", "y", "z"][:n])
    gens = [random_homogeneous(rng, R, rng.randint(1, max_deg)) for _ in range(rng.randint(1, max_gens))]
    return R, gens


def random_dvr_module(rng: random.Random, f: int, max_power: int = 5, min_power: int = 0):
    """Upper-triangular homogeneous generator matrix over k[t] with diagonal t-powers.

    Entry (i, j) above the diagonal must have degree (column degree) - shift_i;
    shifts are chosen so every column is homogeneous.
    """
    T = QuotientRing.polynomial(["t"])
    t = T.var(0)
    diag = [rng.randint(min_power, max_power) for _ in range(f)]
    # column j has degree D_j; row i shift s_i; entry (i, j) has degree D_j - s_i
    shifts = [rng.randint(0, 2) for _ in range(f)]
    cols = []
    for j in range(f):
        D = diag[j] + shifts[j]
        col = []
        for i in range(f):
            if i == j:
                col.append(t ** diag[j])
            elif i < j and D - shifts[i] >= 0 and rng.random() < 0.7:
                col.append(t ** (D - shifts[i]) * rng.choice([-2, -1, 1, 2, 3]))
            else:
                col.append(T.ambient.zero())
        cols.append(col)
    M = SubmoduleOfFree(T, f, cols, shifts)
    return T, M, diag


# --- named families for the projection and expansion formulas -----------------

def curve_family(a: int, b: int):
    """k[u] -> k[t], u -> t^a with M = (u^b), N = R."""
    U = QuotientRing.polynomial(["u"])
    T = QuotientRing.polynomial(["t"])
    u, t = U.var(0), T.var(0)
    ext = AlgebraExtension(U, T, [t**a])
    return U, ext, SubmoduleOfFree.ideal(U, [u**b]), SubmoduleOfFree.free(U, 1)


def curve_module_family(a: int, b1: int, b2: int):
    """Same extension, N = R^2 and M generated by (u^b1, 0), (0, u^b2)."""
    U, ext, _, _ = curve_family(a, 1)
    u = U.var(0)
    z = U.ambient.zero()
    M = SubmoduleOfFree(U, 2, [[u**b1, z], [z, u**b2]])
    return U, ext, M, SubmoduleOfFree.free(U, 2)


def cusp_ring():
    W = PolyRing(["x", "y"], [2, 3])
    return QuotientRing(W, [W.var(1) ** 2 - W.var(0) ** 3])


def cusp_normalization():
    C = cusp_ring()
    T = QuotientRing.polynomial(["t"])
    t = T.var(0)
    ext = AlgebraExtension(C, T, [t**2, t**3])
    x, y = C.gens()
    primes = [declared_prime(C, [])]
    return C, ext, SubmoduleOfFree.ideal(C, [x, y]), SubmoduleOfFree.free(C, 1), primes


def gaussian_family():
    """k[u] -> k[u][t]/(t^2 + 1): one maximal ideal with residue degree 2."""
    U = QuotientRing.polynomial(["u"])
    W = PolyRing(["u", "t"], [1, 0])
    G = QuotientRing(W, [W.var(1) ** 2 + 1])
    ext = AlgebraExtension(U, G, [W.var(0)])
    return U, ext, SubmoduleOfFree.ideal(U, [U.var(0)]), SubmoduleOfFree.free(U, 1)


def split_family():
    """k[u] -> k[u, z]/(z^2 - 1) with its two maximal ideals declared."""
    U = QuotientRing.polynomial(["u"])
    W = PolyRing(["u", "z"], [1, 0])
    u, z = W.gens()
    S = QuotientRing(W, [z**2 - 1])
    ext = AlgebraExtension(U, S, [u], degree=2, maximal_ideals=[[u, z - 1], [u, z + 1]])
    return U, ext, SubmoduleOfFree.ideal(U, [U.var(0)]), SubmoduleOfFree.free(U, 1)


def hypersurface_family(a: int, b: int):
    """R = k[x,y]/(x^a y^b) with q = (x, y) and N = R."""
    P = PolyRing(["x", "y"])
    x, y = P.gens()
    R = QuotientRing(P, [x**a * y**b])
    rx, ry = R.gens()
    return R, SubmoduleOfFree.ideal(R, [rx, ry]), SubmoduleOfFree.free(R, 1)


def node_diagonal_family():
    """R = k[x,y]/(xy), N = R^2, M = diag(x + y, x + y)."""
    P = PolyRing(["x", "y"])
    x, y = P.gens()
    R = QuotientRing(P, [x * y])
    rx, ry = R.gens()
    z = P.zero()
    M = SubmoduleOfFree(R, 2, [[rx + ry, z], [z, rx + ry]])
    return R, M, SubmoduleOfFree.free(R, 2)
