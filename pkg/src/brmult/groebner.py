"""Buchberger's algorithm for ideals and submodules of free modules.

Module elements are stored as dicts ``{(position, exponent): coefficient}``.
The module order is position-over-term: the position is compared first and
a smaller index counts as larger, then the ring's monomial order decides.
Computations over a quotient ring k[x]/I are lifted to k[x] by adjoining
(GB of I) * e_i for every basis vector e_i.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field

from . import config
from . import monomial as mono
from .errors import ResourceError, RingMismatchError
from .polyring import MonomialOrder, Poly, PolyRing, QuotientRing


class FreeModuleElement:
    """Element of a free module R^rank over a PolyRing or QuotientRing."""

    __slots__ = ("ring", "rank", "terms")

    def __init__(self, ring, rank: int, terms=None):
        self.ring = ring
        self.rank = rank
        self.terms = {t: c for t, c in (terms or {}).items() if c}

    @classmethod
    def from_coords(cls, ring, coords) -> FreeModuleElement:
        amb = ring.ambient
        terms = {}
        for pos, f in enumerate(coords):
            f = amb(f)
            for e, c in f.terms.items():
                terms[(pos, e)] = c
        return cls(ring, len(coords), terms)

    @classmethod
    def unit(cls, ring, rank: int, pos: int) -> FreeModuleElement:
        amb = ring.ambient
        return cls(ring, rank, {(pos, amb.zero_exp): amb.field.one})

    def coords(self):
        amb = self.ring.ambient
        out = [dict() for _ in range(self.rank)]
        for (pos, e), c in self.terms.items():
            out[pos][e] = c
        return [Poly(amb, d) for d in out]

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if other.rank != self.rank or other.ring.ambient != self.ring.ambient:
            raise RingMismatchError("elements of different free modules")

    def __add__(self, other):
        self._check(other)
        return FreeModuleElement(self.ring, self.rank, _add(self.terms, other.terms, 1))

    def __sub__(self, other):
        self._check(other)
        return FreeModuleElement(self.ring, self.rank, _add(self.terms, other.terms, -1))

    def __neg__(self):
        return FreeModuleElement(self.ring, self.rank, {t: -c for t, c in self.terms.items()})

    def mul_poly(self, f: Poly) -> FreeModuleElement:
        out: dict = {}
        for (pos, e), c in self.terms.items():
            for e2, c2 in f.terms.items():
                t = (pos, mono.mono_mul(e, e2))
                out[t] = out.get(t, 0) + c * c2
        return FreeModuleElement(self.ring, self.rank, out)

    def degree(self, shifts):
        """Common degree (weighted degree plus shift) or ``None`` if inhomogeneous."""
        w = self.ring.ambient.weights
        degs = {mono.weighted_deg(e, w) + shifts[p] for p, e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def __eq__(self, other):
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __repr__(self):
        return "FreeModuleElement([" + ", ".join(str(c) for c in self.coords()) + "])"


def _add(a, b, sign):
    out = dict(a)
    for t, c in b.items():
        v = out.get(t, 0) + c if sign == 1 else out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit):
        self.limit = limit
        self.left = limit

    def tick(self):
        self.left -= 1
        if self.left < 0:
            raise ResourceError(f"Groebner reduction budget of {self.limit} exceeded")


def _mkey(order: MonomialOrder):
    def key(t):
        return (-t[0],) + order.key(t[1])

    return key


def _negkey(order: MonomialOrder):
    def nk(t):
        return (t[0],) + tuple(-x for x in order.key(t[1]))

    return nk


def _lead(f, key):
    t = max(f, key=key)
    return t, f[t]


def _monic(f, key):
    t, c = _lead(f, key)
    if c == 1:
        return f, t
    inv = 1 / c
    return {u: v * inv for u, v in f.items()}, t


def _nf(f, basis, order, budget, full=True):
    """Normal form of dict ``f`` modulo monic ``basis`` (pos -> [(lm_exp, poly)])."""
    nk = _negkey(order)
    f = dict(f)
    rem = {}
    heap = [(nk(t), t) for t in f]
    heapq.heapify(heap)
    while heap:
        _, t = heapq.heappop(heap)
        c = f.pop(t, None)
        if c is None:
            continue
        pos, e = t
        for lm, g in basis.get(pos, ()):
            if mono.divides(lm, e):
                budget.tick()
                q = mono.mono_div(e, lm)
                for (gp, ge), gc in g.items():
                    if gp == pos and ge == lm:
                        continue
                    nt = (gp, mono.mono_mul(ge, q))
                    v = f.get(nt)
                    if v is None:
                        f[nt] = -c * gc
                        heapq.heappush(heap, (nk(nt), nt))
                    else:
                        v = v - c * gc
                        if v:
                            f[nt] = v
                        else:
                            del f[nt]
                break
        else:
            rem[t] = c
            if not full:
                rem.update(f)
                return rem
    return rem


def _spoly(f, lf, g, lg):
    """S-polynomial of monic dicts with leading terms lf, lg in one position."""
    lcm = mono.mono_lcm(lf[1], lg[1])
    qf = mono.mono_div(lcm, lf[1])
    qg = mono.mono_div(lcm, lg[1])
    out: dict = {}
    for (p, e), c in f.items():
        t = (p, mono.mono_mul(e, qf))
        out[t] = out.get(t, 0) + c
    for (p, e), c in g.items():
        t = (p, mono.mono_mul(e, qg))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return {t: c for t, c in out.items() if c}


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _buchberger(inputs, order, shifts, rank1, budget):
    """Return the reduced Groebner basis (list of monic dicts) of ``inputs``."""
    key = _mkey(order)
    weights = order.weights or None
    polys: list = []  # monic dicts
    lts: list = []  # leading (pos, exp)
    active: set = set()
    basis: dict = {}  # pos -> [(lm, poly)] of active elements
    pairs: dict = {}  # (i, j) -> lcm exp, alive pairs
    heap: list = []

    def deg(pos, e):
        w = weights or (1,) * len(e)
        return mono.weighted_deg(e, w) + (shifts[pos] if shifts else 0)

    def rebuild_basis():
        basis.clear()
        for i in sorted(active, key=lambda k: key(lts[k])):
            basis.setdefault(lts[i][0], []).append((lts[i][1], polys[i]))

    def update(h):
        hp, he = lts[h]
        cands = [g for g in active if lts[g][0] == hp]
        lcms = {g: mono.mono_lcm(he, lts[g][1]) for g in cands}
        C = list(cands)
        D = []
        while C:
            g1 = C.pop()
            l1 = lcms[g1]
            if (rank1 and _coprime(he, lts[g1][1])) or not any(
                mono.divides(lcms[g2], l1) for g2 in C + D
            ):
                D.append(g1)
        # Buchberger's second criterion on existing pairs
        for (i, j), l in list(pairs.items()):
            if lts[i][0] != hp or not mono.divides(he, l):
                continue
            if mono.mono_lcm(lts[i][1], he) != l and mono.mono_lcm(lts[j][1], he) != l:
                del pairs[(i, j)]
        for g in D:
            if rank1 and _coprime(he, lts[g][1]):
                continue
            p = (g, h)
            pairs[p] = lcms[g]
            heapq.heappush(heap, ((deg(hp, lcms[g]),) + key((hp, lcms[g])), p))
        for g in list(active):
            if lts[g][0] == hp and mono.divides(he, lts[g][1]):
                active.discard(g)
        active.add(h)
        rebuild_basis()

    def add(f):
        f, t = _monic(f, key)
        polys.append(f)
        lts.append(t)
        update(len(polys) - 1)

    for f in sorted(inputs, key=lambda d: key(_lead(d, key)[0])):
        r = _nf(f, basis, order, budget)
        if r:
            add(r)
    while heap:
        _, p = heapq.heappop(heap)
        if p not in pairs:
            continue
        del pairs[p]
        i, j = p
        s = _spoly(polys[i], lts[i], polys[j], lts[j])
        budget.tick()
        if not s:
            continue
        r = _nf(s, basis, order, budget)
        if r:
            add(r)
    # reduce tails
    final = sorted(active, key=lambda k: key(lts[k]))
    out = []
    for i in final:
        others = {}
        for k in final:
            if k != i:
                others.setdefault(lts[k][0], []).append((lts[k][1], polys[k]))
        out.append(_nf(polys[i], others, order, budget))
    out.sort(key=lambda d: key(_lead(d, key)[0]), reverse=True)
    return out


@dataclass
class GroebnerBasis:
    """A Groebner basis of a submodule of a free module (rank 1: an ideal)."""

    ring: PolyRing  # ambient polynomial ring
    rank: int
    shifts: tuple
    order: MonomialOrder
    elements: list  # FreeModuleElement over ``ring``
    reduced: bool = True
    quotient: object = None  # QuotientRing the module was lifted from, if any
    _by_pos: dict = field(default=None, repr=False, compare=False)

    def leading_terms(self):
        key = _mkey(self.order)
        return [_lead(g.terms, key)[0] for g in self.elements]

    def leading_monomials_by_pos(self):
        out = {p: [] for p in range(self.rank)}
        for p, e in self.leading_terms():
            out[p].append(e)
        return out

    def _basis(self):
        if self._by_pos is None:
            key = _mkey(self.order)
            b: dict = {}
            for g in self.elements:
                (p, e), _ = _lead(g.terms, key)
                b.setdefault(p, []).append((e, g.terms))
            self._by_pos = b
        return self._by_pos

    def normal_form(self, v: FreeModuleElement, budget=None) -> FreeModuleElement:
        return normal_form(v, self, budget)

    def contains(self, v: FreeModuleElement) -> bool:
        return normal_form(v, self).is_zero()

    def hilbert_function(self, d: int) -> int:
        return hilbert_function(self, d)

    def hilbert_numerator(self) -> dict:
        """Numerator K with HS(F/U) = K / prod_{w>0} (1 - t^w)."""
        total: dict = {}
        lms = self.leading_monomials_by_pos()
        for p in range(self.rank):
            k = mono.hilbert_numerator(lms[p], self.ring.weights)
            total = mono.upoly_add(total, k, shift=self.shifts[p])
        return total

    def positive_weights(self):
        return [w for w in self.ring.weights if w > 0]

    def krull_dimension(self) -> int:
        lms = self.leading_monomials_by_pos()
        return max(mono.monomial_dimension(lms[p], self.ring.nvars) for p in range(self.rank))


def groebner_basis(gens, order=None, shifts=None, budget=None, rank=None) -> GroebnerBasis:
    """Groebner basis of the submodule generated by ``gens``.

    ``gens`` are FreeModuleElements over one ring (PolyRing or QuotientRing);
    zero generators are dropped.  Over a QuotientRing the relations are
    adjoined in every coordinate.
    """
    gens = list(gens)
    if not gens and rank is None:
        raise ValueError("need generators or an explicit rank")
    ring = gens[0].ring if gens else None
    if rank is None:
        rank = gens[0].rank
    for g in gens:
        if g.rank != rank or g.ring.ambient != ring.ambient:
            raise RingMismatchError("generators live in different free modules")
    return _groebner_from_terms(ring, rank, [g.terms for g in gens], order, shifts, budget)


def _groebner_from_terms(ring, rank, term_dicts, order=None, shifts=None, budget=None):
    amb = ring.ambient
    order = order or amb.order
    shifts = tuple(shifts) if shifts is not None else (0,) * rank
    inputs = [dict(t) for t in term_dicts if t]
    quotient = ring if isinstance(ring, QuotientRing) and ring.relations else None
    if quotient is not None:
        for r in quotient.gb:
            for p in range(rank):
                inputs.append({(p, e): c for e, c in r.terms.items()})
    limit = budget if budget is not None else config.current().budget
    out = _buchberger(inputs, order, shifts, rank == 1, _Budget(limit))
    elems = [FreeModuleElement(amb, rank, d) for d in out]
    return GroebnerBasis(amb, rank, shifts, order, elems, True, quotient)


def normal_form(v: FreeModuleElement, G: GroebnerBasis, budget=None) -> FreeModuleElement:
    if v.rank != G.rank or v.ring.ambient != G.ring:
        raise RingMismatchError("element and basis live in different free modules")
    limit = budget if budget is not None else config.current().budget
    r = _nf(v.terms, G._basis(), G.order, _Budget(limit))
    return FreeModuleElement(v.ring, v.rank, r)


def s_pair(a: FreeModuleElement, b: FreeModuleElement, order: MonomialOrder):
    """S-polynomial of two module elements, or ``None`` if their leading
    terms sit in different positions."""
    key = _mkey(order)
    fa, la = _monic(a.terms, key)
    fb, lb = _monic(b.terms, key)
    if la[0] != lb[0]:
        return None
    return FreeModuleElement(a.ring, a.rank, _spoly(fa, la, fb, lb))


def is_groebner(G: GroebnerBasis) -> bool:
    """Every S-pair of G reduces to zero modulo G."""
    els = G.elements
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            s = s_pair(els[i], els[j], G.order)
            if s is not None and not normal_form(s, G).is_zero():
                return False
    return True


def hilbert_function(G: GroebnerBasis, d: int) -> int:
    """dim_k of the degree-d piece of F/U, counting standard monomials."""
    lms = G.leading_monomials_by_pos()
    w = G.ring.weights
    total = 0
    for p in range(G.rank):
        total += mono.count_standard_monomials(lms[p], w, d - G.shifts[p])
    return total


# --- ideal conveniences -----------------------------------------------------

def ideal_groebner(polys, order=None, budget=None):
    """Reduced Groebner basis of an ideal of a PolyRing, as a list of Poly."""
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return []
    amb = polys[0].ring
    order = order or amb.order
    inputs = [{(0, e): c for e, c in p.terms.items()} for p in polys]
    limit = budget if budget is not None else config.current().budget
    out = _buchberger(inputs, order, None, True, _Budget(limit))
    return [Poly(amb, {e: c for (_, e), c in d.items()}) for d in out]


def reduce_poly(f: Poly, gb, order=None, budget=None) -> Poly:
    order = order or f.ring.order
    key = _mkey(order)
    basis: dict = {}
    for g in gb:
        d = {(0, e): c for e, c in g.terms.items()}
        d, t = _monic(d, key)
        basis.setdefault(0, []).append((t[1], d))
    limit = budget if budget is not None else config.current().budget
    r = _nf({(0, e): c for e, c in f.terms.items()}, basis, order, _Budget(limit))
    return Poly(f.ring, {e: c for (_, e), c in r.items()})


def elimination_ideal(gens, block):
    """Generators of (gens) ∩ k[remaining variables].

    ``block`` lists the variables (names or indices) to eliminate.  The result
    is the part of an elimination-order Groebner basis free of ``block``.
    """
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    idx = sorted({ring.names.index(b) if isinstance(b, str) else b for b in block})
    if not idx:
        return ideal_groebner(gens)
    rest = [i for i in range(ring.nvars) if i not in idx]
    perm = idx + rest
    tmp = PolyRing([ring.names[i] for i in perm], [ring.weights[i] for i in perm], ring.field)

    def to_tmp(f):
        return Poly(tmp, {tuple(e[i] for i in perm): c for e, c in f.terms.items()})

    inv = {p: k for k, p in enumerate(perm)}

    def back(f):
        return Poly(ring, {tuple(e[inv[i]] for i in range(ring.nvars)): c for e, c in f.terms.items()})

    order = MonomialOrder("elim", tmp.weights, block=len(idx))
    gb = ideal_groebner([to_tmp(g) for g in gens], order)
    nb = len(idx)
    return [back(g) for g in gb if all(not any(e[:nb]) for e in g.terms)]
