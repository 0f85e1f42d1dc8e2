"""Weighted polynomial rings, monomial orders and graded quotient rings."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from . import monomial as mono
from .errors import HomogeneityError, RingMismatchError
from .exact import QQ


class MonomialOrder:
    """A monomial order given by a sort key; larger key means larger monomial.

    ``kind`` is ``"grevlex"`` (weighted degree, then total degree, then
    reverse lex), ``"lex"``, or ``"elim"`` (grevlex on the first ``block``
    variables, ties broken by grevlex on the rest).  Keys are flat integer
    tuples so they can be negated for heap use.
    """

    def __init__(self, kind: str = "grevlex", weights=None, block: int = 0):
        if kind not in ("grevlex", "lex", "elim"):
            raise ValueError(f"unknown order {kind!r}")
        self.kind = kind
        self.weights = tuple(weights) if weights is not None else None
        self.block = block
        self._cache: dict = {}

    def _grevlex(self, exp, weights):
        return (mono.weighted_deg(exp, weights), sum(exp)) + tuple(-e for e in reversed(exp))

    def key(self, exp):
        k = self._cache.get(exp)
        if k is not None:
            return k
        w = self.weights or (1,) * len(exp)
        if self.kind == "grevlex":
            k = self._grevlex(exp, w)
        elif self.kind == "lex":
            k = tuple(exp)
        else:
            b = self.block
            k = self._grevlex(exp[:b], w[:b]) + self._grevlex(exp[b:], w[b:])
        self._cache[exp] = k
        return k

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and (self.kind, self.weights, self.block) == (other.kind, other.weights, other.block)
        )

    def __hash__(self):
        return hash((self.kind, self.weights, self.block))

    def __repr__(self):
        extra = f", block={self.block}" if self.kind == "elim" else ""
        return f"MonomialOrder({self.kind!r}, weights={self.weights}{extra})"


class PolyRing:
    """k[x_1..x_n] with a weight vector (non-negative integers)."""

    def __init__(self, names, weights=None, field=QQ):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        self.names = names
        self.nvars = len(names)
        self.weights = tuple(weights) if weights is not None else (1,) * self.nvars
        if len(self.weights) != self.nvars or any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative, one per variable")
        self.field = field
        self.order = MonomialOrder("grevlex", self.weights)
        self.zero_exp = (0,) * self.nvars

    # a PolyRing is its own ambient ring with no relations
    @property
    def ambient(self):
        return self

    relations: tuple = ()

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.weights == other.weights
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.names, self.weights, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.names)}, weights={list(self.weights)}, field={self.field!r})"

    def with_field(self, field) -> PolyRing:
        return PolyRing(self.names, self.weights, field)

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def var(self, i) -> Poly:
        if isinstance(i, str):
            i = self.names.index(i)
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): self.field.one})

    def const(self, c) -> Poly:
        c = self.field(c)
        return Poly(self, {self.zero_exp: c} if c else {})

    def monomial(self, exp, coeff=1) -> Poly:
        c = self.field(coeff)
        return Poly(self, {tuple(exp): c} if c else {})

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return self.const(1)

    def __call__(self, value) -> Poly:
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            return value.change_ring(self)
        return self.const(value)


class Poly:
    """Sparse polynomial: ``terms`` maps exponent tuples to nonzero coefficients.

    Treat instances as immutable.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms=None):
        self.ring = ring
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    # -- arithmetic ---------------------------------------------------------
    def _coerce(self, other) -> Poly:
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise RingMismatchError(f"{other.ring!r} vs {self.ring!r}")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> Poly:
        c = self.ring.field(c)
        return Poly(self.ring, {e: v * c for e, v in self.terms.items()})

    def mul_monomial(self, exp, c=1) -> Poly:
        c = self.ring.field(c)
        return Poly(self.ring, {tuple(a + b for a, b in zip(e, exp)): v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    # -- structure ----------------------------------------------------------
    def sorted_terms(self, order=None):
        order = order or self.ring.order
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order=None):
        order = order or self.ring.order
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def weighted_degree(self):
        return weighted_degree(self)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def evaluate(self, point):
        """Value at a point given as a sequence of field elements."""
        field = self.ring.field
        total = field.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * field(x) ** k
            total = total + v
        return total

    def substitute(self, images, target=None) -> Poly:
        """Ring map sending variable i to ``images[i]``."""
        target = target or images[0].ring
        out = target.zero()
        cache: dict = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i] ** k
                    term = term * cache[key]
            out = out + term
        return out

    def change_ring(self, ring: PolyRing) -> Poly:
        """Same exponents in another ring with the same variables (e.g. other field)."""
        if ring.nvars != self.ring.nvars:
            raise RingMismatchError("variable count differs")
        return Poly(ring, {e: ring.field(c) for e, c in self.terms.items()})

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def _format_coeff(c) -> str:
    return str(c)


def format_poly(f: Poly) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    parts = []
    for e, c in f.sorted_terms():
        mon = "*".join(
            names[i] if k == 1 else f"{names[i]}^{k}" for i, k in enumerate(e) if k
        )
        neg = isinstance(c, Fraction) and c < 0
        a = -c if neg else c
        if mon:
            body = mon if a == 1 else f"{_format_coeff(a)}*{mon}"
        else:
            body = _format_coeff(a)
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def weighted_degree(f: Poly):
    """Common weighted degree of all terms, or ``None`` if ``f`` is inhomogeneous.

    The zero polynomial also returns ``None`` (it is homogeneous of every
    degree; use :func:`is_homogeneous` to distinguish).
    """
    degs = {mono.weighted_deg(e, f.ring.weights) for e in f.terms}
    if len(degs) == 1:
        return degs.pop()
    return None


def is_homogeneous(f: Poly) -> bool:
    return f.is_zero() or weighted_degree(f) is not None


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if f.ring != g.ring:
        raise RingMismatchError("operands live in different rings")
    if op == "+":
        return f + g
    if op in ("-", "−"):
        return f - g
    if op in ("*", "×"):
        return f * g
    raise ValueError(f"unknown operator {op!r}")


class QuotientRing:
    """k[x_1..x_n]/I with I generated by weighted-homogeneous relations.

    Elements are represented by polynomials of the ambient ring.  If some
    variables have weight zero, the degree-zero subring must be finite
    dimensional; this is verified from the Groebner basis of I.
    """

    def __init__(self, ambient: PolyRing, relations=(), name=None):
        self.ambient = ambient
        rels = []
        for r in relations:
            r = ambient(r)
            if r.is_zero():
                continue
            if weighted_degree(r) is None:
                raise HomogeneityError(f"relation {r} is not weighted-homogeneous")
            rels.append(r)
        self.relations = tuple(rels)
        self.name = name
        if 0 in ambient.weights:
            try:
                mono.zero_weight_bounds([g.leading_term()[0] for g in self.gb], ambient.weights)
            except ValueError as exc:
                raise HomogeneityError(
                    "degree-0 subring is not finite-dimensional over the field"
                ) from exc

    @classmethod
    def polynomial(cls, names, weights=None, field=QQ, name=None) -> QuotientRing:
        return cls(PolyRing(names, weights, field), (), name=name)

    names = property(lambda self: self.ambient.names)
    weights = property(lambda self: self.ambient.weights)
    field = property(lambda self: self.ambient.field)
    nvars = property(lambda self: self.ambient.nvars)
    order = property(lambda self: self.ambient.order)

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.ambient == other.ambient
            and set(self.relations) == set(other.relations)
        )

    def __hash__(self):
        return hash((self.ambient, frozenset(self.relations)))

    def __repr__(self):
        rel = ", ".join(str(r) for r in self.relations)
        return f"QuotientRing({list(self.names)}, weights={list(self.weights)}, relations=[{rel}])"

    def __call__(self, value) -> Poly:
        return self.ambient(value)

    def var(self, i) -> Poly:
        return self.ambient.var(i)

    def gens(self):
        return self.ambient.gens()

    @cached_property
    def gb(self):
        """Reduced Groebner basis of the defining ideal (list of Poly)."""
        from .groebner import ideal_groebner

        return ideal_groebner(list(self.relations), self.ambient.order)

    def leading_monomials(self):
        return [g.leading_term()[0] for g in self.gb]

    def normal_form(self, f: Poly) -> Poly:
        from .groebner import reduce_poly

        return reduce_poly(self.ambient(f), self.gb, self.ambient.order)

    def is_zero(self, f: Poly) -> bool:
        return self.normal_form(f).is_zero()

    def is_monomial_ring(self) -> bool:
        """True when the defining ideal is generated by monomials."""
        return all(g.is_monomial() for g in self.gb)

    def krull_dimension(self) -> int:
        return krull_dimension(self)

    def quotient(self, extra, name=None) -> QuotientRing:
        """The ring R/(extra) over the same ambient ring."""
        return QuotientRing(self.ambient, list(self.relations) + [self.ambient(e) for e in extra], name=name)

    def with_field(self, field) -> QuotientRing:
        amb = self.ambient.with_field(field)
        return QuotientRing(amb, [r.change_ring(amb) for r in self.relations], name=self.name)

    def positive_weight_vars(self):
        return [i for i, w in enumerate(self.weights) if w > 0]

    def zero_weight_vars(self):
        return [i for i, w in enumerate(self.weights) if w == 0]

    def hilbert_numerator(self):
        return mono.hilbert_numerator(self.leading_monomials(), self.weights)


def as_quotient(ring) -> QuotientRing:
    if isinstance(ring, QuotientRing):
        return ring
    if isinstance(ring, PolyRing):
        return QuotientRing(ring, ())
    raise TypeError(f"not a ring: {ring!r}")


def krull_dimension(R) -> int:
    """Krull dimension via the leading-term ideal of the defining ideal."""
    R = as_quotient(R)
    return mono.monomial_dimension(R.leading_monomials(), R.nvars)


def univariate_factors(f: Poly, var: int):
    """Irreducible factors of a polynomial in the single variable ``var``.

    Returns ``[(factor, multiplicity), ...]`` with monic factors, using sympy
    over QQ or GF(p) according to the ring's field.
    """
    import sympy

    ring = f.ring
    if any(k for e in f.terms for i, k in enumerate(e) if i != var):
        raise ValueError(f"{f} involves more than one variable")
    z = sympy.Symbol("z")
    coeffs = {}
    for e, c in f.terms.items():
        coeffs[(e[var],)] = int(c.residue) if hasattr(c, "residue") else sympy.Rational(c.numerator, c.denominator)
    if ring.field.characteristic:
        sp = sympy.Poly.from_dict(coeffs, z, modulus=ring.field.characteristic)
    else:
        sp = sympy.Poly.from_dict(coeffs, z, domain=sympy.QQ)
    _, facs = sp.factor_list()
    out = []
    for g, m in facs:
        g = g.monic()
        terms = {}
        for (k,), c in g.as_dict().items():
            e = [0] * ring.nvars
            e[var] = k
            if ring.field.characteristic:
                terms[tuple(e)] = ring.field(int(c))
            else:
                terms[tuple(e)] = ring.field(Fraction(int(sympy.numer(c)), int(sympy.denom(c))))
        out.append((Poly(ring, terms), m))
    out.sort(key=lambda fm: (fm[0].total_degree(), str(fm[0])))
    return out
