"""Exact coefficient fields: the rationals and prime fields GF(p).

Rationals are :class:`fractions.Fraction`; prime-field elements are
:class:`PrimeFieldElement`.  Field objects (``QQ``, ``PrimeField(p)``) convert
integers and fractions into their elements and are what rings hold on to.
"""
from __future__ import annotations

from fractions import Fraction

Rational = Fraction

DEFAULT_PRIME = 2147483647  # 2**31 - 1


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic Miller-Rabin for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rat_arith(a, b, op: str) -> Fraction:
    """Apply ``op`` (one of ``+ - * /``) to two rationals exactly."""
    a, b = Fraction(a), Fraction(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        if b == 0:
            raise ZeroDivisionError("rational division by zero")
        return a / b
    raise ValueError(f"unknown operator {op!r}")


class PrimeFieldElement:
    """Residue class modulo a prime; immutable."""

    __slots__ = ("residue", "modulus")

    def __init__(self, value: int, modulus: int):
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "residue", value % modulus)

    def __setattr__(self, name, value):
        raise AttributeError("PrimeFieldElement is immutable")

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise ValueError("mixed prime fields")
            return other.residue
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.modulus)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue - o, self.modulus)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o - self.residue, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(self.residue * o, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.modulus == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return PrimeFieldElement(self.residue * pow(o, -1, self.modulus), self.modulus)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return PrimeFieldElement(o, self.modulus) / self

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.modulus)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if k < 0:
            return PrimeFieldElement(1, self.modulus) / PrimeFieldElement(
                pow(self.residue, -k, self.modulus), self.modulus
            )
        return PrimeFieldElement(pow(self.residue, k, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, PrimeFieldElement):
            return self.modulus == other.modulus and self.residue == other.residue
        if isinstance(other, (int, Fraction)):
            return self.residue == self._coerce(other) % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.residue, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __repr__(self):
        return f"PrimeFieldElement({self.residue}, {self.modulus})"

    def __str__(self):
        return str(self.residue)


class RationalField:
    name = "QQ"
    characteristic = 0

    def __call__(self, value) -> Fraction:
        if isinstance(value, PrimeFieldElement):
            raise TypeError("cannot lift a GF(p) element to QQ")
        return Fraction(value)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    def __init__(self, p: int = DEFAULT_PRIME):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, value) -> PrimeFieldElement:
        if isinstance(value, PrimeFieldElement):
            if value.modulus != self.p:
                raise ValueError("mixed prime fields")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({self.p})")
            return PrimeFieldElement(value.numerator * pow(value.denominator, -1, self.p), self.p)
        return PrimeFieldElement(int(value), self.p)

    @property
    def zero(self):
        return PrimeFieldElement(0, self.p)

    @property
    def one(self):
        return PrimeFieldElement(1, self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return self.name


QQ = RationalField()


def parse_field(text: str):
    """Parse ``q`` or ``fp:<prime>`` (the CLI's ``--field`` syntax)."""
    s = text.strip().lower()
    if s in ("q", "qq"):
        return QQ
    if s.startswith("fp:"):
        return PrimeField(int(s[3:]))
    if s == "fp":
        return PrimeField()
    raise ValueError(f"unknown field {text!r}; expected 'q' or 'fp:<prime>'")
