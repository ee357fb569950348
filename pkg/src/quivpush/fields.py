"""Exact scalars: arbitrary-precision rationals and prime fields.

All algebra modules are parameterized by a field object exposing
``zero``, ``one``, ``from_int`` and ``parse``.  Elements support the
usual arithmetic operators exactly; there is no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

MAX_PRIME = 2**31


class FieldError(ValueError):
    pass


class Fp:
    """An element of Z/p, stored reduced mod p."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _coerce(self, other):
        if isinstance(other, Fp):
            if other.p != self.p:
                raise FieldError("mixed prime fields")
            return other
        if isinstance(other, int):
            return Fp(self.p, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.p, self.v + other.v)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.p, self.v - other.v)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.p, other.v - self.v)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Fp(self.p, self.v * other.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.v == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return Fp(self.p, self.v * pow(other.v, self.p - 2, self.p))

    def __neg__(self):
        return Fp(self.p, -self.v)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} (mod {self.p})"

    def __str__(self):
        return str(self.v)


class RationalField:
    """The rationals, backed by fractions.Fraction."""

    name = "q"

    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise FieldError(f"bad rational literal {text!r}") from exc

    def __repr__(self):
        return "RationalField()"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Z/p for a prime p <= 2^31."""

    def __init__(self, p: int):
        if p > MAX_PRIME:
            raise FieldError(f"prime {p} exceeds 2^31")
        if not _is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"
        self.zero = Fp(p, 0)
        self.one = Fp(p, 1)

    def from_int(self, n: int) -> Fp:
        return Fp(self.p, n)

    def parse(self, text: str) -> Fp:
        frac = RationalField().parse(text)
        denom = frac.denominator % self.p
        if denom == 0:
            raise FieldError(f"literal {text!r} has denominator divisible by {self.p}")
        return Fp(self.p, frac.numerator) / Fp(self.p, denom)

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))


QQ = RationalField()


def field_from_name(name: str):
    """Resolve a CLI field spec: 'q' or 'fp:<prime>'."""
    if name == "q":
        return QQ
    if name.startswith("fp:"):
        try:
            p = int(name[3:])
        except ValueError as exc:
            raise FieldError(f"bad field spec {name!r}") from exc
        return PrimeField(p)
    raise FieldError(f"unknown field {name!r} (expected 'q' or 'fp:<prime>')")
