"""Exact arithmetic in the number field Q(i, sqrt 2).

An element a + b*i + c*sqrt2 + d*i*sqrt2 is stored as four integer
numerators over one shared positive denominator, kept in lowest terms.
The public components are exposed as ``fractions.Fraction`` values.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "FieldElement",
    "ZERO",
    "ONE",
    "I",
    "SQRT2",
    "field_add",
    "field_mul",
    "field_inv",
    "field_conj",
    "as_field",
]


def _normalize(a: int, b: int, c: int, d: int, den: int):
    if den < 0:
        a, b, c, d, den = -a, -b, -c, -d, -den
    if not (a or b or c or d):
        return 0, 0, 0, 0, 1
    g = gcd(gcd(gcd(a, b), gcd(c, d)), den)
    if g != 1:
        a //= g
        b //= g
        c //= g
        d //= g
        den //= g
    return a, b, c, d, den


class FieldElement:
    """Immutable element of Q(i, sqrt 2)."""

    __slots__ = ("_a", "_b", "_c", "_d", "_den", "_hash")

    def __init__(self, a=0, b=0, c=0, d=0):
        fa, fb, fc, fd = (Fraction(v) for v in (a, b, c, d))
        den = fa.denominator
        for f in (fb, fc, fd):
            den = den * f.denominator // gcd(den, f.denominator)
        self._set(
            *_normalize(
                fa.numerator * (den // fa.denominator),
                fb.numerator * (den // fb.denominator),
                fc.numerator * (den // fc.denominator),
                fd.numerator * (den // fd.denominator),
                den,
            )
        )

    def _set(self, a, b, c, d, den):
        self._a, self._b, self._c, self._d, self._den = a, b, c, d, den
        self._hash = None

    @classmethod
    def _raw(cls, a, b, c, d, den):
        obj = object.__new__(cls)
        obj._set(*_normalize(a, b, c, d, den))
        return obj

    # components
    @property
    def a(self) -> Fraction:
        return Fraction(self._a, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._b, self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._c, self._den)

    @property
    def d(self) -> Fraction:
        return Fraction(self._d, self._den)

    def components(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def is_zero(self) -> bool:
        return not (self._a or self._b or self._c or self._d)

    def is_rational(self) -> bool:
        return not (self._b or self._c or self._d)

    def is_real(self) -> bool:
        """True when the value is fixed by complex conjugation."""
        return not (self._b or self._d)

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._a, self._den)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # arithmetic
    def __add__(self, other):
        o = as_field(other)
        if o is NotImplemented:
            return NotImplemented
        d1, d2 = self._den, o._den
        if d1 == d2:
            return FieldElement._raw(
                self._a + o._a, self._b + o._b, self._c + o._c, self._d + o._d, d1
            )
        return FieldElement._raw(
            self._a * d2 + o._a * d1,
            self._b * d2 + o._b * d1,
            self._c * d2 + o._c * d1,
            self._d * d2 + o._d * d1,
            d1 * d2,
        )

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(FieldElement)
        obj._set(-self._a, -self._b, -self._c, -self._d, self._den)
        return obj

    def __sub__(self, other):
        o = as_field(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = as_field(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = as_field(other)
        if o is NotImplemented:
            return NotImplemented
        a1, b1, c1, d1 = self._a, self._b, self._c, self._d
        a2, b2, c2, d2 = o._a, o._b, o._c, o._d
        if not (b1 or c1 or d1):
            return FieldElement._raw(a1 * a2, a1 * b2, a1 * c2, a1 * d2, self._den * o._den)
        if not (b2 or c2 or d2):
            return FieldElement._raw(a2 * a1, a2 * b1, a2 * c1, a2 * d1, self._den * o._den)
        # basis products: i*i = -1, s*s = 2, (is)*(is) = -2, i*s = is, i*is = -s, s*is = 2i
        a = a1 * a2 - b1 * b2 + 2 * c1 * c2 - 2 * d1 * d2
        b = a1 * b2 + b1 * a2 + 2 * c1 * d2 + 2 * d1 * c2
        c = a1 * c2 + c1 * a2 - b1 * d2 - d1 * b2
        d = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2
        return FieldElement._raw(a, b, c, d, self._den * o._den)

    __rmul__ = __mul__

    def conj(self) -> "FieldElement":
        obj = object.__new__(FieldElement)
        obj._set(self._a, -self._b, self._c, -self._d, self._den)
        return obj

    def sigma(self) -> "FieldElement":
        """The field automorphism sending sqrt2 to -sqrt2."""
        obj = object.__new__(FieldElement)
        obj._set(self._a, self._b, -self._c, -self._d, self._den)
        return obj

    def norm(self) -> Fraction:
        """Absolute norm down to Q; nonzero exactly when self is nonzero."""
        x = self * self.conj()
        n = x * x.sigma()
        return n.to_fraction()

    def inv(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(i, sqrt2)")
        if self.is_rational():
            return FieldElement._raw(self._den, 0, 0, 0, self._a)
        c = self.conj()
        rest = c * self.sigma() * c.sigma()
        n = (self * rest).to_fraction()
        return rest * FieldElement(1 / n)

    def __truediv__(self, other):
        o = as_field(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = as_field(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison and hashing
    def __eq__(self, other):
        o = as_field(other)
        if o is NotImplemented:
            return NotImplemented
        return (
            self._den == o._den
            and self._a == o._a
            and self._b == o._b
            and self._c == o._c
            and self._d == o._d
        )

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._a, self._den))
            else:
                self._hash = hash((self._a, self._b, self._c, self._d, self._den))
        return self._hash

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        parts = []
        for comp, unit in zip(self.components(), ("", "i", "√2", "i√2")):
            if not comp:
                continue
            if unit and comp == 1:
                txt = unit
            elif unit and comp == -1:
                txt = "-" + unit
            else:
                txt = f"({comp})" if (unit and comp.denominator != 1) else str(comp)
                txt += unit
            parts.append(txt)
        if not parts:
            return "0"
        out = parts[0]
        for part in parts[1:]:
            out += " - " + part[1:] if part.startswith("-") else " + " + part
        return out

    # serialization
    def to_json(self) -> list:
        return [[str(f.numerator), str(f.denominator)] for f in self.components()]

    @classmethod
    def from_json(cls, data) -> "FieldElement":
        if isinstance(data, (int, str)):
            return cls(Fraction(data))
        if len(data) != 4:
            raise ValueError("field element JSON needs four [num, den] pairs")
        return cls(*(Fraction(int(n), int(d)) for n, d in data))


def as_field(x):
    """Coerce ints, Fractions and FieldElements; NotImplemented otherwise."""
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return FieldElement._raw(x, 0, 0, 0, 1)
    if isinstance(x, _RationalABC):
        return FieldElement._raw(x.numerator, 0, 0, 0, x.denominator)
    return NotImplemented


ZERO = FieldElement()
ONE = FieldElement(1)
I = FieldElement(0, 1)
SQRT2 = FieldElement(0, 0, 1)


def field_add(x: FieldElement, y: FieldElement) -> FieldElement:
    return as_field(x) + as_field(y)


def field_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    return as_field(x) * as_field(y)


def field_inv(x: FieldElement) -> FieldElement:
    return as_field(x).inv()


def field_conj(x: FieldElement) -> FieldElement:
    return as_field(x).conj()
