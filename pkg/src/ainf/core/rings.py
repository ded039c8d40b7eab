"""Exact commutative base rings: the integers, the rationals, ``Z/m`` and
dual numbers ``l[t]/(t^2)`` over any of those.

Elements are plain Python values wherever possible (``int`` for ``Z``,
:class:`fractions.Fraction` for ``Q``) and small value classes otherwise
(:class:`Residue`, :class:`DualScalar`).  All of them support ``+ - *``,
unary minus, ``==`` and truthiness (``bool(x)`` is ``False`` exactly for
zero), which is the only protocol the rest of the package relies on.
"""

from __future__ import annotations

import re
from fractions import Fraction


class RingError(ValueError):
    pass


class MixedRings(RingError):
    """Two scalars from different rings were combined."""


class NonUnit(RingError, ArithmeticError):
    """Inversion of an element that is not a unit."""


class Residue:
    """A residue class modulo ``m``, stored in the canonical range ``[0, m)``."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if modulus < 2:
            raise RingError(f"modulus must be at least 2, got {modulus}")
        self.modulus = modulus
        self.value = int(value) % modulus

    def _other(self, other):
        if isinstance(other, Residue):
            if other.modulus != self.modulus:
                raise MixedRings(f"Z/{self.modulus} and Z/{other.modulus}")
            return other.value
        if isinstance(other, bool):
            return NotImplemented
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction) and other.denominator == 1:
            return other.numerator
        if isinstance(other, (Fraction, float)):
            raise MixedRings(f"Z/{self.modulus} and {type(other).__name__}")
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return Residue(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Residue(-self.value, self.modulus)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f"Residue({self.value}, {self.modulus})"

    def __str__(self):
        return str(self.value)


class DualScalar:
    """``a + b t`` with ``t^2 = 0``; ``a`` and ``b`` are base-ring elements."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a = a
        self.b = b

    @staticmethod
    def _split(other):
        if isinstance(other, DualScalar):
            return other.a, other.b
        return other, 0

    def __add__(self, other):
        a, b = self._split(other)
        return DualScalar(self.a + a, self.b + b)

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._split(other)
        return DualScalar(self.a - a, self.b - b)

    def __rsub__(self, other):
        a, b = self._split(other)
        return DualScalar(a - self.a, b - self.b)

    def __mul__(self, other):
        a, b = self._split(other)
        return DualScalar(self.a * a, self.a * b + self.b * a)

    __rmul__ = __mul__

    def __neg__(self):
        return DualScalar(-self.a, -self.b)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        a, b = self._split(other)
        return self.a == a and self.b == b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"DualScalar({self.a!r}, {self.b!r})"

    def __str__(self):
        return _format_dual(str(self.a), str(self.b))


def _format_dual(a: str, b: str) -> str:
    if b == "0":
        return a
    if b.startswith("-"):
        return f"{a}-{b[1:]}t"
    return f"{a}+{b}t"


class Ring:
    """Common interface of the exact rings.  Subclasses canonicalize values."""

    spec: str = "?"

    def coerce(self, x):
        raise NotImplementedError

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def is_unit(self, x) -> bool:
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(self.coerce(x))

    # The ring_arith surface: every operand is coerced first, so scalars from
    # a foreign ring raise MixedRings instead of silently mixing.
    def add(self, a, b):
        return self.coerce(a) + self.coerce(b)

    def mul(self, a, b):
        return self.coerce(a) * self.coerce(b)

    def neg(self, a):
        return -self.coerce(a)

    def eq(self, a, b) -> bool:
        return self.coerce(a) == self.coerce(b)

    def __repr__(self):
        return f"<ring {self.spec}>"

    def __eq__(self, other):
        return isinstance(other, Ring) and other.spec == self.spec

    def __hash__(self):
        return hash(self.spec)


class Integers(Ring):
    spec = "Z"

    def coerce(self, x):
        if isinstance(x, bool):
            raise MixedRings("bool is not a ring element")
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        raise MixedRings(f"{x!r} is not an integer")

    def is_unit(self, x):
        return self.coerce(x) in (1, -1)

    def inv(self, x):
        x = self.coerce(x)
        if x not in (1, -1):
            raise NonUnit(f"{x} is not a unit in Z")
        return x

    def parse(self, text):
        return self.coerce(_parse_fraction(text))


class Rationals(Ring):
    spec = "Q"

    def coerce(self, x):
        if isinstance(x, bool):
            raise MixedRings("bool is not a ring element")
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise MixedRings(f"{x!r} is not a rational number")

    def is_unit(self, x):
        return self.coerce(x) != 0

    def inv(self, x):
        x = self.coerce(x)
        if x == 0:
            raise NonUnit("0 is not invertible")
        return 1 / x

    def parse(self, text):
        return _parse_fraction(text)

    def format(self, x):
        x = self.coerce(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class IntegersMod(Ring):
    def __init__(self, m: int):
        if not isinstance(m, int) or m < 2:
            raise RingError(f"Z/m requires m >= 2, got {m!r}")
        self.m = m
        self.spec = f"Zmod:{m}"

    def coerce(self, x):
        if isinstance(x, Residue):
            if x.modulus != self.m:
                raise MixedRings(f"Z/{x.modulus} element used in Z/{self.m}")
            return x
        if isinstance(x, bool):
            raise MixedRings("bool is not a ring element")
        if isinstance(x, int):
            return Residue(x, self.m)
        if isinstance(x, Fraction) and x.denominator == 1:
            return Residue(x.numerator, self.m)
        raise MixedRings(f"{x!r} is not an element of Z/{self.m}")

    def is_unit(self, x):
        from math import gcd

        return gcd(self.coerce(x).value, self.m) == 1

    def inv(self, x):
        x = self.coerce(x)
        try:
            return Residue(pow(x.value, -1, self.m), self.m)
        except ValueError:
            raise NonUnit(f"{x.value} is not a unit mod {self.m}") from None

    def parse(self, text):
        v = _parse_fraction(text)
        if v.denominator != 1:
            return self.coerce(v.numerator) * self.inv(v.denominator)
        return self.coerce(v.numerator)


class DualNumbers(Ring):
    """``base[t]/(t^2)``."""

    def __init__(self, base: Ring):
        self.base = base
        self.spec = f"Dual[{base.spec}]"

    def coerce(self, x):
        if isinstance(x, DualScalar):
            return DualScalar(self.base.coerce(x.a), self.base.coerce(x.b))
        return DualScalar(self.base.coerce(x), self.base.zero())

    def is_unit(self, x):
        return self.base.is_unit(self.coerce(x).a)

    def inv(self, x):
        x = self.coerce(x)
        a_inv = self.base.inv(x.a)
        return DualScalar(a_inv, -(x.b * a_inv * a_inv))

    def augmentation(self, x):
        return self.coerce(x).a

    def parse(self, text):
        text = text.strip()
        if text.endswith("t"):
            body = text[:-1]
            # split at the last sign that is not part of a leading sign or exponent
            idx = max(body.rfind("+"), body.rfind("-"))
            if idx <= 0:
                a, b = "0", body or "1"
            else:
                a, b = body[:idx], body[idx:]
            b = b.replace("+", "") or "1"
            if b == "-":
                b = "-1"
            return DualScalar(self.base.parse(a), self.base.parse(b))
        return self.coerce(self.base.parse(text))

    def format(self, x):
        x = self.coerce(x)
        return _format_dual(self.base.format(x.a), self.base.format(x.b))


def _parse_fraction(text: str) -> Fraction:
    if not isinstance(text, str):
        raise RingError(f"scalars are serialized as strings, got {text!r}")
    t = text.strip().replace("−", "-")
    if not re.fullmatch(r"[+-]?\d+(/\d+)?", t):
        raise RingError(f"not an exact scalar: {text!r}")
    return Fraction(t)


def parse_ring(spec: str) -> Ring:
    """``"Z"``, ``"Q"``, ``"Zmod:m"`` (also ``"Z/m"``)."""
    s = spec.strip()
    if s in ("Z", "ZZ"):
        return Integers()
    if s in ("Q", "QQ"):
        return Rationals()
    m = re.fullmatch(r"(?:Zmod:|Z/)(\d+)", s)
    if m:
        return IntegersMod(int(m.group(1)))
    m = re.fullmatch(r"Dual\[(.+)\]", s)
    if m:
        return DualNumbers(parse_ring(m.group(1)))
    raise RingError(f"unknown ring {spec!r}")


ZZ = Integers()
QQ = Rationals()
