"""Exact scalars: rationals (``fractions.Fraction``) and the cyclotomic field Q(w).

``w`` is a primitive cube root of unity, ``w**2 + w + 1 == 0``.  Elements of
Q(w) are stored as ``a + b*w`` with rational ``a`` and ``b``; ``w**2`` is always
rewritten as ``-1 - w`` so the pair ``(a, b)`` is canonical.

Rationals embed as ``b == 0`` and compare/hash equal to the matching
``Fraction``, so tensors may mix both types freely.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "Cyc",
    "OMEGA",
    "OMEGA2",
    "Scalar",
    "ScalarParseError",
    "cyc_inv",
    "cyc_mul",
    "format_scalar",
    "is_rational",
    "norm",
    "parse_scalar",
    "simplify",
]


class ScalarParseError(ValueError):
    """Raised when a textual scalar cannot be parsed."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class Cyc:
    """An element ``a + b*w`` of Q(w)."""

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0) -> None:
        self.a = _frac(a)
        self.b = _frac(b)

    @classmethod
    def _coerce(cls, other) -> Cyc | None:
        if isinstance(other, Cyc):
            return other
        if isinstance(other, (int, Fraction, Rational)):
            return cls(other, 0)
        return None

    def __repr__(self) -> str:
        return f"Cyc({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*w"
        sign = "+" if self.b > 0 else "-"
        return f"{self.a}{sign}{abs(self.b)}*w"

    def __eq__(self, other) -> bool:
        o = Cyc._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __neg__(self) -> Cyc:
        return Cyc(-self.a, -self.b)

    def __pos__(self) -> Cyc:
        return self

    def __add__(self, other):
        o = Cyc._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = Cyc._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = Cyc._coerce(other)
        if o is None:
            return NotImplemented
        return Cyc(o.a - self.a, o.b - self.b)

    def __mul__(self, other):
        o = Cyc._coerce(other)
        if o is None:
            return NotImplemented
        a, b, c, d = self.a, self.b, o.a, o.b
        # (a + bw)(c + dw) = ac + (ad + bc)w + bd w^2,  w^2 = -1 - w
        bd = b * d
        return Cyc(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conjugate(self) -> Cyc:
        """Galois conjugate ``w -> w**2``."""
        return Cyc(self.a - self.b, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> Cyc:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(w)")
        c = self.conjugate()
        return Cyc(c.a / n, c.b / n)

    def __truediv__(self, other):
        o = Cyc._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = Cyc._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int) -> Cyc:
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Cyc(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


Scalar = Union[Fraction, Cyc]

OMEGA = Cyc(0, 1)
OMEGA2 = Cyc(-1, -1)


def cyc_mul(x, y) -> Cyc:
    return Cyc._coerce(x) * Cyc._coerce(y)


def cyc_inv(x) -> Cyc:
    """Inverse in Q(w); raises ``ZeroDivisionError`` for zero."""
    return Cyc._coerce(x).inverse()


def norm(x) -> Fraction:
    """Field norm ``a**2 - a*b + b**2`` of ``a + b*w``."""
    return Cyc._coerce(x).norm()


def is_rational(x) -> bool:
    return not isinstance(x, Cyc) or x.b == 0


def simplify(x):
    """Demote ``Cyc`` values with zero ``w``-part to ``Fraction``."""
    if isinstance(x, Cyc):
        return x.a if x.b == 0 else x
    return _frac(x)


def _parse_rational(text) -> Fraction:
    if isinstance(text, bool):
        raise ScalarParseError(f"bad scalar {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ScalarParseError(f"bad scalar {text!r}")
    s = text.strip()
    if "/" in s:
        num, _, den = s.partition("/")
        try:
            p, q = int(num), int(den)
        except ValueError:
            raise ScalarParseError(f"bad rational {text!r}") from None
        if q == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        return Fraction(p, q)
    try:
        return Fraction(int(s))
    except ValueError:
        raise ScalarParseError(f"bad rational {text!r}") from None


def parse_scalar(obj):
    """Parse ``"p/q"``, an integer, or ``{"a": "p/q", "b": "r/s"}``."""
    if isinstance(obj, dict):
        extra = set(obj) - {"a", "b"}
        if extra:
            raise ScalarParseError(f"unexpected keys {sorted(extra)} in scalar")
        a = _parse_rational(obj.get("a", "0"))
        b = _parse_rational(obj.get("b", "0"))
        return simplify(Cyc(a, b))
    return _parse_rational(obj)


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_scalar(x):
    x = simplify(x)
    if isinstance(x, Cyc):
        return {"a": _format_rational(x.a), "b": _format_rational(x.b)}
    return _format_rational(x)
