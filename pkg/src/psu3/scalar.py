"""Exact arithmetic in the real quadratic field Q(sqrt 3)."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

__all__ = ["Scalar", "ZERO", "ONE", "SQRT3", "as_scalar", "parse_rational"]


def parse_rational(text):
    """Parse ``"p/q"`` / ``"p"`` / int / Fraction into the internal rational type."""
    if isinstance(text, str):
        f = Fraction(text.strip())
        return _Q(f.numerator, f.denominator)
    if isinstance(text, Fraction):
        return _Q(text.numerator, text.denominator)
    if isinstance(text, float):
        raise TypeError("floating point values are not accepted")
    return _Q(text)


def _fmt(q) -> str:
    q = _Q(q)
    num, den = int(q.numerator), int(q.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


@total_ordering
class Scalar:
    """The number ``a + b*sqrt(3)`` with rational ``a`` and ``b``.

    Instances are immutable. Integers, Fractions and rational strings are
    coerced on the fly, so ``2 * Scalar(1, 1)`` and ``Scalar("1/2")`` work.
    """

    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0) -> None:
        object.__setattr__(self, "a", a if type(a) is _Q else parse_rational(a))
        object.__setattr__(self, "b", b if type(b) is _Q else parse_rational(b))

    @classmethod
    def _raw(cls, a, b) -> Scalar:
        obj = object.__new__(cls)
        object.__setattr__(obj, "a", a)
        object.__setattr__(obj, "b", b)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if type(other) is not Scalar:
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return Scalar._raw(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not Scalar:
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return Scalar._raw(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return Scalar._raw(-self.a, -self.b)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if type(other) is not Scalar:
            if isinstance(other, (int, Fraction)) or type(other) is _Q:
                q = _Q(other) if type(other) is not _Q else other
                return Scalar._raw(self.a * q, self.b * q)
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        a, b, c, d = self.a, self.b, other.a, other.b
        if not b and not d:
            return Scalar._raw(a * c, b)
        return Scalar._raw(a * c + 3 * b * d, a * d + b * c)

    __rmul__ = __mul__

    def norm(self):
        """Field norm ``a^2 - 3 b^2`` (a rational)."""
        return self.a * self.a - 3 * self.b * self.b

    def conjugate(self) -> Scalar:
        return Scalar._raw(self.a, -self.b)

    def inverse(self) -> Scalar:
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 3)")
        n = self.norm()
        return Scalar._raw(self.a / n, -self.b / n)

    def __truediv__(self, other):
        if type(other) is not Scalar:
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        if not other.b:
            if not other.a:
                raise ZeroDivisionError("division by zero in Q(sqrt 3)")
            return Scalar._raw(self.a / other.a, self.b / other.a)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __eq__(self, other) -> bool:
        if type(other) is not Scalar:
            try:
                other = as_scalar(other)
            except TypeError:
                return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        if not self.b:
            return hash(Fraction(int(self.a.numerator), int(self.a.denominator)))
        return hash((self.a, self.b))

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*sqrt(3)``."""
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0 or sa == sb:
            return sa if sa else sb
        if sa == 0:
            return sb
        # opposite signs: the larger magnitude wins
        return sa if a * a > 3 * b * b else sb

    def __lt__(self, other) -> bool:
        return (self - as_scalar(other)).sign() < 0

    def __abs__(self) -> Scalar:
        return -self if self.sign() < 0 else self

    def sqrt(self) -> Scalar | None:
        """Square root inside Q(sqrt 3), or None when it does not exist there."""
        s = self.sign()
        if s < 0:
            return None
        if s == 0:
            return ZERO
        a, b = self.a, self.b
        # (x + y r)^2 = x^2 + 3y^2 + 2xy r ; x^2 solves t^2 - a t + 3 b^2/4 = 0
        disc = _rational_sqrt(a * a - 3 * b * b)
        if disc is None:
            return None
        for x2 in ((a + disc) / 2, (a - disc) / 2):
            x = _rational_sqrt(x2)
            if x is None:
                continue
            if x:
                y = b / (2 * x)
            else:
                y = _rational_sqrt(a / 3)
                if y is None:
                    continue
            cand = Scalar._raw(x, y)
            if cand * cand == self:
                return abs(cand)
        return None

    # -- conversions ------------------------------------------------------

    def is_rational(self) -> bool:
        return not self.b

    def __float__(self) -> float:
        # diagnostic only; never used for decisions
        return float(self.a) + float(self.b) * 3**0.5

    def __repr__(self) -> str:
        return f"Scalar({_fmt(self.a)!r}, {_fmt(self.b)!r})"

    def __str__(self) -> str:
        if not self.b:
            return _fmt(self.a)
        tail = "√3" if abs(self.b) == 1 else f"{_fmt(abs(self.b))}√3"
        sign = "-" if self.b < 0 else "+"
        if not self.a:
            return ("-" if self.b < 0 else "") + tail
        return f"{_fmt(self.a)}{sign}{tail}"

    def render(self) -> str:
        """Canonical byte-stable rendering ``p/q+r/s√3``."""
        return f"{_fmt(self.a)}{'+' if self.b >= 0 else '-'}{_fmt(abs(self.b))}√3"

    def to_json(self) -> dict:
        return {"a": _fmt(self.a), "b": _fmt(self.b)}

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Read ``"p/q"``, ``"p/q+r/s√3"``, ``"-√3"`` or ``"2*sqrt3"`` style text."""
        m = _SCALAR_RE.fullmatch(text.replace(" ", "").replace("sqrt(3)", "√3").replace("sqrt3", "√3"))
        if not m or not (m["a"] or m["r"]):
            raise ValueError(f"cannot parse scalar {text!r}")
        a = m["a"] or "0"
        b = ("-" if m["bs"] == "-" else "") + (m["b"] or "1") if m["r"] else "0"
        return cls(a, b)

    @classmethod
    def from_json(cls, doc) -> Scalar:
        if isinstance(doc, dict):
            return cls(doc.get("a", "0"), doc.get("b", "0"))
        return as_scalar(doc)


_SCALAR_RE = re.compile(
    r"(?P<a>[+-]?\d+(?:/\d+)?(?![\d/]*\*?√))?"
    r"(?:(?P<bs>[+-])?(?P<b>\d+(?:/\d+)?)?\*?(?P<r>√3))?"
)


def _rational_sqrt(q):
    if q < 0:
        return None
    num, den = int(q.numerator), int(q.denominator)
    from math import isqrt

    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return _Q(rn, rd)


ZERO = Scalar._raw(_Q(0), _Q(0))
ONE = Scalar._raw(_Q(1), _Q(0))
SQRT3 = Scalar._raw(_Q(0), _Q(1))


def as_scalar(x) -> Scalar:
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Fraction, str)) or type(x) is _Q:
        return Scalar._raw(parse_rational(x), _Q(0))
    raise TypeError(f"cannot interpret {type(x).__name__} as an element of Q(sqrt 3)")
