"""Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

A :class:`Scalar` is ``a + b*sqrt(d)`` with rational ``a`` and ``b`` and a
square-free ``d``.  Plain rationals are stored with ``d == 0`` so that equal
values always share one representation.  Signs and comparisons are decided
without ever touching floating point.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational

import gmpy2
from gmpy2 import mpq

from .errors import MixedDiscriminantsError, ParseError

__all__ = [
    "Scalar",
    "as_scalar",
    "scalar_sign",
    "is_rational",
    "parse_scalar",
    "format_scalar",
    "ZERO",
    "ONE",
]


def _squarefree_split(d: int) -> tuple[int, int]:
    """Return ``(s, r)`` with ``d == s*s*r`` and ``r`` square-free."""
    s, r = 1, d
    f = 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            s *= f
        f += 1
    return s, r


def _q(x) -> mpq:
    if isinstance(x, mpq):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, Rational):
        return mpq(int(x.numerator), int(x.denominator))
    if isinstance(x, str):
        return mpq(Fraction(x.strip()))
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _sign_q(x: mpq) -> int:
    return (x > 0) - (x < 0)


class Scalar:
    """Immutable element of Q or Q(sqrt(d))."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0) -> None:
        a = _q(a)
        b = _q(b)
        d = int(d)
        if d < 0:
            raise ValueError("only real quadratic fields are supported (d >= 0)")
        if b and d > 1:
            s, d = _squarefree_split(d)
            b = b * s
            if d == 1:
                a, b = a + b, mpq(0)
        elif d == 1:
            a, b = a + b, mpq(0)
        else:
            b = mpq(0)
        if not b:
            d = 0
        self.a = a
        self.b = b
        self.d = d

    @classmethod
    def _raw(cls, a: mpq, b: mpq, d: int) -> Scalar:
        s = object.__new__(cls)
        if b:
            s.a, s.b, s.d = a, b, d
        else:
            s.a, s.b, s.d = a, b, 0
        return s

    @classmethod
    def sqrt(cls, d: int) -> Scalar:
        return cls(0, 1, d)

    # -- accessors -------------------------------------------------------
    @property
    def rational_part(self) -> Fraction:
        return Fraction(int(self.a.numerator), int(self.a.denominator))

    @property
    def surd_part(self) -> Fraction:
        return Fraction(int(self.b.numerator), int(self.b.denominator))

    @property
    def discriminant(self) -> int:
        return self.d

    def is_rational(self) -> bool:
        return not self.b

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return self.rational_part

    # -- arithmetic ------------------------------------------------------
    def _d_with(self, other: Scalar) -> int:
        if self.d == other.d or not other.d:
            return self.d
        if not self.d:
            return other.d
        raise MixedDiscriminantsError(
            f"cannot combine sqrt({self.d}) and sqrt({other.d})"
        )

    def __add__(self, other) -> Scalar:
        if not isinstance(other, Scalar):
            try:
                other = _q(other)
            except TypeError:
                return NotImplemented
            return Scalar._raw(self.a + other, self.b, self.d)
        d = self._d_with(other)
        return Scalar._raw(self.a + other.a, self.b + other.b, d)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar._raw(-self.a, -self.b, self.d)

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other) -> Scalar:
        if not isinstance(other, Scalar):
            try:
                other = _q(other)
            except TypeError:
                return NotImplemented
            return Scalar._raw(self.a - other, self.b, self.d)
        d = self._d_with(other)
        return Scalar._raw(self.a - other.a, self.b - other.b, d)

    def __rsub__(self, other) -> Scalar:
        return (-self).__add__(other)

    def __mul__(self, other) -> Scalar:
        if not isinstance(other, Scalar):
            try:
                other = _q(other)
            except TypeError:
                return NotImplemented
            return Scalar._raw(self.a * other, self.b * other, self.d)
        if not other.b:
            return Scalar._raw(self.a * other.a, self.b * other.a, self.d)
        if not self.b:
            return Scalar._raw(self.a * other.a, self.a * other.b, other.d)
        d = self._d_with(other)
        return Scalar._raw(
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
            d,
        )

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self.b:
            if not self.a:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._raw(1 / self.a, mpq(0), 0)
        norm = self.a * self.a - self.d * self.b * self.b
        return Scalar._raw(self.a / norm, -self.b / norm, self.d)

    def __truediv__(self, other) -> Scalar:
        if not isinstance(other, Scalar):
            try:
                other = _q(other)
            except TypeError:
                return NotImplemented
            if not other:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._raw(self.a / other, self.b / other, self.d)
        if not other.b:
            if not other.a:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._raw(self.a / other.a, self.b / other.a, self.d)
        return self * other.inverse()

    def __rtruediv__(self, other) -> Scalar:
        return self.inverse() * other

    # -- order -----------------------------------------------------------
    def sign(self) -> int:
        a, b = self.a, self.b
        if not b:
            return _sign_q(a)
        sb = _sign_q(b)
        sa = _sign_q(a)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins
        lhs = a * a
        rhs = self.d * b * b
        return sa if lhs > rhs else sb

    def _cmp(self, other) -> int:
        if isinstance(other, Scalar):
            if not self.b and not other.b:
                return _sign_q(self.a - other.a)
            return (self - other).sign()
        try:
            o = _q(other)
        except TypeError:
            return NotImplemented
        if not self.b:
            return _sign_q(self.a - o)
        return Scalar._raw(self.a - o, self.b, self.d).sign()

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, (int, Fraction, type(mpq(0)))) and not isinstance(other, bool):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __lt__(self, other) -> bool:
        if type(other) is Scalar and not self.b and not other.b:
            return self.a < other.a
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other) -> bool:
        if type(other) is Scalar and not self.b and not other.b:
            return self.a <= other.a
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other) -> bool:
        if type(other) is Scalar and not self.b and not other.b:
            return self.a > other.a
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other) -> bool:
        if type(other) is Scalar and not self.b and not other.b:
            return self.a >= other.a
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __abs__(self) -> Scalar:
        return -self if self.sign() < 0 else self

    def __float__(self) -> float:
        if not self.b:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self) -> int:
        if not self.b:
            return int(gmpy2.floor(self.a))
        n = math.floor(float(self))
        # float estimate is only a starting point; settle exactly
        while (self - n).sign() < 0:
            n -= 1
        while (self - (n + 1)).sign() >= 0:
            n += 1
        return n

    def ceil(self) -> int:
        return -((-self).floor())

    def is_integer(self) -> bool:
        return not self.b and self.a.denominator == 1

    def __int__(self) -> int:
        if not self.is_integer():
            raise ValueError(f"{self} is not an integer")
        return int(self.a.numerator)

    # -- text ------------------------------------------------------------
    def __repr__(self) -> str:
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)

    def __reduce__(self):
        return (Scalar, (self.rational_part, self.surd_part, self.d))


ZERO = Scalar(0)
ONE = Scalar(1)


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    return Scalar._raw(_q(x), mpq(0), 0)


def scalar_sign(s) -> int:
    """Exact sign of ``s`` as -1, 0 or +1."""
    return as_scalar(s).sign()


def is_rational(s) -> bool:
    return as_scalar(s).is_rational()


_RAT = r"[0-9]+(?:\.[0-9]+)?(?:/[0-9]+)?"
_SCALAR_RE = re.compile(
    rf"""^
    (?:(?P<rat>[+-]?{_RAT})(?=[+-]))?
    (?P<sign>[+-])?
    (?:(?P<coef>{_RAT})\*?)?
    (?:sqrt\((?P<d1>[0-9]+)\)|√(?P<d2>[0-9]+))
    (?:/(?P<div>[0-9]+))?
    $""",
    re.VERBOSE,
)


def parse_scalar(text: str) -> Scalar:
    """Parse ``"p/q"``, ``"p/q + r/s*sqrt(d)"``, ``"r/s√d"``, ``"sqrt(d)/n"``."""
    if not isinstance(text, str):
        raise ParseError(f"scalar must be a string, got {type(text).__name__}")
    s = "".join(text.split())
    if not s:
        raise ParseError("empty scalar")
    if "sqrt" not in s and "√" not in s:
        try:
            return Scalar(Fraction(s))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {text!r}") from exc
    m = _SCALAR_RE.match(s)
    if m is None:
        raise ParseError(f"bad scalar {text!r}")
    try:
        a = Fraction(m["rat"]) if m["rat"] else Fraction(0)
        b = Fraction(m["coef"]) if m["coef"] else Fraction(1)
        if m["div"]:
            b /= int(m["div"])
    except ZeroDivisionError as exc:
        raise ParseError(f"zero denominator in {text!r}") from exc
    if m["sign"] == "-":
        b = -b
    d = int(m["d1"] or m["d2"])
    return Scalar(a, b, d)


def _fmt_q(x: mpq) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical text form; ``parse_scalar(format_scalar(s)) == s``."""
    if not s.b:
        return _fmt_q(s.a)
    mag = abs(s.b)
    surd = f"sqrt({s.d})" if mag == 1 else f"{_fmt_q(mag)}*sqrt({s.d})"
    if not s.a:
        return surd if s.b > 0 else f"-{surd}"
    op = "+" if s.b > 0 else "-"
    return f"{_fmt_q(s.a)} {op} {surd}"
