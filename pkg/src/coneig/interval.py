"""Outward-rounded real intervals and rectangular complex intervals.

Endpoints are either exact rationals (:class:`fractions.Fraction`) or binary
floats.  Arithmetic on two exact operands stays exact.  As soon as a float is
involved the exact result of the operation on the (exactly representable)
operands is computed and then rounded to the neighbouring float in the
requested direction, so every float endpoint is a rigorous bound.

The module-level helpers ``add_up``, ``mul_down`` ... are the building blocks
used by the rest of the package whenever a single certified bound (not a
full interval) is needed.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import DivByZeroInterval

Real = Union[Fraction, float]

INF = math.inf
_MAXF = 1.7976931348623157e308

__all__ = [
    "Real",
    "Interval",
    "CRect",
    "iv_arith",
    "mag",
    "mig",
    "to_real",
    "add_up",
    "add_down",
    "sub_up",
    "sub_down",
    "mul_up",
    "mul_down",
    "div_up",
    "div_down",
    "sqrt_up",
    "sqrt_down",
    "sum_up",
    "sum_down",
]


def to_real(x) -> Real:
    """Coerce a scalar to an endpoint value (Fraction or float).

    Strings are parsed exactly: ``"0.1"`` becomes ``Fraction(1, 10)`` and
    ``"3/20"`` becomes ``Fraction(3, 20)``.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not a numeric endpoint")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if math.isnan(x):
            raise ValueError("NaN endpoint")
        return x
    if isinstance(x, Decimal):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if s.lower() in ("inf", "+inf", "infinity"):
            return INF
        if s.lower() in ("-inf", "-infinity"):
            return -INF
        return Fraction(s)
    raise TypeError(f"cannot use {type(x).__name__} as an interval endpoint")


def _is_exact(x) -> bool:
    return isinstance(x, (Fraction, int)) and not isinstance(x, bool)


def _float_up(q: Fraction) -> float:
    try:
        f = float(q)
    except OverflowError:
        return INF if q > 0 else -_MAXF
    if Fraction(f) < q:
        f = math.nextafter(f, INF)
    return f


def _float_down(q: Fraction) -> float:
    try:
        f = float(q)
    except OverflowError:
        return -INF if q < 0 else _MAXF
    if Fraction(f) > q:
        f = math.nextafter(f, -INF)
    return f


def _directed(op, a: Real, b: Real, up: bool) -> Real:
    if _is_exact(a) and _is_exact(b):
        return op(Fraction(a), Fraction(b))
    if math.isinf(a) or math.isinf(b):
        res = op(float(a), float(b))
        if math.isnan(res):
            raise ArithmeticError("indeterminate interval operation with infinite endpoint")
        return res
    q = op(Fraction(a), Fraction(b))
    return _float_up(q) if up else _float_down(q)


def add_up(a: Real, b: Real) -> Real:
    return _directed(operator.add, a, b, True)


def add_down(a: Real, b: Real) -> Real:
    return _directed(operator.add, a, b, False)


def sub_up(a: Real, b: Real) -> Real:
    return _directed(operator.sub, a, b, True)


def sub_down(a: Real, b: Real) -> Real:
    return _directed(operator.sub, a, b, False)


def _mul(a, b):
    # 0 * inf is taken as 0: an endpoint product only ever bounds finite values
    if a == 0 or b == 0:
        return Fraction(0) if (_is_exact(a) or _is_exact(b)) else 0.0
    return a * b


def mul_up(a: Real, b: Real) -> Real:
    if a == 0 or b == 0:
        return _mul(a, b)
    return _directed(operator.mul, a, b, True)


def mul_down(a: Real, b: Real) -> Real:
    if a == 0 or b == 0:
        return _mul(a, b)
    return _directed(operator.mul, a, b, False)


def div_up(a: Real, b: Real) -> Real:
    if b == 0:
        raise DivByZeroInterval("division by zero")
    return _directed(operator.truediv, a, b, True)


def div_down(a: Real, b: Real) -> Real:
    if b == 0:
        raise DivByZeroInterval("division by zero")
    return _directed(operator.truediv, a, b, False)


def sum_up(values) -> Real:
    acc: Real = Fraction(0)
    for v in values:
        acc = add_up(acc, v)
    return acc


def sum_down(values) -> Real:
    acc: Real = Fraction(0)
    for v in values:
        acc = add_down(acc, v)
    return acc


def _exact_sqrt(q: Fraction):
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_directed(x: Real, up: bool) -> Real:
    if x < 0:
        raise ValueError("square root of a negative bound")
    if isinstance(x, float) and math.isinf(x):
        return INF
    q = Fraction(x)
    if _is_exact(x):
        s = _exact_sqrt(q)
        if s is not None:
            return s
    f = math.sqrt(float(q)) if q < Fraction(_MAXF) else INF
    if math.isinf(f):
        return f if up else 1.3407807929942596e154
    if up:
        while Fraction(f) ** 2 < q:
            f = math.nextafter(f, INF)
    else:
        while Fraction(f) ** 2 > q:
            f = math.nextafter(f, -INF)
    return f


def sqrt_up(x: Real) -> Real:
    return _sqrt_directed(x, True)


def sqrt_down(x: Real) -> Real:
    return _sqrt_directed(x, False)


@dataclass(frozen=True)
class Interval:
    """Closed real interval ``[lo, hi]``.

    ``Interval(a, b)`` normalizes to ``[min(a, b), max(a, b)]``;
    ``Interval(a)`` is the degenerate interval ``[a, a]``.
    """

    lo: Real
    hi: Real = None  # type: ignore[assignment]

    def __post_init__(self):
        lo = to_real(self.lo)
        hi = lo if self.hi is None else to_real(self.hi)
        if hi < lo:
            lo, hi = hi, lo
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def coerce(cls, x) -> "Interval":
        if isinstance(x, Interval):
            return x
        if isinstance(x, (tuple, list)) and len(x) == 2:
            return cls(x[0], x[1])
        return cls(x)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def is_exact(self) -> bool:
        return _is_exact(self.lo) and _is_exact(self.hi)

    def width(self) -> Real:
        return sub_up(self.hi, self.lo)

    def mid(self) -> Real:
        """Midpoint; exact for rational endpoints, nearest float otherwise."""
        if self.is_exact:
            return (self.lo + self.hi) / 2
        return float(self.lo) / 2 + float(self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    __contains__ = contains

    def subset(self, other: "Interval") -> bool:
        return other.contains(self)

    def __add__(self, other):
        other = Interval.coerce(other)
        return Interval(add_down(self.lo, other.lo), add_up(self.hi, other.hi))

    __radd__ = __add__

    def __sub__(self, other):
        other = Interval.coerce(other)
        return Interval(sub_down(self.lo, other.hi), sub_up(self.hi, other.lo))

    def __rsub__(self, other):
        return Interval.coerce(other) - self

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __mul__(self, other):
        other = Interval.coerce(other)
        pairs = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)]
        return Interval(min(mul_down(a, b) for a, b in pairs), max(mul_up(a, b) for a, b in pairs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = Interval.coerce(other)
        if other.lo <= 0 <= other.hi:
            raise DivByZeroInterval(f"division by {other}, which contains zero")
        pairs = [(self.lo, other.lo), (self.lo, other.hi), (self.hi, other.lo), (self.hi, other.hi)]
        return Interval(min(div_down(a, b) for a, b in pairs), max(div_up(a, b) for a, b in pairs))

    def __rtruediv__(self, other):
        return Interval.coerce(other) / self

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(Fraction(0) if self.is_exact else 0.0, max(-self.lo, self.hi))

    def sqr(self) -> "Interval":
        """Square with the dependency taken into account (never negative)."""
        a = abs(self)
        return Interval(mul_down(a.lo, a.lo), mul_up(a.hi, a.hi))

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError(f"square root of {self}, which has negative part")
        return Interval(sqrt_down(self.lo), sqrt_up(self.hi))

    def mag(self) -> Real:
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> Real:
        if self.lo <= 0 <= self.hi:
            return Fraction(0) if self.is_exact else 0.0
        return min(abs(self.lo), abs(self.hi))

    def __repr__(self):
        if self.is_point:
            return f"Interval({self.lo})"
        return f"Interval({self.lo}, {self.hi})"

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


_ZERO = Interval(0)


@dataclass(frozen=True)
class CRect:
    """Rectangular complex interval ``{x + iy : x in re, y in im}``."""

    re: Interval
    im: Interval = _ZERO

    def __post_init__(self):
        object.__setattr__(self, "re", Interval.coerce(self.re))
        object.__setattr__(self, "im", Interval.coerce(self.im))

    @classmethod
    def coerce(cls, x) -> "CRect":
        if isinstance(x, CRect):
            return x
        if isinstance(x, Interval):
            return cls(x)
        if isinstance(x, complex):
            return cls(Interval(x.real), Interval(x.imag))
        return cls(Interval.coerce(x))

    @property
    def is_real(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    @property
    def is_point(self) -> bool:
        return self.re.is_point and self.im.is_point

    @property
    def is_exact(self) -> bool:
        return self.re.is_exact and self.im.is_exact

    def mid(self) -> complex:
        return complex(float(self.re.mid()), float(self.im.mid()))

    def point(self) -> "CRect":
        """Degenerate rectangle at the midpoint (exact when endpoints are)."""
        return CRect(Interval(self.re.mid()), Interval(self.im.mid()))

    def contains(self, z) -> bool:
        if isinstance(z, CRect):
            return self.re.contains(z.re) and self.im.contains(z.im)
        if isinstance(z, complex):
            return self.re.contains(z.real) and self.im.contains(z.imag)
        return self.re.contains(z) and self.im.contains(0)

    __contains__ = contains

    def __add__(self, other):
        other = CRect.coerce(other)
        return CRect(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = CRect.coerce(other)
        return CRect(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return CRect.coerce(other) - self

    def __neg__(self):
        return CRect(-self.re, -self.im)

    def __mul__(self, other):
        other = CRect.coerce(other)
        if self.is_real and other.is_real:
            return CRect(self.re * other.re)
        return CRect(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __repr__(self):
        if self.is_real:
            return f"CRect({self.re!r})"
        return f"CRect({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.is_real:
            return str(self.re)
        return f"{self.re} + i{self.im}"


def iv_arith(a: Interval, b: Interval, op: str) -> Interval:
    """Apply ``op`` in ``{"add", "sub", "mul", "div"}`` with outward rounding."""
    try:
        fn = {"add": operator.add, "sub": operator.sub, "mul": operator.mul, "div": operator.truediv}[op]
    except KeyError:
        raise ValueError(f"unknown interval operation {op!r}") from None
    return fn(Interval.coerce(a), Interval.coerce(b))


def mag(x) -> Real:
    """Upper bound of ``|z|`` over the rectangle ``x``."""
    x = CRect.coerce(x)
    r = x.re.mag()
    if x.is_real:
        return r
    i = x.im.mag()
    if r == 0:
        return i
    return sqrt_up(add_up(mul_up(r, r), mul_up(i, i)))


def mig(x) -> Real:
    """Lower bound of ``|z|`` over the rectangle ``x``; zero if it contains 0."""
    x = CRect.coerce(x)
    r = x.re.mig()
    if x.is_real:
        return r
    i = x.im.mig()
    if r == 0:
        return i
    if i == 0:
        return r
    return sqrt_down(add_down(mul_down(r, r), mul_down(i, i)))
