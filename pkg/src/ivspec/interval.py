"""Scalar real and complex interval arithmetic with guaranteed enclosures.

Real intervals are closed [lo, hi] boxes; complex values come in a
rectangular (pair of real intervals) and a circular (center + radius disc)
flavour.  All operations return supersets of the exact range of the
operation over their operands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import rounding as rnd


@dataclass(frozen=True)
class Interval:
    """Closed real interval [lo, hi] with finite float endpoints."""

    lo: float
    hi: float

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"non-finite interval endpoints [{self.lo}, {self.hi}]")
        if self.lo > self.hi:
            raise ValueError(f"inverted interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x: float) -> "Interval":
        return Interval(x, x)

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"

    def __add__(self, other):
        if not isinstance(other, (Interval, int, float)):
            return NotImplemented
        other = _as_interval(other)
        return Interval(float(rnd.add_down(self.lo, other.lo)),
                        float(rnd.add_up(self.hi, other.hi)))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_as_interval(other))

    def __rsub__(self, other):
        return _as_interval(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, (Interval, int, float)):
            return NotImplemented
        other = _as_interval(other)
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lows = [float(rnd.mul_down(a, c)), float(rnd.mul_down(a, d)),
                float(rnd.mul_down(b, c)), float(rnd.mul_down(b, d))]
        highs = [float(rnd.mul_up(a, c)), float(rnd.mul_up(a, d)),
                 float(rnd.mul_up(b, c)), float(rnd.mul_up(b, d))]
        return Interval(min(lows), max(highs))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_interval(other)
        if other.lo <= 0.0 <= other.hi:
            raise ZeroDivisionError(f"division by interval containing zero: {other}")
        a, b, c, d = self.lo, self.hi, other.lo, other.hi
        lows = [float(rnd.div_down(a, c)), float(rnd.div_down(a, d)),
                float(rnd.div_down(b, c)), float(rnd.div_down(b, d))]
        highs = [float(rnd.div_up(a, c)), float(rnd.div_up(a, d)),
                 float(rnd.div_up(b, c)), float(rnd.div_up(b, d))]
        return Interval(min(lows), max(highs))

    def __rtruediv__(self, other):
        return _as_interval(other) / self

    def __contains__(self, x) -> bool:
        if isinstance(x, Interval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= x <= self.hi

    def is_point(self) -> bool:
        return self.lo == self.hi

    def mid(self) -> float:
        return (self.lo + self.hi) / 2.0

    def rad(self) -> float:
        m = self.mid()
        return max(float(rnd.sub_up(self.hi, m)), float(rnd.sub_up(m, self.lo)))

    def mag(self) -> float:
        return max(abs(self.lo), abs(self.hi))

    def mig(self) -> float:
        if self.lo <= 0.0 <= self.hi:
            return 0.0
        return min(abs(self.lo), abs(self.hi))

    def width(self) -> float:
        return float(rnd.sub_up(self.hi, self.lo))

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def intersect(self, other: "Interval") -> "Interval | None":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else None

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError(f"sqrt of interval with negative part: {self}")
        return Interval(float(rnd.sqrt_down(self.lo)), float(rnd.sqrt_up(self.hi)))

    def pow_int(self, k: int) -> "Interval":
        """Exact range of x**k over the interval (endpoint powers are
        evaluated in exact rational arithmetic, then rounded outward)."""
        if k < 1:
            raise ValueError("exponent must be >= 1")
        if k % 2 == 1:
            return Interval(pow_down(self.lo, k), pow_up(self.hi, k))
        if self.lo <= 0.0 <= self.hi:
            return Interval(0.0, pow_up(self.mag(), k))
        return Interval(pow_down(self.mig(), k), pow_up(self.mag(), k))


def _as_interval(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval(float(x), float(x))


# functional aliases

def iv_add(a: Interval, b: Interval) -> Interval:
    return a + b


def iv_sub(a: Interval, b: Interval) -> Interval:
    return a - b


def iv_mul(a: Interval, b: Interval) -> Interval:
    return a * b


def iv_div(a: Interval, b: Interval) -> Interval:
    return a / b


def mid(a: Interval) -> float:
    return a.mid()


def rad(a: Interval) -> float:
    return a.rad()


def mag(a: Interval) -> float:
    return a.mag()


def mig(a: Interval) -> float:
    return a.mig()


def pow_down(x: float, k: int) -> float:
    """Largest float <= x**k (exact integer-power evaluation)."""
    exact = Fraction(x) ** k
    y = float(exact)  # correctly rounded to nearest
    if Fraction(y) > exact:
        y = math.nextafter(y, -math.inf)
    return y


def pow_up(x: float, k: int) -> float:
    """Smallest float >= x**k."""
    exact = Fraction(x) ** k
    y = float(exact)
    if Fraction(y) < exact:
        y = math.nextafter(y, math.inf)
    return y


PI = Interval(math.nextafter(math.pi, 0.0), math.nextafter(math.pi, 4.0))
TWO_PI = PI * 2.0


def cos_enclosure(t: Interval) -> Interval:
    """Enclosure of cos over a (narrow) interval argument.

    Uses round-to-nearest endpoint values widened by the argument width
    (|cos'| <= 1) plus a 4-ulp margin for the libm call, clamped to
    [-1, 1].  Intended for the tiny argument enclosures arising from
    roots of unity, but sound for any finite argument.
    """
    c1, c2 = math.cos(t.lo), math.cos(t.hi)
    slack = t.width() + 4.0 * math.ulp(1.0)
    return Interval(max(-1.0, min(c1, c2) - slack), min(1.0, max(c1, c2) + slack))


def sin_enclosure(t: Interval) -> Interval:
    s1, s2 = math.sin(t.lo), math.sin(t.hi)
    slack = t.width() + 4.0 * math.ulp(1.0)
    return Interval(max(-1.0, min(s1, s2) - slack), min(1.0, max(s1, s2) + slack))


@dataclass(frozen=True)
class ComplexRect:
    """Rectangular complex interval {a + ib : a in re, b in im}."""

    re: Interval
    im: Interval

    @staticmethod
    def point(z: complex) -> "ComplexRect":
        return ComplexRect(Interval.point(z.real), Interval.point(z.imag))

    def __add__(self, other: "ComplexRect") -> "ComplexRect":
        return ComplexRect(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "ComplexRect") -> "ComplexRect":
        return ComplexRect(self.re - other.re, self.im - other.im)

    def __mul__(self, other) -> "ComplexRect":
        if isinstance(other, Interval):
            return ComplexRect(self.re * other, self.im * other)
        return ComplexRect(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    def __rmul__(self, other):
        if isinstance(other, Interval):
            return ComplexRect(self.re * other, self.im * other)
        return NotImplemented

    def conj(self) -> "ComplexRect":
        return ComplexRect(self.re, -self.im)

    def __contains__(self, z: complex) -> bool:
        return z.real in self.re and z.imag in self.im

    def abs_ub(self) -> float:
        return (Interval.point(self.re.mag()) * self.re.mag()
                + Interval.point(self.im.mag()) * self.im.mag()).sqrt().hi


@dataclass(frozen=True)
class ComplexDisc:
    """Circular complex interval {z : |z - center| <= radius}."""

    center: complex
    radius: float

    def __post_init__(self):
        if not (self.radius >= 0.0 and math.isfinite(self.radius)):
            raise ValueError(f"invalid disc radius {self.radius}")

    def __contains__(self, z: complex) -> bool:
        return abs(z - self.center) <= self.radius

    def abs_ub(self) -> float:
        c = Interval.point(self.center.real) * self.center.real \
            + Interval.point(self.center.imag) * self.center.imag
        return (c.sqrt() + self.radius).hi


def disc_add(a: ComplexDisc, b: ComplexDisc) -> ComplexDisc:
    cre = Interval.point(a.center.real) + b.center.real
    cim = Interval.point(a.center.imag) + b.center.imag
    extra = Interval.point(cre.rad()) + cim.rad()
    r = Interval.point(a.radius) + b.radius + extra
    return ComplexDisc(complex(cre.mid(), cim.mid()), r.hi)


def disc_sub(a: ComplexDisc, b: ComplexDisc) -> ComplexDisc:
    return disc_add(a, ComplexDisc(-b.center, b.radius))


def disc_mul(a: ComplexDisc, b: ComplexDisc) -> ComplexDisc:
    """Henrici product: <c1 c2, |c1| r2 + |c2| r1 + r1 r2>, with the
    rounding error of the computed center folded into the radius."""
    a_re = Interval.point(a.center.real)
    a_im = Interval.point(a.center.imag)
    b_re = Interval.point(b.center.real)
    b_im = Interval.point(b.center.imag)
    cre = a_re * b_re - a_im * b_im
    cim = a_re * b_im + a_im * b_re
    center = complex(cre.mid(), cim.mid())
    abs_a = (a_re * a_re + a_im * a_im).sqrt()
    abs_b = (b_re * b_re + b_im * b_im).sqrt()
    r = (abs_a * b.radius + abs_b * a.radius
         + Interval.point(a.radius) * b.radius
         + cre.rad() + cim.rad())
    return ComplexDisc(center, r.hi)


def disc_pow(a: ComplexDisc, k: int) -> ComplexDisc:
    """k-th power by binary exponentiation over disc_mul."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    result = None
    base = a
    while True:
        if k & 1:
            result = base if result is None else disc_mul(result, base)
        k >>= 1
        if k == 0:
            return result
        base = disc_mul(base, base)


def rect_to_disc(a: ComplexRect) -> ComplexDisc:
    cre, cim = a.re.mid(), a.im.mid()
    r = (Interval.point(a.re.rad()) * a.re.rad()
         + Interval.point(a.im.rad()) * a.im.rad()).sqrt()
    return ComplexDisc(complex(cre, cim), r.hi)


def disc_to_rect(a: ComplexDisc) -> ComplexRect:
    re = Interval.point(a.center.real) + Interval(-a.radius, a.radius)
    im = Interval.point(a.center.imag) + Interval(-a.radius, a.radius)
    return ComplexRect(re, im)
