"""Scalar interval and complex disc arithmetic: enclosure properties
against sampled members, exact-range checks for powers, disc algebra."""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ivspec.interval import (ComplexDisc, ComplexRect, Interval, cos_enclosure,
                             disc_add, disc_mul, disc_pow, disc_sub,
                             disc_to_rect, pow_down, pow_up, rect_to_disc,
                             sin_enclosure)

coord = st.floats(min_value=-1e8, max_value=1e8,
                  allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw):
    a = draw(coord)
    b = draw(coord)
    return Interval(min(a, b), max(a, b))


def members(iv: Interval):
    out = [iv.lo, iv.hi, iv.mid()]
    if iv.lo < 0 < iv.hi:
        out.append(0.0)
    return out


def test_validation():
    with pytest.raises(ValueError):
        Interval(2.0, 1.0)
    with pytest.raises(ValueError):
        Interval(0.0, math.inf)
    with pytest.raises(ValueError):
        ComplexDisc(0j, -1.0)


@given(intervals(), intervals())
def test_add_sub_mul_enclose_member_results(x, y):
    s, d, p = x + y, x - y, x * y
    for a in members(x):
        for b in members(y):
            assert a + b in s
            assert a - b in d
            # product of members, evaluated exactly
            exact = Fraction(a) * Fraction(b)
            assert Fraction(p.lo) <= exact <= Fraction(p.hi)


@given(intervals(), intervals())
def test_div_encloses_member_results(x, y):
    if y.lo <= 0.0 <= y.hi:
        with pytest.raises(ZeroDivisionError):
            x / y
        return
    q = x / y
    for a in members(x):
        for b in members(y):
            exact = Fraction(a) / Fraction(b)
            assert Fraction(q.lo) <= exact <= Fraction(q.hi)


@given(intervals())
def test_mid_rad_cover(x):
    m, r = x.mid(), x.rad()
    assert m - r <= x.lo and x.hi <= m + r


@given(intervals())
def test_mag_mig(x):
    assert x.mag() == max(abs(x.lo), abs(x.hi))
    if x.lo <= 0.0 <= x.hi:
        assert x.mig() == 0.0
    else:
        assert x.mig() == min(abs(x.lo), abs(x.hi))


@given(intervals(), st.integers(min_value=1, max_value=12))
def test_pow_int_is_exact_range(x, k):
    p = x.pow_int(k)
    # endpoint candidates of the true range of t**k over [lo, hi]
    cands = [Fraction(x.lo) ** k, Fraction(x.hi) ** k]
    if k % 2 == 0 and x.lo <= 0.0 <= x.hi:
        cands.append(Fraction(0))
    exact_lo, exact_hi = min(cands), max(cands)
    assert Fraction(p.lo) <= exact_lo and exact_hi <= Fraction(p.hi)
    # within 1 ulp of the true range on each side
    assert Fraction(math.nextafter(p.lo, math.inf)) >= exact_lo
    assert Fraction(math.nextafter(p.hi, -math.inf)) <= exact_hi


@given(coord, st.integers(min_value=1, max_value=10))
def test_pow_updown_bracket(x, k):
    exact = Fraction(x) ** k
    lo, hi = pow_down(x, k), pow_up(x, k)
    if np.isfinite(lo) and np.isfinite(hi):
        assert Fraction(lo) <= exact <= Fraction(hi)


def test_sqrt():
    r = Interval(2.0, 9.0).sqrt()
    assert r.lo <= math.sqrt(2.0) and 3.0 <= r.hi
    with pytest.raises(ValueError):
        Interval(-1.0, 1.0).sqrt()


@given(st.floats(min_value=-10.0, max_value=10.0,
                 allow_nan=False, allow_infinity=False))
def test_trig_enclosures(t):
    iv = Interval.point(t)
    assert math.cos(t) in cos_enclosure(iv)
    assert math.sin(t) in sin_enclosure(iv)
    assert cos_enclosure(iv).lo >= -1.0 and cos_enclosure(iv).hi <= 1.0


complex_pts = st.builds(complex, coord, coord)
radii = st.floats(min_value=0.0, max_value=1e6,
                  allow_nan=False, allow_infinity=False)


def disc_members(d: ComplexDisc):
    out = [d.center]
    for ang in (0.0, 1.0, 2.5, 4.0):
        out.append(d.center + d.radius * complex(math.cos(ang), math.sin(ang)))
    return out


@given(st.builds(ComplexDisc, complex_pts, radii),
       st.builds(ComplexDisc, complex_pts, radii))
def test_disc_arithmetic_encloses_members(a, b):
    s, d, p = disc_add(a, b), disc_sub(a, b), disc_mul(a, b)
    tol = 1e-9 * (1.0 + abs(a.center) + abs(b.center) + a.radius + b.radius)
    for za in disc_members(a):
        for zb in disc_members(b):
            assert abs((za + zb) - s.center) <= s.radius + tol
            assert abs((za - zb) - d.center) <= d.radius + tol
            assert abs((za * zb) - p.center) <= p.radius + p.radius * 1e-12 \
                + tol * (abs(za) + abs(zb) + 1.0)


@given(st.builds(ComplexDisc,
                 st.builds(complex, st.floats(-3, 3), st.floats(-3, 3)),
                 st.floats(min_value=0.0, max_value=0.5)),
       st.integers(min_value=1, max_value=8))
def test_disc_pow_encloses_member_powers(a, k):
    p = disc_pow(a, k)
    tol = 1e-10 * (1.0 + abs(p.center) + p.radius)
    for z in disc_members(a):
        assert abs(z ** k - p.center) <= p.radius + tol


def test_disc_pow_binary_matches_repeated_mul():
    a = ComplexDisc(1.0 + 0.5j, 0.01)
    via_pow = disc_pow(a, 5)
    acc = a
    for _ in range(4):
        acc = disc_mul(acc, a)
    # binary exponentiation uses fewer disc products, so it is never wider
    assert via_pow.radius <= acc.radius * (1.0 + 1e-12)


@given(st.builds(ComplexDisc, complex_pts, radii))
def test_disc_rect_roundtrip(a):
    r = disc_to_rect(a)
    assert a.center.real in r.re and a.center.imag in r.im
    back = rect_to_disc(r)
    # rectangle circumscribes the disc, disc of the rectangle circumscribes it
    assert abs(back.center - a.center) <= 1e-9 * (1 + abs(a.center))
    assert back.radius >= a.radius * (1.0 - 1e-12)


@given(st.builds(ComplexRect, intervals(), intervals()),
       st.builds(complex, st.sampled_from([-0.25, 0.0, 0.5, 1.0]),
                 st.sampled_from([-0.5, 0.0, 0.75])))
def test_rect_mul_encloses_exact_products(a, w):
    # w has exactly representable parts, so member products against the
    # corner points of a are computed exactly in binary floating point
    p = a * ComplexRect.point(w)
    for re in (a.re.lo, a.re.hi):
        for im in (a.im.lo, a.im.hi):
            exact_re = Fraction(re) * Fraction(w.real) - Fraction(im) * Fraction(w.imag)
            exact_im = Fraction(re) * Fraction(w.imag) + Fraction(im) * Fraction(w.real)
            assert Fraction(p.re.lo) <= exact_re <= Fraction(p.re.hi)
            assert Fraction(p.im.lo) <= exact_im <= Fraction(p.im.hi)
