"""Directed-rounding building blocks.

All arithmetic runs in the default round-to-nearest mode; outward rounding
is obtained by computing the exact rounding error with error-free
transformations (2Sum, Dekker's two-product) and nudging the result by one
ulp only when the error has the wrong sign.  Exact results stay exact,
which matters for the identity-matrix and unit-vector paths.

Every kernel accepts floats or numpy arrays and is elementwise.
"""

import numpy as np

_SPLIT = 134217729.0  # 2**27 + 1, Dekker splitting constant
_INF = np.inf

# Products below this magnitude may have a non-representable error term
# (gradual underflow); above the upper guard the Dekker split can overflow.
_TINY = 1e-290
_HUGE = 1e290


def two_sum(a, b):
    """Return (s, e) with s = fl(a+b) and a + b = s + e exactly."""
    s = a + b
    bb = s - a
    e = (a - (s - bb)) + (b - bb)
    return s, e


def two_prod(a, b):
    """Return (p, e) with p = fl(a*b) and a * b = p + e exactly.

    Exactness of e requires no overflow/underflow; callers mask the
    unsafe magnitude ranges.
    """
    p = a * b
    ca = _SPLIT * a
    ah = ca - (ca - a)
    al = a - ah
    cb = _SPLIT * b
    bh = cb - (cb - b)
    bl = b - bh
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl
    return p, e


def _down(x, adjust):
    return np.where(adjust, np.nextafter(x, -_INF), x)


def _up(x, adjust):
    return np.where(adjust, np.nextafter(x, _INF), x)


def add_down(a, b):
    s, e = two_sum(a, b)
    return _down(s, e < 0)


def add_up(a, b):
    s, e = two_sum(a, b)
    return _up(s, e > 0)


def sub_down(a, b):
    return add_down(a, np.negative(b))


def sub_up(a, b):
    return add_up(a, np.negative(b))


def _mul_unsafe_mask(p, e):
    ap = np.abs(p)
    return (~np.isfinite(e)) | ((ap < _TINY) & (p != 0)) | (ap > _HUGE)


def mul_down(a, b):
    p, e = two_prod(a, b)
    unsafe = _mul_unsafe_mask(p, e)
    # a nonzero exact product can underflow to 0.0 with a zero error term;
    # only a negative exact product needs the downward nudge then
    under_neg = (p == 0) & (np.sign(a) * np.sign(b) < 0)
    return _down(p, unsafe | under_neg | (e < 0))


def mul_up(a, b):
    p, e = two_prod(a, b)
    unsafe = _mul_unsafe_mask(p, e)
    under_pos = (p == 0) & (np.sign(a) * np.sign(b) > 0)
    return _up(p, unsafe | under_pos | (e > 0))


def _div_residual(a, b, q):
    """Sign of a - q*b (the exact division residual), plus an unsafe mask."""
    p, e = two_prod(q, b)
    # a - p is exact by Sterbenz (p agrees with a to within one ulp).
    resid = (a - p) - e
    unsafe = _mul_unsafe_mask(p, e)
    return resid, unsafe


def div_down(a, b):
    q = a / b
    resid, unsafe = _div_residual(a, b, q)
    # true quotient exceeds q iff resid and b share a sign
    low = np.sign(resid) * np.sign(b) < 0
    return _down(q, unsafe | low)


def div_up(a, b):
    q = a / b
    resid, unsafe = _div_residual(a, b, q)
    high = np.sign(resid) * np.sign(b) > 0
    return _up(q, unsafe | high)


def sqrt_down(a):
    s = np.sqrt(a)
    p, e = two_prod(s, s)
    resid = (a - p) - e
    unsafe = _mul_unsafe_mask(p, e)
    return _down(s, unsafe | (resid < 0))


def sqrt_up(a):
    s = np.sqrt(a)
    p, e = two_prod(s, s)
    resid = (a - p) - e
    unsafe = _mul_unsafe_mask(p, e)
    return _up(s, unsafe | (resid > 0))


def sum_down(values):
    """Lower bound of the exact sum of an iterable/array of floats."""
    acc = 0.0
    for v in np.asarray(values, dtype=float).ravel():
        acc = float(add_down(acc, v))
    return acc


def sum_up(values):
    acc = 0.0
    for v in np.asarray(values, dtype=float).ravel():
        acc = float(add_up(acc, v))
    return acc
