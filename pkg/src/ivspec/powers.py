"""Verified enclosures of interval matrix powers.

Four routes: plain square-and-multiply in interval arithmetic, the
spectral route V Lambda^k V^-1 (complex, then real-part extraction), its
real orthogonal variant for symmetric matrices, and the closed-form
circulant route.  Observation-style wide boxes [-h, h] with
h = sum_i Mag(Lambda_ii)^k cover symmetric matrices without eigenvectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rounding as rnd
from .decomposition import (SpectralDecomposition, decompose_circulant)
from .eigenvalues import SymEigBounds, symmetric_eigen_bounds
from .interval import (ComplexDisc, ComplexRect, Interval, disc_pow,
                       disc_to_rect, pow_up, rect_to_disc)
from .matrices import ComplexIntervalMatrix, IntervalMatrix, SymIntervalMatrix, im_mul

__all__ = [
    "PowerResult",
    "power_binary",
    "power_spectral",
    "power_symmetric_spectral",
    "power_widebox",
    "power_circulant",
]


@dataclass
class PowerResult:
    enclosure: IntervalMatrix | None
    method: str  # "binary" | "spectral" | "widebox" | "circulant"
    k: int
    status: str  # "success" | "failure"
    cause: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "success"


def power_binary(A: IntervalMatrix, k: int) -> PowerResult:
    """Square-and-multiply over interval matrix products; returns the
    operand unchanged for k = 1."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    if A.rows != A.cols:
        raise ValueError("power of a non-square matrix")
    result = None
    base = A
    kk = k
    try:
        # overflow is an expected, reported outcome here, not a warning
        with np.errstate(over="ignore", invalid="ignore"):
            while True:
                if kk & 1:
                    result = base if result is None else im_mul(result, base)
                kk >>= 1
                if kk == 0:
                    break
                base = im_mul(base, base)
    except ValueError:
        # a product overflowed to non-finite bounds mid-iteration
        return PowerResult(None, "binary", k, "failure", "overflow")
    if not (np.isfinite(result.lo).all() and np.isfinite(result.hi).all()):
        return PowerResult(None, "binary", k, "failure", "overflow")
    return PowerResult(result, "binary", k, "success")


def _diag_complex(entries: list) -> ComplexIntervalMatrix:
    n = len(entries)
    re_lo = np.zeros((n, n))
    re_hi = np.zeros((n, n))
    im_lo = np.zeros((n, n))
    im_hi = np.zeros((n, n))
    for i, rect in enumerate(entries):
        re_lo[i, i], re_hi[i, i] = rect.re.lo, rect.re.hi
        im_lo[i, i], im_hi[i, i] = rect.im.lo, rect.im.hi
    return ComplexIntervalMatrix(IntervalMatrix(re_lo, re_hi),
                                 IntervalMatrix(im_lo, im_hi))


def _real_part_enclosure(M: ComplexIntervalMatrix) -> IntervalMatrix:
    # the true power set is real, so the imaginary width may be discarded
    return M.re


def power_spectral(A: IntervalMatrix, k: int,
                   d: SpectralDecomposition) -> PowerResult:
    """V * Lambda^k * V^-1 with disc powers of the eigenvalue enclosures;
    the real parts of the reconstruction enclose the (real) power set."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    powered = []
    for lam in d.eigenvalues:
        disc = lam if isinstance(lam, ComplexDisc) else rect_to_disc(_rect_of(lam))
        powered.append(disc_to_rect(disc_pow(disc, k)))
    D = _diag_complex(powered)
    M = (d.V @ D) @ d.Vinv
    return PowerResult(_real_part_enclosure(M), "spectral", k, "success")


def _rect_of(lam) -> ComplexRect:
    if isinstance(lam, ComplexRect):
        return lam
    return ComplexRect(lam, Interval.point(0.0))


def power_symmetric_spectral(A: SymIntervalMatrix, k: int,
                             d: SpectralDecomposition) -> PowerResult:
    """Q * Lambda^k * Q^T, all real; scalar eigenvalue powers use the exact
    range of x**k over each interval (not repeated multiplication)."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    n = d.n
    lo = np.zeros((n, n))
    hi = np.zeros((n, n))
    for i, lam in enumerate(d.eigenvalues):
        p = lam.pow_int(k)
        lo[i, i], hi[i, i] = p.lo, p.hi
    D = IntervalMatrix(lo, hi)
    M = im_mul(im_mul(d.V, D), d.Vinv)
    return PowerResult(M, "spectral", k, "success")


def power_widebox(A: SymIntervalMatrix, k: int,
                  bounds: SymEigBounds | None = None) -> PowerResult:
    """Wide-box enclosure: every entry is [-h, h] with
    h = sum_i Mag(Lambda_ii)^k, rounded upward."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    if bounds is None:
        bounds = symmetric_eigen_bounds(A)
    h = 0.0
    for iv in bounds.intervals:
        h = float(rnd.add_up(h, pow_up(iv.mag(), k)))
    n = A.rows
    return PowerResult(IntervalMatrix.full(n, n, Interval(-h, h)),
                       "widebox", k, "success")


def power_circulant(c: IntervalMatrix, k: int,
                    d: SpectralDecomposition | None = None) -> PowerResult:
    """Closed-form circulant route: Fourier basis times disc powers of the
    eigenvalue enclosures, real parts extracted."""
    if k < 1:
        raise ValueError("exponent must be >= 1")
    if d is None:
        d = decompose_circulant(c)
    powered = [disc_to_rect(disc_pow(rect_to_disc(lam), k))
               for lam in d.eigenvalues]
    D = _diag_complex(powered)
    M = (d.V @ D) @ d.Vinv
    return PowerResult(_real_part_enclosure(M), "circulant", k, "success")
