"""Interval enclosures of eigenvectors.

For an eigenvalue enclosure lam of A, every eigenvector normalized to
x_j = 1 solves the square system obtained from (A - lam*I) x = 0 by
deleting one row i and moving column j to the right-hand side.  The
row-major (i, j) scan accepts the first candidate system with a verified
enclosure.  The symmetric pipeline additionally normalizes columns by the
exact interval of Euclidean norms, with an all-[-1, 1] fallback that
contains every orthogonal matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rounding as rnd
from .interval import ComplexDisc, ComplexRect, Interval, disc_to_rect
from .linsys import solve_complex_enclosure, solve_enclosure
from .matrices import ComplexIntervalMatrix, IntervalMatrix

__all__ = [
    "EigvecEnclosure",
    "EigvecFailedError",
    "eigvec_enclose",
    "normalize_column",
    "fallback_unit_box",
]


class EigvecFailedError(Exception):
    """All n^2 reduced candidate systems failed to verify."""


@dataclass
class EigvecEnclosure:
    vector: object  # IntervalMatrix or ComplexIntervalMatrix, shape (n, 1)
    pivot_index: int  # position of the exact point 1
    deleted_row: int


def _shift_real(A: IntervalMatrix, lam: Interval) -> IntervalMatrix:
    """A - lam * I."""
    lo = A.lo.copy()
    hi = A.hi.copy()
    for d in range(A.rows):
        shifted = A.entry(d, d) - lam
        lo[d, d], hi[d, d] = shifted.lo, shifted.hi
    return IntervalMatrix(lo, hi)


def _shift_complex(A: ComplexIntervalMatrix, lam: ComplexRect) -> ComplexIntervalMatrix:
    return ComplexIntervalMatrix(_shift_real(A.re, lam.re),
                                 _shift_real(A.im, lam.im))


def _assemble_real(sol: IntervalMatrix, j: int, n: int) -> IntervalMatrix:
    lo = np.empty((n, 1))
    hi = np.empty((n, 1))
    others = [p for p in range(n) if p != j]
    lo[others, 0] = sol.lo[:, 0]
    hi[others, 0] = sol.hi[:, 0]
    lo[j, 0] = hi[j, 0] = 1.0
    return IntervalMatrix(lo, hi)


def eigvec_enclose(A, lam) -> EigvecEnclosure:
    """Enclosure of the eigenvectors of A associated with the eigenvalue
    enclosure lam, normalized so the pivot component is exactly 1."""
    if isinstance(lam, ComplexDisc):
        lam = disc_to_rect(lam)
    complex_case = isinstance(lam, ComplexRect)
    if complex_case and isinstance(A, IntervalMatrix):
        A = ComplexIntervalMatrix.from_real(A)
    n = A.rows
    if A.cols != n:
        raise ValueError("eigvec_enclose expects a square matrix")

    if n == 1:
        if complex_case:
            vec = ComplexIntervalMatrix.from_point(np.array([[1.0 + 0.0j]]))
        else:
            vec = IntervalMatrix.from_point(np.array([[1.0]]))
        return EigvecEnclosure(vector=vec, pivot_index=0, deleted_row=0)

    B = _shift_complex(A, lam) if complex_case else _shift_real(A, lam)
    for i in range(n):
        rows = [p for p in range(n) if p != i]
        for j in range(n):
            cols = [p for p in range(n) if p != j]
            reduced = B.submatrix(rows, cols)
            rhs = -B.submatrix(rows, [j])
            if complex_case:
                rep = solve_complex_enclosure(reduced, rhs)
            else:
                rep = solve_enclosure(reduced, rhs)
            if rep.ok:
                if complex_case:
                    vec = ComplexIntervalMatrix(
                        _assemble_real(rep.enclosure.re, j, n),
                        _assemble_imag(rep.enclosure.im, j, n))
                else:
                    vec = _assemble_real(rep.enclosure, j, n)
                return EigvecEnclosure(vector=vec, pivot_index=j, deleted_row=i)
    raise EigvecFailedError("algorithm failed to compute an eigenvector enclosure")


def _assemble_imag(sol: IntervalMatrix, j: int, n: int) -> IntervalMatrix:
    lo = np.empty((n, 1))
    hi = np.empty((n, 1))
    others = [p for p in range(n) if p != j]
    lo[others, 0] = sol.lo[:, 0]
    hi[others, 0] = sol.hi[:, 0]
    lo[j, 0] = hi[j, 0] = 0.0
    return IntervalMatrix(lo, hi)


def norm2_interval(v: IntervalMatrix) -> Interval:
    """Exact interval of Euclidean norms {||x|| : x in v} (up to outward
    rounding): sqrt of the sums of squared mignitudes/magnitudes."""
    lo_sq = 0.0
    hi_sq = 0.0
    for i in range(v.rows):
        iv = v.entry(i, 0)
        mig, mag = iv.mig(), iv.mag()
        lo_sq = float(rnd.add_down(lo_sq, rnd.mul_down(mig, mig)))
        hi_sq = float(rnd.add_up(hi_sq, rnd.mul_up(mag, mag)))
    return Interval(float(rnd.sqrt_down(lo_sq)), float(rnd.sqrt_up(hi_sq)))


def normalize_column(v: IntervalMatrix) -> IntervalMatrix:
    """Divide the column by the interval of norms of its members; contains
    x/||x|| for every x in v."""
    norm = norm2_interval(v)
    if norm.lo <= 0.0:
        raise ZeroDivisionError("norm interval contains zero")
    lo = np.empty_like(v.lo)
    hi = np.empty_like(v.hi)
    for i in range(v.rows):
        q = v.entry(i, 0) / norm
        lo[i, 0], hi[i, 0] = q.lo, q.hi
    return IntervalMatrix(lo, hi)


def fallback_unit_box(n: int) -> IntervalMatrix:
    """n-by-n matrix of [-1, 1] entries; contains every orthogonal matrix."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    return IntervalMatrix.full(n, n, Interval(-1.0, 1.0))
