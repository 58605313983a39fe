"""Verified enclosures for interval linear systems and matrix inverses.

The workhorse is a Krawczyk iteration with epsilon inflation: precondition
with the approximate midpoint inverse C, enclose the error term with
z + (I - C*A)*E, and certify by strict containment of the inflated
iterate.  Complex systems are embedded as real systems of double size
(relaxing the dependencies between the duplicated blocks).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import rounding as rnd
from .matrices import ComplexIntervalMatrix, IntervalMatrix, im_mul

__all__ = [
    "SolveReport",
    "SingularEnclosureError",
    "solve_enclosure",
    "solve_complex_enclosure",
    "inverse_enclosure",
]

INFLATION_FACTOR = 1.1
INFLATION_ABS = 1e-20
MAX_ITERATIONS = 15
REFINE_ITERATIONS = 30


class SingularEnclosureError(Exception):
    """The enclosure could not be verified; the operand matrix may
    contain a singular realization."""


@dataclass
class SolveReport:
    enclosure: object  # IntervalMatrix or ComplexIntervalMatrix column, or None
    status: str  # "success" | "singular-midpoint" | "no-contraction"

    @property
    def ok(self) -> bool:
        return self.status == "success"


def _inflate(E: IntervalMatrix) -> IntervalMatrix:
    mid = E.mid_matrix()
    rad = E.rad_matrix()
    grow = INFLATION_FACTOR * rad + INFLATION_ABS
    return IntervalMatrix(rnd.sub_down(mid, grow), rnd.add_up(mid, grow))


def solve_enclosure(A: IntervalMatrix, b: IntervalMatrix) -> SolveReport:
    """Enclosure of the united solution set of the square system A x = b."""
    n = A.rows
    if A.cols != n or b.shape != (n, 1):
        raise ValueError("solve_enclosure expects a square system")
    mid_A = A.mid_matrix()
    try:
        C = np.linalg.inv(mid_A)
    except np.linalg.LinAlgError:
        return SolveReport(None, "singular-midpoint")
    if not np.isfinite(C).all():
        return SolveReport(None, "singular-midpoint")
    C_iv = IntervalMatrix.from_point(C)
    x_star = IntervalMatrix.from_point(C @ b.mid_matrix())

    residual = b - im_mul(A, x_star)
    z = im_mul(C_iv, residual)
    G = IntervalMatrix.identity(n) - im_mul(C_iv, A)

    if z.is_point() and (z.lo == 0).all():
        # x* solves every realization exactly; a contraction certificate
        # on any nondegenerate box proves regularity and uniqueness.
        G_mag = G.mag_matrix()
        row_sums = np.zeros(n)
        for j in range(n):
            row_sums = rnd.add_up(row_sums, G_mag[:, j])
        if float(np.max(row_sums)) < 1.0:
            return SolveReport(x_star, "success")

    E = z
    for _ in range(MAX_ITERATIONS):
        E_infl = _inflate(E)
        K = z + im_mul(G, E_infl)
        if (K.lo > E_infl.lo).all() and (K.hi < E_infl.hi).all():
            return SolveReport(x_star + _refine(z, G, K), "success")
        E = K
        if not (np.isfinite(E.lo).all() and np.isfinite(E.hi).all()):
            return SolveReport(None, "no-contraction")
    return SolveReport(None, "no-contraction")


def _refine(z: IntervalMatrix, G: IntervalMatrix,
            E: IntervalMatrix) -> IntervalMatrix:
    """Iterate the certified Krawczyk image towards its fixpoint.

    The error set is invariant under E -> (z + G*E) intersected with E,
    so every pass can only shrink the verified enclosure.
    """
    for _ in range(REFINE_ITERATIONS):
        K = z + im_mul(G, E)
        lo = np.maximum(K.lo, E.lo)
        hi = np.minimum(K.hi, E.hi)
        shrunk = IntervalMatrix(lo, hi)
        gain = (E.rad_matrix() - shrunk.rad_matrix()).max()
        E = shrunk
        if gain <= 1e-3 * E.rad_matrix().max() + 1e-300:
            break
    return E


def _complex_to_real_system(A: ComplexIntervalMatrix, b: ComplexIntervalMatrix):
    """Embed the complex system as [[Re, -Im], [Im, Re]] [x; y] = [Re b; Im b]."""
    re, im = A.re, A.im
    lo = np.block([[re.lo, (-im).lo], [im.lo, re.lo]])
    hi = np.block([[re.hi, (-im).hi], [im.hi, re.hi]])
    blo = np.vstack([b.re.lo, b.im.lo])
    bhi = np.vstack([b.re.hi, b.im.hi])
    return IntervalMatrix(lo, hi), IntervalMatrix(blo, bhi)


def solve_complex_enclosure(A: ComplexIntervalMatrix,
                            b: ComplexIntervalMatrix) -> SolveReport:
    """Enclosure of the solution set of a square complex interval system."""
    n = A.rows
    if A.cols != n or b.shape != (n, 1):
        raise ValueError("solve_complex_enclosure expects a square system")
    A2, b2 = _complex_to_real_system(A, b)
    rep = solve_enclosure(A2, b2)
    if not rep.ok:
        return SolveReport(None, rep.status)
    x2 = rep.enclosure
    enc = ComplexIntervalMatrix(
        IntervalMatrix(x2.lo[:n], x2.hi[:n]),
        IntervalMatrix(x2.lo[n:], x2.hi[n:]))
    return SolveReport(enc, "success")


def inverse_enclosure(V: ComplexIntervalMatrix) -> ComplexIntervalMatrix:
    """Enclosure of the set of inverses {V^-1 : V in the operand},
    computed column by column against canonical unit vectors.

    Raises SingularEnclosureError if any column solve fails (the operand
    may contain a singular matrix).
    """
    n = V.rows
    if V.cols != n:
        raise ValueError("inverse_enclosure expects a square matrix")
    cols_re_lo = np.empty((n, n))
    cols_re_hi = np.empty((n, n))
    cols_im_lo = np.empty((n, n))
    cols_im_hi = np.empty((n, n))
    for j in range(n):
        e = np.zeros((n, 1))
        e[j, 0] = 1.0
        rhs = ComplexIntervalMatrix(IntervalMatrix.from_point(e),
                                    IntervalMatrix.zeros(n, 1))
        rep = solve_complex_enclosure(V, rhs)
        if not rep.ok:
            raise SingularEnclosureError(
                f"column {j} of the inverse could not be enclosed ({rep.status})")
        x = rep.enclosure
        cols_re_lo[:, j] = x.re.lo[:, 0]
        cols_re_hi[:, j] = x.re.hi[:, 0]
        cols_im_lo[:, j] = x.im.lo[:, 0]
        cols_im_hi[:, j] = x.im.hi[:, 0]
    return ComplexIntervalMatrix(IntervalMatrix(cols_re_lo, cols_re_hi),
                                 IntervalMatrix(cols_im_lo, cols_im_hi))
