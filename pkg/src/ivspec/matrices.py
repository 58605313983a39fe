"""Dense real and complex interval matrices.

Storage is a pair of endpoint arrays (lo, hi), row-major.  All matrix
operations preserve the enclosure contract: the result contains every
pointwise result over realizations of the operands.  Interval vectors are
single-column matrices.
"""

from __future__ import annotations

import io

import numpy as np

from . import rounding as rnd
from .interval import Interval

__all__ = [
    "IntervalMatrix",
    "SymIntervalMatrix",
    "ComplexIntervalMatrix",
    "im_add",
    "im_mul",
    "sum_radii",
    "spectral_norm_ub",
    "norm_ub_nonneg",
    "norm2_ub_nonneg",
    "write_matrix",
    "read_matrix",
]


class IntervalMatrix:
    """Real interval matrix given by lower/upper bound matrices."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi):
        lo = np.array(lo, dtype=float)
        hi = np.array(hi, dtype=float)
        if lo.ndim == 1:
            lo = lo[:, None]
            hi = hi[:, None]
        if lo.ndim != 2 or lo.shape != hi.shape:
            raise ValueError(f"bad bound shapes {lo.shape} vs {hi.shape}")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("non-finite matrix bounds")
        if (lo > hi).any():
            raise ValueError("lower bound exceeds upper bound")
        self.lo = lo
        self.hi = hi

    # construction -----------------------------------------------------

    @classmethod
    def from_point(cls, P) -> "IntervalMatrix":
        P = np.asarray(P, dtype=float)
        return cls(P.copy(), P.copy())

    @classmethod
    def identity(cls, n: int) -> "IntervalMatrix":
        return cls.from_point(np.eye(n))

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntervalMatrix":
        return cls(np.zeros((m, n)), np.zeros((m, n)))

    @classmethod
    def full(cls, m: int, n: int, iv: Interval) -> "IntervalMatrix":
        return cls(np.full((m, n), iv.lo), np.full((m, n), iv.hi))

    @classmethod
    def from_intervals(cls, grid) -> "IntervalMatrix":
        lo = np.array([[iv.lo for iv in row] for row in grid])
        hi = np.array([[iv.hi for iv in row] for row in grid])
        return cls(lo, hi)

    # shape / access ---------------------------------------------------

    @property
    def shape(self):
        return self.lo.shape

    @property
    def rows(self):
        return self.lo.shape[0]

    @property
    def cols(self):
        return self.lo.shape[1]

    def entry(self, i: int, j: int) -> Interval:
        return Interval(self.lo[i, j], self.hi[i, j])

    def column(self, j: int) -> "IntervalMatrix":
        return IntervalMatrix(self.lo[:, j:j + 1], self.hi[:, j:j + 1])

    def submatrix(self, rows, cols) -> "IntervalMatrix":
        return IntervalMatrix(self.lo[np.ix_(rows, cols)],
                              self.hi[np.ix_(rows, cols)])

    # derived point matrices --------------------------------------------

    def mid_matrix(self) -> np.ndarray:
        return (self.lo + self.hi) / 2.0

    def rad_matrix(self) -> np.ndarray:
        m = self.mid_matrix()
        return np.maximum(rnd.sub_up(self.hi, m), rnd.sub_up(m, self.lo))

    def mag_matrix(self) -> np.ndarray:
        return np.maximum(np.abs(self.lo), np.abs(self.hi))

    def contains(self, P) -> bool:
        P = np.asarray(P, dtype=float)
        if P.ndim == 1:
            P = P[:, None]
        if P.shape != self.shape:
            raise ValueError("shape mismatch")
        return bool(((self.lo <= P) & (P <= self.hi)).all())

    def contains_matrix(self, other: "IntervalMatrix") -> bool:
        return bool(((self.lo <= other.lo) & (other.hi <= self.hi)).all())

    def is_point(self) -> bool:
        return bool((self.lo == self.hi).all())

    # arithmetic --------------------------------------------------------

    def __add__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return IntervalMatrix(rnd.add_down(self.lo, other.lo),
                              rnd.add_up(self.hi, other.hi))

    def __sub__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        return self + (-other)

    def __neg__(self) -> "IntervalMatrix":
        return IntervalMatrix(-self.hi, -self.lo)

    def __matmul__(self, other: "IntervalMatrix") -> "IntervalMatrix":
        return im_mul(self, other)

    def transpose(self) -> "IntervalMatrix":
        return IntervalMatrix(self.lo.T, self.hi.T)

    @property
    def T(self) -> "IntervalMatrix":
        return self.transpose()

    def scale(self, iv: Interval) -> "IntervalMatrix":
        plo, phi = _prod_bounds(self.lo, self.hi,
                                np.float64(iv.lo), np.float64(iv.hi))
        return IntervalMatrix(plo, phi)

    def div_scalar(self, iv: Interval) -> "IntervalMatrix":
        if iv.lo <= 0.0 <= iv.hi:
            raise ZeroDivisionError("division by interval containing zero")
        if iv.lo > 0:
            if iv.is_point():
                return IntervalMatrix(rnd.div_down(self.lo, iv.lo),
                                      rnd.div_up(self.hi, iv.lo))
            lo = np.minimum(rnd.div_down(self.lo, iv.lo),
                            rnd.div_down(self.lo, iv.hi))
            hi = np.maximum(rnd.div_up(self.hi, iv.lo),
                            rnd.div_up(self.hi, iv.hi))
            return IntervalMatrix(lo, hi)
        return (-self).div_scalar(-iv)

    def hull(self, other: "IntervalMatrix") -> "IntervalMatrix":
        return IntervalMatrix(np.minimum(self.lo, other.lo),
                              np.maximum(self.hi, other.hi))

    def widen(self, delta: float) -> "IntervalMatrix":
        return IntervalMatrix(rnd.sub_down(self.lo, delta),
                              rnd.add_up(self.hi, delta))

    def __eq__(self, other):
        return (isinstance(other, IntervalMatrix)
                and self.shape == other.shape
                and (self.lo == other.lo).all()
                and (self.hi == other.hi).all())

    def __repr__(self):
        return f"IntervalMatrix(shape={self.shape})"


class SymIntervalMatrix(IntervalMatrix):
    """Square interval matrix restricted to its symmetric realizations."""

    def __init__(self, lo, hi):
        super().__init__(lo, hi)
        if self.rows != self.cols:
            raise ValueError("symmetric interval matrix must be square")
        if not ((self.lo == self.lo.T).all() and (self.hi == self.hi.T).all()):
            raise ValueError("midpoint or radius matrix is not symmetric")


def _prod_bounds(alo, ahi, blo, bhi):
    """Elementwise interval product bounds (broadcasting endpoints)."""
    lows = np.minimum.reduce([
        rnd.mul_down(alo, blo), rnd.mul_down(alo, bhi),
        rnd.mul_down(ahi, blo), rnd.mul_down(ahi, bhi)])
    highs = np.maximum.reduce([
        rnd.mul_up(alo, blo), rnd.mul_up(alo, bhi),
        rnd.mul_up(ahi, blo), rnd.mul_up(ahi, bhi)])
    return lows, highs


def im_add(A: IntervalMatrix, B: IntervalMatrix) -> IntervalMatrix:
    return A + B


def im_mul(A: IntervalMatrix, B: IntervalMatrix) -> IntervalMatrix:
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch in product: {A.shape} @ {B.shape}")
    m, p = A.rows, B.cols
    acc_lo = np.zeros((m, p))
    acc_hi = np.zeros((m, p))
    for t in range(A.cols):
        plo, phi = _prod_bounds(A.lo[:, t:t + 1], A.hi[:, t:t + 1],
                                B.lo[t:t + 1, :], B.hi[t:t + 1, :])
        acc_lo = rnd.add_down(acc_lo, plo)
        acc_hi = rnd.add_up(acc_hi, phi)
    return IntervalMatrix(acc_lo, acc_hi)


def sum_radii(A: IntervalMatrix) -> float:
    """Sum of entry radii (diagnostic quantity, round-to-nearest)."""
    return float(np.sum(A.rad_matrix()))


def _axis_sums_up(M: np.ndarray, axis: int) -> np.ndarray:
    acc = np.zeros(M.shape[1 - axis])
    for i in range(M.shape[axis]):
        acc = rnd.add_up(acc, M[i, :] if axis == 0 else M[:, i])
    return acc


def norm_ub_nonneg(M: np.ndarray) -> float:
    """Upper bound on the spectral norm of a nonnegative point matrix
    via sqrt(norm1 * norminf), all rounded upward."""
    if M.size == 0:
        return 0.0
    n1 = float(np.max(_axis_sums_up(M, 0)))
    ninf = float(np.max(_axis_sums_up(M, 1)))
    return float(rnd.sqrt_up(rnd.mul_up(n1, ninf)))


def _matvec_up(M: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Upward-rounded M @ v for entrywise nonnegative M and v."""
    out = np.zeros(M.shape[0])
    for j in range(M.shape[1]):
        out = rnd.add_up(out, rnd.mul_up(M[:, j], v[j]))
    return out


def norm2_ub_nonneg(M: np.ndarray) -> float:
    """Tight upper bound on the spectral norm of a nonnegative point matrix.

    Power iteration approximates the Perron vector v of S = M^T M; the
    Collatz-Wielandt inequality rho(S) <= max_i (Sv)_i / v_i then certifies
    the bound with upward rounding.  Capped by the coarse sqrt(norm1*norminf)
    bound in case the iteration lands on a poor v.
    """
    coarse = norm_ub_nonneg(M)
    if M.size == 0 or not np.any(M):
        return 0.0
    v = np.ones(M.shape[1])
    for _ in range(150):
        w = M.T @ (M @ v)
        top = w.max()
        if not np.isfinite(top) or top <= 0.0:
            return coarse
        # keep every component positive so Collatz-Wielandt applies
        v = w / top + 1e-14
    sv = _matvec_up(M.T, _matvec_up(M, v))
    ratio = float(np.max(rnd.div_up(sv, v)))
    if not np.isfinite(ratio) or ratio < 0.0:
        return coarse
    return min(float(rnd.sqrt_up(ratio)), coarse)


def spectral_norm_ub(A) -> float:
    """Upper bound u >= ||A||_2 for every realization A of the operand.

    Valid because ||A||_2 <= || |A| ||_2 <= ||M||_2 <= sqrt(||M||_1 ||M||_inf)
    with M the entrywise magnitude matrix.
    """
    return norm_ub_nonneg(A.mag_matrix())


class ComplexIntervalMatrix:
    """Rectangular-form complex interval matrix (re + i*im)."""

    __slots__ = ("re", "im")

    def __init__(self, re: IntervalMatrix, im: IntervalMatrix):
        if re.shape != im.shape:
            raise ValueError("mismatched real/imaginary shapes")
        self.re = re
        self.im = im

    @classmethod
    def from_real(cls, A: IntervalMatrix) -> "ComplexIntervalMatrix":
        return cls(A, IntervalMatrix.zeros(*A.shape))

    @classmethod
    def from_point(cls, Z) -> "ComplexIntervalMatrix":
        Z = np.asarray(Z, dtype=complex)
        if Z.ndim == 1:
            Z = Z[:, None]
        return cls(IntervalMatrix.from_point(Z.real),
                   IntervalMatrix.from_point(Z.imag))

    @classmethod
    def identity(cls, n: int) -> "ComplexIntervalMatrix":
        return cls.from_real(IntervalMatrix.identity(n))

    @property
    def shape(self):
        return self.re.shape

    @property
    def rows(self):
        return self.re.rows

    @property
    def cols(self):
        return self.re.cols

    def column(self, j: int) -> "ComplexIntervalMatrix":
        return ComplexIntervalMatrix(self.re.column(j), self.im.column(j))

    def submatrix(self, rows, cols) -> "ComplexIntervalMatrix":
        return ComplexIntervalMatrix(self.re.submatrix(rows, cols),
                                     self.im.submatrix(rows, cols))

    def __add__(self, other):
        return ComplexIntervalMatrix(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return ComplexIntervalMatrix(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return ComplexIntervalMatrix(-self.re, -self.im)

    def __matmul__(self, other):
        if isinstance(other, IntervalMatrix):
            other = ComplexIntervalMatrix.from_real(other)
        re = im_mul(self.re, other.re) - im_mul(self.im, other.im)
        im = im_mul(self.re, other.im) + im_mul(self.im, other.re)
        return ComplexIntervalMatrix(re, im)

    def __rmatmul__(self, other):
        if isinstance(other, IntervalMatrix):
            return ComplexIntervalMatrix.from_real(other) @ self
        return NotImplemented

    def conj_transpose(self) -> "ComplexIntervalMatrix":
        return ComplexIntervalMatrix(self.re.T, -self.im.T)

    @property
    def H(self) -> "ComplexIntervalMatrix":
        return self.conj_transpose()

    def contains(self, Z) -> bool:
        Z = np.asarray(Z, dtype=complex)
        return self.re.contains(Z.real) and self.im.contains(Z.imag)

    def mag_matrix(self) -> np.ndarray:
        mre = self.re.mag_matrix()
        mim = self.im.mag_matrix()
        return rnd.sqrt_up(rnd.add_up(rnd.mul_up(mre, mre),
                                      rnd.mul_up(mim, mim)))

    def is_real(self) -> bool:
        return self.im.is_point() and bool((self.im.lo == 0).all())

    def __eq__(self, other):
        return (isinstance(other, ComplexIntervalMatrix)
                and self.re == other.re and self.im == other.im)

    def __repr__(self):
        return f"ComplexIntervalMatrix(shape={self.shape})"


# text fixture format -----------------------------------------------------

def write_matrix(A, f) -> None:
    """Write a matrix in the fixture text format: a "rows cols" header,
    then entries as "lo,hi" (real) or "relo,rehi,imlo,imhi" (complex)."""
    if isinstance(f, str):
        with open(f, "w") as fh:
            write_matrix(A, fh)
            return
    m, n = A.shape
    f.write(f"{m} {n}\n")
    complex_form = isinstance(A, ComplexIntervalMatrix)
    for i in range(m):
        cells = []
        for j in range(n):
            if complex_form:
                cells.append(",".join(repr(float(v)) for v in (
                    A.re.lo[i, j], A.re.hi[i, j], A.im.lo[i, j], A.im.hi[i, j])))
            else:
                cells.append(f"{float(A.lo[i, j])!r},{float(A.hi[i, j])!r}")
        f.write(" ".join(cells) + "\n")


def read_matrix(f):
    """Read a matrix written by write_matrix; the entry arity selects the
    real or complex representation."""
    if isinstance(f, str):
        with open(f) as fh:
            return read_matrix(fh)
    header = f.readline().split()
    m, n = int(header[0]), int(header[1])
    tokens: list[str] = []
    while len(tokens) < m * n:
        line = f.readline()
        if not line:
            raise ValueError("truncated matrix file")
        tokens.extend(line.split())
    parts = [tok.split(",") for tok in tokens[:m * n]]
    arity = len(parts[0])
    if any(len(p) != arity for p in parts):
        raise ValueError("inconsistent entry arity")
    vals = np.array([[float(x) for x in p] for p in parts])
    if arity == 2:
        return IntervalMatrix(vals[:, 0].reshape(m, n), vals[:, 1].reshape(m, n))
    if arity == 4:
        return ComplexIntervalMatrix(
            IntervalMatrix(vals[:, 0].reshape(m, n), vals[:, 1].reshape(m, n)),
            IntervalMatrix(vals[:, 2].reshape(m, n), vals[:, 3].reshape(m, n)))
    raise ValueError(f"unsupported entry arity {arity}")


def matrix_to_text(A) -> str:
    buf = io.StringIO()
    write_matrix(A, buf)
    return buf.getvalue()
