"""Assembly of verified spectral decompositions.

General interval matrices get (Lambda, V, V^-1) from Bauer-Fike discs,
the eigenvector enclosure algorithm, and a verified inverse.  Symmetric
interval matrices get (Lambda, Q, Q^T) with normalized real eigenvector
columns and an all-[-1, 1] fallback.  Circulant interval matrices use the
closed-form Fourier eigenstructure, so no verified inversion is needed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigenvalues import bauer_fike_discs, symmetric_eigen_bounds
from .eigenvectors import (EigvecFailedError, eigvec_enclose,
                           fallback_unit_box, normalize_column)
from .interval import (ComplexDisc, ComplexRect, Interval, TWO_PI,
                       cos_enclosure, disc_to_rect, sin_enclosure)
from .linsys import SingularEnclosureError, inverse_enclosure
from .matrices import ComplexIntervalMatrix, IntervalMatrix, SymIntervalMatrix

__all__ = [
    "SpectralDecomposition",
    "AssumptionViolatedError",
    "InversionFailedError",
    "decompose_general",
    "decompose_symmetric",
    "decompose_circulant",
    "verify_containment",
    "ContainmentReport",
    "sample_realization",
    "write_decomposition",
    "read_decomposition",
]


class AssumptionViolatedError(Exception):
    """The eigenvalue discs intersect; simple-eigenvalue structure cannot
    be guaranteed across the interval matrix."""


class InversionFailedError(Exception):
    """The eigenvector matrix enclosure could not be inverted (possibly
    singular)."""


@dataclass
class SpectralDecomposition:
    kind: str  # "general" | "symmetric" | "circulant"
    eigenvalues: list  # ComplexDisc (general) | Interval (symmetric) | ComplexRect (circulant)
    V: object  # ComplexIntervalMatrix, or IntervalMatrix Q for symmetric
    Vinv: object  # enclosure of V^-1 (Q^T / conjugate transpose)
    provenance: str  # "algorithm" | "unit-box" | "closed-form"
    pivots: list | None = None  # per-column pivot indices, algorithm path only

    @property
    def n(self) -> int:
        return len(self.eigenvalues)

    def lambda_matrix(self) -> ComplexIntervalMatrix:
        """Diagonal eigenvalue enclosure matrix with exact zero off-diagonal
        entries, in rectangular complex form."""
        n = self.n
        re_lo = np.zeros((n, n))
        re_hi = np.zeros((n, n))
        im_lo = np.zeros((n, n))
        im_hi = np.zeros((n, n))
        for i, lam in enumerate(self.eigenvalues):
            rect = _as_rect(lam)
            re_lo[i, i], re_hi[i, i] = rect.re.lo, rect.re.hi
            im_lo[i, i], im_hi[i, i] = rect.im.lo, rect.im.hi
        return ComplexIntervalMatrix(IntervalMatrix(re_lo, re_hi),
                                     IntervalMatrix(im_lo, im_hi))

    def lambda_matrix_real(self) -> IntervalMatrix:
        if self.kind != "symmetric":
            raise ValueError("real Lambda only exists for symmetric decompositions")
        n = self.n
        lo = np.zeros((n, n))
        hi = np.zeros((n, n))
        for i, lam in enumerate(self.eigenvalues):
            lo[i, i], hi[i, i] = lam.lo, lam.hi
        return IntervalMatrix(lo, hi)


def _as_rect(lam) -> ComplexRect:
    if isinstance(lam, ComplexRect):
        return lam
    if isinstance(lam, ComplexDisc):
        return disc_to_rect(lam)
    return ComplexRect(lam, Interval.point(0.0))


def decompose_general(A: IntervalMatrix) -> SpectralDecomposition:
    """Enclosures (Lambda, V, V^-1) such that every realization A admits
    A = V Lambda V^-1 with factors drawn from the enclosures."""
    discs = bauer_fike_discs(A)
    if not discs.disjoint:
        raise AssumptionViolatedError(
            f"eigenvalue discs of radii {discs.radius} intersect")
    n = A.rows
    re_lo = np.empty((n, n))
    re_hi = np.empty((n, n))
    im_lo = np.empty((n, n))
    im_hi = np.empty((n, n))
    pivots = []
    eigenvalues = []
    for i in range(n):
        disc = ComplexDisc(complex(discs.centers[i]), float(discs.radius[i]))
        eigenvalues.append(disc)
        enc = eigvec_enclose(A, disc)  # raises EigvecFailedError
        col = enc.vector
        re_lo[:, i] = col.re.lo[:, 0]
        re_hi[:, i] = col.re.hi[:, 0]
        im_lo[:, i] = col.im.lo[:, 0]
        im_hi[:, i] = col.im.hi[:, 0]
        pivots.append(enc.pivot_index)
    V = ComplexIntervalMatrix(IntervalMatrix(re_lo, re_hi),
                              IntervalMatrix(im_lo, im_hi))
    try:
        Vinv = inverse_enclosure(V)
    except SingularEnclosureError as exc:
        raise InversionFailedError(str(exc)) from exc
    return SpectralDecomposition(kind="general", eigenvalues=eigenvalues,
                                 V=V, Vinv=Vinv, provenance="algorithm",
                                 pivots=pivots)


def decompose_symmetric(A: SymIntervalMatrix,
                        force_fallback: bool = False) -> SpectralDecomposition:
    """Enclosures (Lambda, Q, Q^T) with orthogonal realizations of Q.

    Eigenvector failures degrade to the unit-box fallback; the only hard
    error is an eigenvalue-bound failure.
    """
    bounds = symmetric_eigen_bounds(A)  # raises MidpointEigError
    n = A.rows
    Q = None
    pivots = None
    provenance = "unit-box"
    if not force_fallback:
        lo = np.empty((n, n))
        hi = np.empty((n, n))
        pivots = []
        try:
            for i in range(n):
                enc = eigvec_enclose(A, bounds[i])
                col = normalize_column(enc.vector)
                lo[:, i] = col.lo[:, 0]
                hi[:, i] = col.hi[:, 0]
                pivots.append(enc.pivot_index)
            Q = IntervalMatrix(lo, hi)
            provenance = "algorithm"
        except EigvecFailedError:
            Q = None
            pivots = None
    if Q is None:
        Q = fallback_unit_box(n)
    return SpectralDecomposition(kind="symmetric",
                                 eigenvalues=list(bounds.intervals),
                                 V=Q, Vinv=Q.T, provenance=provenance,
                                 pivots=pivots)


def _roots_of_unity(n: int) -> list:
    """Enclosures of exp(2*pi*i*e/n) for e = 0..n-1; quarter turns exact."""
    quarter = {0: (1.0, 0.0), 1: (0.0, 1.0), 2: (-1.0, 0.0), 3: (0.0, -1.0)}
    roots = []
    for e in range(n):
        if (4 * e) % n == 0:
            re, im = quarter[(4 * e) // n]
            roots.append(ComplexRect(Interval.point(re), Interval.point(im)))
        else:
            theta = TWO_PI * (Interval.point(float(e)) / float(n))
            roots.append(ComplexRect(cos_enclosure(theta), sin_enclosure(theta)))
    return roots


def decompose_circulant(c: IntervalMatrix) -> SpectralDecomposition:
    """Closed-form decomposition of the interval circulant matrix generated
    by the length-n interval vector c (first row c_0 .. c_{n-1}):
    V is the unitary Fourier basis, lambda_j = sum_m c_m omega_j^m."""
    if c.cols != 1:
        raise ValueError("decompose_circulant expects a column vector")
    n = c.rows
    roots = _roots_of_unity(n)
    inv_sqrt_n = Interval.point(1.0) / Interval.point(float(n)).sqrt()

    re_lo = np.empty((n, n))
    re_hi = np.empty((n, n))
    im_lo = np.empty((n, n))
    im_hi = np.empty((n, n))
    eigenvalues = []
    for j in range(n):
        lam = ComplexRect(Interval.point(0.0), Interval.point(0.0))
        for m in range(n):
            w = roots[(j * m) % n]
            lam = lam + w * c.entry(m, 0)
            v_entry = w * inv_sqrt_n
            re_lo[m, j], re_hi[m, j] = v_entry.re.lo, v_entry.re.hi
            im_lo[m, j], im_hi[m, j] = v_entry.im.lo, v_entry.im.hi
        eigenvalues.append(lam)
    V = ComplexIntervalMatrix(IntervalMatrix(re_lo, re_hi),
                              IntervalMatrix(im_lo, im_hi))
    return SpectralDecomposition(kind="circulant", eigenvalues=eigenvalues,
                                 V=V, Vinv=V.conj_transpose(),
                                 provenance="closed-form")


def circulant_from_vector(c: IntervalMatrix) -> IntervalMatrix:
    """Interval circulant matrix with first row c_0 .. c_{n-1}."""
    n = c.rows
    lo = np.empty((n, n))
    hi = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            m = (j - i) % n
            lo[i, j] = c.lo[m, 0]
            hi[i, j] = c.hi[m, 0]
    return IntervalMatrix(lo, hi)


# sampling / containment harness -------------------------------------------

def sample_realization(A: IntervalMatrix, rng: np.random.Generator,
                       vertex: bool = False) -> np.ndarray:
    """One point realization; vertex=True picks random endpoints."""
    if vertex:
        pick = rng.integers(0, 2, size=A.shape).astype(bool)
        return np.where(pick, A.hi, A.lo)
    u = rng.random(A.shape)
    return A.lo + u * (A.hi - A.lo)


def sample_symmetric_realization(A: SymIntervalMatrix, rng: np.random.Generator,
                                 vertex: bool = False) -> np.ndarray:
    P = sample_realization(A, rng, vertex)
    return np.triu(P) + np.triu(P, 1).T


@dataclass
class ContainmentReport:
    samples: int
    eig_violations: int = 0
    vec_violations: int = 0

    @property
    def ok(self) -> bool:
        return self.eig_violations == 0 and self.vec_violations == 0


def _check_general_sample(P, d: SpectralDecomposition, report):
    w, X = np.linalg.eig(P)
    centers = np.array([lam.center for lam in d.eigenvalues])
    radii = np.array([lam.radius for lam in d.eigenvalues])
    for idx in range(len(w)):
        dists = np.abs(w[idx] - centers)
        col = int(np.argmin(dists))
        if dists[col] > radii[col]:
            report.eig_violations += 1
            continue
        if d.pivots is None:
            continue
        pivot = d.pivots[col]
        x = X[:, idx]
        if x[pivot] == 0:
            report.vec_violations += 1
            continue
        x = x / x[pivot]
        # the enclosure holds true eigenvectors; the float oracle's own
        # rounding error gets a small allowance and is not blamed on it
        col_enc = d.V.column(col)
        slack = 1e-12 * (1.0 + np.abs(x).max())
        ok_re = ((col_enc.re.lo - slack <= x.real[:, None])
                 & (x.real[:, None] <= col_enc.re.hi + slack)).all()
        ok_im = ((col_enc.im.lo - slack <= x.imag[:, None])
                 & (x.imag[:, None] <= col_enc.im.hi + slack)).all()
        if not (ok_re and ok_im):
            report.vec_violations += 1


def _check_symmetric_sample(P, d: SpectralDecomposition, report):
    w, X = np.linalg.eigh(P)
    for i in range(len(w)):
        if w[i] not in d.eigenvalues[i]:
            report.eig_violations += 1
    if d.provenance != "algorithm":
        return  # [-1,1] box contains every orthonormal basis
    for i in range(len(w)):
        x = X[:, i]
        pivot = d.pivots[i]
        if x[pivot] < 0:
            x = -x
        col = d.V.column(i)
        slack = 1e-12  # float oracle allowance (unit vectors)
        if not ((col.lo - slack <= x[:, None])
                & (x[:, None] <= col.hi + slack)).all():
            report.vec_violations += 1


def verify_containment(A, d: SpectralDecomposition, samples: int = 100,
                       rng: np.random.Generator | None = None) -> ContainmentReport:
    """Sample realizations (alternating vertices and interior points),
    compute their spectral decompositions, renormalize to the enclosure's
    convention, and count membership violations."""
    if rng is None:
        rng = np.random.default_rng(0)
    report = ContainmentReport(samples=samples)
    for s in range(samples):
        vertex = s % 2 == 0
        if d.kind == "general":
            P = sample_realization(A, rng, vertex)
            _check_general_sample(P, d, report)
        elif d.kind == "symmetric":
            P = sample_symmetric_realization(A, rng, vertex)
            _check_symmetric_sample(P, d, report)
        elif d.kind == "circulant":
            # A is the generating interval vector here.  The oracle
            # evaluates the eigenvalue formula in plain floats, so its own
            # rounding error gets a small allowance; the enclosures can be
            # exact (quarter-turn roots) and must not be blamed for it.
            cvec = sample_realization(A, rng, vertex)[:, 0]
            n = len(cvec)
            omega = np.exp(2j * np.pi * np.arange(n) / n)
            scale = float(np.sum(np.abs(cvec))) + 1.0
            slack = 1e-12 * scale
            for j in range(n):
                lam = complex(np.sum(cvec * omega[j] ** np.arange(n)))
                rect = d.eigenvalues[j]
                if not (rect.re.lo - slack <= lam.real <= rect.re.hi + slack
                        and rect.im.lo - slack <= lam.imag <= rect.im.hi + slack):
                    report.eig_violations += 1
        else:
            raise ValueError(f"unknown decomposition kind {d.kind}")
    return report


# fixture serialization -----------------------------------------------------

def write_decomposition(d: SpectralDecomposition, f) -> None:
    """Serialize as a header line followed by the Lambda, V, Vinv blocks in
    the matrix text format (eigenvalues in rectangular form)."""
    from .matrices import write_matrix
    if isinstance(f, str):
        with open(f, "w") as fh:
            write_decomposition(d, fh)
            return
    pivots = ",".join(str(p) for p in d.pivots) if d.pivots else "-"
    f.write(f"{d.kind} {d.provenance} {pivots}\n")
    if d.kind == "symmetric":
        write_matrix(d.lambda_matrix_real(), f)
    else:
        write_matrix(d.lambda_matrix(), f)
    write_matrix(d.V, f)
    write_matrix(d.Vinv, f)


def read_decomposition(f) -> SpectralDecomposition:
    from .matrices import read_matrix
    if isinstance(f, str):
        with open(f) as fh:
            return read_decomposition(fh)
    kind, provenance, pivots_tok = f.readline().split()
    pivots = None if pivots_tok == "-" else [int(p) for p in pivots_tok.split(",")]
    lam_m = read_matrix(f)
    V = read_matrix(f)
    Vinv = read_matrix(f)
    eigenvalues = []
    for i in range(lam_m.rows):
        if isinstance(lam_m, ComplexIntervalMatrix):
            eigenvalues.append(ComplexRect(lam_m.re.entry(i, i), lam_m.im.entry(i, i)))
        else:
            eigenvalues.append(lam_m.entry(i, i))
    return SpectralDecomposition(kind=kind, eigenvalues=eigenvalues,
                                 V=V, Vinv=Vinv, provenance=provenance,
                                 pivots=pivots)
