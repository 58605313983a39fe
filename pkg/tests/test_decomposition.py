"""Spectral decomposition assembly: containment sampling per class, the
diagonal shortcut, circulant closed form, failures, and serialization."""

import io

import numpy as np
import pytest

from ivspec.decomposition import (AssumptionViolatedError, circulant_from_vector,
                                  decompose_circulant, decompose_general,
                                  decompose_symmetric, read_decomposition,
                                  sample_realization, verify_containment,
                                  write_decomposition)
from ivspec.experiments import gen_circulant, gen_general, gen_symmetric
from ivspec.interval import ComplexDisc, Interval
from ivspec.matrices import IntervalMatrix, SymIntervalMatrix


def test_general_decomposition_structure():
    rng = np.random.default_rng(0)
    A = gen_general(4, 10.0, 0.001, rng)
    d = decompose_general(A)
    assert d.kind == "general" and d.provenance == "algorithm"
    assert d.n == 4 and len(d.pivots) == 4
    assert all(isinstance(lam, ComplexDisc) for lam in d.eigenvalues)
    # each V column has its pivot pinned to exactly 1
    for i, p in enumerate(d.pivots):
        assert d.V.re.lo[p, i] == 1.0 == d.V.re.hi[p, i]


def test_general_containment_sampling():
    rng = np.random.default_rng(1)
    A = gen_general(4, 10.0, 0.002, rng)
    d = decompose_general(A)
    rep = verify_containment(A, d, samples=60, rng=np.random.default_rng(2))
    assert rep.ok, (rep.eig_violations, rep.vec_violations)


def test_general_reconstruction_contains_realizations():
    rng = np.random.default_rng(3)
    A = gen_general(3, 10.0, 0.001, rng)
    d = decompose_general(A)
    M = (d.V @ d.lambda_matrix()) @ d.Vinv
    for _ in range(20):
        P = sample_realization(A, rng)
        eps = 1e-12
        assert ((M.re.lo - eps <= P) & (P <= M.re.hi + eps)).all()


def test_general_raises_on_intersecting_discs():
    lo = np.eye(2) - 0.01
    hi = np.eye(2) + 0.01
    with pytest.raises(AssumptionViolatedError):
        decompose_general(IntervalMatrix(lo, hi))


def test_symmetric_containment_sampling():
    rng = np.random.default_rng(4)
    A = gen_symmetric(5, 10.0, 0.01, rng)
    d = decompose_symmetric(A)
    rep = verify_containment(A, d, samples=60, rng=np.random.default_rng(5))
    assert rep.ok, (rep.eig_violations, rep.vec_violations)


def test_symmetric_diagonal_returns_identity_q():
    A = SymIntervalMatrix(np.diag([1.0, 4.0, 9.0]), np.diag([2.0, 5.0, 10.0]))
    d = decompose_symmetric(A)
    assert d.provenance == "algorithm"
    assert d.V.is_point() and np.array_equal(d.V.lo, np.eye(3))
    for lam, (lo, hi) in zip(d.eigenvalues, [(1, 2), (4, 5), (9, 10)]):
        assert abs(lam.lo - lo) < 1e-10 and abs(lam.hi - hi) < 1e-10


def test_symmetric_forced_fallback():
    rng = np.random.default_rng(6)
    A = gen_symmetric(3, 10.0, 0.001, rng)
    d = decompose_symmetric(A, force_fallback=True)
    assert d.provenance == "unit-box"
    assert (d.V.lo == -1.0).all() and (d.V.hi == 1.0).all()
    rep = verify_containment(A, d, samples=40, rng=np.random.default_rng(7))
    assert rep.ok


def test_circulant_structure_and_containment():
    rng = np.random.default_rng(8)
    vec, A = gen_circulant(5, 10.0, 0.001, rng)
    d = decompose_circulant(vec)
    assert d.kind == "circulant" and d.provenance == "closed-form"
    rep = verify_containment(vec, d, samples=60, rng=np.random.default_rng(9))
    assert rep.ok
    # V is unitary: V V^H contains the identity
    G = d.V @ d.Vinv
    assert G.contains(np.eye(5).astype(complex))


def test_circulant_from_vector_layout():
    c = IntervalMatrix(np.array([[1.0], [2.0], [3.0]]),
                       np.array([[1.5], [2.5], [3.5]]))
    C = circulant_from_vector(c)
    # first row is c0 c1 c2; each row is a right cyclic shift
    assert (C.lo[0] == [1.0, 2.0, 3.0]).all()
    assert (C.lo[1] == [3.0, 1.0, 2.0]).all()
    assert (C.lo[2] == [2.0, 3.0, 1.0]).all()


def test_circulant_eigenvalues_match_fft_oracle():
    rng = np.random.default_rng(10)
    vec, _ = gen_circulant(6, 10.0, 0.0, rng)  # point vector
    d = decompose_circulant(vec)
    lams = np.fft.fft(vec.lo[:, 0])  # fft uses omega^{-jm}; conjugate pairs
    got = [complex(r.re.mid(), r.im.mid()) for r in d.eigenvalues]
    # the multiset of eigenvalues must agree with the fft oracle
    for lam in lams:
        assert min(abs(lam - g) for g in got) < 1e-9
    for g in got:
        assert min(abs(lam - g) for lam in lams) < 1e-9


def test_decomposition_roundtrip():
    rng = np.random.default_rng(11)
    A = gen_symmetric(3, 10.0, 0.001, rng)
    d = decompose_symmetric(A)
    buf = io.StringIO()
    write_decomposition(d, buf)
    buf.seek(0)
    d2 = read_decomposition(buf)
    assert d2.kind == d.kind and d2.provenance == d.provenance
    assert d2.pivots == d.pivots
    assert d2.V == d.V and d2.Vinv == d.Vinv
    for a, b in zip(d.eigenvalues, d2.eigenvalues):
        assert isinstance(b, Interval)
        assert a.lo == b.lo and a.hi == b.hi


def test_general_roundtrip_rectangularizes_discs():
    rng = np.random.default_rng(12)
    A = gen_general(3, 10.0, 0.001, rng)
    d = decompose_general(A)
    buf = io.StringIO()
    write_decomposition(d, buf)
    buf.seek(0)
    d2 = read_decomposition(buf)
    assert d2.V == d.V
    for disc, rect in zip(d.eigenvalues, d2.eigenvalues):
        assert disc.center.real in rect.re
        assert disc.center.imag in rect.im
