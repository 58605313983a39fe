"""Verified linear system solves: containment of vertex-enumeration hulls
for 2x2 systems, point-system exactness, inverse enclosures, failure modes."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ivspec.linsys import (SingularEnclosureError, inverse_enclosure,
                           solve_complex_enclosure, solve_enclosure)
from ivspec.matrices import ComplexIntervalMatrix, IntervalMatrix


def hull_2x2_oracle(A: IntervalMatrix, b: IntervalMatrix):
    """Solution hull of the 2x2 system by endpoint-assignment enumeration
    (sound for the hull corners because the solution is a fraction linear
    in each entry, hence extremal at endpoint assignments)."""
    corners = []
    entries = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for pick_a in itertools.product([0, 1], repeat=4):
        P = np.empty((2, 2))
        for (i, j), p in zip(entries, pick_a):
            P[i, j] = A.lo[i, j] if p == 0 else A.hi[i, j]
        if abs(np.linalg.det(P)) < 1e-12:
            return None  # oracle can't certify; skip the case
        for pick_b in itertools.product([0, 1], repeat=2):
            rhs = np.array([[b.lo[i, 0] if p == 0 else b.hi[i, 0]]
                            for i, p in enumerate(pick_b)])
            corners.append(np.linalg.solve(P, rhs))
    return np.min(corners, axis=0), np.max(corners, axis=0)


@st.composite
def regular_2x2_systems(draw):
    # diagonally dominant midpoints keep every realization regular
    d = draw(st.floats(2.0, 10.0))
    off = draw(st.lists(st.floats(-1.0, 1.0), min_size=2, max_size=2))
    rad = draw(st.floats(0.0, 0.2))
    mid = np.array([[d, off[0]], [off[1], -d]])
    A = IntervalMatrix(mid - rad, mid + rad)
    bm = np.array(draw(st.lists(st.floats(-5.0, 5.0), min_size=2, max_size=2)))
    br = draw(st.floats(0.0, 0.5))
    b = IntervalMatrix(bm[:, None] - br, bm[:, None] + br)
    return A, b


@settings(max_examples=150, deadline=None)
@given(regular_2x2_systems())
def test_2x2_enclosure_contains_vertex_hull(system):
    A, b = system
    oracle = hull_2x2_oracle(A, b)
    if oracle is None:
        return
    rep = solve_enclosure(A, b)
    assert rep.ok
    lo, hi = oracle
    tol = 1e-10 * (1.0 + np.abs(lo) + np.abs(hi))
    assert ((rep.enclosure.lo <= lo + tol) & (hi - tol <= rep.enclosure.hi)).all()


def test_point_identity_system_is_exact():
    A = IntervalMatrix.identity(3)
    b = IntervalMatrix.from_point(np.array([[1.0], [2.0], [3.0]]))
    rep = solve_enclosure(A, b)
    assert rep.ok
    assert rep.enclosure.is_point()
    assert (rep.enclosure.lo == b.lo).all()


def test_point_system_matches_numpy():
    rng = np.random.default_rng(11)
    P = rng.standard_normal((4, 4)) + 4.0 * np.eye(4)
    x = rng.standard_normal((4, 1))
    b = P @ x
    rep = solve_enclosure(IntervalMatrix.from_point(P),
                          IntervalMatrix.from_point(b))
    assert rep.ok
    assert ((rep.enclosure.lo <= x + 1e-10) & (x - 1e-10 <= rep.enclosure.hi)).all()
    assert (rep.enclosure.hi - rep.enclosure.lo).max() < 1e-10


def test_singular_midpoint_reported():
    A = IntervalMatrix.from_point(np.array([[1.0, 2.0], [2.0, 4.0]]))
    b = IntervalMatrix.from_point(np.array([[1.0], [1.0]]))
    rep = solve_enclosure(A, b)
    assert not rep.ok
    assert rep.status == "singular-midpoint"
    assert rep.enclosure is None


def test_no_contraction_for_singular_containing_box():
    # radius 2 around the identity contains singular matrices
    mid = np.eye(2)
    A = IntervalMatrix(mid - 2.0, mid + 2.0)
    b = IntervalMatrix.from_point(np.ones((2, 1)))
    rep = solve_enclosure(A, b)
    assert not rep.ok


def test_shape_validation():
    A = IntervalMatrix.zeros(2, 3)
    b = IntervalMatrix.zeros(2, 1)
    with pytest.raises(ValueError):
        solve_enclosure(A, b)


def test_complex_solve_contains_sampled_solutions():
    rng = np.random.default_rng(5)
    Z = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) \
        + 5.0 * np.eye(3)
    A = ComplexIntervalMatrix(
        IntervalMatrix(Z.real - 0.01, Z.real + 0.01),
        IntervalMatrix(Z.imag - 0.01, Z.imag + 0.01))
    rhs = np.ones((3, 1), dtype=complex)
    b = ComplexIntervalMatrix.from_point(rhs)
    rep = solve_complex_enclosure(A, b)
    assert rep.ok
    for _ in range(50):
        Pr = A.re.lo + rng.random((3, 3)) * (A.re.hi - A.re.lo)
        Pi = A.im.lo + rng.random((3, 3)) * (A.im.hi - A.im.lo)
        x = np.linalg.solve(Pr + 1j * Pi, rhs)
        assert rep.enclosure.contains(x)


def test_inverse_enclosure_contains_sampled_inverses():
    rng = np.random.default_rng(7)
    Z = rng.standard_normal((3, 3)) + 4.0 * np.eye(3)
    V = ComplexIntervalMatrix(
        IntervalMatrix(Z - 0.005, Z + 0.005),
        IntervalMatrix.zeros(3, 3))
    W = inverse_enclosure(V)
    for _ in range(50):
        P = V.re.lo + rng.random((3, 3)) * (V.re.hi - V.re.lo)
        assert W.contains(np.linalg.inv(P))


def test_inverse_enclosure_raises_on_singular():
    V = ComplexIntervalMatrix.from_point(np.array([[1.0, 1.0], [1.0, 1.0]],
                                                  dtype=complex))
    with pytest.raises(SingularEnclosureError):
        inverse_enclosure(V)


def test_refinement_never_loses_containment():
    # wide but regular system: enclosure still contains all vertex solutions
    mid = np.array([[3.0, 1.0], [-1.0, 4.0]])
    A = IntervalMatrix(mid - 0.3, mid + 0.3)
    b = IntervalMatrix(np.array([[0.5], [-1.0]]), np.array([[1.5], [0.0]]))
    rep = solve_enclosure(A, b)
    assert rep.ok
    lo, hi = hull_2x2_oracle(A, b)
    tol = 1e-12
    assert ((rep.enclosure.lo <= lo + tol) & (hi - tol <= rep.enclosure.hi)).all()
