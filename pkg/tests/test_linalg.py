import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ptkrein.errors import DimensionError, PreconditionError
from ptkrein.kh import FIG1_PARAMETERS, kh_metric
from ptkrein.linalg import Inertia, Tolerance, evolve, hermitian_residual, inertia


def _expm_oracle(A, t):
    """exp(tA) in 40-digit arithmetic, independent of the LAPACK path."""
    with mpmath.workdps(40):
        M = mpmath.matrix([[mpmath.mpc(z.real, z.imag) * t for z in row] for row in np.asarray(A)])
        E = mpmath.expm(M)
        return np.array([[complex(E[i, j]) for j in range(E.cols)] for i in range(E.rows)])


def test_tolerance_defaults_and_validation():
    tol = Tolerance()
    assert tol.rel == 1e-10 and tol.abs_floor == 1e-14
    with pytest.raises(ValueError):
        Tolerance(rel=0.0)
    with pytest.raises(ValueError):
        Tolerance(abs_floor=-1.0)


def test_hermitian_residual_examples():
    assert hermitian_residual([[1, 2 + 1j], [2 - 1j, 3]]) == 0.0
    # ||M - M^H||_F = sqrt(2), ||M||_F = 1
    assert hermitian_residual([[0, 1], [0, 0]]) == pytest.approx(math.sqrt(2), rel=1e-15)
    for n in (1, 3, 7):
        assert hermitian_residual(np.eye(n)) == 0.0


def test_hermitian_residual_rejects_non_square():
    with pytest.raises(DimensionError):
        hermitian_residual(np.zeros((2, 3)))


def test_inertia_examples():
    assert inertia(np.diag([-1.0, 2.0])) == Inertia(1, 1, 0)
    assert inertia(np.eye(3)) == Inertia(3, 0, 0)
    # KH metric at the worked-example parameters is diag(-1, 0.414)
    assert inertia(kh_metric(FIG1_PARAMETERS)) == Inertia(1, 1, 0)
    assert inertia(np.diag([1.0, 0.0, -3.0])) == Inertia(1, 1, 1)


def test_inertia_rejects_non_hermitian():
    with pytest.raises(PreconditionError):
        inertia([[0, 1], [0, 0]])


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 8))
def test_inertia_congruence_invariance(seed, n):
    rng = np.random.default_rng(seed)
    signs = rng.choice([-1.0, 1.0], size=n)
    mags = rng.uniform(0.5, 2.0, size=n)
    U, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    G = (U * (signs * mags)) @ U.conj().T
    C = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)) + 3 * np.eye(n)
    base = inertia(G)
    assert sum(base) == n
    assert inertia(C.conj().T @ G @ C) == base == (int(np.sum(signs > 0)), int(np.sum(signs < 0)), 0)


def test_evolve_examples():
    x0 = np.array([0.3 - 1j, 2.0])
    np.testing.assert_array_equal(evolve(np.zeros((2, 2)), x0, 5.0), x0)

    H = np.diag([1.0, 2.0])
    np.testing.assert_allclose(evolve(-1j * H, [1, 1], math.pi), [-1, 1], atol=1e-14)

    # nilpotent: exp(tA) = I + tA
    np.testing.assert_allclose(evolve([[0, 1], [0, 0]], [0, 1], 2.0), [2, 1], atol=1e-15)


def test_evolve_dimension_mismatch():
    with pytest.raises(DimensionError):
        evolve(np.eye(3), [1, 2], 1.0)


@pytest.mark.parametrize("seed", range(5))
def test_evolve_matches_high_precision_oracle(seed):
    rng = np.random.default_rng(seed)
    n = 4
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    x0 = rng.standard_normal(n) + 0j
    expected = _expm_oracle(A, 0.7) @ x0
    np.testing.assert_allclose(evolve(A, x0, 0.7), expected, rtol=1e-12)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 6),
       s=st.floats(-2, 2), t=st.floats(-2, 2))
def test_evolve_group_law(seed, n, s, t):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    A /= np.linalg.norm(A, 2)
    x0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    lhs = evolve(A, evolve(A, x0, s), t)
    rhs = evolve(A, x0, s + t)
    assert np.linalg.norm(lhs - rhs) <= 1e-8 * np.linalg.norm(rhs)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8), t=st.floats(-20, 20))
def test_hermitian_evolution_is_unitary(seed, n, t):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    H = 0.5 * (X + X.conj().T)
    x0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x = evolve(-1j * H, x0, t)
    assert np.linalg.norm(x) == pytest.approx(np.linalg.norm(x0), rel=1e-8)
