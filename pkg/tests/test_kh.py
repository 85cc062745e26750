import math
import warnings

import numpy as np
import pytest

from ptkrein.errors import PreconditionError
from ptkrein.kh import (
    FIG1_PARAMETERS,
    KHParameters,
    SingularMetricWarning,
    kh_breaking_points,
    kh_eigensystem,
    kh_family,
    kh_hamiltonian,
    kh_metric,
    kh_tau,
)
from ptkrein.krein import FIRST, SECOND, classify_eigenvalues, strong_stability
from ptkrein.metric import check_pseudo_with

BREAK = 1 + math.sqrt(5 / 2)


def random_parameters(rng):
    while True:
        k = rng.uniform(-10, 10)
        if abs(k) < 1e-3:
            continue
        return KHParameters(k=k, u10=rng.uniform(-10, 10), u20=rng.uniform(-10, 10),
                            rho10=rng.uniform(0.01, 10), rho20=rng.uniform(0.01, 10),
                            g=rng.uniform(-10, 10))


def test_parameter_validation():
    with pytest.raises(PreconditionError):
        KHParameters(k=0.0, u10=1, u20=1, rho10=1, rho20=1, g=1)
    with pytest.raises(PreconditionError):
        KHParameters(k=1.0, u10=1, u20=1, rho10=-1, rho20=1, g=1)
    with pytest.raises(PreconditionError):
        KHParameters(k=1.0, u10=1, u20=math.nan, rho10=1, rho20=1, g=1)


def test_hamiltonian_zero_flow_no_gravity():
    p = KHParameters(k=-2.0, u10=0.0, u20=0.0, rho10=1.0, rho20=4.0, g=0.0)
    np.testing.assert_array_equal(kh_hamiltonian(p), [[0, 0], [-2j, 0]])


def test_hamiltonian_worked_example_entries():
    H = kh_hamiltonian(FIG1_PARAMETERS)
    # -(-2 - 13.8 + 3) / 5 = 2.56 ; tau = (3 * 1.69 - 3) / 5 = 0.414
    assert H[0, 0] == pytest.approx(2.56, rel=1e-15)
    assert H[0, 1] == pytest.approx(-0.414j, rel=1e-14)
    assert H[1, 0] == -1j
    assert H[1, 1] == 1


def test_metric_worked_example():
    np.testing.assert_allclose(kh_metric(FIG1_PARAMETERS), np.diag([-1.0, 0.414]), rtol=1e-14)


def test_metric_singular_warning():
    p = KHParameters(k=1.0, u10=2.0, u20=2.0, rho10=1.5, rho20=1.5, g=9.8)
    with pytest.warns(SingularMetricWarning):
        G = kh_metric(p)
    np.testing.assert_array_equal(G, np.diag([-1.0, 0.0]))
    assert not check_pseudo_with(kh_hamiltonian(p), G)


def test_metric_depends_on_abs_k():
    p = FIG1_PARAMETERS
    q = KHParameters(k=-p.k, u10=p.u10, u20=p.u20, rho10=p.rho10, rho20=p.rho20, g=p.g)
    np.testing.assert_array_equal(kh_metric(p), kh_metric(q))


@pytest.mark.parametrize("seed", range(30))
def test_metric_certifies_random_parameters(seed):
    p = random_parameters(np.random.default_rng(seed))
    H, G = kh_hamiltonian(p), kh_metric(p)
    R = H.conj().T @ G - G @ H
    assert np.linalg.norm(R) <= 1e-12 * np.linalg.norm(H) * np.linalg.norm(G)


def test_eigensystem_worked_example():
    e = kh_eigensystem(FIG1_PARAMETERS)
    assert e.delta == pytest.approx(15 - 6 * 1.3 ** 2, rel=1e-14)
    assert e.a1 == pytest.approx((8.9 - math.sqrt(4.86)) / 5, rel=1e-14)
    assert e.a2 == pytest.approx((8.9 + math.sqrt(4.86)) / 5, rel=1e-14)
    assert e.a1.real == pytest.approx(1.33909, abs=1e-5)
    assert e.a2.real == pytest.approx(2.22091, abs=1e-5)
    assert e.tau == pytest.approx(0.414)
    assert not e.exceptional


def test_eigensystem_at_breaking_point():
    e = kh_eigensystem(FIG1_PARAMETERS.with_u20(BREAK))
    assert e.exceptional
    assert e.a1 == e.a2
    assert e.a1.real == pytest.approx((2 + 3 * BREAK) / 5, rel=1e-14)
    assert e.a1.real == pytest.approx(1.94869, abs=1e-5)
    np.testing.assert_array_equal(e.phi1, e.phi2)


def test_eigensystem_complex_pair():
    e = kh_eigensystem(FIG1_PARAMETERS.with_u20(2.7))
    assert e.delta == pytest.approx(15 - 6 * 1.7 ** 2, rel=1e-13)
    assert e.delta < 0
    assert e.a2 == e.a1.conjugate()
    assert e.a1.imag < 0


@pytest.mark.parametrize("seed", range(50))
def test_closed_form_eigenpairs(seed):
    p = random_parameters(np.random.default_rng(100 + seed))
    e = kh_eigensystem(p)
    H = kh_hamiltonian(p)
    if e.exceptional:
        return
    for a, phi in ((e.a1, e.phi1), (e.a2, e.phi2)):
        assert np.linalg.norm(H @ phi - a * phi) <= 1e-9 * np.linalg.norm(H) * np.linalg.norm(phi)
    assert abs(e.a1 + e.a2 - np.trace(H)) <= 1e-10 * np.linalg.norm(H)
    assert abs(e.a1 * e.a2 - np.linalg.det(H)) <= 1e-10 * np.linalg.norm(H) ** 2
    if e.delta > 0:
        assert e.a1.imag == e.a2.imag == 0 and e.a1.real <= e.a2.real
    else:
        assert e.a2 == e.a1.conjugate()


def test_krein_signs_of_closed_form_eigenvectors():
    e = kh_eigensystem(FIG1_PARAMETERS)
    G = kh_metric(FIG1_PARAMETERS)
    assert (e.phi1.conj() @ G @ e.phi1).real > 0
    assert (e.phi2.conj() @ G @ e.phi2).real < 0


def test_breaking_points():
    lo, hi = kh_breaking_points(FIG1_PARAMETERS)
    assert hi == pytest.approx(BREAK, rel=1e-15)
    assert lo == pytest.approx(1 - math.sqrt(2.5), rel=1e-15)
    stable = KHParameters(k=1, u10=0, u20=0, rho10=3, rho20=2, g=3)
    assert kh_breaking_points(stable) == ()
    for u in (lo, hi):
        assert kh_eigensystem(FIG1_PARAMETERS.with_u20(u)).exceptional


def test_tau_sign_regimes():
    fam = kh_family()
    assert kh_tau(fam.parameters(1.0)) < 0
    assert kh_tau(fam.parameters(0.0)) == pytest.approx(0.0, abs=1e-15)
    assert kh_tau(fam.parameters(2.3)) > 0


def test_family_panels():
    fam = kh_family()
    H, G = fam(2.3)
    kinds = {c.kind for c in classify_eigenvalues(H, G)}
    assert kinds == {FIRST, SECOND}
    assert strong_stability(H, G)

    e = kh_eigensystem(fam.parameters(2.58114))
    assert abs(e.a1 - e.a2) < 1e-2 and abs(e.a1.imag) < 1e-2

    H, G = fam(2.7)
    assert not strong_stability(H, G)


def test_family_matches_fixed_values():
    fam = kh_family()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        np.testing.assert_array_equal(fam.hamiltonian(2.3), kh_hamiltonian(FIG1_PARAMETERS))
        np.testing.assert_array_equal(fam.metric(2.3), kh_metric(FIG1_PARAMETERS))
