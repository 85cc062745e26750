"""Two-layer Kelvin-Helmholtz shear-flow Hamiltonian with its closed-form metric and spectrum."""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import NumericalError, PreconditionError

__all__ = [
    "KHParameters",
    "KHEigensystem",
    "KHFamily",
    "SingularMetricWarning",
    "FIG1_PARAMETERS",
    "kh_hamiltonian",
    "kh_metric",
    "kh_tau",
    "kh_delta",
    "kh_eigensystem",
    "kh_family",
    "kh_breaking_points",
]


class SingularMetricWarning(UserWarning):
    """The diagonal metric has a zero entry and certifies nothing."""


@dataclass(frozen=True)
class KHParameters:
    k: float
    u10: float
    u20: float
    rho10: float
    rho20: float
    g: float

    def __post_init__(self):
        vals = (self.k, self.u10, self.u20, self.rho10, self.rho20, self.g)
        if not all(math.isfinite(v) for v in vals):
            raise PreconditionError("KH parameters must be finite")
        if self.k == 0:
            raise PreconditionError("wavenumber k must be nonzero")
        if not (self.rho10 > 0 and self.rho20 > 0):
            raise PreconditionError("layer densities must be positive")

    def with_u20(self, u20):
        return replace(self, u20=float(u20))


# fixed values of the u20 sweep used in the worked example
FIG1_PARAMETERS = KHParameters(k=1.0, u10=1.0, u20=2.3, rho10=2.0, rho20=3.0, g=3.0)


def kh_tau(p):
    """Second diagonal entry of the metric; its sign decides the Krein signatures."""
    return (abs(p.k) * (p.u10 - p.u20) ** 2 * p.rho20 - p.g * (p.rho20 - p.rho10)) / (p.rho10 + p.rho20)


def kh_delta(p):
    return (-abs(p.k) * p.g * (p.rho10 ** 2 - p.rho20 ** 2)
            - p.k ** 2 * p.rho10 * p.rho20 * (p.u10 - p.u20) ** 2)


def kh_hamiltonian(p):
    s = p.rho10 + p.rho20
    h11 = -p.k * (-p.u10 * p.rho10 - 2 * p.u20 * p.rho20 + p.u10 * p.rho20) / s
    h12 = -1j * kh_tau(p)
    return np.array([[h11, h12], [-1j * abs(p.k), p.k * p.u10]], dtype=complex)


def kh_metric(p, tol=1e-12):
    """``diag(-|k|, tau)``; warns with :class:`SingularMetricWarning` when ``tau`` vanishes."""
    tau = kh_tau(p)
    if abs(tau) <= tol * max(1.0, abs(p.k)):
        warnings.warn(f"tau = {tau:.3e}: KH metric is singular", SingularMetricWarning, stacklevel=2)
    return np.diag([-abs(p.k), tau]).astype(complex)


@dataclass(frozen=True)
class KHEigensystem:
    delta: float
    a1: complex
    a2: complex
    phi1: np.ndarray
    phi2: np.ndarray
    tau: float
    exceptional: bool


def kh_eigensystem(p, rtol=1e-10):
    """Closed-form eigenvalues and eigenvectors of :func:`kh_hamiltonian`.

    Eigenvectors are scaled so the second component is 1.  Their first
    component is ``i (a - k u10) / |k|``, which is what the second row of
    ``H phi = a phi`` forces.  When ``delta`` vanishes (relative to the size of
    its two terms) both eigenvectors coincide and ``exceptional`` is set.

    The pair is checked against trace and determinant of the matrix.
    """
    s = p.rho10 + p.rho20
    delta = kh_delta(p)
    delta_scale = (abs(p.k) * abs(p.g) * abs(p.rho10 ** 2 - p.rho20 ** 2)
                   + p.k ** 2 * p.rho10 * p.rho20 * (p.u10 - p.u20) ** 2)
    exceptional = abs(delta) <= 1e-12 * delta_scale
    root = 0j if exceptional else cmath.sqrt(delta)
    mean = p.k * (p.rho10 * p.u10 + p.rho20 * p.u20)
    a1 = (mean - root) / s
    a2 = (mean + root) / s
    base = -1j * p.k * p.rho20 * (p.u10 - p.u20)
    den = abs(p.k) * s
    phi1 = np.array([(base - 1j * root) / den, 1.0], dtype=complex)
    phi2 = np.array([(base + 1j * root) / den, 1.0], dtype=complex)
    if delta > 0:
        a1, a2 = complex(a1.real, 0.0), complex(a2.real, 0.0)
    H = kh_hamiltonian(p)
    scale = max(1.0, float(np.linalg.norm(H)))
    tr_err = abs(a1 + a2 - np.trace(H))
    det_err = abs(a1 * a2 - np.linalg.det(H))
    if tr_err > rtol * scale or det_err > rtol * scale ** 2:
        raise NumericalError("closed-form KH eigenvalues disagree with trace/determinant",
                             trace_error=tr_err, det_error=det_err)
    return KHEigensystem(delta=delta, a1=a1, a2=a2, phi1=phi1, phi2=phi2, tau=kh_tau(p),
                         exceptional=exceptional)


def kh_breaking_points(p):
    """Values of ``u20`` where ``delta`` vanishes, or ``()`` if it never does."""
    rad = abs(p.k) * p.g * (p.rho20 ** 2 - p.rho10 ** 2) / (p.k ** 2 * p.rho10 * p.rho20)
    if rad < 0:
        return ()
    r = math.sqrt(rad)
    return (p.u10 - r, p.u10 + r)


@dataclass(frozen=True)
class KHFamily:
    """``(H(u20), G(u20))`` with every other parameter held fixed."""

    base: KHParameters

    def parameters(self, u20):
        return self.base.with_u20(u20)

    def hamiltonian(self, u20):
        return kh_hamiltonian(self.parameters(u20))

    def metric(self, u20):
        return kh_metric(self.parameters(u20))

    def __call__(self, u20):
        return self.hamiltonian(u20), self.metric(u20)


def kh_family(k=1.0, u10=1.0, rho10=2.0, rho20=3.0, g=3.0):
    """Family in ``u20``; defaults reproduce the worked-example sweep."""
    return KHFamily(KHParameters(k=k, u10=u10, u20=u10, rho10=rho10, rho20=rho20, g=g))
