"""Dense complex matrix helpers: validation, Hermitian diagnostics, inertia, propagation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import DimensionError, PreconditionError

__all__ = [
    "Tolerance",
    "Inertia",
    "DEFAULT_TOL",
    "as_matrix",
    "as_vector",
    "fro",
    "hermitian_residual",
    "inertia",
    "evolve",
]


@dataclass(frozen=True)
class Tolerance:
    """Relative threshold plus an absolute floor used for every numerical comparison."""

    rel: float = 1e-10
    abs_floor: float = 1e-14

    def __post_init__(self):
        if not self.rel > 0:
            raise ValueError(f"rel must be positive, got {self.rel}")
        if not self.abs_floor >= 0:
            raise ValueError(f"abs_floor must be nonnegative, got {self.abs_floor}")

    def cluster_radius(self, scale):
        """Radius for grouping eigenvalues of a matrix whose norm is ``scale``.

        Defective eigenvalues split like eps**(1/m), hence the square root.
        """
        return max(self.abs_floor, np.sqrt(self.rel) * scale)


DEFAULT_TOL = Tolerance()


class Inertia(NamedTuple):
    p: int
    q: int
    z: int


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite square complex ndarray or raise."""
    a = np.asarray(M, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise PreconditionError(f"{name} has non-finite entries")
    return a


def as_vector(x, n, name="vector"):
    v = np.asarray(x, dtype=complex).reshape(-1)
    if v.shape[0] != n:
        raise DimensionError(f"{name} has length {v.shape[0]}, expected {n}")
    return v


def fro(M):
    return float(np.linalg.norm(M, "fro"))


def scaled_residual(R, *operands):
    """``||R||_F`` divided by the product of operand Frobenius norms (guarded against 0)."""
    scale = 1.0
    for op in operands:
        scale *= fro(op)
    if scale == 0.0:
        scale = 1.0
    return fro(R) / scale


def hermitian_residual(M):
    """``||M - M^H||_F / max(1, ||M||_F)``."""
    M = as_matrix(M)
    return fro(M - M.conj().T) / max(1.0, fro(M))


def inertia(G, tol=DEFAULT_TOL):
    """Count positive, negative and zero eigenvalues of a Hermitian matrix.

    Eigenvalues come from the symmetrized ``(G + G^H)/2``; any eigenvalue with
    ``|lam| <= tol.rel * ||G||_2`` counts as zero.
    """
    G = as_matrix(G, "G")
    res = hermitian_residual(G)
    if res > tol.rel:
        raise PreconditionError(f"G is not Hermitian (residual {res:.3e} > {tol.rel:.1e})")
    w = np.linalg.eigvalsh(0.5 * (G + G.conj().T))
    cut = max(tol.rel * float(np.max(np.abs(w), initial=0.0)), tol.abs_floor)
    p = int(np.sum(w > cut))
    q = int(np.sum(w < -cut))
    return Inertia(p, q, len(w) - p - q)


def evolve(A, x0, t):
    """Propagate ``x' = A x`` from ``x0`` for time ``t``: returns ``exp(tA) x0``."""
    A = as_matrix(A, "A")
    x0 = as_vector(x0, A.shape[0], "x0")
    t = float(t)
    if not np.isfinite(t):
        raise PreconditionError("t must be finite")
    return scipy.linalg.expm(t * A) @ x0
