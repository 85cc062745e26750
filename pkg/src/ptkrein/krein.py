"""Krein signatures, eigenvalue kinds, strong stability and collision detection.

For a pseudo-Hermitian ``H`` with metric ``G`` the Krein product of an
eigenvector ``v`` is ``v^H G v``.  A real eigenvalue is of the first kind when
the product is positive on its whole eigenspace, of the second kind when it is
negative, and mixed otherwise.  Real eigenvalues can only leave the real axis
when a first-kind and a second-kind eigenvalue collide.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import DimensionError, NumericalError, PreconditionError, PTKreinError
from .jordan import jordan_decompose
from .linalg import DEFAULT_TOL, as_matrix, as_vector, fro, inertia
from .metric import check_pseudo_with

__all__ = [
    "FIRST",
    "SECOND",
    "MIXED",
    "COMPLEX_PAIR",
    "KreinClassification",
    "CollisionEvent",
    "SweepReport",
    "SweepError",
    "krein_product",
    "classify_eigenvalues",
    "count_kinds",
    "strong_stability",
    "sweep",
    "locate_collision",
    "is_nonreal",
]

log = logging.getLogger(__name__)

FIRST = "first"
SECOND = "second"
MIXED = "mixed"
COMPLEX_PAIR = "complex-pair"


class SweepError(PTKreinError):
    """A grid point of a sweep could not be certified or analysed."""

    def __init__(self, message, parameter):
        super().__init__(message)
        self.parameter = parameter


def krein_product(x, y, G, tol=DEFAULT_TOL):
    """``x^H G y``.  For ``x is y`` the (real) action is returned as a float."""
    G = as_matrix(G, "G")
    n = G.shape[0]
    same = x is y
    x = as_vector(x, n, "x")
    y = x if same else as_vector(y, n, "y")
    val = complex(x.conj() @ G @ y)
    if not same:
        return val
    scale = max(float(np.linalg.norm(x)) ** 2 * fro(G), tol.abs_floor)
    if abs(val.imag) > tol.rel * scale:
        raise PreconditionError(f"x^H G x has imaginary part {val.imag:.3e}; is G Hermitian?")
    return val.real


@dataclass(frozen=True)
class KreinClassification:
    eigenvalue: complex
    alg_mult: int
    geo_mult: int
    kind: str
    gram_eigenvalues: tuple
    ambiguous: bool = False
    partner: complex | None = None

    @property
    def definite(self):
        return self.kind in (FIRST, SECOND)


def _certify(H, G, tol):
    cert = check_pseudo_with(H, G, tol)
    if not cert:
        raise PreconditionError(
            f"(H, G) is not a certified pseudo-Hermitian pair: {cert.gate} check failed "
            f"(residual {cert.residual:.3e})"
        )
    return cert


def classify_eigenvalues(H, G, tol=DEFAULT_TOL):
    """Kind of every eigenvalue of ``H`` with respect to the metric ``G``.

    Real eigenvalues are classified by the signs of the Gram matrix
    ``B = V^H G V`` on an orthonormal basis ``V`` of the eigenspace.  Gram
    eigenvalues inside ``+-tol.rel * ||G||`` make the eigenvalue mixed and set
    ``ambiguous``.  Non-real eigenvalues are labelled complex-pair and linked to
    their conjugate.
    """
    H = as_matrix(H, "H")
    G = as_matrix(G, "G")
    _certify(H, G, tol)
    d = jordan_decompose(H, tol)
    band = tol.rel * float(np.linalg.norm(G, 2))
    out = []
    for i, spec in enumerate(d.blocks):
        vecs = d.eigenvectors(i)
        basis, _ = np.linalg.qr(vecs)
        B = basis.conj().T @ G @ basis
        w = np.linalg.eigvalsh(0.5 * (B + B.conj().T))
        if not spec.is_real:
            partner = min((b.eigenvalue for b in d.blocks if not b.is_real and b is not spec),
                          key=lambda mu: abs(mu - spec.eigenvalue.conjugate()), default=None)
            out.append(KreinClassification(spec.eigenvalue, spec.alg_mult, spec.geo_mult,
                                           COMPLEX_PAIR, tuple(w), partner=partner))
            continue
        ambiguous = bool(np.any(np.abs(w) <= band))
        if w[0] > band:
            kind = FIRST
        elif w[-1] < -band:
            kind = SECOND
        else:
            kind = MIXED
        out.append(KreinClassification(spec.eigenvalue, spec.alg_mult, spec.geo_mult, kind,
                                       tuple(w), ambiguous=ambiguous))
    return out


def count_kinds(classifications, G, tol=DEFAULT_TOL):
    """Multiplicity-weighted ``(n_first, n_second)``, cross-checked against ``inertia(G)``.

    Returns ``None`` unless every eigenvalue is real and definite.  A count that
    disagrees with the inertia raises :class:`NumericalError`.
    """
    if any(not c.definite for c in classifications):
        return None
    n_first = sum(c.alg_mult for c in classifications if c.kind == FIRST)
    n_second = sum(c.alg_mult for c in classifications if c.kind == SECOND)
    p, q, z = inertia(G, tol)
    if (n_first, n_second) != (p, q):
        raise NumericalError(
            f"kind count {(n_first, n_second)} disagrees with inertia {(p, q, z)}",
            counts=(n_first, n_second), inertia=(p, q, z),
        )
    return n_first, n_second


def strong_stability(H, G, tol=DEFAULT_TOL):
    """True iff every eigenvalue is real and definite."""
    return all(c.definite for c in classify_eigenvalues(H, G, tol))


def is_nonreal(H, tol=DEFAULT_TOL):
    """Whether some eigenvalue of ``H`` has ``|Im| > cluster radius``."""
    H = as_matrix(H, "H")
    eigs = np.linalg.eigvals(H)
    return bool(np.max(np.abs(eigs.imag)) > tol.cluster_radius(fro(H)))


def locate_collision(family, p_lo, p_hi, tol=DEFAULT_TOL):
    """Bisect for the parameter where the spectrum of ``family(p)`` leaves (or returns to) the real axis.

    ``p_lo < p_hi`` must bracket a change of :func:`is_nonreal`.  The bracket is
    shrunk to width ``1e-10 * max(1, |p_hi|)``.
    """
    p_lo, p_hi = float(p_lo), float(p_hi)
    if not (np.isfinite(p_lo) and np.isfinite(p_hi)) or not p_lo < p_hi:
        raise PreconditionError(f"need p_lo < p_hi, got [{p_lo}, {p_hi}]")
    lo_state = is_nonreal(family(p_lo), tol)
    if lo_state == is_nonreal(family(p_hi), tol):
        raise PreconditionError(f"[{p_lo}, {p_hi}] does not bracket a change of real/non-real spectrum")
    width = 1e-10 * max(1.0, abs(p_hi))
    while p_hi - p_lo > width:
        mid = 0.5 * (p_lo + p_hi)
        if mid <= p_lo or mid >= p_hi:
            break
        if is_nonreal(family(mid), tol) == lo_state:
            p_lo = mid
        else:
            p_hi = mid
    return 0.5 * (p_lo + p_hi)


@dataclass(frozen=True)
class CollisionEvent:
    parameter_value: float
    colliding_eigenvalue: complex
    kinds_before: tuple
    refined: bool = True
    # "breaking": real -> complex with increasing parameter; "restoring": the reverse
    direction: str = "breaking"


@dataclass
class SweepReport:
    parameter_grid: np.ndarray
    trajectories: list
    collisions: list = field(default_factory=list)

    def rows(self):
        """``(param, eig_index, eigenvalue, kind)`` for every grid point and trajectory."""
        for p, traj in zip(self.parameter_grid, self.trajectories):
            for j, (lam, kind) in enumerate(traj):
                yield float(p), j, lam, kind


def _point(H, G, tol):
    """Eigenvalues with kinds at one grid point (real ones snapped to the axis)."""
    classes = classify_eigenvalues(H, G, tol)
    radius = tol.cluster_radius(fro(H))
    eigs = np.linalg.eigvals(H)
    out = []
    for lam in eigs:
        lam = complex(lam)
        c = min(classes, key=lambda c: abs(c.eigenvalue - lam))
        if abs(lam.imag) <= radius:
            lam = complex(lam.real, 0.0)
        out.append((lam, c.kind))
    out.sort(key=lambda e: (e[0].real, e[0].imag))
    return out


def _match(prev, cur):
    cost = np.abs(np.subtract.outer([e[0] for e in prev], [e[0] for e in cur]))
    _, cols = linear_sum_assignment(cost)
    return [cur[j] for j in cols]


def sweep(family, G_family, p_min, p_max, steps, tol=DEFAULT_TOL):
    """Track eigenvalues and kinds of ``family(p)`` on a uniform grid.

    Each grid point must be certified by ``G_family(p)``.  Consecutive points
    are matched by minimal total eigenvalue displacement.  Wherever the
    spectrum switches between all-real and non-real, the switch is refined by
    :func:`locate_collision` and recorded as a :class:`CollisionEvent`.
    """
    steps = int(steps)
    if steps < 2:
        raise PreconditionError("sweep needs at least 2 grid points")
    if not p_min < p_max:
        raise PreconditionError(f"need p_min < p_max, got [{p_min}, {p_max}]")
    grid = np.linspace(p_min, p_max, steps)
    trajectories = []
    for p in grid:
        H = as_matrix(family(p), "H")
        G = as_matrix(G_family(p), "G")
        cert = check_pseudo_with(H, G, tol)
        if not cert:
            raise SweepError(f"certification failed at parameter {p!r} ({cert.gate} check)", float(p))
        try:
            pt = _point(H, G, tol)
        except NumericalError as exc:
            raise SweepError(f"analysis failed at parameter {p!r}: {exc}", float(p)) from exc
        trajectories.append(pt if not trajectories else _match(trajectories[-1], pt))

    collisions = []
    for i in range(steps - 1):
        a, b = trajectories[i], trajectories[i + 1]
        nonreal_a = any(lam.imag != 0 for lam, _ in a)
        nonreal_b = any(lam.imag != 0 for lam, _ in b)
        if nonreal_a == nonreal_b:
            continue
        real_side, complex_side = (a, b) if not nonreal_a else (b, a)
        kinds = tuple(kind for (_, kind), (lam, _) in zip(real_side, complex_side) if lam.imag != 0)
        p_star = locate_collision(family, grid[i], grid[i + 1], tol)
        eigs = np.sort_complex(np.linalg.eigvals(as_matrix(family(p_star))))
        gaps = np.abs(np.diff(eigs))
        j = int(np.argmin(gaps))
        lam = complex(0.5 * (eigs[j] + eigs[j + 1]).real, 0.0)
        event = CollisionEvent(p_star, lam, kinds, True, "restoring" if nonreal_a else "breaking")
        log.info("collision at p=%.12g, eigenvalue %.6g, kinds %s", p_star, lam.real, kinds)
        collisions.append(event)
    return SweepReport(parameter_grid=grid, trajectories=trajectories, collisions=collisions)
