"""PT-symmetry and pseudo-Hermiticity: checks, metric construction, G-Hamiltonian split.

A Hamiltonian ``H`` is PT-symmetric with parity ``P`` when ``P conj(H) = H P``
and ``P @ P = I``.  It is pseudo-Hermitian when some nonsingular Hermitian ``G``
satisfies ``H^H G = G H``.  ``construct_metric`` builds such a ``G`` from the
Jordan form of any ``H`` that is similar to its complex conjugate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, IllConditionedError, PairingError, PreconditionError, TheoremViolationError
from .jordan import conjugate_signature, jordan_decompose, signatures_match, structure_signature
from .linalg import DEFAULT_TOL, Inertia, as_matrix, fro, hermitian_residual, inertia, scaled_residual

__all__ = [
    "PTReport",
    "MetricCertificate",
    "PseudoHermitianFailure",
    "SimilarityEvidence",
    "SplitReport",
    "check_pt",
    "random_pt_hamiltonian",
    "random_parity",
    "check_pseudo_with",
    "similar_to_conjugate",
    "construct_metric",
    "exchange_metric",
    "g_hamiltonian_split",
    "find_generalized_parity",
]


def _same_shape(*mats):
    shapes = {m.shape for m in mats}
    if len(shapes) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(shapes)}")


@dataclass(frozen=True)
class PTReport:
    parity_ok: bool
    parity_residual: float
    commutation_residual: float
    is_pt_symmetric: bool


def check_pt(H, P, tol=DEFAULT_TOL):
    """Check ``P^2 = I`` and ``P conj(H) - H P = 0`` to relative tolerance."""
    H = as_matrix(H, "H")
    P = as_matrix(P, "P")
    _same_shape(H, P)
    n = H.shape[0]
    parity_res = fro(P @ P - np.eye(n)) / max(1.0, fro(P) ** 2)
    comm_res = scaled_residual(P @ H.conj() - H @ P, H, P)
    parity_ok = parity_res <= tol.rel
    return PTReport(
        parity_ok=parity_ok,
        parity_residual=parity_res,
        commutation_residual=comm_res,
        is_pt_symmetric=parity_ok and comm_res <= tol.rel,
    )


def _check_real_involution(P, tol):
    if np.max(np.abs(P.imag), initial=0.0) > tol.rel * max(1.0, fro(P)):
        raise PreconditionError("parity P must be real")
    if fro(P - P.T) > tol.rel * max(1.0, fro(P)):
        raise PreconditionError("parity P must be symmetric")
    if fro(P @ P - np.eye(P.shape[0])) > tol.rel * max(1.0, fro(P) ** 2):
        raise PreconditionError("parity P must satisfy P @ P = I")


def random_parity(n, seed, n_minus=None):
    """Random real symmetric involution ``O diag(+-1) O^T`` with ``n_minus`` negative signs."""
    rng = np.random.default_rng(seed)
    if n_minus is None:
        n_minus = int(rng.integers(0, n + 1))
    O, _ = np.linalg.qr(rng.standard_normal((n, n)))
    signs = np.ones(n)
    signs[:n_minus] = -1.0
    P = (O * signs) @ O.T
    return 0.5 * (P + P.T)


def random_pt_hamiltonian(n, P, seed, tol=DEFAULT_TOL):
    """Random ``H`` with ``P conj(H) = H P``: the symmetrization ``(H0 + P conj(H0) P) / 2``."""
    P = as_matrix(P, "P")
    if P.shape[0] != n:
        raise DimensionError(f"P has dimension {P.shape[0]}, expected {n}")
    _check_real_involution(P, tol)
    P = P.real
    rng = np.random.default_rng(seed)
    H0 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (H0 + P @ H0.conj() @ P)


@dataclass(frozen=True)
class MetricCertificate:
    """A verified metric: ``G`` Hermitian, nonsingular and ``H^H G = G H``."""

    G: np.ndarray
    residual: float
    inertia: Inertia
    min_abs_eig: float
    hermitian_residual: float = 0.0
    condQ: Optional[float] = None

    def __bool__(self):
        return True


@dataclass(frozen=True)
class PseudoHermitianFailure:
    """Why a candidate metric was rejected; ``gate`` names the first failing check."""

    gate: str
    residual: float
    hermitian_residual: float
    min_abs_eig: float
    threshold: float

    def __bool__(self):
        return False


def check_pseudo_with(H, G, tol=DEFAULT_TOL):
    """Verify that ``G`` is a metric for ``H``.

    Returns a :class:`MetricCertificate` on success and a falsy
    :class:`PseudoHermitianFailure` otherwise.  A singular or non-Hermitian
    ``G`` is reported, not raised.
    """
    H = as_matrix(H, "H")
    G = as_matrix(G, "G")
    _same_shape(H, G)
    herm = hermitian_residual(G)
    res = scaled_residual(H.conj().T @ G - G @ H, H, G)
    Gh = 0.5 * (G + G.conj().T)
    w = np.linalg.eigvalsh(Gh)
    min_abs = float(np.min(np.abs(w)))
    normG = float(np.max(np.abs(w)))
    if herm > tol.rel:
        return PseudoHermitianFailure("hermitian", res, herm, min_abs, tol.rel)
    if not min_abs > max(tol.rel * normG, tol.abs_floor):
        return PseudoHermitianFailure("nonsingular", res, herm, min_abs, tol.rel * normG)
    if res > tol.rel:
        return PseudoHermitianFailure("residual", res, herm, min_abs, tol.rel)
    return MetricCertificate(G=G, residual=res, inertia=inertia(G, tol), min_abs_eig=min_abs,
                             hermitian_residual=herm)


@dataclass(frozen=True)
class SimilarityEvidence:
    similar: bool
    signature: tuple
    conjugate_signature: tuple
    pairing: Optional[list]

    def __bool__(self):
        return self.similar


def similar_to_conjugate(H, tol=DEFAULT_TOL, decomposition=None):
    """Decide whether ``H`` is similar to ``conj(H)`` by comparing Jordan structures.

    The returned evidence is truthy iff similar; ``pairing`` lists each
    eigenvalue with the conjugate-spectrum eigenvalue it matched.
    """
    d = decomposition if decomposition is not None else jordan_decompose(H, tol)
    sig = structure_signature(d)
    csig = conjugate_signature(sig)
    pairing = signatures_match(sig, csig, d.radius)
    return SimilarityEvidence(pairing is not None, sig, csig, pairing)


def exchange_metric(d):
    """Block metric for a Jordan matrix: an exchange matrix on every real block
    and on every conjugate pair of equal-size complex blocks.

    Raises :class:`PairingError` when a complex eigenvalue's block sizes differ
    from those of its conjugate partner.
    """
    n = d.n
    Gp = np.zeros((n, n), dtype=complex)
    layout = {}
    for i, lam, size, off in d.block_offsets():
        layout.setdefault(i, []).append((size, off))
    partner = {}
    for i, spec in enumerate(d.blocks):
        if spec.is_real or spec.eigenvalue.imag < 0:
            continue
        target = spec.eigenvalue.conjugate()
        cands = [j for j, s in enumerate(d.blocks)
                 if s.eigenvalue.imag < 0 and j not in partner.values()
                 and abs(s.eigenvalue - target) <= d.radius]
        if not cands:
            raise PairingError(f"no conjugate partner for eigenvalue {spec.eigenvalue:.6g}",
                               eigenvalue=spec.eigenvalue)
        j = min(cands, key=lambda c: abs(d.blocks[c].eigenvalue - target))
        if tuple(d.blocks[j].sizes) != tuple(spec.sizes):
            raise PairingError(
                f"block sizes {spec.sizes} of {spec.eigenvalue:.6g} differ from "
                f"{d.blocks[j].sizes} of its conjugate {d.blocks[j].eigenvalue:.6g}",
                sizes=spec.sizes, conjugate_sizes=d.blocks[j].sizes,
            )
        partner[i] = j
    paired = set(partner) | set(partner.values())
    for i, spec in enumerate(d.blocks):
        if not spec.is_real and i not in paired:
            raise PairingError(f"no conjugate partner for eigenvalue {spec.eigenvalue:.6g}",
                               eigenvalue=spec.eigenvalue)
    for i, spec in enumerate(d.blocks):
        if spec.is_real:
            for size, off in layout[i]:
                for r in range(size):
                    Gp[off + r, off + size - 1 - r] = 1.0
    for i, j in partner.items():
        for (size, s), (_, t) in zip(layout[i], layout[j]):
            for r in range(size):
                Gp[s + r, t + size - 1 - r] = 1.0
                Gp[t + size - 1 - r, s + r] = 1.0
    return Gp


def construct_metric(H, tol=DEFAULT_TOL):
    """Build a metric ``G = Q^H G' Q`` from the Jordan decomposition ``H = Q^{-1} J Q``.

    ``G'`` is block diagonal with exchange matrices: one per real Jordan block,
    one per conjugate pair ``(J(a+bi), J(a-bi))`` of equal size.  The result is
    verified with :func:`check_pseudo_with` before it is returned.

    Raises
    ------
    TheoremViolationError
        If ``H`` is not similar to its complex conjugate.
    PairingError
        If conjugate eigenvalues carry different block sizes.
    IllConditionedError
        If the assembled metric fails verification.
    """
    H = as_matrix(H, "H")
    d = jordan_decompose(H, tol)
    evidence = similar_to_conjugate(H, tol, decomposition=d)
    if not evidence:
        spectrum = tuple((lam, (sum(sizes),)) for lam, sizes in evidence.signature)
        if signatures_match(spectrum, conjugate_signature(spectrum), d.radius) is not None:
            raise PairingError(
                "conjugate eigenvalues carry different Jordan block sizes",
                signature=evidence.signature, conjugate_signature=evidence.conjugate_signature,
            )
        raise TheoremViolationError("H is not similar to its complex conjugate", evidence)
    Gp = exchange_metric(d)
    G = d.Q.conj().T @ Gp @ d.Q
    G = 0.5 * (G + G.conj().T)
    cert = check_pseudo_with(H, G, tol)
    if not cert:
        raise IllConditionedError(
            f"constructed metric failed the {cert.gate} check (residual {cert.residual:.3e}, "
            f"condQ {d.condQ:.3e})",
            residual=cert.residual, condQ=d.condQ, jordan_residual=d.residual,
        )
    return MetricCertificate(G=cert.G, residual=cert.residual, inertia=cert.inertia,
                             min_abs_eig=cert.min_abs_eig,
                             hermitian_residual=cert.hermitian_residual, condQ=d.condQ)


@dataclass(frozen=True)
class SplitReport:
    """``S = -i G A`` with ``A = -i H``; Hermitian exactly when ``G`` is a metric for ``H``."""

    S: np.ndarray
    hermitian_residual: float
    scaled_residual: float
    is_hermitian: bool


def g_hamiltonian_split(H, G, tol=DEFAULT_TOL):
    """Write ``A = -iH`` as ``i G^{-1} S`` and report whether ``S`` is Hermitian.

    The Hermiticity verdict uses ``||S - S^H|| / (||H|| ||G||)``, the same
    quantity that decides :func:`check_pseudo_with`, so the two always agree.
    """
    H = as_matrix(H, "H")
    G = as_matrix(G, "G")
    _same_shape(H, G)
    w = np.linalg.eigvalsh(0.5 * (G + G.conj().T))
    if not np.min(np.abs(w)) > max(tol.rel * np.max(np.abs(w)), tol.abs_floor):
        raise PreconditionError("G is singular")
    A = -1j * H
    S = -1j * G @ A
    sres = scaled_residual(S - S.conj().T, H, G)
    return SplitReport(S=S, hermitian_residual=hermitian_residual(S), scaled_residual=sres,
                       is_hermitian=sres <= tol.rel)


def find_generalized_parity(H, tol=DEFAULT_TOL, seed=0, attempts=32):
    """Find a nonsingular ``P`` with ``H P = P conj(H)``; ``P @ P = I`` is not required.

    The solution space is the null space of ``kron(I, H) - kron(H^H, I)``
    acting on ``vec(P)``; random combinations of its basis are tried and the
    best-conditioned one is kept.  Returns ``None`` if no nonsingular element
    exists.
    """
    H = as_matrix(H, "H")
    n = H.shape[0]
    I = np.eye(n)
    # column-major vec: vec(H P) = (I kron H) vec(P), vec(P Hbar) = (Hbar^T kron I) vec(P)
    L = np.kron(I, H) - np.kron(H.conj().T, I)
    _, s, Vh = np.linalg.svd(L)
    cut = tol.rel * max(float(s[0]), 1.0)
    basis = Vh[s <= cut].conj()
    if basis.shape[0] == 0:
        return None
    rng = np.random.default_rng(seed)
    best, best_rc = None, 0.0
    for attempt in range(attempts):
        if attempt == 0 and basis.shape[0] == 1:
            c = np.ones(1)
        else:
            c = rng.standard_normal(basis.shape[0]) + 1j * rng.standard_normal(basis.shape[0])
        P = (c @ basis).reshape(n, n, order="F")
        sv = np.linalg.svd(P, compute_uv=False)
        rc = sv[-1] / sv[0]
        if rc > best_rc:
            best, best_rc = P, rc
    if best is None or best_rc <= tol.rel:
        return None
    best = best / np.linalg.norm(best, 2)
    if scaled_residual(H @ best - best @ H.conj(), H, best) > tol.rel:
        return None
    return best
