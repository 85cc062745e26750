"""Seeded random matrix ensembles used by the property and acceptance suites."""

from __future__ import annotations

import numpy as np
from scipy.linalg import block_diag

from .jordan import jordan_block
from .metric import random_parity, random_pt_hamiltonian

__all__ = [
    "random_orthogonal",
    "random_transform",
    "random_jordan_structure",
    "defective_pt_hamiltonian",
    "pt_ensemble",
    "random_hermitian",
    "pseudo_hermitian_pair",
    "asymmetric_spectrum_matrix",
]


def random_orthogonal(n, rng):
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_transform(n, rng, cond):
    """Random complex matrix with 2-norm condition number exactly ``cond``."""
    U, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    W, _ = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    return (U * np.geomspace(1.0, cond, n)) @ W


def random_jordan_structure(n, rng, max_size=3, complex_prob=0.5):
    """Random list of ``(eigenvalue, size)`` blocks filling dimension ``n``.

    Eigenvalues are drawn from a small lattice so repeated eigenvalues with
    several blocks occur regularly.
    """
    blocks, left = [], n
    while left > 0:
        size = int(rng.integers(1, min(max_size, left) + 1))
        re = float(rng.integers(-3, 4))
        if rng.random() < complex_prob:
            lam = complex(re, float(rng.choice([-2, -1, 1, 2])))
        else:
            lam = complex(re, 0.0)
        blocks.append((lam, size))
        left -= size
    return blocks


def _real_pair_block(mu, size):
    """Real ``2l x 2l`` matrix similar to ``diag(J(mu), J(conj mu))``."""
    A = jordan_block(mu, size)
    return np.block([[A.real, A.imag], [-A.imag, A.real]])


def defective_pt_hamiltonian(n, seed):
    """PT-symmetric ``H`` with at least one Jordan block of size >= 2.

    Built by conjugating a known Jordan form with a random real orthogonal
    matrix ``O``.  Two flavours alternate with the seed:

    * a real matrix (real blocks and real forms of conjugate pairs), ``P = I``;
    * ``O diag(J(mu).., J(conj mu).., J(a)..) O^T`` with ``P = O Pi O^T`` where
      ``Pi`` swaps each block with its conjugate partner.

    Returns ``(H, P, blocks)`` where ``blocks`` lists ``(eigenvalue, size)``.
    """
    if n < 2:
        raise ValueError("defective matrices need n >= 2")
    rng = np.random.default_rng(seed)
    pairs, reals = [], []

    def add_pair(lo, left):
        size = int(rng.integers(lo, min(3, left // 2) + 1))
        mu = complex(float(rng.integers(-3, 4)), float(rng.choice([1, 2])))
        pairs.append((mu, size))
        return left - 2 * size

    def add_real(lo, left):
        size = int(rng.integers(lo, min(3, left) + 1))
        reals.append((float(rng.integers(-3, 4)), size))
        return left - size

    # the first block is always defective
    left = add_pair(2, n) if n >= 4 and rng.random() < 0.5 else add_real(2, n)
    while left > 0:
        left = add_pair(1, left) if left >= 2 and rng.random() < 0.4 else add_real(1, left)
    O = random_orthogonal(n, rng)
    if seed % 2 == 0:
        parts = [jordan_block(a, s).real for a, s in reals]
        parts += [_real_pair_block(mu, s) for mu, s in pairs]
        Jr = block_diag(*parts)
        H = O @ Jr @ O.T
        P = np.eye(n)
    else:
        top = [jordan_block(mu, s) for mu, s in pairs]
        bottom = [jordan_block(mu.conjugate(), s) for mu, s in pairs]
        real = [jordan_block(a, s) for a, s in reals]
        J = block_diag(*(top + bottom + real)).astype(complex)
        half = sum(s for _, s in pairs)
        Pi = np.eye(n)
        if half:
            Pi[:2 * half, :2 * half] = 0.0
            Pi[:half, half:2 * half] = np.eye(half)
            Pi[half:2 * half, :half] = np.eye(half)
        H = O @ J @ O.T
        P = O @ Pi @ O.T
    blocks = [(complex(a, 0.0), s) for a, s in reals]
    blocks += [(mu, s) for mu, s in pairs] + [(mu.conjugate(), s) for mu, s in pairs]
    return H.astype(complex), 0.5 * (P + P.T), blocks


def pt_ensemble(seed):
    """One member of the PT-symmetric ensemble: ``(H, P, defective)``.

    Every fifth seed is a defective construction; the rest are generic draws
    from :func:`random_pt_hamiltonian` with a random real symmetric involution.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 9))
    if seed % 5 == 0:
        H, P, _ = defective_pt_hamiltonian(n, seed)
        return H, P, True
    P = random_parity(n, seed)
    return random_pt_hamiltonian(n, P, seed), P, False


def random_hermitian(n, rng):
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (X + X.conj().T)


def pseudo_hermitian_pair(n, rng, definite=False):
    """``(H, G)`` with ``H = G^{-1} S`` for random Hermitian ``S`` and nonsingular Hermitian ``G``.

    With ``definite=True``, ``S`` is positive definite, which makes the
    spectrum real and every eigenvalue definite.
    """
    G = random_hermitian(n, rng)
    w, U = np.linalg.eigh(G)
    # keep G comfortably nonsingular
    w = np.sign(w) * np.maximum(np.abs(w), 0.3)
    G = (U * w) @ U.conj().T
    G = 0.5 * (G + G.conj().T)
    S = random_hermitian(n, rng)
    if definite:
        S = S @ S.conj().T + 0.5 * np.eye(n)
    H = np.linalg.solve(G, S)
    H = H / np.linalg.norm(H, 2)
    return H, G


def asymmetric_spectrum_matrix(n, rng):
    """Random complex matrix, shifted so its spectrum is clearly not conjugation-symmetric."""
    X = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return X + 0.5j * np.eye(n)
