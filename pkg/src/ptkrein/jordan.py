"""Numerical Jordan decomposition ``H = Q^{-1} J Q`` by the rank-staircase method.

Pipeline: complex Schur form, eigenvalue clustering, reordering of each cluster
to the leading Schur block, rank staircase of the restricted nilpotent part, and
chain assembly from nested null spaces.  Every result carries its reconstruction
residual and the condition number of ``Q`` so callers can judge it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.linalg import lapack

from .errors import IllConditionedError, NumericalError
from .linalg import DEFAULT_TOL, as_matrix, fro

__all__ = [
    "JordanBlockSpec",
    "JordanDecomposition",
    "eigen_cluster",
    "jordan_decompose",
    "structure_signature",
    "conjugate_signature",
    "signatures_match",
    "jordan_block",
    "jordan_matrix",
]


@dataclass(frozen=True)
class JordanBlockSpec:
    """All Jordan blocks belonging to one (clustered) eigenvalue."""

    eigenvalue: complex
    sizes: tuple

    @property
    def alg_mult(self):
        return sum(self.sizes)

    @property
    def geo_mult(self):
        return len(self.sizes)

    @property
    def is_real(self):
        return self.eigenvalue.imag == 0.0


@dataclass
class JordanDecomposition:
    blocks: list
    Q: np.ndarray
    J: np.ndarray
    residual: float
    condQ: float
    radius: float
    # columns of V = Q^{-1} are the chains, laid out like the blocks of J
    V: np.ndarray = field(repr=False)
    staircases: list = field(default_factory=list, repr=False)

    @property
    def n(self):
        return self.J.shape[0]

    def block_offsets(self):
        """Yield ``(spec_index, eigenvalue, size, offset)`` for every Jordan block in J order."""
        off = 0
        for i, spec in enumerate(self.blocks):
            for s in spec.sizes:
                yield i, spec.eigenvalue, s, off
                off += s

    def eigenvectors(self, index):
        """Geometric eigenvectors (chain starts) of ``blocks[index]`` as columns."""
        cols = [off for i, _, _, off in self.block_offsets() if i == index]
        return self.V[:, cols]


def jordan_block(lam, m):
    """``m x m`` upper bidiagonal block with ``lam`` on the diagonal."""
    return lam * np.eye(m, dtype=complex) + np.eye(m, k=1, dtype=complex)


def jordan_matrix(blocks):
    """Block-diagonal matrix from ``(eigenvalue, size)`` pairs."""
    return scipy.linalg.block_diag(*[jordan_block(lam, m) for lam, m in blocks]).astype(complex)


def _canonical_key(lam):
    if lam.imag == 0.0:
        return (0, lam.real, 0.0, 0)
    return (1, lam.real, abs(lam.imag), 0 if lam.imag > 0 else 1)


def _cluster_indices(eigs, radius):
    """Single-linkage groups of eigenvalues closer than ``radius``.

    Imaginary parts at or below ``radius`` are snapped to zero first so a
    nearly-real conjugate pair lands in one real cluster.
    """
    snapped = np.where(np.abs(eigs.imag) <= radius, eigs.real + 0j, eigs)
    n = len(eigs)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(snapped[i] - snapped[j]) <= radius:
                parent[find(i)] = find(j)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    out = []
    for idx in groups.values():
        idx = np.array(sorted(idx))
        center = complex(np.mean(eigs[idx]))
        if abs(center.imag) <= radius:
            center = complex(center.real, 0.0)
        out.append((center, idx))
    out.sort(key=lambda c: _canonical_key(c[0]))
    return out


def _schur(H):
    try:
        T, Z = scipy.linalg.schur(H, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError("Schur reduction did not converge", cause=str(exc)) from exc
    return T, Z


def eigen_cluster(H, tol=DEFAULT_TOL):
    """Group the eigenvalues of ``H`` into numerically coincident clusters.

    Returns ``[(centroid, multiplicity), ...]`` in canonical order: real
    clusters ascending, then complex clusters by (real part, |imag part|) with
    the positive-imaginary member first.
    """
    H = as_matrix(H, "H")
    T, _ = _schur(H)
    radius = tol.cluster_radius(fro(H))
    return [(c, len(idx)) for c, idx in _cluster_indices(np.diag(T).copy(), radius)]


def _staircase(N, m, rel):
    """Ranks ``r_k`` of ``N^k`` (``N`` already scaled by ``||H||``) until they reach 0.

    Returns ``(ranks, null_bases)`` where ``null_bases[k]`` spans ker N^k.
    """
    ranks = [m]
    bases = [np.zeros((m, 0), dtype=complex)]
    P = np.eye(m, dtype=complex)
    for _ in range(m):
        P = P @ N
        _, s, Vh = np.linalg.svd(P)
        r = int(np.sum(s > rel))
        ranks.append(r)
        bases.append(Vh[r:].conj().T)
        if r == 0:
            break
    return ranks, bases


def _sizes_from_ranks(ranks):
    """Block sizes (descending) from a rank staircase; ``None`` if inconsistent."""
    if ranks[-1] != 0:
        return None
    d = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    if any(x <= 0 for x in d) or any(d[k] < d[k + 1] for k in range(len(d) - 1)):
        return None
    d.append(0)
    sizes = []
    for k in range(len(d) - 1, 0, -1):
        sizes.extend([k] * (d[k - 1] - d[k]))
    return tuple(sizes)


def _orthonormal(W):
    if W.shape[1] == 0:
        return W
    Qw, _ = np.linalg.qr(W)
    return Qw


def _chains(N, sizes, bases, scale):
    """Jordan chains of ``scale * N`` (``N`` nilpotent) with the given block sizes.

    Heads are picked top-down: at level k the new heads span the orthogonal
    complement, inside ker N^k, of ker N^{k-1} plus the level-k vectors of the
    longer chains already chosen.
    """
    heads = []  # (length, vector)
    for k in range(max(sizes), 0, -1):
        need = sizes.count(k)
        if need == 0:
            continue
        existing = [np.linalg.matrix_power(N, L - k) @ h for L, h in heads]
        W = np.column_stack([bases[k - 1]] + existing) if existing else bases[k - 1]
        Wo = _orthonormal(W)
        K = bases[k]
        Pk = K - Wo @ (Wo.conj().T @ K) if Wo.shape[1] else K
        U, _, _ = np.linalg.svd(Pk, full_matrices=False)
        for j in range(need):
            heads.append((k, U[:, j]))
    cols = []
    for L, h in heads:
        chain = [np.linalg.matrix_power(N, L - j) @ h / scale ** j for j in range(1, L + 1)]
        c = 1.0 / max(np.linalg.norm(v) for v in chain)
        cols.extend(c * v for v in chain)
    return np.column_stack(cols)


def _pair_conjugates(clusters, radius):
    """Replace near-conjugate complex centroids by an exactly conjugate pair."""
    centers = [c for c, _ in clusters]
    used = set()
    for i, (c, idx) in enumerate(clusters):
        if c.imag <= 0 or i in used:
            continue
        best, best_d = None, None
        for j, (d, jdx) in enumerate(clusters):
            if j in used or d.imag >= 0 or len(jdx) != len(idx):
                continue
            dist = abs(d - c.conjugate())
            if dist <= radius and (best_d is None or dist < best_d):
                best, best_d = j, dist
        if best is not None:
            mid = 0.5 * (c + centers[best].conjugate())
            centers[i], centers[best] = mid, mid.conjugate()
            used.update((i, best))
    return [(centers[i], idx) for i, (_, idx) in enumerate(clusters)]


def jordan_decompose(H, tol=DEFAULT_TOL):
    """Numerical Jordan decomposition ``H = Q^{-1} J Q``.

    Block sizes per eigenvalue cluster come from the rank staircase of the
    cluster's restricted nilpotent part, with ranks decided by singular values
    above ``tol.rel`` relative to ``||H||``.

    Raises
    ------
    IllConditionedError
        If the rank staircase is not consistent at this tolerance.
    """
    H = as_matrix(H, "H")
    n = H.shape[0]
    nH = fro(H)
    radius = tol.cluster_radius(nH)
    if nH == 0.0:
        I = np.eye(n, dtype=complex)
        return JordanDecomposition(
            blocks=[JordanBlockSpec(0j, (1,) * n)], Q=I, J=np.zeros_like(I),
            residual=0.0, condQ=1.0, radius=radius, V=I, staircases=[[n, 0]],
        )
    scale = max(float(np.linalg.norm(H, 2)), tol.abs_floor)
    T, Z = _schur(H)
    eigs = np.diag(T).copy()
    clusters = _pair_conjugates(_cluster_indices(eigs, radius), radius)

    specs, cols, jblocks, stairs = [], [], [], []
    for center, idx in clusters:
        m = len(idx)
        select = np.zeros(n, dtype=np.int32)
        select[idx] = 1
        Ts, Zs, _, msel, _, _, info = lapack.ztrsen(select, T, Z, job="N")
        if info != 0 or msel != m:
            raise NumericalError("Schur reordering failed", info=info, cluster=center)
        U = Zs[:, :m]
        N = Ts[:m, :m] - center * np.eye(m)
        Nn = N / scale
        ranks, bases = _staircase(Nn, m, tol.rel)
        sizes = _sizes_from_ranks(ranks)
        if sizes is None:
            raise IllConditionedError(
                f"inconsistent rank staircase {ranks} for eigenvalue {center:.6g}; "
                "try a looser or tighter tolerance",
                eigenvalue=center, ranks=ranks, radius=radius,
            )
        Y = U @ _chains(Nn, sizes, bases, scale)
        start = 0
        for size in sizes:
            # fix the free phase of each chain: largest entry of its head real positive
            head = Y[:, start + size - 1]
            big = head[np.argmax(np.abs(head))]
            Y[:, start:start + size] *= abs(big) / big
            start += size
        cols.append(Y)
        specs.append(JordanBlockSpec(center, sizes))
        jblocks.extend((center, s) for s in sizes)
        stairs.append([r + (n - m) for r in ranks])

    V = np.column_stack(cols)
    J = jordan_matrix(jblocks)
    try:
        Q = np.linalg.inv(V)
    except np.linalg.LinAlgError as exc:
        raise IllConditionedError("Jordan basis is singular", radius=radius) from exc
    residual = fro(Q @ H - J @ Q) / nH
    return JordanDecomposition(
        blocks=specs, Q=Q, J=J, residual=residual, condQ=float(np.linalg.cond(V)),
        radius=radius, V=V, staircases=stairs,
    )


def structure_signature(d):
    """Eigenvalue/block-size data of a decomposition, in canonical order."""
    return tuple((spec.eigenvalue, tuple(spec.sizes)) for spec in d.blocks)


def conjugate_signature(sig):
    """Signature of the complex-conjugate matrix, re-canonicalized."""
    conj = [(complex(lam).conjugate(), sizes) for lam, sizes in sig]
    conj = [(complex(lam.real, 0.0) if lam.imag == 0 else lam, s) for lam, s in conj]
    return tuple(sorted(conj, key=lambda e: _canonical_key(e[0])))


def signatures_match(a, b, radius):
    """Match two signatures entry by entry within ``radius``.

    Returns the list of matched ``(eigenvalue_a, eigenvalue_b)`` pairs, or
    ``None`` when the multisets differ.
    """
    if len(a) != len(b):
        return None
    remaining = list(b)
    pairs = []
    for lam, sizes in a:
        hit = None
        for j, (mu, msizes) in enumerate(remaining):
            if tuple(msizes) == tuple(sizes) and abs(lam - mu) <= radius:
                if hit is None or abs(lam - mu) < abs(lam - remaining[hit][0]):
                    hit = j
        if hit is None:
            return None
        pairs.append((lam, remaining.pop(hit)[0]))
    return pairs
