"""Dense complex linear algebra used by the beamforming designs.

Matrices are plain ``numpy`` arrays of complex dtype. Vectors are 1-D arrays
and are treated as columns wherever a matrix is expected.
"""

import numpy as np
from scipy.linalg import solve_triangular

from .exceptions import NotHermitian, NotPositiveDefinite, RankDeficient

HERMITIAN_RTOL = 1e-12
MAX_GRAM_CONDITION = 1e12
MIN_PIVOT_RATIO = 1e-13

__all__ = [
    "as_columns",
    "complement_basis",
    "gen_eig_leading",
    "herm_eig_leading",
    "is_hermitian",
    "orth_projector",
    "phase_normalize",
]


def as_columns(G):
    """Return ``G`` as a 2-D complex array, turning a 1-D vector into one column."""
    G = np.asarray(G, dtype=complex)
    if G.ndim == 1:
        G = G[:, None]
    if G.ndim != 2:
        raise ValueError(f"expected a vector or a matrix, got shape {G.shape}")
    return G


def orth_projector(G):
    """Orthogonal projector onto the complement of the column span of ``G``.

    Parameters
    ----------
    G : array_like, shape (K, m) or (K,)
        Full column rank matrix with ``m < K``. A 1-D input is one column.

    Returns
    -------
    ndarray, shape (K, K)
        ``I - G (G^H G)^{-1} G^H``, explicitly symmetrized.

    Raises
    ------
    RankDeficient
        If ``G^H G`` has condition number above ``1e12``.
    """
    G = as_columns(G)
    K, m = G.shape
    if m >= K:
        raise ValueError(f"need fewer columns than rows, got {K}x{m}")
    gram = G.conj().T @ G
    if not np.all(np.isfinite(gram)) or np.linalg.cond(gram) > MAX_GRAM_CONDITION:
        raise RankDeficient(f"columns of the {K}x{m} matrix are numerically dependent")
    P = np.eye(K, dtype=complex) - G @ np.linalg.solve(gram, G.conj().T)
    return 0.5 * (P + P.conj().T)


def complement_basis(G):
    """Orthonormal basis (K x (K-m)) of the orthogonal complement of span(G)."""
    G = as_columns(G)
    K, m = G.shape
    if m >= K:
        raise ValueError(f"need fewer columns than rows, got {K}x{m}")
    Q, _ = np.linalg.qr(G, mode="complete")
    return Q[:, m:]


def is_hermitian(M, rtol=HERMITIAN_RTOL):
    M = np.asarray(M)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    scale = np.linalg.norm(M)
    return np.linalg.norm(M - M.conj().T) <= rtol * max(scale, np.finfo(float).tiny)


def phase_normalize(v, tol=1e-12):
    """Rotate ``v`` so that its first entry with magnitude above ``tol`` is real positive."""
    v = np.asarray(v, dtype=complex)
    idx = np.flatnonzero(np.abs(v) > tol)
    if idx.size == 0:
        return v.copy()
    z = v[idx[0]]
    out = v * (np.conj(z) / abs(z))
    out[idx[0]] = out[idx[0]].real
    return out


def herm_eig_leading(M):
    """Largest eigenvalue of a Hermitian matrix and its unit-norm eigenvector.

    The eigenvector is phase normalized so repeated calls are deterministic.

    Raises
    ------
    NotHermitian
        If ``M`` is not Hermitian within a relative tolerance of ``1e-12``.
    """
    M = np.asarray(M, dtype=complex)
    if not is_hermitian(M):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w, V = np.linalg.eigh(0.5 * (M + M.conj().T))
    v = V[:, -1]
    return float(w[-1]), phase_normalize(v / np.linalg.norm(v))


def gen_eig_leading(A, B, basis=None):
    """Leading eigenpair of the Hermitian-definite pencil ``(A, B)``.

    Solves ``A v = lam B v`` for the largest ``lam`` by Cholesky reduction
    ``B = L L^H`` followed by a standard Hermitian solve of
    ``L^{-1} A L^{-H}``.

    Parameters
    ----------
    A : array_like, shape (K, K)
        Hermitian positive semidefinite.
    B : array_like, shape (K, K)
        Hermitian, positive definite on the working subspace.
    basis : array_like, shape (K, r), optional
        Orthonormal basis of the working subspace. When given, the pencil is
        reduced to ``(Q^H A Q, Q^H B Q)`` and the solution is embedded back
        as ``Q y``. Use it when ``B`` is singular outside the subspace.

    Returns
    -------
    lam : float
    v : ndarray, shape (K,)
        Scaled so that ``v^H B v = 1``, then phase normalized.

    Raises
    ------
    NotHermitian
    NotPositiveDefinite
        If the Cholesky factorization of (reduced) ``B`` fails.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    for name, M in (("A", A), ("B", B)):
        if not is_hermitian(M):
            raise NotHermitian(f"{name} is not Hermitian within tolerance")
    if basis is not None:
        Q = np.asarray(basis, dtype=complex)
        A = Q.conj().T @ A @ Q
        B = Q.conj().T @ B @ Q
    A = 0.5 * (A + A.conj().T)
    B = 0.5 * (B + B.conj().T)
    try:
        L = np.linalg.cholesky(B)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("B is not positive definite on the working subspace") from exc
    pivots = np.abs(np.diag(L)) ** 2
    if pivots.min() <= MIN_PIVOT_RATIO * pivots.max():
        raise NotPositiveDefinite("B is numerically singular on the working subspace")
    Linv_A = solve_triangular(L, A, lower=True)
    C = solve_triangular(L, Linv_A.conj().T, lower=True).conj().T
    lam, y = herm_eig_leading(0.5 * (C + C.conj().T))
    v = solve_triangular(L.conj().T, y, lower=False)
    if basis is not None:
        v = Q @ v
    return lam, phase_normalize(v)
