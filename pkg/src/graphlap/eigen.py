"""Dense symmetric eigensolver and the generalized Laplacian eigenproblem.

The ordinary problem is solved with cyclic Jacobi rotations (row-by-row
ordering), compiled with numba.

The generalized problem ``L w = lambda D w`` is reduced to the ordinary
problem of ``Lhat = D^-1/2 L D^-1/2`` and mapped back by ``w = D^-1/2 what``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import IsolatedNode, NoConvergence, NotSymmetric, ShapeError

IDENTITY_NORM = "identity_norm"
D_WEIGHTED_NORM = "d_weighted_norm"
HAT_NORM = "hat_norm"

MAX_SWEEPS = 64
OFF_DIAGONAL_RTOL = 1e-14
SYMMETRY_RTOL = 1e-10
SIGN_THRESHOLD = 1e-9


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenpairs in ascending order; column ``u`` of ``eigenvectors`` pairs with ``eigenvalues[u]``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    convention: str = IDENTITY_NORM

    def __len__(self):
        return self.eigenvalues.shape[0]


def apply_sign_convention(V: np.ndarray, threshold: float = SIGN_THRESHOLD) -> np.ndarray:
    """Flip columns so their first entry with ``|v| > threshold`` is positive."""
    V = np.array(V, dtype=float)
    big = np.abs(V) > threshold
    for u in range(V.shape[1]):
        idx = np.flatnonzero(big[:, u])
        if idx.size and V[idx[0], u] < 0:
            V[:, u] = -V[:, u]
    return V


@njit(cache=True)
def _off_norm(A):
    n = A.shape[0]
    acc = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                acc += A[i, j] * A[i, j]
    return np.sqrt(acc)


@njit(cache=True)
def _sweep(A, V):
    """One cyclic sweep over all pairs ``p < q`` in row order, in place."""
    n = A.shape[0]
    for p in range(n - 1):
        for q in range(p + 1, n):
            apq = A[p, q]
            if apq == 0.0:
                continue
            app = A[p, p]
            aqq = A[q, q]
            theta = (aqq - app) / (2.0 * apq)
            if theta == 0.0:
                t = 1.0
            elif abs(theta) > 1e150:
                # theta**2 would overflow; asymptote of the formula below
                t = 0.5 / theta
            else:
                t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            for k in range(n):
                akp = A[k, p]
                akq = A[k, q]
                A[k, p] = c * akp - s * akq
                A[k, q] = s * akp + c * akq
            for k in range(n):
                apk = A[p, k]
                aqk = A[q, k]
                A[p, k] = c * apk - s * aqk
                A[q, k] = s * apk + c * aqk
            A[p, q] = 0.0
            A[q, p] = 0.0
            A[p, p] = app - t * apq
            A[q, q] = aqq + t * apq
            for k in range(n):
                vkp = V[k, p]
                vkq = V[k, q]
                V[k, p] = c * vkp - s * vkq
                V[k, q] = s * vkp + c * vkq


def jacobi_eigh(S, max_sweeps: int = MAX_SWEEPS, rtol: float = OFF_DIAGONAL_RTOL):
    """Unsorted cyclic Jacobi eigendecomposition of a symmetric matrix.

    Returns ``(eigenvalues, eigenvectors, sweeps)``. Sweeps run until the
    off-diagonal Frobenius norm is at most ``rtol * ||S||_F``.
    """
    A = np.array(S, dtype=float, order="C")
    n = A.shape[0]
    V = np.eye(n)
    target = rtol * np.linalg.norm(A)
    sweeps = 0
    while _off_norm(A) > target:
        if sweeps >= max_sweeps:
            raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps")
        _sweep(A, V)
        sweeps += 1
    return np.diag(A).copy(), V, sweeps


def _check_symmetric(S: np.ndarray):
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {S.shape}")
    scale = np.max(np.abs(S)) if S.size else 0.0
    if np.max(np.abs(S - S.T), initial=0.0) > SYMMETRY_RTOL * scale:
        raise NotSymmetric("matrix is not symmetric")


def sym_eig(S, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Full eigendecomposition of a real symmetric matrix, eigenvalues ascending.

    Eigenvectors have unit norm and follow the sign convention of
    :func:`apply_sign_convention`. Within a degenerate eigenspace any
    orthonormal basis may be returned.
    """
    S = np.asarray(S, dtype=float)
    _check_symmetric(S)
    vals, vecs, _ = jacobi_eigh(0.5 * (S + S.T), max_sweeps=max_sweeps)
    order = np.argsort(vals, kind="stable")
    return Spectrum(vals[order], apply_sign_convention(vecs[:, order]), IDENTITY_NORM)


def generalized_eig(L, d, max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Solve ``L w = lambda D w`` with ``D = diag(d)``.

    Eigenvectors are D-orthonormal: ``w_u^T D w_v = delta_uv``.
    """
    L = np.asarray(L, dtype=float)
    d = np.asarray(d, dtype=float)
    if d.ndim != 1 or L.shape != (d.size, d.size):
        raise ShapeError(f"L {L.shape} and degrees {d.shape} do not match")
    _check_symmetric(L)
    zero = np.flatnonzero(d <= 0)
    if zero.size:
        raise IsolatedNode(zero[0])
    inv_sqrt = 1.0 / np.sqrt(d)
    Lhat = inv_sqrt[:, None] * L * inv_sqrt[None, :]
    hat = sym_eig(Lhat, max_sweeps=max_sweeps)
    W = apply_sign_convention(inv_sqrt[:, None] * hat.eigenvectors)
    # D-norm is already one up to rounding; renormalize to make it exact
    W = W / np.sqrt(np.einsum("iu,i,iu->u", W, d, W))
    return Spectrum(hat.eigenvalues, W, D_WEIGHTED_NORM)


def to_hat(w, d) -> np.ndarray:
    """Map generalized eigenvectors to eigenvectors of ``Lhat``: ``what = D^1/2 w``."""
    w = np.asarray(w, dtype=float)
    s = np.sqrt(np.asarray(d, dtype=float))
    return s[:, None] * w if w.ndim == 2 else s * w


def from_hat(what, d) -> np.ndarray:
    """Inverse of :func:`to_hat`: ``w = D^-1/2 what``."""
    what = np.asarray(what, dtype=float)
    s = 1.0 / np.sqrt(np.asarray(d, dtype=float))
    return s[:, None] * what if what.ndim == 2 else s * what


def hat_spectrum(spec: Spectrum, d) -> Spectrum:
    """Re-express a generalized spectrum as the unit-norm spectrum of ``Lhat``."""
    return Spectrum(spec.eigenvalues, to_hat(spec.eigenvectors, d), HAT_NORM)


def rayleigh_objective(L, W, x) -> float:
    """Return ``x^T L x``.

    For a graph Laplacian this equals ``1/2 sum_ij (x_i - x_j)^2 W_ij``; see
    :func:`pairwise_objective` for that form.
    """
    L = np.asarray(L, dtype=float)
    W = np.asarray(W, dtype=float)
    x = np.asarray(x, dtype=float)
    n = x.shape[0]
    if x.ndim != 1 or L.shape != (n, n) or W.shape != (n, n):
        raise ShapeError(f"shapes L {L.shape}, W {W.shape}, x {x.shape} do not agree")
    return float(x @ L @ x)


def pairwise_objective(W, x) -> float:
    """``1/2 sum_ij (x_i - x_j)^2 W_ij`` evaluated directly from the weights."""
    W = np.asarray(W, dtype=float)
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or W.shape != (x.size, x.size):
        raise ShapeError(f"shapes W {W.shape}, x {x.shape} do not agree")
    diff = x[:, None] - x[None, :]
    return float(0.5 * np.sum(diff * diff * W))


def default_kernel_tol(eigenvalues) -> float:
    lam = np.asarray(eigenvalues, dtype=float)
    top = float(lam[-1]) if lam.size else 0.0
    return max(1e-9 * top, 1e-12)


def kernel_multiplicity(spec: Spectrum, tol=None) -> int:
    """Number of eigenvalues at most ``tol`` (default ``max(1e-9 * lambda_max, 1e-12)``)."""
    if tol is None:
        tol = default_kernel_tol(spec.eigenvalues)
    return int(np.sum(spec.eigenvalues <= tol))
