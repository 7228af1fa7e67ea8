"""Normalized spectral clustering.

The first K generalized eigenvectors, this time including the constant one,
are stacked as rows of a ``(K, N)`` matrix, each column is scaled to unit
length, and k-means partitions the resulting points.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import generalized_eig
from .errors import ShapeError
from .graph import SimilarityGraph
from .laplacian import degree_vector, laplacian

MAX_ITER = 300
ZERO_COLUMN_NORM = 1e-12


@dataclass(frozen=True, eq=False)
class SpectralCoordinates:
    T: np.ndarray  # (K, N)
    zero_columns: np.ndarray  # bool (N,), columns left unnormalized
    eigenvalues: np.ndarray


@dataclass(frozen=True, eq=False)
class ClusterAssignment:
    labels: np.ndarray  # 0-based cluster ids
    centroids: np.ndarray  # (K, dim)
    inertia: float
    iterations: int = 0
    inertia_history: tuple = ()
    reseeded: int = 0


def spectral_coordinates(g: SimilarityGraph, K: int) -> SpectralCoordinates:
    n = g.n_nodes
    if not 1 <= K <= n:
        raise ShapeError(f"cluster count K={K} must lie in [1, {n}]")
    spec = generalized_eig(laplacian(g), degree_vector(g))
    U = spec.eigenvectors[:, :K].T
    norms = np.sqrt(np.sum(U * U, axis=0))
    zero = norms <= ZERO_COLUMN_NORM
    T = U / np.where(zero, 1.0, norms)
    return SpectralCoordinates(T, zero, spec.eigenvalues[:K].copy())


def _sq_dists(X: np.ndarray, C: np.ndarray) -> np.ndarray:
    diff = X[:, None, :] - C[None, :, :]
    return np.einsum("ikd,ikd->ik", diff, diff)


def kmeans_plusplus(X: np.ndarray, K: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: each new centre drawn with probability proportional to D^2."""
    n = X.shape[0]
    centers = np.empty((K, X.shape[1]))
    centers[0] = X[rng.integers(n)]
    closest = _sq_dists(X, centers[:1])[:, 0]
    for j in range(1, K):
        total = closest.sum()
        if total > 0:
            idx = int(np.searchsorted(np.cumsum(closest), rng.random() * total, side="right"))
            idx = min(idx, n - 1)
        else:
            idx = int(rng.integers(n))
        centers[j] = X[idx]
        closest = np.minimum(closest, _sq_dists(X, centers[j : j + 1])[:, 0])
    return centers


def kmeans(points, K: int, seed=None, max_iter: int = MAX_ITER) -> ClusterAssignment:
    """Lloyd's algorithm from a k-means++ start.

    ``points`` is ``(dim, N)`` with samples in columns, matching the layout of
    spectral coordinates. Stops once assignments no longer change or after
    ``max_iter`` iterations. A cluster that empties is re-seeded at the point
    farthest from its assigned centre.
    """
    P = np.asarray(points, dtype=float)
    if P.ndim == 1:
        P = P[None, :]
    X = np.ascontiguousarray(P.T)
    n = X.shape[0]
    if not 1 <= K <= n:
        raise ShapeError(f"cluster count K={K} must lie in [1, {n}]")
    rng = np.random.default_rng(seed)
    centers = kmeans_plusplus(X, K, rng)

    labels = np.argmin(_sq_dists(X, centers), axis=1)
    history = []
    reseeded = 0
    iterations = 0
    for iterations in range(1, max_iter + 1):
        for j in range(K):
            members = labels == j
            if np.any(members):
                centers[j] = X[members].mean(axis=0)
        d2 = _sq_dists(X, centers)
        history.append(float(np.sum(d2[np.arange(n), labels])))
        new_labels = np.argmin(d2, axis=1)
        empty = np.setdiff1d(np.arange(K), new_labels)
        for j in empty:
            own = d2[np.arange(n), new_labels]
            far = int(np.argmax(own))
            centers[j] = X[far]
            new_labels[far] = j
            d2[:, j] = _sq_dists(X, centers[j : j + 1])[:, 0]
            reseeded += 1
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    d2 = _sq_dists(X, centers)
    inertia = float(np.sum(d2[np.arange(n), labels]))
    return ClusterAssignment(labels, centers, inertia, iterations, tuple(history), reseeded)


def spectral_cluster(g: SimilarityGraph, K: int, seed=None) -> ClusterAssignment:
    coords = spectral_coordinates(g, K)
    return kmeans(coords.T, K, seed)


def adjusted_rand_index(a, b) -> float:
    """Adjusted Rand index between two labelings of the same samples."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 1:
        raise ShapeError(f"label vectors differ in shape: {a.shape} vs {b.shape}")
    n = a.size
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max(initial=-1) + 1, bi.max(initial=-1) + 1))
    np.add.at(table, (ai, bi), 1)

    def pairs(x):
        return float(np.sum(x * (x - 1)) / 2.0)

    index = pairs(table)
    rows = pairs(table.sum(axis=1))
    cols = pairs(table.sum(axis=0))
    total = n * (n - 1) / 2.0
    expected = rows * cols / total if total > 0 else 0.0
    max_index = 0.5 * (rows + cols)
    if max_index == expected:
        # only reachable when both labelings are all-in-one or both all-singletons
        return 1.0
    return (index - expected) / (max_index - expected)
