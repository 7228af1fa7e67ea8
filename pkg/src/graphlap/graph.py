"""Similarity graph construction from vectorial data or explicit edge lists.

All graphs are stored as dense symmetric weight matrices with a zero diagonal.
Data sets are plain ``(N, d)`` float arrays with samples in rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from .errors import InvalidData, InvalidEdgeList, InvalidRecipe

DistanceHook = Callable[[np.ndarray], np.ndarray]

_ROW_BLOCK = 256


def as_dataset(points) -> np.ndarray:
    """Validate and return data as a C-contiguous ``(N, d)`` float64 array.

    One-dimensional input is read as ``N`` scalar samples.
    """
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2 or X.shape[0] < 1 or X.shape[1] < 1:
        raise InvalidData(f"expected an (N, d) array with N, d >= 1, got shape {X.shape}")
    if not np.all(np.isfinite(X)):
        raise InvalidData("data contains non-finite entries")
    return np.ascontiguousarray(X)


@dataclass(frozen=True, eq=False)
class SimilarityGraph:
    """Undirected simple graph given by its weight matrix ``W``."""

    weights: np.ndarray

    def __post_init__(self):
        W = np.array(self.weights, dtype=float)
        if W.ndim != 2 or W.shape[0] != W.shape[1]:
            raise InvalidData(f"weight matrix must be square, got shape {W.shape}")
        if not np.all(np.isfinite(W)):
            raise InvalidData("weight matrix contains non-finite entries")
        if not np.array_equal(W, W.T):
            raise InvalidData("weight matrix is not symmetric")
        if np.any(W < 0):
            raise InvalidData("weight matrix has negative entries")
        if np.any(np.diag(W) != 0):
            raise InvalidData("weight matrix has self-loops")
        W.setflags(write=False)
        object.__setattr__(self, "weights", W)

    @property
    def n_nodes(self) -> int:
        return self.weights.shape[0]

    def edges(self):
        """Return ``(i, j, w)`` for every edge with ``i < j``."""
        i, j = np.nonzero(np.triu(self.weights, 1))
        return [(int(a), int(b), float(self.weights[a, b])) for a, b in zip(i, j)]

    def edge_set(self) -> set:
        i, j = np.nonzero(np.triu(self.weights, 1))
        return set(zip(i.tolist(), j.tolist()))


@dataclass(frozen=True)
class GraphRecipe:
    """How to turn a data set into a similarity graph.

    ``method`` is one of ``"epsilon"``, ``"knn"`` or ``"full"``. For k-NN
    graphs ``knn_mode`` selects ``"mutual"`` (keep an edge only if both
    endpoints list each other) or ``"symmetric"`` (keep it if either does).
    """

    method: str = "full"
    epsilon: Optional[float] = None
    k: Optional[int] = None
    knn_mode: str = "symmetric"
    weighting: str = "gaussian"
    sigma: Optional[float] = None

    def validate(self, n_samples: Optional[int] = None):
        if self.method not in ("epsilon", "knn", "full"):
            raise InvalidRecipe(f"unknown graph method {self.method!r}")
        if self.weighting not in ("binary", "gaussian"):
            raise InvalidRecipe(f"unknown weighting {self.weighting!r}")
        if self.method == "epsilon" and not (self.epsilon is not None and self.epsilon > 0):
            raise InvalidRecipe("epsilon graph needs epsilon > 0")
        if self.method == "knn":
            if self.k is None or self.k < 1:
                raise InvalidRecipe("k-NN graph needs k >= 1")
            if n_samples is not None and self.k > n_samples - 1:
                raise InvalidRecipe(f"k={self.k} exceeds N-1={n_samples - 1}")
            if self.knn_mode not in ("mutual", "symmetric"):
                raise InvalidRecipe(f"unknown k-NN mode {self.knn_mode!r}")
        needs_sigma = self.method == "full" or self.weighting == "gaussian"
        if needs_sigma and not (self.sigma is not None and self.sigma > 0):
            raise InvalidRecipe("Gaussian weighting needs sigma > 0")

    def build(self, data, metric: Optional[DistanceHook] = None) -> SimilarityGraph:
        X = as_dataset(data)
        self.validate(X.shape[0])
        if self.method == "epsilon":
            return build_epsilon_graph(X, self.epsilon, self.weighting, self.sigma, metric=metric)
        if self.method == "knn":
            return build_knn_graph(X, self.k, self.knn_mode, self.weighting, self.sigma, metric=metric)
        return build_full_graph(X, self.sigma, metric=metric)


def pairwise_distances(data, metric: Optional[DistanceHook] = None) -> np.ndarray:
    """Euclidean distance matrix, exactly symmetric with a zero diagonal.

    ``metric`` may replace the Euclidean distance; it receives the validated
    ``(N, d)`` array and must return an ``(N, N)`` nonnegative matrix.
    """
    X = as_dataset(data)
    n = X.shape[0]
    if metric is not None:
        M = np.array(metric(X), dtype=float)
        if M.shape != (n, n) or not np.all(np.isfinite(M)) or np.any(M < 0):
            raise InvalidData("distance hook must return a finite nonnegative (N, N) matrix")
    else:
        M = np.empty((n, n))
        for start in range(0, n, _ROW_BLOCK):
            stop = min(start + _ROW_BLOCK, n)
            diff = X[start:stop, None, :] - X[None, :, :]
            M[start:stop] = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    # mirror the upper triangle so symmetry is bit-exact for any hook
    upper = np.triu(M, 1)
    M = upper + upper.T
    return M


def gaussian_similarity(dist: np.ndarray, sigma: float) -> np.ndarray:
    return np.exp(-(dist**2) / (2.0 * sigma**2))


def _weigh(mask: np.ndarray, dist: np.ndarray, weighting: str, sigma) -> np.ndarray:
    if weighting == "binary":
        W = mask.astype(float)
    elif weighting == "gaussian":
        if sigma is None or not sigma > 0:
            raise InvalidRecipe("Gaussian weighting needs sigma > 0")
        W = np.where(mask, gaussian_similarity(dist, sigma), 0.0)
    else:
        raise InvalidRecipe(f"unknown weighting {weighting!r}")
    np.fill_diagonal(W, 0.0)
    return W


def build_epsilon_graph(data, epsilon: float, weighting: str = "binary", sigma=None, *, metric=None) -> SimilarityGraph:
    """Connect ``i != j`` whenever their distance is strictly below ``epsilon``."""
    if epsilon is None or not epsilon > 0:
        raise InvalidRecipe("epsilon must be > 0")
    dist = pairwise_distances(data, metric)
    mask = dist < epsilon
    np.fill_diagonal(mask, False)
    return SimilarityGraph(_weigh(mask, dist, weighting, sigma))


def knn_relation(dist: np.ndarray, k: int) -> np.ndarray:
    """Boolean matrix ``R`` with ``R[i, j]`` true iff ``j`` is among the k nearest of ``i``.

    Ties are broken towards the lower node index.
    """
    n = dist.shape[0]
    d = dist.copy()
    np.fill_diagonal(d, np.inf)
    order = np.argsort(d, axis=1, kind="stable")[:, :k]
    R = np.zeros((n, n), dtype=bool)
    R[np.repeat(np.arange(n), k), order.ravel()] = True
    return R


def build_knn_graph(data, k: int, knn_mode: str = "symmetric", weighting: str = "gaussian", sigma=None, *, metric=None) -> SimilarityGraph:
    """k-nearest-neighbour graph, cleaned up into a simple graph.

    Binary weighting is accepted but rarely a good idea here: nothing
    guarantees that neighbours are actually close.
    """
    X = as_dataset(data)
    n = X.shape[0]
    if k is None or not 1 <= k <= n - 1:
        raise InvalidRecipe(f"k must lie in [1, {n - 1}], got {k}")
    if knn_mode not in ("mutual", "symmetric"):
        raise InvalidRecipe(f"unknown k-NN mode {knn_mode!r}")
    dist = pairwise_distances(X, metric)
    R = knn_relation(dist, k)
    mask = (R & R.T) if knn_mode == "mutual" else (R | R.T)
    return SimilarityGraph(_weigh(mask, dist, weighting, sigma))


def build_full_graph(data, sigma: float, *, metric=None) -> SimilarityGraph:
    """Fully connected graph with Gaussian weights ``exp(-|x_i - x_j|^2 / (2 sigma^2))``."""
    if sigma is None or not sigma > 0:
        raise InvalidRecipe("sigma must be > 0")
    dist = pairwise_distances(data, metric)
    mask = np.ones(dist.shape, dtype=bool)
    return SimilarityGraph(_weigh(mask, dist, "gaussian", sigma))


def from_edge_list(n: int, edges: Iterable) -> SimilarityGraph:
    """Build a graph from ``(i, j, weight)`` triples with 0-based node indices."""
    if n < 1:
        raise InvalidEdgeList(f"graph needs at least one node, got n={n}")
    W = np.zeros((n, n))
    seen = set()
    for item in edges:
        try:
            i, j, w = item
            i, j, w = int(i), int(j), float(w)
        except (TypeError, ValueError) as exc:
            raise InvalidEdgeList(f"malformed edge {item!r}") from exc
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidEdgeList(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise InvalidEdgeList(f"self-loop at node {i}")
        if not (np.isfinite(w) and w > 0):
            raise InvalidEdgeList(f"edge ({i}, {j}) has nonpositive weight {w}")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise InvalidEdgeList(f"duplicate edge {key}")
        seen.add(key)
        W[i, j] = W[j, i] = w
    return SimilarityGraph(W)
