"""Degree, Laplacian and normalized Laplacian matrices of a similarity graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import IsolatedNode
from .graph import SimilarityGraph

#: relative tolerance for zero row/column sums, scaled by the largest |L_ij|
ROW_SUM_RTOL = 1e-12


def _weights(g) -> np.ndarray:
    return g.weights if isinstance(g, SimilarityGraph) else np.asarray(g, dtype=float)


def degree_vector(g) -> np.ndarray:
    """Weighted degrees ``d_i = sum_j W_ij``."""
    return _weights(g).sum(axis=1)


def laplacian(g) -> np.ndarray:
    """``L = D - W``."""
    W = _weights(g)
    L = 0.0 - W  # 0 - x avoids negative zeros
    L[np.diag_indices_from(L)] = W.sum(axis=1)
    return L


def _inv_sqrt_degrees(d: np.ndarray) -> np.ndarray:
    zero = np.flatnonzero(d <= 0)
    if zero.size:
        raise IsolatedNode(zero[0])
    return 1.0 / np.sqrt(d)


def sym_normalized(g) -> np.ndarray:
    """Symmetric normalized Laplacian ``D^-1/2 L D^-1/2`` with unit diagonal."""
    W = _weights(g)
    s = _inv_sqrt_degrees(W.sum(axis=1))
    # form s_i * s_j first so the result is bit-exactly symmetric
    Lhat = 0.0 - np.outer(s, s) * W
    # D^-1/2 D D^-1/2 is the identity on every node with positive degree
    Lhat[np.diag_indices_from(Lhat)] = 1.0
    return Lhat


def random_walk_normalized(g) -> np.ndarray:
    """Random-walk normalized Laplacian ``D^-1 L``; rows sum to zero."""
    W = _weights(g)
    d = W.sum(axis=1)
    _inv_sqrt_degrees(d)
    Lrw = 0.0 - W / d[:, None]
    Lrw[np.diag_indices_from(Lrw)] = 1.0
    return Lrw


def check_laplacian(L: np.ndarray, rtol: float = ROW_SUM_RTOL) -> bool:
    """True if ``L`` is symmetric with zero row sums and the Laplacian sign pattern."""
    L = np.asarray(L, dtype=float)
    scale = np.max(np.abs(L)) if L.size else 0.0
    off = L - np.diag(np.diag(L))
    return bool(
        np.array_equal(L, L.T)
        and np.all(np.abs(L.sum(axis=1)) <= rtol * scale)
        and np.all(np.diag(L) >= 0)
        and np.all(off <= 0)
    )


@dataclass(frozen=True, eq=False)
class LaplacianBundle:
    degrees: np.ndarray
    laplacian: np.ndarray
    sym_normalized: Optional[np.ndarray] = None
    random_walk: Optional[np.ndarray] = None

    @property
    def sqrt_degrees(self) -> np.ndarray:
        return np.sqrt(self.degrees)


def laplacian_bundle(g) -> LaplacianBundle:
    """All matrices for one graph; the normalized ones are omitted if a node is isolated."""
    d = degree_vector(g)
    L = laplacian(g)
    if np.all(d > 0):
        return LaplacianBundle(d, L, sym_normalized(g), random_walk_normalized(g))
    return LaplacianBundle(d, L)


@dataclass(frozen=True, eq=False)
class ComponentLabels:
    labels: np.ndarray
    count: int


def connected_components(g) -> ComponentLabels:
    """Label connected components by breadth-first search.

    Labels are 0-based and numbered in order of each component's lowest node.
    """
    W = _weights(g)
    n = W.shape[0]
    adjacency = [np.flatnonzero(row > 0) for row in W]
    labels = np.full(n, -1, dtype=int)
    count = 0
    for start in range(n):
        if labels[start] >= 0:
            continue
        labels[start] = count
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nb in adjacency[node]:
                if labels[nb] < 0:
                    labels[nb] = count
                    queue.append(nb)
        count += 1
    return ComponentLabels(labels, count)
