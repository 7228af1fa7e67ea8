import numpy as np
import pytest

from graphlap import build_epsilon_graph, build_full_graph, build_knn_graph, from_edge_list
from graphlap.graph import SimilarityGraph

# three-node worked example: edges 1-2 (0.2) and 2-3 (0.8)
PATH3_EDGES = [(0, 1, 0.2), (1, 2, 0.8)]

# two chains A-C-E-G and B-D-F, nodes A..G = 0..6
SEVEN_EDGES = [(0, 2, 1.0), (2, 4, 1.0), (4, 6, 1.0), (1, 3, 1.0), (3, 5, 1.0)]


def path3_graph():
    return from_edge_list(3, PATH3_EDGES)


def seven_node_graph():
    return from_edge_list(7, SEVEN_EDGES)


def path_graph(n, weight=1.0):
    return from_edge_list(n, [(i, i + 1, weight) for i in range(n - 1)])


def clique_blocks(sizes, rng=None, weight_range=(0.5, 1.5)):
    """Disjoint cliques with random positive weights; returns (graph, component labels)."""
    rng = np.random.default_rng(0) if rng is None else rng
    n = sum(sizes)
    W = np.zeros((n, n))
    labels = np.empty(n, dtype=int)
    start = 0
    for c, s in enumerate(sizes):
        B = rng.uniform(*weight_range, size=(s, s))
        B = np.triu(B, 1)
        B = B + B.T
        W[start : start + s, start : start + s] = B
        labels[start : start + s] = c
        start += s
    return SimilarityGraph(W), labels


def random_connected_graph(n, rng, density=0.3):
    """Random spanning tree plus random extra edges, weights in (0.1, 2)."""
    W = np.zeros((n, n))
    order = rng.permutation(n)
    for a in range(1, n):
        b = order[rng.integers(a)]
        i = order[a]
        W[i, b] = W[b, i] = rng.uniform(0.1, 2.0)
    extra = np.triu(rng.random((n, n)) < density, 1)
    vals = np.triu(rng.uniform(0.1, 2.0, (n, n)), 1)
    E = np.where(extra & (W == 0), vals, 0.0)
    W = W + E + E.T
    return SimilarityGraph(W)


def random_recipe_graph(rng, n_max=40):
    """A graph from random data through a randomly chosen construction."""
    n = int(rng.integers(2, n_max + 1))
    X = rng.normal(size=(n, int(rng.integers(1, 4))))
    kind = rng.integers(4)
    if kind == 0:
        return build_full_graph(X, float(rng.uniform(0.5, 2.0)))
    if kind == 1:
        k = int(rng.integers(1, n))
        mode = ["mutual", "symmetric"][int(rng.integers(2))]
        return build_knn_graph(X, k, mode, "gaussian", 1.0)
    if kind == 2:
        return build_epsilon_graph(X, float(rng.uniform(0.5, 2.5)), "binary")
    sizes = [int(s) for s in rng.integers(1, max(2, n // 3) + 1, size=int(rng.integers(1, 5)))]
    return clique_blocks(sizes, rng)[0]


@pytest.fixture
def path3():
    return path3_graph()


@pytest.fixture
def seven():
    return seven_node_graph()
