"""Laplacian eigenmaps recover the ordering of a shuffled chain."""

import numpy as np

from graphlap import SimilarityGraph, lem_embed

from _graphs import path_graph

rng = np.random.default_rng(0)
n = 12
perm = rng.permutation(n)
W = path_graph(n).weights[np.ix_(perm, perm)]
emb = lem_embed(SimilarityGraph(W), 1)
y = emb.coords[0]
recovered = perm[np.argsort(y)]
print("shuffled node ids :", perm)
print("sorted by y       :", recovered)
print("eigenvalue        :", emb.eigenvalues)
