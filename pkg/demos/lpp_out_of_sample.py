"""Locality preserving projections: fit on a noisy spiral, project unseen points."""

import numpy as np

from graphlap import build_knn_graph, lpp_fit, lpp_transform

rng = np.random.default_rng(1)
t = np.sort(rng.uniform(0, 3 * np.pi, 150))
X = np.column_stack([t * np.cos(t), t * np.sin(t), rng.normal(0, 0.1, t.size)])

model = lpp_fit(X, build_knn_graph(X, 8, sigma=2.0), 1, expansion=2)
y = model.train_embedding[0]
print("correlation of 1-d projection with arc parameter:", np.corrcoef(y, t)[0, 1].round(3))

t_new = np.linspace(1, 8, 5)
X_new = np.column_stack([t_new * np.cos(t_new), t_new * np.sin(t_new), np.zeros(5)])
print("new points projected:", lpp_transform(model, X_new).coords[0].round(4))
