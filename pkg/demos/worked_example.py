"""Three-node path with edge weights 0.2 and 0.8: Laplacians and the generalized spectrum."""

import numpy as np

from graphlap import degree_vector, from_edge_list, generalized_eig, laplacian, random_walk_normalized, sym_normalized

np.set_printoptions(precision=4, suppress=True)

g = from_edge_list(3, [(0, 1, 0.2), (1, 2, 0.8)])
d = degree_vector(g)
print("degrees", d)
print("L =\n", laplacian(g))
print("sym-normalized =\n", sym_normalized(g))
print("random-walk =\n", random_walk_normalized(g))

spec = generalized_eig(laplacian(g), d)
print("eigenvalues", spec.eigenvalues)
for u in range(3):
    w = spec.eigenvectors[:, u]
    print(f"w{u} = {w}  (w' D w = {w @ (d * w):.3f})")

# the middle vector is proportional to (-0.8, 0, 0.2): the light edge is the cheap place to cut
w1 = spec.eigenvectors[:, 1]
print("w1 / w1[2] * 0.2 =", w1 / w1[2] * 0.2)
