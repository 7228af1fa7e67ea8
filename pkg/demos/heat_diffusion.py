"""Heat spreading on a 10-node chain: Euler stepping against the modal solution."""

import numpy as np

from graphlap import laplacian, max_stable_dt, solve_analytic, step_discrete, sym_eig

from _graphs import path_graph

L = laplacian(path_graph(10))
h0 = np.zeros(10)
h0[0] = 1.0
spec = sym_eig(L)
print(f"gamma_2 = {spec.eigenvalues[1]:.4f}, gamma_max = {spec.eigenvalues[-1]:.4f}, max stable dt = {max_stable_dt(L):.4f}")

for t in (0.5, 2.0, 10.0, 50.0):
    exact = solve_analytic(L, h0, t, spec)
    print(f"t={t:5.1f}  total heat {exact.total_heat:.12f}  h = {np.round(exact.temperatures, 3)}")

T = 5.0
for n in (100, 200, 400):
    err = np.linalg.norm(step_discrete(L, h0, T / n, n).temperatures - solve_analytic(L, h0, T, spec).temperatures)
    print(f"Euler with {n:4d} steps: error {err:.3e}")

# past twice the stable step the fastest mode grows instead of decaying
try:
    step_discrete(L, h0, 2.5 / spec.eigenvalues[-1], 10)
except Exception as exc:
    print(type(exc).__name__, exc)
