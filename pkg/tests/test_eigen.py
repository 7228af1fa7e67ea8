import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphlap import (
    connected_components,
    degree_vector,
    from_edge_list,
    generalized_eig,
    kernel_multiplicity,
    laplacian,
    rayleigh_objective,
    sym_eig,
    sym_normalized,
)
from graphlap.eigen import (
    D_WEIGHTED_NORM,
    HAT_NORM,
    IDENTITY_NORM,
    apply_sign_convention,
    from_hat,
    hat_spectrum,
    jacobi_eigh,
    pairwise_objective,
    to_hat,
)
from graphlap.errors import IsolatedNode, NoConvergence, NotSymmetric, ShapeError

from conftest import clique_blocks, path_graph, random_connected_graph, random_recipe_graph

seeds = st.integers(0, 2**32 - 1)


def _random_symmetric(n, rng):
    A = rng.normal(size=(n, n))
    return A + A.T


def _first_significant_positive(V):
    for col in V.T:
        idx = np.flatnonzero(np.abs(col) > 1e-9)
        if idx.size and col[idx[0]] <= 0:
            return False
    return True


# -- ordinary problem

def test_identity_matrix():
    spec = sym_eig(np.eye(5))
    np.testing.assert_allclose(spec.eigenvalues, 1.0, atol=1e-15)
    np.testing.assert_allclose(spec.eigenvectors.T @ spec.eigenvectors, np.eye(5), atol=1e-15)
    assert spec.convention == IDENTITY_NORM


def test_diagonal_matrix():
    spec = sym_eig(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_array_equal(spec.eigenvalues, [1, 2, 3])
    np.testing.assert_array_equal(spec.eigenvectors, [[0, 0, 1], [1, 0, 0], [0, 1, 0]])


def test_worked_laplacian_kernel(path3):
    spec = sym_eig(laplacian(path3))
    assert abs(spec.eigenvalues[0]) < 1e-15
    np.testing.assert_allclose(spec.eigenvectors[:, 0], np.ones(3) / np.sqrt(3), atol=1e-15)


def test_worked_laplacian_against_numpy(path3):
    L = laplacian(path3)
    np.testing.assert_allclose(sym_eig(L).eigenvalues, np.linalg.eigvalsh(L), atol=1e-14)


def test_matches_numpy_eigh():
    rng = np.random.default_rng(2)
    for n in (1, 2, 3, 10, 40):
        S = _random_symmetric(n, rng)
        spec = sym_eig(S)
        ref_vals, ref_vecs = np.linalg.eigh(S)
        np.testing.assert_allclose(spec.eigenvalues, ref_vals, atol=1e-12 * np.abs(ref_vals).max())
        ref_vecs = apply_sign_convention(ref_vecs)
        np.testing.assert_allclose(spec.eigenvectors, ref_vecs, atol=1e-9)


def test_two_by_two_closed_form():
    spec = sym_eig([[2.0, 1.0], [1.0, 2.0]])
    np.testing.assert_allclose(spec.eigenvalues, [1, 3], atol=1e-15)
    r = 1 / np.sqrt(2)
    np.testing.assert_allclose(spec.eigenvectors, [[r, r], [-r, r]], atol=1e-15)


def test_sign_convention():
    V = apply_sign_convention(np.array([[1e-12, 0.0], [-0.5, 0.0], [0.3, -1.0]]))
    np.testing.assert_array_equal(V, [[-1e-12, 0.0], [0.5, 0.0], [-0.3, 1.0]])
    assert _first_significant_positive(sym_eig(_random_symmetric(8, np.random.default_rng(0))).eigenvectors)


def test_not_symmetric():
    with pytest.raises(NotSymmetric):
        sym_eig([[1.0, 2.0], [0.0, 1.0]])


def test_tiny_asymmetry_accepted():
    S = np.array([[1.0, 2.0], [2.0 + 1e-13, 1.0]])
    np.testing.assert_allclose(sym_eig(S).eigenvalues, [-1, 3], atol=1e-12)


def test_not_square():
    with pytest.raises(ShapeError):
        sym_eig(np.zeros((2, 3)))


def test_sweep_cap():
    S = _random_symmetric(20, np.random.default_rng(0))
    with pytest.raises(NoConvergence):
        sym_eig(S, max_sweeps=1)


def test_jacobi_sweep_count_is_small():
    S = _random_symmetric(60, np.random.default_rng(4))
    _, _, sweeps = jacobi_eigh(S)
    assert 3 <= sweeps <= 15


def test_zero_and_empty_matrices():
    spec = sym_eig(np.zeros((3, 3)))
    np.testing.assert_array_equal(spec.eigenvalues, 0)
    np.testing.assert_array_equal(spec.eigenvectors, np.eye(3))
    assert sym_eig(np.zeros((0, 0))).eigenvalues.shape == (0,)


def test_widely_scaled_matrix():
    # the stopping rule is normwise, so accuracy is relative to ||S||, not to each eigenvalue
    S = np.diag([1e-8, 1.0, 1e8]) + 1e-9 * (np.ones((3, 3)) - np.eye(3))
    spec = sym_eig(S)
    np.testing.assert_allclose(spec.eigenvalues, np.linalg.eigvalsh(S), rtol=0, atol=1e-14 * np.linalg.norm(S))


# -- generalized problem

def test_generalized_worked_example(path3):
    L, d = laplacian(path3), degree_vector(path3)
    spec = generalized_eig(L, d)
    np.testing.assert_allclose(spec.eigenvalues, [0, 1, 2], atol=1e-9)
    assert spec.convention == D_WEIGHTED_NORM
    for u, ref in enumerate([(1, 1, 1), (-0.8, 0, 0.2), (1, -1, 1)]):
        ref = np.array(ref, dtype=float)
        ref = ref / np.sqrt(ref @ (d * ref))
        w = spec.eigenvectors[:, u]
        # equal up to sign
        assert min(np.abs(w - ref).max(), np.abs(w + ref).max()) < 1e-12


def test_worked_triples_by_substitution(path3):
    # the hand-derived eigenpairs satisfy L w = lambda D w exactly
    L, D = laplacian(path3), np.diag(degree_vector(path3))
    for lam, w in [(0, (1, 1, 1)), (1, (-0.8, 0, 0.2)), (2, (1, -1, 1))]:
        w = np.array(w, dtype=float)
        np.testing.assert_allclose(L @ w, lam * D @ w, atol=1e-15)


def test_generalized_kernel_vector_on_connected_graph():
    g = random_connected_graph(12, np.random.default_rng(8))
    d = degree_vector(g)
    spec = generalized_eig(laplacian(g), d)
    np.testing.assert_allclose(spec.eigenvectors[:, 0], np.ones(12) / np.sqrt(d.sum()), atol=1e-12)


def test_generalized_seven_node_kernel(seven):
    spec = generalized_eig(laplacian(seven), degree_vector(seven))
    np.testing.assert_allclose(spec.eigenvalues[:2], 0, atol=1e-12)
    assert spec.eigenvalues[2] > 1e-3
    pattern = np.array([1 / 4, -1 / 3, 1 / 4, -1 / 3, 1 / 4, -1 / 3, 1 / 4])
    B = spec.eigenvectors[:, :2]
    coef, *_ = np.linalg.lstsq(B, pattern, rcond=None)
    np.testing.assert_allclose(B @ coef, pattern, atol=1e-12)


def test_generalized_isolated_node():
    g = from_edge_list(3, [(0, 1, 1.0)])
    with pytest.raises(IsolatedNode):
        generalized_eig(laplacian(g), degree_vector(g))


def test_generalized_shape_mismatch(path3):
    with pytest.raises(ShapeError):
        generalized_eig(laplacian(path3), np.ones(4))


def test_generalized_matches_scipy():
    from scipy.linalg import eigh

    g = random_connected_graph(25, np.random.default_rng(9))
    L, d = laplacian(g), degree_vector(g)
    spec = generalized_eig(L, d)
    np.testing.assert_allclose(spec.eigenvalues, eigh(L, np.diag(d), eigvals_only=True), atol=1e-12)


def test_hat_round_trip(path3):
    d = degree_vector(path3)
    spec = generalized_eig(laplacian(path3), d)
    hat = hat_spectrum(spec, d)
    assert hat.convention == HAT_NORM
    np.testing.assert_allclose(hat.eigenvectors.T @ hat.eigenvectors, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(sym_normalized(path3) @ hat.eigenvectors, hat.eigenvectors * hat.eigenvalues, atol=1e-12)
    np.testing.assert_allclose(from_hat(to_hat(spec.eigenvectors, d), d), spec.eigenvectors, atol=1e-12)
    np.testing.assert_allclose(from_hat(hat.eigenvectors[:, 1], d), spec.eigenvectors[:, 1], atol=1e-12)


# -- objectives and kernel counting

def test_objective_of_constant_vector(path3):
    assert rayleigh_objective(laplacian(path3), path3.weights, np.ones(3)) == pytest.approx(0.0, abs=1e-15)


def test_objective_equals_eigenvalue_on_worked_example(path3):
    d = degree_vector(path3)
    w = np.array([-0.8, 0.0, 0.2])
    w = w / np.sqrt(w @ (d * w))
    assert rayleigh_objective(laplacian(path3), path3.weights, w) == pytest.approx(1.0, abs=1e-12)


def test_objective_two_nodes():
    w = 0.3
    g = from_edge_list(2, [(0, 1, w)])
    x = np.array([1.0, -1.0])
    assert rayleigh_objective(laplacian(g), g.weights, x) == pytest.approx(4 * w, rel=1e-15)
    assert pairwise_objective(g.weights, x) == pytest.approx(4 * w, rel=1e-15)


def test_objective_shape_mismatch(path3):
    with pytest.raises(ShapeError):
        rayleigh_objective(laplacian(path3), path3.weights, np.ones(4))


def test_kernel_multiplicity_examples(seven):
    g = path_graph(9)
    assert kernel_multiplicity(generalized_eig(laplacian(g), degree_vector(g))) == 1
    assert kernel_multiplicity(generalized_eig(laplacian(seven), degree_vector(seven))) == 2
    h, _ = clique_blocks([3, 4, 2, 5])
    assert kernel_multiplicity(generalized_eig(laplacian(h), degree_vector(h))) == 4


def test_kernel_multiplicity_explicit_tol(path3):
    spec = generalized_eig(laplacian(path3), degree_vector(path3))
    assert kernel_multiplicity(spec, tol=1.5) == 2


# -- properties

@settings(max_examples=40, deadline=None)
@given(seeds)
def test_sym_eig_residual_and_orthonormality(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 60))
    S = _random_symmetric(n, rng)
    spec = sym_eig(S)
    V, lam = spec.eigenvectors, spec.eigenvalues
    norm = np.linalg.norm(S)
    assert np.linalg.norm(S @ V - V * lam) <= 1e-9 * norm
    assert np.abs(V.T @ V - np.eye(n)).max() <= 1e-9
    assert np.all(np.diff(lam) >= 0)
    assert _first_significant_positive(V)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_generalized_spectrum_invariants(seed):
    rng = np.random.default_rng(seed)
    g = random_recipe_graph(rng)
    d = degree_vector(g)
    if np.any(d <= 0):
        return
    L = laplacian(g)
    spec = generalized_eig(L, d)
    Wv, lam = spec.eigenvectors, spec.eigenvalues
    lam_max = max(lam[-1], 1e-300)
    # nonnegative spectrum for L, Lhat and the generalized problem
    assert lam[0] >= -1e-10 * lam_max
    assert sym_eig(L).eigenvalues[0] >= -1e-10 * max(sym_eig(L).eigenvalues[-1], 1e-300)
    # D-orthonormality and residuals
    np.testing.assert_allclose(Wv.T @ (d[:, None] * Wv), np.eye(g.n_nodes), atol=1e-9)
    res = np.linalg.norm(L @ Wv - d[:, None] * Wv * lam, axis=0)
    assert np.all(res <= 1e-9 * np.linalg.norm(L))
    # kernel multiplicity counts components
    assert kernel_multiplicity(spec) == connected_components(g).count
    # objective equals eigenvalue for each D-normalized eigenvector
    for u in range(g.n_nodes):
        obj = rayleigh_objective(L, g.weights, Wv[:, u])
        assert obj == pytest.approx(lam[u], abs=1e-9 * max(1.0, lam_max))


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_zero_mean_of_higher_eigenvectors(seed):
    rng = np.random.default_rng(seed)
    g = random_connected_graph(int(rng.integers(2, 30)), rng)
    L, d = laplacian(g), degree_vector(g)
    gen = generalized_eig(L, d)
    assert np.all(np.abs(d @ gen.eigenvectors[:, 1:]) <= 1e-9)
    ordn = sym_eig(L)
    assert np.all(np.abs(ordn.eigenvectors[:, 1:].sum(axis=0)) <= 1e-9)
    for u in range(g.n_nodes):
        assert rayleigh_objective(L, g.weights, ordn.eigenvectors[:, u]) == pytest.approx(ordn.eigenvalues[u], abs=1e-9 * max(1.0, ordn.eigenvalues[-1]))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 8), min_size=1, max_size=5), seeds)
def test_kernel_multiplicity_of_blocks(sizes, seed):
    rng = np.random.default_rng(seed)
    blocks = [random_connected_graph(s, rng).weights for s in sizes]
    n = sum(sizes)
    W = np.zeros((n, n))
    start = 0
    for B in blocks:
        W[start : start + B.shape[0], start : start + B.shape[0]] = B
        start += B.shape[0]
    from graphlap.graph import SimilarityGraph

    g = SimilarityGraph(W)
    if np.any(degree_vector(g) == 0):
        # a one-node block is isolated; the ordinary spectrum still counts it
        assert kernel_multiplicity(sym_eig(laplacian(g))) == len(sizes)
        return
    spec = generalized_eig(laplacian(g), degree_vector(g))
    assert kernel_multiplicity(spec) == connected_components(g).count == len(sizes)
