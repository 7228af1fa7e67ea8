"""Laplacian eigenmaps and locality preserving projections.

Laplacian eigenmaps (LEM) assign every node of a connected graph the values
of the generalized eigenvectors 2..m+1 of ``L w = lambda D w``. Locality
preserving projections (LPP) restrict those node values to linear functions
``w = F^T z`` of the (optionally expanded) data, which turns the problem into
``F L F^T z = lambda F D F^T z`` and gives a map for unseen points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Callable, Optional, Union

import numpy as np

from .eigen import generalized_eig, sym_eig
from .errors import DisconnectedGraph, InvalidExpansion, ShapeError, SingularConstraint
from .graph import SimilarityGraph, as_dataset
from .laplacian import connected_components, degree_vector, laplacian

WHITENING_RTOL = 1e-10
NEAR_CONSTANT_VAR = 1e-10

Expansion = Union[None, int, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True, eq=False)
class Embedding:
    """``coords`` is ``(m, N)``; column ``i`` is the embedded sample ``y_i``."""

    coords: np.ndarray
    source: str
    eigenvalues: Optional[np.ndarray] = None

    @property
    def m(self) -> int:
        return self.coords.shape[0]

    @property
    def points(self) -> np.ndarray:
        """Samples in rows, ``(N, m)``."""
        return self.coords.T


@dataclass(frozen=True, eq=False)
class LppModel:
    projections: np.ndarray  # (P, m), column u is z_u
    eigenvalues: np.ndarray
    n_features: int
    expansion: Expansion = None
    train_embedding: Optional[np.ndarray] = None
    near_constant: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=bool))
    rank: int = 0

    @property
    def m(self) -> int:
        return self.projections.shape[1]


def expand_monomials(data, degree: int = 2) -> np.ndarray:
    """All monomials of the coordinates up to ``degree`` (1 or 2).

    Degree 2 appends the products ``x_a * x_b`` for ``a <= b`` in
    lexicographic order after the original coordinates.
    """
    X = as_dataset(data)
    if degree == 1:
        return X
    if degree != 2:
        raise InvalidExpansion(f"monomial degree must be 1 or 2, got {degree!r}")
    pairs = list(combinations_with_replacement(range(X.shape[1]), 2))
    quad = np.column_stack([X[:, a] * X[:, b] for a, b in pairs])
    return np.hstack([X, quad])


def apply_expansion(data, expansion: Expansion) -> np.ndarray:
    X = as_dataset(data)
    if expansion is None:
        return X
    if isinstance(expansion, (int, np.integer)) and not isinstance(expansion, bool):
        return expand_monomials(X, int(expansion))
    if callable(expansion):
        F = np.asarray(expansion(X), dtype=float)
        if F.ndim != 2 or F.shape[0] != X.shape[0]:
            raise InvalidExpansion(f"expansion returned shape {F.shape} for {X.shape[0]} samples")
        return F
    raise InvalidExpansion(f"unsupported expansion {expansion!r}")


def lem_embed(g: SimilarityGraph, m: int, normalization: str = "degree") -> Embedding:
    """Embed the nodes of a connected graph into ``m`` dimensions.

    With ``normalization="degree"`` (the default) the rows are the
    generalized eigenvectors with ``w^T D w = 1``. ``"identity"`` uses the
    ordinary eigenvectors of ``L`` with unit norm instead.
    """
    n = g.n_nodes
    if not 1 <= m <= n - 1:
        raise ShapeError(f"target dimension m={m} must lie in [1, {n - 1}]")
    comps = connected_components(g)
    if comps.count > 1:
        raise DisconnectedGraph(comps.count)
    L = laplacian(g)
    if normalization == "degree":
        spec = generalized_eig(L, degree_vector(g))
    elif normalization == "identity":
        spec = sym_eig(L)
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    coords = spec.eigenvectors[:, 1 : m + 1].T.copy()
    return Embedding(coords, "lem", spec.eigenvalues[1 : m + 1].copy())


def solve_constrained(Lp: np.ndarray, Dp: np.ndarray, rtol: float = WHITENING_RTOL):
    """Solve ``Lp z = lambda Dp z`` for symmetric ``Lp`` and PSD ``Dp`` by whitening.

    Directions of ``Dp`` with eigenvalue below ``rtol * max`` are discarded.
    Returns ``(eigenvalues, Z, rank)`` with ``Z^T Dp Z = I``.
    """
    dspec = sym_eig(Dp)
    vals = dspec.eigenvalues
    top = vals[-1] if vals.size else 0.0
    keep = vals > rtol * top if top > 0 else np.zeros(vals.shape, dtype=bool)
    rank = int(np.sum(keep))
    if rank == 0:
        raise SingularConstraint(0)
    B = dspec.eigenvectors[:, keep] / np.sqrt(vals[keep])  # (P, r)
    M = B.T @ Lp @ B
    M = 0.5 * (M + M.T)
    spec = sym_eig(M)
    return spec.eigenvalues, B @ spec.eigenvectors, rank


def lpp_fit(data, g: SimilarityGraph, m: int, expansion: Expansion = None) -> LppModel:
    """Fit ``m`` projection vectors, smallest eigenvalues first.

    Nothing is skipped: a constant node assignment is only reachable when the
    constant lies in the span of the features. Projections whose training
    values have variance below 1e-10 are flagged in ``near_constant``.
    """
    X = as_dataset(data)
    n = X.shape[0]
    if g.n_nodes != n:
        raise ShapeError(f"graph has {g.n_nodes} nodes but data has {n} samples")
    F = apply_expansion(X, expansion).T  # (P, N)
    P = F.shape[0]
    if not 1 <= m <= P:
        raise ShapeError(f"target dimension m={m} must lie in [1, {P}]")
    d = degree_vector(g)
    L = laplacian(g)
    Lp = F @ L @ F.T
    Dp = (F * d) @ F.T
    lam, Z, rank = solve_constrained(0.5 * (Lp + Lp.T), 0.5 * (Dp + Dp.T))
    if rank < m:
        raise SingularConstraint(rank, f"constraint matrix has numerical rank {rank} < m={m}")
    Z = Z[:, :m]
    train = Z.T @ F
    near_constant = train.var(axis=1) < NEAR_CONSTANT_VAR
    return LppModel(Z, lam[:m].copy(), X.shape[1], expansion, train, near_constant, rank)


def lpp_transform(model: LppModel, new_data) -> Embedding:
    """Map samples with the fitted projections, ``y_i = Z^T f(x_i)``."""
    X = as_dataset(new_data)
    if X.shape[1] != model.n_features:
        raise ShapeError(f"model expects {model.n_features} features, got {X.shape[1]}")
    F = apply_expansion(X, model.expansion)
    return Embedding(model.projections.T @ F.T, "lpp", model.eigenvalues)
