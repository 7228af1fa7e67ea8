"""Spectral graph toolkit: similarity graphs, Laplacians, eigenmaps, LPP,
spectral clustering and heat diffusion."""

from .cluster import (
    ClusterAssignment,
    SpectralCoordinates,
    adjusted_rand_index,
    kmeans,
    spectral_cluster,
    spectral_coordinates,
)
from .diffusion import (
    HeatState,
    max_stable_dt,
    mode_decay_factors,
    solve_analytic,
    step_discrete,
    trajectory,
)
from .eigen import (
    Spectrum,
    generalized_eig,
    kernel_multiplicity,
    pairwise_objective,
    rayleigh_objective,
    sym_eig,
)
from .embed import Embedding, LppModel, expand_monomials, lem_embed, lpp_fit, lpp_transform
from .errors import *  # noqa: F401,F403
from .graph import (
    GraphRecipe,
    SimilarityGraph,
    as_dataset,
    build_epsilon_graph,
    build_full_graph,
    build_knn_graph,
    from_edge_list,
    pairwise_distances,
)
from .laplacian import (
    ComponentLabels,
    LaplacianBundle,
    connected_components,
    degree_vector,
    laplacian,
    laplacian_bundle,
    random_walk_normalized,
    sym_normalized,
)

__version__ = "0.1.0"
