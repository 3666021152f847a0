"""Spectral clustering with proportionality constraints.

Standard (unnormalized and normalized) spectral clustering, their
fairness-constrained counterparts, and a stochastic block model with planted
fair clusters whose expected spectrum is known in closed form.
"""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .fairness import (
    BalanceProfile,
    GroupAssignment,
    balance_profile,
    fairness_matrix,
    is_proportional,
)
from .graph import Clustering, Graph, laplacian, ncut, parse_graph, ratio_cut
from .kmeans import kmeans, kmeans_cost
from .linalg import EigenPairs, nullspace_basis, smallest_eigenpairs, spd_sqrt_inv
from .metrics import ClusteringReport, misclassification_error, report
from .sbm import (
    FairSbmConfig,
    SpectrumOracle,
    canonical_embedding,
    counterexample_graph,
    expected_adjacency,
    expected_laplacian,
    perturb_groups,
    sample_fair_sbm,
    theoretical_spectrum,
)
from .spectral import (
    Embedding,
    cluster,
    fair_sc_normalized,
    fair_sc_unnormalized,
    sc_normalized,
    sc_unnormalized,
)
