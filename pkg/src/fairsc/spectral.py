"""Standard and fairness-constrained spectral clustering.

Four variants share one shape: build a spectral embedding ``H`` (n x k) and
run k-means on its rows.

========================  ==========================================
``sc_unnormalized``       k smallest eigenvectors of ``L``
``sc_normalized``         ``D^{-1/2} T``, T from ``D^{-1/2} L D^{-1/2}``
``fair_sc_unnormalized``  ``Z Y``, Y from ``Z^T L Z``
``fair_sc_normalized``    ``Z Q^{-1} X``, X from ``Q^{-1} Z^T L Z Q^{-1}``
========================  ==========================================

Here ``Z`` is an orthonormal basis of the nullspace of ``F^T`` (``F`` from
:func:`fairsc.fairness.fairness_matrix`) and ``Q`` is the SPD square root of
``Z^T D Z``. Rows of ``H`` are clustered as they are, without normalization.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import InvalidK, IsolatedVertex, LengthMismatch, NotPositiveDefinite
from .fairness import GroupAssignment, fairness_matrix
from .graph import Clustering, Graph, laplacian
from .kmeans import kmeans
from .linalg import nullspace_basis, smallest_eigenpairs, spd_sqrt_inv

logger = logging.getLogger(__name__)

REPLICATES = 10
EIGENGAP_TOL = 1e-9
ISOLATED_TOL = 1e-12

ALGORITHMS = ("sc-u", "sc-n", "fair-u", "fair-n")


@dataclass(frozen=True, eq=False)
class Embedding:
    """Spectral embedding whose rows were handed to k-means.

    ``eigenvalues`` are the k smallest eigenvalues of the matrix the
    embedding was read from; ``eigengap`` is the distance to the (k+1)-th
    (None when k equals the problem size).
    """

    matrix: np.ndarray
    algorithm: str
    eigenvalues: np.ndarray
    eigengap: float | None = None


def _check_k(k, upper):
    if not 1 <= k <= upper:
        raise InvalidK(f"k must be in [1, {upper}], got {k}")


def _check_no_isolated(g: Graph):
    d = g.degrees
    isolated = np.flatnonzero(d < ISOLATED_TOL)
    if isolated.size:
        shown = isolated[:10].tolist()
        raise IsolatedVertex(f"{isolated.size} isolated vertices, e.g. {shown}")
    return d


def _bottom(S, k, algorithm):
    """k smallest eigenpairs plus the gap to the next eigenvalue."""
    m = S.shape[0]
    pairs = smallest_eigenpairs(S, min(k + 1, m))
    gap = None
    if k < m:
        gap = float(pairs.values[k] - pairs.values[k - 1])
        if gap < EIGENGAP_TOL:
            logger.warning(
                "%s: eigengap at position %d is %.3g; the embedding is not unique",
                algorithm, k, gap,
            )
    return pairs.values[:k], pairs.vectors[:, :k], gap


def _finish(H, k, algorithm, values, gap, rng, replicates):
    clustering, _ = kmeans(H, k, replicates=replicates, rng=rng)
    return clustering, Embedding(H, algorithm, values, gap)


def _check_groups(g, groups):
    if groups.n != g.n:
        raise LengthMismatch(f"{groups.n} group labels for a graph on {g.n} vertices")


def sc_unnormalized(g: Graph, k: int, rng=None, replicates: int = REPLICATES):
    """Unnormalized spectral clustering (RatioCut relaxation)."""
    _check_k(k, g.n)
    rng = np.random.default_rng(rng)
    values, H, gap = _bottom(laplacian(g), k, "sc-u")
    return _finish(H, k, "sc-u", values, gap, rng, replicates)


def sc_normalized(g: Graph, k: int, rng=None, replicates: int = REPLICATES):
    """Normalized spectral clustering (NCut relaxation).

    Raises
    ------
    IsolatedVertex
        If some vertex has zero degree.
    """
    _check_k(k, g.n)
    d = _check_no_isolated(g)
    rng = np.random.default_rng(rng)
    s = 1.0 / np.sqrt(d)
    L_sym = s[:, None] * laplacian(g) * s[None, :]
    values, T, gap = _bottom(L_sym, k, "sc-n")
    return _finish(s[:, None] * T, k, "sc-n", values, gap, rng, replicates)


def _fair_basis(g, k, groups):
    _check_groups(g, groups)
    _check_k(k, g.n - groups.h + 1)
    return nullspace_basis(fairness_matrix(groups).T)


def fair_sc_unnormalized(g: Graph, k: int, groups: GroupAssignment, rng=None,
                         replicates: int = REPLICATES):
    """Unnormalized spectral clustering under the proportionality constraint ``F^T H = 0``.

    With a single group there is no constraint and this is exactly
    :func:`sc_unnormalized` (same rng consumption, same labels).
    """
    if groups.h == 1:
        _check_groups(g, groups)
        return sc_unnormalized(g, k, rng, replicates)
    Z = _fair_basis(g, k, groups)
    rng = np.random.default_rng(rng)
    values, Y, gap = _bottom(Z.T @ (laplacian(g) @ Z), k, "fair-u")
    return _finish(Z @ Y, k, "fair-u", values, gap, rng, replicates)


def fair_sc_normalized(g: Graph, k: int, groups: GroupAssignment, rng=None,
                       replicates: int = REPLICATES):
    """Normalized spectral clustering under the proportionality constraint.

    The embedding satisfies ``H^T D H = I`` and ``F^T H = 0``. With a single
    group this is exactly :func:`sc_normalized`.
    """
    if groups.h == 1:
        _check_groups(g, groups)
        return sc_normalized(g, k, rng, replicates)
    d = _check_no_isolated(g)
    Z = _fair_basis(g, k, groups)
    rng = np.random.default_rng(rng)
    try:
        _, Q_inv = spd_sqrt_inv(Z.T @ (d[:, None] * Z))
    except NotPositiveDefinite as exc:
        raise IsolatedVertex(f"Z^T D Z is not positive definite: {exc}") from exc
    ZQ = Z @ Q_inv
    values, X, gap = _bottom(ZQ.T @ (laplacian(g) @ ZQ), k, "fair-n")
    return _finish(ZQ @ X, k, "fair-n", values, gap, rng, replicates)


def cluster(g: Graph, k: int, algorithm: str, groups: GroupAssignment | None = None,
            rng=None, replicates: int = REPLICATES):
    """Dispatch on an algorithm name from :data:`ALGORITHMS`."""
    if algorithm == "sc-u":
        return sc_unnormalized(g, k, rng, replicates)
    if algorithm == "sc-n":
        return sc_normalized(g, k, rng, replicates)
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    if groups is None:
        raise ValueError(f"{algorithm} needs a group assignment")
    if algorithm == "fair-u":
        return fair_sc_unnormalized(g, k, groups, rng, replicates)
    return fair_sc_normalized(g, k, groups, rng, replicates)
