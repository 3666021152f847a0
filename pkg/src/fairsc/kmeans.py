"""k-means++ seeding with Lloyd refinement and best-of-replicates selection."""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import EmptyCluster, FairSCError, InvalidK, LengthMismatch
from .graph import Clustering

MAX_ITER = 300


class LloydResult(NamedTuple):
    labels: np.ndarray
    centers: np.ndarray
    cost: float
    history: list
    n_iter: int


def _as_points(points):
    X = np.asarray(points, dtype=float)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise FairSCError(f"points must be a 2-d array, got {X.ndim} dimensions")
    if not np.all(np.isfinite(X)):
        raise FairSCError("points must be finite")
    return X


def _sq_dists(X, centers):
    diff = X[:, None, :] - centers[None, :, :]
    return np.einsum("ikm,ikm->ik", diff, diff)


def _means(X, labels, k):
    counts = np.bincount(labels, minlength=k)
    sums = np.zeros((k, X.shape[1]))
    np.add.at(sums, labels, X)
    return sums / counts[:, None]


def _cost(X, labels, centers):
    diff = X - centers[labels]
    return float(np.einsum("im,im->", diff, diff))


def kmeans_cost(points, c: Clustering) -> float:
    """Sum of squared distances from each point to its cluster's centroid."""
    X = _as_points(points)
    if c.n != X.shape[0]:
        raise LengthMismatch(f"{c.n} labels for {X.shape[0]} points")
    sizes = c.sizes
    if np.any(sizes == 0):
        raise EmptyCluster(f"clusters {np.flatnonzero(sizes == 0).tolist()} are empty")
    return _cost(X, c.labels, _means(X, c.labels, c.k))


def kmeans_plusplus(X, k, rng) -> np.ndarray:
    """Indices of ``k`` seed points chosen by D^2 sampling.

    The first seed is uniform over the points; every later seed is drawn with
    probability proportional to the squared distance to the nearest seed so
    far. If every point coincides with a seed, the next one is drawn
    uniformly from the points not yet chosen.
    """
    n = X.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = _sq_dists(X, X[chosen])[:, 0]
    for _ in range(1, k):
        total = d2.sum()
        if total > 0:
            idx = int(rng.choice(n, p=d2 / total))
        else:
            rest = np.setdiff1d(np.arange(n), chosen)
            idx = int(rng.choice(rest))
        chosen.append(idx)
        d2 = np.minimum(d2, _sq_dists(X, X[idx : idx + 1])[:, 0])
    return np.array(chosen)


def _repair_empty(X, labels, centers, k):
    # Hand each empty cluster the point farthest from its current center,
    # taken from a cluster with at least two members.
    counts = np.bincount(labels, minlength=k)
    for empty in np.flatnonzero(counts == 0):
        diff = X - centers[labels]
        d = np.einsum("im,im->i", diff, diff)
        d[counts[labels] < 2] = -1.0
        donor = int(np.argmax(d))
        counts[labels[donor]] -= 1
        labels[donor] = empty
        counts[empty] = 1
        centers[empty] = X[donor]
    return labels


def lloyd(points, initial_centers, max_iter: int = MAX_ITER) -> LloydResult:
    """Alternate nearest-centroid assignment and centroid update until stable.

    Ties in the assignment go to the lowest cluster index. ``history`` holds
    the cost after each assign/update round.
    """
    X = _as_points(points)
    centers = np.array(initial_centers, dtype=float)
    k = centers.shape[0]
    labels = None
    history = []
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        new = np.argmin(_sq_dists(X, centers), axis=1)
        new = _repair_empty(X, new, centers, k)
        if labels is not None and np.array_equal(new, labels):
            break
        labels = new
        centers = _means(X, labels, k)
        history.append(_cost(X, labels, centers))
    return LloydResult(labels, centers, history[-1], history, n_iter)


def kmeans(points, k: int, replicates: int = 10, rng=None, max_iter: int = MAX_ITER):
    """Best of ``replicates`` k-means++/Lloyd runs.

    Parameters
    ----------
    points : array_like, shape (n, m)
        One point per row.
    k : int
        Number of clusters, ``1 <= k <= n``.
    replicates : int
        Independent restarts; the lowest-cost result is kept (first wins ties).
    rng : numpy.random.Generator or int or None
        Source of randomness.

    Returns
    -------
    clustering : Clustering
        Labels in [0, k), every cluster non-empty.
    cost : float
        Within-cluster sum of squared distances of that clustering.
    """
    X = _as_points(points)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise InvalidK(f"k must be in [1, {n}], got {k}")
    if replicates < 1:
        raise FairSCError("replicates must be at least 1")
    rng = np.random.default_rng(rng)
    best = None
    for _ in range(replicates):
        seeds = kmeans_plusplus(X, k, rng)
        run = lloyd(X, X[seeds], max_iter=max_iter)
        if best is None or run.cost < best.cost:
            best = run
    return Clustering(best.labels, k), best.cost
