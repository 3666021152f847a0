"""Stochastic block model with planted fair clusters and demographic groups.

Two vertices are joined with probability

    a   same cluster, same group
    b   different cluster, same group
    c   same cluster, different group
    d   different cluster, different group

with ``a > b > c > d``. Every group takes the same share of every cluster,
so the planted clustering is perfectly proportional, while the groups
themselves form a competing, unfair partition with a smaller RatioCut.

For the balanced case (equal clusters, equal groups) the expected adjacency
matrix has a closed-form spectrum, exposed here as test oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ConfigError, Indivisible, Unbalanced, UnsupportedGroupCount
from .fairness import GroupAssignment
from .graph import Clustering, Graph

FRACTION_TOL = 1e-9


@dataclass(frozen=True)
class FairSbmConfig:
    """Parameters of the fair SBM.

    Parameters
    ----------
    cluster_sizes : tuple of int
        Size of each planted cluster; ``n`` is their sum.
    group_fractions : tuple of float
        Share of each group inside every cluster. Must sum to one, and
        ``fraction * cluster_size`` must be an integer for every pair.
    a, b, c, d : float
        Edge probabilities (see module docstring).
    strict : bool
        Enforce ``a > b > c > d >= 0``. Only degenerate oracle tests turn
        this off; probabilities must lie in [0, 1] regardless.
    """

    cluster_sizes: tuple
    group_fractions: tuple
    a: float
    b: float
    c: float
    d: float
    strict: bool = True

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.cluster_sizes)
        if any(s != t for s, t in zip(sizes, self.cluster_sizes)):
            raise ConfigError("cluster sizes must be integers")
        eta = tuple(float(x) for x in self.group_fractions)
        object.__setattr__(self, "cluster_sizes", sizes)
        object.__setattr__(self, "group_fractions", eta)
        if not sizes or min(sizes) < 1:
            raise ConfigError("need at least one cluster, all of positive size")
        if not eta or min(eta) <= 0:
            raise ConfigError("need at least one group, all with positive fraction")
        if abs(sum(eta) - 1.0) > FRACTION_TOL:
            raise ConfigError(f"group fractions sum to {sum(eta)}, not 1")
        counts = np.outer(sizes, eta)
        if np.abs(counts - np.round(counts)).max() > FRACTION_TOL * max(sizes):
            raise ConfigError("group fraction times cluster size must be integral")
        probs = (self.a, self.b, self.c, self.d)
        if any(not 0.0 <= p <= 1.0 for p in probs):
            raise ConfigError(f"probabilities must lie in [0, 1], got {probs}")
        if self.strict and not self.a > self.b > self.c > self.d >= 0:
            raise ConfigError(f"need a > b > c > d >= 0, got {probs}")

    @classmethod
    def balanced(cls, n, k, h, a, b, c, d, strict=True) -> "FairSbmConfig":
        """k clusters of size n/k, each split evenly among h groups."""
        if n % (k * h):
            raise ConfigError(f"n={n} is not divisible by k*h={k * h}")
        return cls((n // k,) * k, (1.0 / h,) * h, a, b, c, d, strict)

    @property
    def n(self) -> int:
        return sum(self.cluster_sizes)

    @property
    def k(self) -> int:
        return len(self.cluster_sizes)

    @property
    def h(self) -> int:
        return len(self.group_fractions)

    @property
    def block_counts(self) -> np.ndarray:
        """k-by-h array with the number of vertices of group s in cluster l."""
        return np.rint(np.outer(self.cluster_sizes, self.group_fractions)).astype(int)

    @property
    def is_balanced(self) -> bool:
        n, k, h = self.n, self.k, self.h
        return (
            all(s * k == n for s in self.cluster_sizes)
            and all(abs(x - 1.0 / h) <= FRACTION_TOL for x in self.group_fractions)
        )

    def canonical_labels(self):
        """Cluster and group labels with clusters outermost, groups innermost."""
        counts = self.block_counts
        truth = np.repeat(np.repeat(np.arange(self.k), self.h), counts.ravel())
        groups = np.repeat(np.tile(np.arange(self.h), self.k), counts.ravel())
        return truth, groups


def _pair_probabilities(truth, groups, a, b, c, d):
    same_cluster = truth[:, None] == truth[None, :]
    same_group = groups[:, None] == groups[None, :]
    P = np.where(same_cluster, np.where(same_group, a, c), np.where(same_group, b, d))
    np.fill_diagonal(P, 0.0)
    return P


def _sample_edges(P, rng):
    upper = np.triu(rng.random(P.shape) < P, 1)
    W = (upper | upper.T).astype(float)
    return W


def sample_fair_sbm(cfg: FairSbmConfig, rng=None):
    """Draw a graph from the model.

    Vertices are generated in canonical order and then shuffled by a
    uniformly random permutation.

    Returns
    -------
    graph : Graph
        Unit-weight graph.
    truth : Clustering
        Planted (fair) clusters.
    groups : GroupAssignment
        Demographic groups.
    """
    rng = np.random.default_rng(rng)
    truth, groups = cfg.canonical_labels()
    W = _sample_edges(_pair_probabilities(truth, groups, cfg.a, cfg.b, cfg.c, cfg.d), rng)
    perm = rng.permutation(cfg.n)
    return (
        Graph(W[np.ix_(perm, perm)]),
        Clustering(truth[perm], cfg.k),
        GroupAssignment(groups[perm], cfg.h),
    )


def _require_balanced(cfg):
    if not cfg.is_balanced:
        raise Unbalanced("closed-form oracles cover only equal cluster and group sizes")


def expected_adjacency(cfg: FairSbmConfig) -> np.ndarray:
    """Edge-probability matrix in canonical vertex order, zero diagonal."""
    _require_balanced(cfg)
    truth, groups = cfg.canonical_labels()
    return _pair_probabilities(truth, groups, cfg.a, cfg.b, cfg.c, cfg.d)


def expected_laplacian(cfg: FairSbmConfig) -> np.ndarray:
    """``(lambda_1 - a) I - W_expected``; every expected degree equals ``lambda_1 - a``."""
    lam1 = theoretical_spectrum(cfg).lambda1
    return (lam1 - cfg.a) * np.eye(cfg.n) - expected_adjacency(cfg)


class SpectrumOracle(NamedTuple):
    """Closed-form spectra for a balanced configuration.

    ``adjacency`` lists the n eigenvalues of ``W_expected + a I`` in the
    grouping of the closed form (not sorted). ``constrained_laplacian`` lists
    the n - h + 1 eigenvalues of ``Z^T L_expected Z`` in the same grouping,
    starting with 0.
    """

    lambda1: float
    adjacency: np.ndarray
    constrained_laplacian: np.ndarray

    def k_smallest_constrained(self, k) -> np.ndarray:
        return np.sort(self.constrained_laplacian)[:k]


def theoretical_spectrum(cfg: FairSbmConfig) -> SpectrumOracle:
    _require_balanced(cfg)
    a, b, c, d = cfg.a, cfg.b, cfg.c, cfg.d
    if not a > b > c > d >= 0:
        raise ConfigError("the closed-form spectrum assumes a > b > c > d >= 0")
    n, k, h = cfg.n, cfg.k, cfg.h
    scale = n / (k * h)
    lam1 = scale * ((a + (h - 1) * c) + (k - 1) * (b + (h - 1) * d))
    group_val = scale * ((a - c) + (k - 1) * (b - d))
    cluster_val = scale * ((a + (h - 1) * c) - (b + (h - 1) * d))
    mixed_val = scale * ((a - c) - (b - d))
    adjacency = np.concatenate([
        [lam1],
        np.full(h - 1, group_val),
        np.full(k - 1, cluster_val),
        np.full((h - 1) * (k - 1), mixed_val),
        np.zeros(n - h * k),
    ])
    constrained = lam1 - np.concatenate([[lam1], adjacency[h:]])
    return SpectrumOracle(lam1, adjacency, constrained)


def canonical_embedding(n: int, k: int) -> np.ndarray:
    """Orthonormal n-by-k matrix whose rows encode k equal consecutive clusters.

    Column 0 is the constant vector; column i (1 <= i < k) is zero on the
    first i-1 blocks, ``(k - i) q_i`` on block i-1 and ``-q_i`` afterwards.
    Rows of one block coincide, rows of different blocks are ``sqrt(2k/n)``
    apart.
    """
    if k < 1 or n % k:
        raise Indivisible(f"k={k} does not divide n={n}")
    m = n // k
    block = np.repeat(np.arange(k), m)
    T = np.empty((n, k))
    T[:, 0] = 1.0 / math.sqrt(n)
    for i in range(1, k):
        q = 1.0 / math.sqrt(m * (k - i) ** 2 + m * (k - i))
        col = np.where(block < i - 1, 0.0, -q)
        col[block == i - 1] = (k - i) * q
        T[:, i] = col
    return T


def perturb_groups(groups: GroupAssignment, p: float, rng=None) -> GroupAssignment:
    """Move each member of group 0 to group 1 independently with probability ``p``.

    If group 0 ends up empty, the result is the single-group assignment
    (h = 1, every label 0).
    """
    if groups.h != 2:
        raise UnsupportedGroupCount(f"perturbation is defined for h = 2, got h = {groups.h}")
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"p must lie in [0, 1], got {p}")
    rng = np.random.default_rng(rng)
    u = rng.random(groups.n)
    labels = np.array(groups.labels)
    labels[(labels == 0) & (u < p)] = 1
    if np.all(labels == 1):
        return GroupAssignment(np.zeros_like(labels), 1)
    return GroupAssignment(labels, 2)


def counterexample_graph(scale: int, a: float, b: float, rng=None):
    """Graph on which per-group spectral clustering misses the fair clusters.

    Four blocks of ``3 * scale`` vertices, in order C1&V1, C1&V2, C2&V1,
    C2&V2. Pairs inside C1, inside C2 or inside V2 connect with probability
    ``a``, all other pairs with probability ``b``. Standard spectral
    clustering on the whole graph finds C1/C2, but on the subgraph induced by
    V2 (a dense random graph) it has no reason to.

    Returns
    -------
    graph, truth (C1/C2), groups (V1/V2)
    """
    if int(scale) != scale or scale < 1:
        raise ConfigError(f"scale must be a positive integer, got {scale}")
    if not (0.0 <= b < a <= 1.0):
        raise ConfigError(f"need 0 <= b < a <= 1, got a={a}, b={b}")
    rng = np.random.default_rng(rng)
    block = np.repeat(np.arange(4), 3 * int(scale))
    truth = block // 2
    groups = block % 2
    same = (truth[:, None] == truth[None, :]) | ((groups[:, None] == 1) & (groups[None, :] == 1))
    P = np.where(same, a, b)
    np.fill_diagonal(P, 0.0)
    W = _sample_edges(P, rng)
    return Graph(W), Clustering(truth, 2), GroupAssignment(groups, 2)
