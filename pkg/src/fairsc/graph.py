"""Weighted graphs, clusterings, Laplacians and cut objectives.

Weights are stored densely; vertex ids are 0-based everywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import connected_components

from .errors import (
    DuplicateEdge,
    EmptyCluster,
    FairSCError,
    NegativeWeight,
    ParseError,
    SelfLoop,
    VertexOutOfRange,
    ZeroVolume,
)

SYMMETRY_TOL = 1e-12


def _frozen(a):
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Undirected graph given by a symmetric nonnegative weight matrix.

    Parameters
    ----------
    weights : array_like, shape (n, n)
        Similarity weights. Must be symmetric, nonnegative and have a zero
        diagonal.
    """

    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise FairSCError(f"weights must be square, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise FairSCError("weights must be finite")
        if np.any(w < 0):
            raise NegativeWeight("weights must be nonnegative")
        if np.any(np.diag(w) != 0):
            raise SelfLoop("weights must have a zero diagonal")
        scale = max(1.0, float(np.abs(w).max(initial=0.0)))
        if np.abs(w - w.T).max(initial=0.0) > SYMMETRY_TOL * scale:
            raise FairSCError("weights must be symmetric")
        object.__setattr__(self, "weights", _frozen(w))

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def degrees(self) -> np.ndarray:
        return self.weights.sum(axis=1)

    @property
    def n_edges(self) -> int:
        return int(np.count_nonzero(np.triu(self.weights, 1)))

    def subgraph(self, vertices) -> "Graph":
        """Induced subgraph on ``vertices`` (in the given order)."""
        idx = np.asarray(vertices, dtype=int)
        return Graph(self.weights[np.ix_(idx, idx)])


@dataclass(frozen=True, eq=False)
class Clustering:
    """Assignment of each vertex to one of ``k`` clusters (labels in [0, k))."""

    labels: np.ndarray
    k: int = field(default=None)

    def __post_init__(self):
        labels = np.asarray(self.labels)
        if labels.ndim != 1:
            raise FairSCError("labels must be one-dimensional")
        if labels.size and not np.issubdtype(labels.dtype, np.integer):
            if not np.all(labels == np.round(labels)):
                raise FairSCError("labels must be integers")
        labels = labels.astype(np.int64)
        k = self.k
        if k is None:
            k = int(labels.max()) + 1 if labels.size else 1
        k = int(k)
        if k < 1:
            raise FairSCError("k must be at least 1")
        if labels.size and (labels.min() < 0 or labels.max() >= k):
            raise FairSCError(f"labels must lie in [0, {k})")
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "k", k)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def indicator(self) -> np.ndarray:
        """n-by-k 0/1 membership matrix."""
        e = np.zeros((self.n, self.k))
        e[np.arange(self.n), self.labels] = 1.0
        return e


def laplacian(g: Graph) -> np.ndarray:
    """Unnormalized Laplacian ``D - W``."""
    w = g.weights
    return np.diag(w.sum(axis=1)) - w


def _cuts(g: Graph, c: Clustering) -> np.ndarray:
    if c.n != g.n:
        raise FairSCError(f"clustering has {c.n} labels, graph has {g.n} vertices")
    sizes = c.sizes
    if np.any(sizes == 0):
        empty = np.flatnonzero(sizes == 0).tolist()
        raise EmptyCluster(f"clusters {empty} are empty")
    e = c.indicator()
    internal = np.einsum("il,ij,jl->l", e, g.weights, e)
    return e.T @ g.degrees - internal


def ratio_cut(g: Graph, c: Clustering) -> float:
    """Sum over clusters of cut(C, V \\ C) / |C|."""
    cuts = _cuts(g, c)
    return float(np.sum(cuts / c.sizes))


def ncut(g: Graph, c: Clustering) -> float:
    """Sum over clusters of cut(C, V \\ C) / vol(C)."""
    cuts = _cuts(g, c)
    vol = c.indicator().T @ g.degrees
    if np.any(vol <= 0):
        raise ZeroVolume(f"clusters {np.flatnonzero(vol <= 0).tolist()} have zero volume")
    return float(np.sum(cuts / vol))


def largest_component(g: Graph):
    """Restrict ``g`` to its largest connected component.

    Returns the subgraph and the original ids of its vertices (ascending).
    """
    _, comp = connected_components(g.weights > 0, directed=False)
    biggest = np.argmax(np.bincount(comp))
    keep = np.flatnonzero(comp == biggest)
    return g.subgraph(keep), keep


def _lines(text):
    if isinstance(text, (bytes, bytearray)):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def parse_graph(text, n: int) -> Graph:
    """Parse an edge list (``<i> <j> <w>`` per line) into a Graph on ``n`` vertices.

    Each undirected edge must appear exactly once; it is mirrored on load.
    """
    w = np.zeros((n, n))
    seen = set()
    for lineno, line in _lines(text):
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected '<i> <j> <w>', got {line!r}", lineno)
        try:
            i, j = int(parts[0]), int(parts[1])
            weight = float(parts[2])
        except ValueError:
            raise ParseError(f"cannot parse {line!r}", lineno) from None
        if i < 0 or j < 0 or i >= n or j >= n:
            raise VertexOutOfRange(f"vertex id out of range [0, {n}) in {line!r}", lineno)
        if i == j:
            raise SelfLoop(f"self loop on vertex {i}", lineno)
        if not np.isfinite(weight):
            raise ParseError(f"non-finite weight in {line!r}", lineno)
        if weight < 0:
            raise NegativeWeight(f"negative weight in {line!r}", lineno)
        if weight == 0:
            raise ParseError(f"weight must be positive in {line!r}", lineno)
        key = (min(i, j), max(i, j))
        if key in seen:
            raise DuplicateEdge(f"edge {key[0]}-{key[1]} listed twice", lineno)
        seen.add(key)
        w[i, j] = w[j, i] = weight
    return Graph(w)


def format_edges(g: Graph) -> str:
    """Serialize ``g`` as an edge list, one ``i j w`` line per edge with i < j."""
    iu, ju = np.nonzero(np.triu(g.weights, 1))
    vals = g.weights[iu, ju]
    return "".join(f"{i} {j} {w:.12g}\n" for i, j, w in zip(iu, ju, vals))


def parse_labels(text, n: int | None = None) -> np.ndarray:
    """Parse a label file: one nonnegative integer per non-comment line."""
    out = []
    for lineno, line in _lines(text):
        try:
            value = int(line)
        except ValueError:
            raise ParseError(f"expected an integer label, got {line!r}", lineno) from None
        if value < 0:
            raise ParseError(f"negative label {value}", lineno)
        out.append(value)
    if n is not None and len(out) != n:
        raise ParseError(f"expected {n} labels, found {len(out)}")
    return np.array(out, dtype=np.int64)


def format_labels(labels) -> str:
    return "".join(f"{int(x)}\n" for x in np.asarray(labels))
