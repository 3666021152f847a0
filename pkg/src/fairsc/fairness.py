"""Demographic groups, the linear fairness constraint, and balance."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import EmptyCluster, FairSCError, LengthMismatch, SingleGroup
from .graph import Clustering, _frozen


@dataclass(frozen=True, eq=False)
class GroupAssignment:
    """Group label in [0, h) for every vertex; every group must be non-empty."""

    labels: np.ndarray
    h: int = field(default=None)

    def __post_init__(self):
        labels = np.asarray(self.labels).astype(np.int64)
        if labels.ndim != 1 or labels.size == 0:
            raise FairSCError("group labels must be a non-empty 1-d array")
        h = int(labels.max()) + 1 if self.h is None else int(self.h)
        if labels.min() < 0 or labels.max() >= h:
            raise FairSCError(f"group labels must lie in [0, {h})")
        counts = np.bincount(labels, minlength=h)
        if np.any(counts == 0):
            raise FairSCError(f"groups {np.flatnonzero(counts == 0).tolist()} are empty")
        object.__setattr__(self, "labels", _frozen(labels))
        object.__setattr__(self, "h", h)

    @classmethod
    def from_labels(cls, labels) -> "GroupAssignment":
        """Build from arbitrary integer labels, renumbering present groups to 0..h-1.

        Renumbering preserves the order of the original label values.
        """
        _, compact = np.unique(np.asarray(labels), return_inverse=True)
        return cls(compact.ravel())

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.h)

    def indicator(self) -> np.ndarray:
        """n-by-h 0/1 membership matrix; column s is the membership vector of group s."""
        f = np.zeros((self.n, self.h))
        f[np.arange(self.n), self.labels] = 1.0
        return f


def fairness_matrix(groups: GroupAssignment) -> np.ndarray:
    """Centered membership vectors of groups 0..h-2, one per column.

    Column s is ``f_s - (|V_s| / n) * 1``. The last group is dropped; its
    column is minus the sum of the others.
    """
    if groups.h < 2:
        raise SingleGroup("a fairness constraint needs at least two groups")
    f = groups.indicator()[:, : groups.h - 1]
    return f - f.mean(axis=0)


def _contingency(c: Clustering, groups: GroupAssignment) -> np.ndarray:
    if c.n != groups.n:
        raise LengthMismatch(f"{c.n} cluster labels vs {groups.n} group labels")
    table = np.zeros((c.k, groups.h), dtype=np.int64)
    np.add.at(table, (c.labels, groups.labels), 1)
    if np.any(table.sum(axis=1) == 0):
        raise EmptyCluster(f"clusters {np.flatnonzero(table.sum(axis=1) == 0).tolist()} are empty")
    return table


class BalanceProfile(NamedTuple):
    per_cluster: np.ndarray
    average: float

    @property
    def minimum(self) -> float:
        return float(self.per_cluster.min())


def balance_profile(c: Clustering, groups: GroupAssignment) -> BalanceProfile:
    """Balance of every cluster and their mean.

    The balance of a cluster is the smallest ratio between the counts of two
    different groups inside it, so 1 means all groups are equally present and
    0 means some group is missing. With a single group every cluster has
    balance 1.
    """
    table = _contingency(c, groups)
    if groups.h == 1:
        bal = np.ones(c.k)
    else:
        lo, hi = table.min(axis=1), table.max(axis=1)
        bal = np.where(lo == 0, 0.0, lo / np.maximum(hi, 1))
    return BalanceProfile(bal, float(bal.mean()))


def is_proportional(c: Clustering, groups: GroupAssignment, tol: float = 1e-9) -> bool:
    """True iff every group has the same share in each cluster as in the whole set."""
    table = _contingency(c, groups)
    within = table / table.sum(axis=1, keepdims=True)
    overall = groups.sizes / groups.n
    return bool(np.all(np.abs(within - overall) <= tol))
