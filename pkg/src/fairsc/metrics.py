"""Misclassification error and per-clustering reports."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import KMismatch, LengthMismatch
from .fairness import GroupAssignment, balance_profile
from .graph import Clustering, Graph, ncut, ratio_cut


def confusion_matrix(pred: Clustering, truth: Clustering) -> np.ndarray:
    table = np.zeros((pred.k, truth.k), dtype=np.int64)
    np.add.at(table, (pred.labels, truth.labels), 1)
    return table


def misclassification_error(pred: Clustering, truth: Clustering) -> float:
    """Fraction of vertices mislabeled under the best matching of cluster ids."""
    if pred.n != truth.n:
        raise LengthMismatch(f"{pred.n} predicted labels vs {truth.n} true labels")
    if pred.k != truth.k:
        raise KMismatch(f"pred has k={pred.k}, truth has k={truth.k}")
    table = confusion_matrix(pred, truth)
    rows, cols = linear_sum_assignment(table, maximize=True)
    mismatched = pred.n - int(table[rows, cols].sum())
    return mismatched / pred.n


@dataclass(frozen=True)
class ClusteringReport:
    error: float | None
    balances: np.ndarray
    balance_avg: float
    ratio_cut: float
    ncut: float
    runtime_ms: float = math.nan


def report(g: Graph, c: Clustering, groups: GroupAssignment,
           truth: Clustering | None = None, runtime_ms: float = math.nan) -> ClusteringReport:
    profile = balance_profile(c, groups)
    error = None if truth is None else misclassification_error(c, truth)
    return ClusteringReport(
        error=error,
        balances=profile.per_cluster,
        balance_avg=profile.average,
        ratio_cut=ratio_cut(g, c),
        ncut=ncut(g, c),
        runtime_ms=runtime_ms,
    )
