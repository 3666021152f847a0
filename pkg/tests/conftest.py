import itertools

import numpy as np
import pytest

from fairsc.graph import Graph

# filled by test_acceptance.py, one PASS/FAIL line per criterion
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


def ratio_cut_encoding(labels, k):
    """H[i, l] = 1/sqrt(|C_l|) if i is in cluster l, else 0."""
    labels = np.asarray(labels)
    H = np.zeros((len(labels), k))
    for l in range(k):
        members = labels == l
        H[members, l] = 1.0 / np.sqrt(members.sum())
    return H


def ncut_encoding(weights, labels, k):
    """H[i, l] = 1/sqrt(vol(C_l)) if i is in cluster l, else 0."""
    labels = np.asarray(labels)
    d = np.asarray(weights).sum(axis=1)
    H = np.zeros((len(labels), k))
    for l in range(k):
        members = labels == l
        H[members, l] = 1.0 / np.sqrt(d[members].sum())
    return H


def all_clusterings(n, k):
    """Every labeling of n vertices with exactly k non-empty clusters (labels 0..k-1)."""
    for labels in itertools.product(range(k), repeat=n):
        if len(set(labels)) == k:
            yield np.array(labels)


def brute_force_error(pred, truth, k):
    pred, truth = np.asarray(pred), np.asarray(truth)
    best = len(pred)
    for perm in itertools.permutations(range(k)):
        mapped = np.array(perm)[pred]
        best = min(best, int(np.sum(mapped != truth)))
    return best / len(pred)


def random_graph(rng, n, p=0.5, weighted=False):
    upper = np.triu(rng.random((n, n)) < p, 1).astype(float)
    if weighted:
        upper *= rng.uniform(0.1, 2.0, size=(n, n))
    return Graph(upper + upper.T)


def two_cliques(m=4):
    n = 2 * m
    W = np.zeros((n, n))
    W[:m, :m] = 1
    W[m:, m:] = 1
    np.fill_diagonal(W, 0)
    return Graph(W)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
