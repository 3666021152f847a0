import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from conftest import all_clusterings, ncut_encoding, random_graph, ratio_cut_encoding
from fairsc.errors import EmptyCluster, FairSCError, SingleGroup
from fairsc.fairness import GroupAssignment, balance_profile, fairness_matrix, is_proportional
from fairsc.graph import Clustering


def test_fairness_matrix_two_groups():
    F = fairness_matrix(GroupAssignment([0, 0, 1, 1]))
    np.testing.assert_allclose(F, [[0.5], [0.5], [-0.5], [-0.5]])


def test_fairness_matrix_three_groups_rank():
    groups = GroupAssignment([0, 0, 0, 1, 1, 2])
    F = fairness_matrix(groups)
    assert F.shape == (6, 2)
    np.testing.assert_allclose(F.sum(axis=0), 0, atol=1e-12)
    exact = sympy.Matrix(6, 2, [sympy.Rational(x).limit_denominator(6) for x in F.ravel()])
    assert exact.rank() == 2


def test_fairness_matrix_single_group():
    with pytest.raises(SingleGroup):
        fairness_matrix(GroupAssignment([0, 0, 0]))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_fairness_matrix_columns_centered(h, seed):
    rng = np.random.default_rng(seed)
    n = h + int(rng.integers(0, 20))
    labels = np.concatenate([np.arange(h), rng.integers(0, h, n - h)])
    F = fairness_matrix(GroupAssignment(labels))
    assert np.abs(F.sum(axis=0)).max() <= 1e-12
    assert np.linalg.matrix_rank(F) == h - 1


def test_group_assignment_rejects_empty_group():
    with pytest.raises(FairSCError):
        GroupAssignment([0, 0, 2], h=3)


def test_from_labels_compacts():
    g = GroupAssignment.from_labels([5, 5, 9])
    assert g.h == 2
    np.testing.assert_array_equal(g.labels, [0, 0, 1])


def test_balance_examples():
    groups = GroupAssignment([0, 0, 1, 1, 0, 0, 0, 1, 0, 0])
    c = Clustering([0, 0, 0, 0, 1, 1, 1, 1, 2, 2])
    prof = balance_profile(c, groups)
    # counts (2,2) -> 1, (3,1) -> 1/3, (2,0) -> 0
    np.testing.assert_allclose(prof.per_cluster, [1.0, 1 / 3, 0.0])
    assert prof.average == pytest.approx((1 + 1 / 3) / 3)


def test_balance_empty_cluster():
    with pytest.raises(EmptyCluster):
        balance_profile(Clustering([0, 0, 0], k=2), GroupAssignment([0, 1, 0]))


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_balance_properties(seed):
    rng = np.random.default_rng(seed)
    h, k = int(rng.integers(2, 4)), int(rng.integers(1, 4))
    n = 30
    groups = np.concatenate([np.arange(h), rng.integers(0, h, n - h)])
    labels = np.concatenate([np.arange(k), rng.integers(0, k, n - k)])
    g, c = GroupAssignment(groups), Clustering(labels, k)
    bal = balance_profile(c, g).per_cluster
    assert np.all((bal >= 0) & (bal <= 1))
    # permuting group and cluster ids permutes / preserves balances
    gp, cp = rng.permutation(h), rng.permutation(k)
    bal2 = balance_profile(Clustering(cp[labels], k), GroupAssignment(gp[groups], h)).per_cluster
    np.testing.assert_allclose(bal2[cp], bal)
    sizes = g.sizes
    bound = min(sizes[s] / sizes[t] for s in range(h) for t in range(h) if s != t)
    assert bal.min() <= bound + 1e-12


def test_is_proportional_examples():
    groups = GroupAssignment([0, 0, 1, 1])
    assert is_proportional(Clustering([0, 1, 0, 1]), groups)
    assert not is_proportional(Clustering([0, 0, 1, 1]), groups)


def _equivalence_check(n, groups, k, encode):
    F = fairness_matrix(groups)
    hits = 0
    for labels in all_clusterings(n, k):
        H = encode(labels, k)
        linear = np.abs(F.T @ H).max() <= 1e-10
        prop = is_proportional(Clustering(labels, k), groups, tol=1e-10)
        assert linear == prop, labels
        hits += prop
    return hits


def test_proportionality_equivalence_n8_two_groups_bruteforce():
    groups = GroupAssignment([0, 1, 0, 1, 0, 1, 0, 1])
    hits = _equivalence_check(8, groups, 2, ratio_cut_encoding)
    # proportional iff cluster 0 takes j vertices of each group, j in 1..3
    assert hits == 16 + 36 + 16


@pytest.mark.parametrize("h", [2, 3])
@pytest.mark.parametrize("k", [2, 3])
def test_proportionality_equivalence_random_groups(h, k):
    rng = np.random.default_rng(100 * h + k)
    n = 6 if k == 3 else 8
    for _ in range(3):
        labels = np.concatenate([np.arange(h), rng.integers(0, h, n - h)])
        _equivalence_check(n, GroupAssignment(labels), k, ratio_cut_encoding)


@pytest.mark.parametrize("h", [2, 3])
def test_proportionality_equivalence_ncut_encoding(h):
    rng = np.random.default_rng(7 + h)
    n, k = 8, 2
    for _ in range(3):
        while True:
            g = random_graph(rng, n, p=0.6)
            if np.all(g.degrees > 0):
                break
        labels = np.concatenate([np.arange(h), rng.integers(0, h, n - h)])
        _equivalence_check(n, GroupAssignment(labels), k,
                     lambda lab, kk: ncut_encoding(g.weights, lab, kk))
