"""
Why clustering each group separately does not help
==================================================

Four blocks: C1 and C2 are the fair clusters, V1 and V2 the groups. Pairs
within C1, within C2 or within V2 connect with probability a, the rest with
probability b. On the whole graph spectral clustering finds C1/C2. On the
subgraph induced by V2, every pair connects with probability a, so there is
no C1/C2 signal left and the split it returns is essentially arbitrary.
"""

# %%
import numpy as np

from fairsc import Clustering, cluster, counterexample_graph, misclassification_error

hits_full = hits_sub = 0
for seed in range(20):
    g, truth, groups = counterexample_graph(5, 0.9, 0.05, np.random.default_rng(seed))
    c, _ = cluster(g, 2, "sc-u", rng=np.random.default_rng(seed))
    hits_full += misclassification_error(c, truth) <= 0.05

    v2 = np.flatnonzero(groups.labels == 1)
    c2, _ = cluster(g.subgraph(v2), 2, "sc-u", rng=np.random.default_rng(seed))
    hits_sub += misclassification_error(c2, Clustering(truth.labels[v2], 2)) >= 0.2

print(f"whole graph recovers C1/C2: {hits_full}/20 seeds")
print(f"V2 subgraph misses C1/C2:   {hits_sub}/20 seeds")
