"""
Robustness to noisy group labels
================================

Each member of group 0 is moved to group 1 with probability p before
clustering, so the algorithm sees group labels that no longer match the
ones the graph was generated with. At p = 1 everyone shares one group and the
fair variant reduces to the standard one. The edge probabilities are higher
than in the other demos so that the unperturbed run starts near zero error.
"""

# %%
import numpy as np

from fairsc import FairSbmConfig, cluster, misclassification_error, perturb_groups, sample_fair_sbm

cfg = FairSbmConfig.balanced(1000, k=4, h=2, a=0.4, b=0.3, c=0.2, d=0.1)
graph, truth, groups = sample_fair_sbm(cfg, np.random.default_rng(3))

for p in (0.0, 0.05, 0.1, 0.2, 0.5, 1.0):
    noisy = perturb_groups(groups, p, np.random.default_rng(4)) if p else groups
    fair, _ = cluster(graph, 4, "fair-n", noisy, np.random.default_rng(5))
    std, _ = cluster(graph, 4, "sc-n", rng=np.random.default_rng(5))
    print(f"p={p:4.2f}  h={noisy.h}  fair-n={misclassification_error(fair, truth):.3f}  "
          f"sc-n={misclassification_error(std, truth):.3f}")
