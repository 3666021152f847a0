"""
Error of the fair variants as the graph grows
=============================================

Average misclassification error over a few trials for increasing n. The
unnormalized fair variant needs larger graphs than the normalized one before
its error drops.
"""

# %%
import numpy as np

from fairsc import FairSbmConfig, cluster, misclassification_error, sample_fair_sbm

TRIALS = 3
for n in (400, 1000, 2000):
    cfg = FairSbmConfig.balanced(n, k=2, h=2, a=0.25, b=0.2, c=0.15, d=0.1)
    errors = {"fair-u": [], "fair-n": []}
    for t in range(TRIALS):
        g, truth, groups = sample_fair_sbm(cfg, np.random.default_rng([t, 0]))
        for algo in errors:
            c, _ = cluster(g, 2, algo, groups, np.random.default_rng([t, 2]))
            errors[algo].append(misclassification_error(c, truth))
    print(f"n={n:5d}  " + "  ".join(f"{a}={np.mean(e):.3f}" for a, e in errors.items()))

# %%
# The same sweep is available from the command line and writes CSV:
#
#   fairsc experiment --sweep n --values 400,1000,2000 --trials 3 \
#       --k 2 --a 0.25 --b 0.2 --c 0.15 --d 0.1 --algos fair-u,fair-n
