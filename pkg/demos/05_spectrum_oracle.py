"""
Closed-form spectrum of the expected fair SBM
=============================================

For a balanced configuration the expected adjacency matrix has only a handful
of distinct eigenvalues with known multiplicities. Here the closed form is
compared with a dense eigendecomposition, and the k smallest eigenvalues of
the constrained Laplacian are listed.
"""

# %%
import numpy as np
import scipy.linalg

from fairsc import FairSbmConfig, expected_adjacency, theoretical_spectrum
from fairsc.cli import spectrum_deviation

cfg = FairSbmConfig.balanced(120, k=4, h=3, a=0.8, b=0.6, c=0.4, d=0.2)
oracle = theoretical_spectrum(cfg)
dense = scipy.linalg.eigvalsh(expected_adjacency(cfg) + cfg.a * np.eye(cfg.n))
values, counts = np.unique(np.round(dense, 8), return_counts=True)
for v, m in zip(values[::-1], counts[::-1]):
    print(f"eigenvalue {v:10.4f}  multiplicity {m}")

# %%
print("k smallest constrained eigenvalues:", np.round(oracle.k_smallest_constrained(cfg.k), 6))
dev_adj, dev_con = spectrum_deviation(cfg)
print(f"max deviation: adjacency {dev_adj:.1e}, constrained Laplacian {dev_con:.1e}")
