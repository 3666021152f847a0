"""Dense symmetric eigenproblems, nullspace bases and SPD square roots.

All routines delegate to LAPACK through scipy (Householder tridiagonalization
followed by an implicit QL/QR or MRRR stage), which is cubic in the matrix size.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import ConvergenceFailure, NotPositiveDefinite, NotSymmetric

SYMMETRY_TOL = 1e-9
NULLSPACE_RCOND = 1e-10
PD_RTOL = 1e-10


class EigenPairs(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def _symmetrize(S, name="matrix"):
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1]:
        raise NotSymmetric(f"{name} must be square, got shape {S.shape}")
    scale = max(1.0, float(np.abs(S).max(initial=0.0)))
    asym = float(np.abs(S - S.T).max(initial=0.0))
    if asym > SYMMETRY_TOL * scale:
        raise NotSymmetric(f"{name} is not symmetric (max asymmetry {asym:.3g})")
    return (S + S.T) / 2


def smallest_eigenpairs(S, count: int) -> EigenPairs:
    """The ``count`` smallest eigenvalues of symmetric ``S`` and orthonormal eigenvectors.

    Eigenvalues are ascending and repeated according to multiplicity. Inside a
    degenerate eigenspace the basis returned is whatever LAPACK produces.
    """
    S = _symmetrize(S)
    m = S.shape[0]
    if not 1 <= count <= m:
        raise ValueError(f"count must be in [1, {m}], got {count}")
    try:
        values, vectors = scipy.linalg.eigh(S, subset_by_index=[0, count - 1])
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return EigenPairs(values, vectors)


def nullspace_basis(A) -> np.ndarray:
    """Orthonormal basis (as columns) of the nullspace of ``A``.

    Singular values below ``1e-10 * sigma_max`` count as zero.
    """
    A = np.atleast_2d(np.asarray(A, dtype=float))
    n = A.shape[1]
    if A.shape[0] == 0 or not np.any(A):
        return np.eye(n)
    try:
        return scipy.linalg.null_space(A, rcond=NULLSPACE_RCOND)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def spd_sqrt_inv(M):
    """Symmetric positive definite square root of ``M`` and its inverse.

    Returns
    -------
    Q, Q_inv : ndarray
        ``Q @ Q == M`` and ``Q_inv @ Q == I`` up to rounding.

    Raises
    ------
    NotPositiveDefinite
        If the smallest eigenvalue does not exceed ``1e-10 * trace(M) / m``.
    """
    M = _symmetrize(M)
    m = M.shape[0]
    try:
        w, U = scipy.linalg.eigh(M)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    floor = PD_RTOL * np.trace(M) / m
    if not w[0] > floor:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {w[0]:.3g} is not above {floor:.3g}"
        )
    root = np.sqrt(w)
    Q = (U * root) @ U.T
    Q_inv = (U / root) @ U.T
    return (Q + Q.T) / 2, (Q_inv + Q_inv.T) / 2
