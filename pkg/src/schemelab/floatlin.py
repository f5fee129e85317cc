"""Double-precision symmetric eigensolver with tolerance grouping.

Numeric fallback for schemes whose spectra are irrational. Built on LAPACK
via numpy; the grouping step and the reconstruction check are ours.
"""
from __future__ import annotations

import numpy as np

from .errors import InputError, InternalConsistencyError


def symmetric_eigen(matrix, tol: float = 1e-9) -> list[tuple[float, np.ndarray]]:
    """Eigen-decomposition of a symmetric matrix, grouped by closeness.

    Eigenvalues within ``tol`` of their neighbour are merged into one group
    (reported as the group mean); each group carries a matrix of orthonormal
    eigenvector columns. Groups are returned in decreasing eigenvalue order.

    Raises InputError for non-symmetric input, numpy.linalg.LinAlgError if
    the QR iteration fails to converge, and InternalConsistencyError if the
    reconstruction error exceeds tol * max|entry| * n.
    """
    a = np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InputError(f"expected a square matrix, got shape {a.shape}")
    if not (a == a.T).all():
        raise InputError("matrix is not symmetric")
    if not tol > 0:
        raise InputError("tolerance must be positive")
    w, v = np.linalg.eigh(a)
    groups: list[list[int]] = [[0]] if len(w) else []
    for i in range(1, len(w)):
        if w[i] - w[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    out = [(float(np.mean(w[g])), v[:, g]) for g in reversed(groups)]
    n = a.shape[0]
    recon = sum(lam * (basis @ basis.T) for lam, basis in out)
    err = float(np.abs(a - recon).max())
    if err > tol * max(float(np.abs(a).max()), 1.0) * n:
        raise InternalConsistencyError(
            f"eigendecomposition reconstruction error {err:.3e} out of tolerance")
    return out


def float_rank(matrix, atol: float) -> int:
    """Rank by singular values above an absolute threshold.

    numpy's matrix_rank uses a threshold relative to the largest singular
    value, which reports full rank for a matrix of pure round-off noise;
    an absolute cutoff tied to the caller's scale avoids that.
    """
    a = np.asarray(matrix, dtype=float)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int((s > atol).sum())
