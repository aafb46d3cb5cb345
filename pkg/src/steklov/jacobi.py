"""Cyclic Jacobi eigensolver for small dense symmetric matrices.

The boundary reduction makes the discrete Dirichlet-to-Neumann eigenproblem
small (a few hundred rows), so plain cyclic Jacobi sweeps with a per-sweep
skip threshold are fast enough and keep the oracle self-contained.
"""

from __future__ import annotations

import math

import numpy as np


def jacobi_eigenvalues(matrix: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations."""
    A = np.array(matrix, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"matrix must be square, got {A.shape}")
    if n == 1:
        return A.diagonal().copy()
    norm = np.linalg.norm(A)
    if norm == 0.0:
        return np.zeros(n)

    for _ in range(max_sweeps):
        # computed entrywise: norm(A)^2 - norm(diag)^2 cancels catastrophically
        # once the matrix is nearly diagonal
        strict = A - np.diag(A.diagonal())
        off = float(np.linalg.norm(strict))
        if off <= tol * norm:
            break
        # rotations below this leave the off-diagonal norm essentially unchanged
        skip = off / (n * n)
        for p in range(n - 1):
            row = A[p, p + 1 :]
            for q in np.nonzero(np.abs(row) > skip)[0] + p + 1:
                apq = A[p, q]
                if apq == 0.0:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                ap = A[p, :].copy()
                aq = A[q, :].copy()
                A[p, :] = c * ap - s * aq
                A[q, :] = s * ap + c * aq
                ap = A[:, p].copy()
                aq = A[:, q].copy()
                A[:, p] = c * ap - s * aq
                A[:, q] = s * ap + c * aq
                A[p, q] = 0.0
                A[q, p] = 0.0
    else:  # pragma: no cover - Jacobi always converges on symmetric input
        raise RuntimeError("Jacobi sweeps failed to converge")
    return np.sort(A.diagonal())
