"""Hermitian eigensolver built on a cyclic Jacobi sweep.

An n x n Hermitian matrix H = A + iB is embedded into the real symmetric
2n x 2n matrix [[A, -B], [B, A]], whose spectrum is that of H with every
eigenvalue doubled.  The embedding is diagonalised by cyclic Jacobi
rotations; complex eigenvectors are recovered from the real ones.  For
the small dense matrices handled here (dim <= ~16) robustness beats
asymptotic speed.
"""
from __future__ import annotations

import math

import numpy as np

from ._jit import njit

# Off-diagonal Frobenius mass below this counts as diagonal.
CONVERGENCE_TOL = 1e-14
MAX_SWEEPS = 100
HERMITICITY_TOL = 1e-8


@njit(cache=True)
def _jacobi_cycle(a, v, tol, max_sweeps):  # pragma: no cover - thin numeric kernel
    """Diagonalise symmetric `a` in place, accumulating rotations into `v`.

    Returns (sweeps_used, converged).  Convergence is reached when the
    off-diagonal Frobenius mass sqrt(sum_{i!=j} a_ij^2) drops below tol.
    """
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if math.sqrt(2.0 * off) < tol:
            return sweep, True
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = 0.5 * (a[q, q] - a[p, p]) / apq
                if theta >= 0.0:
                    t = 1.0 / (theta + math.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                app = a[p, p]
                aqq = a[q, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[p, k] = a[k, p]
                        a[k, q] = s * akp + c * akq
                        a[q, k] = a[k, q]
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    off = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            off += a[p, q] * a[p, q]
    return max_sweeps, math.sqrt(2.0 * off) < tol


def symmetric_eig(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and orthonormal eigenvectors of a real symmetric matrix."""
    a = np.array(matrix, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    _, converged = _jacobi_cycle(a, v, CONVERGENCE_TOL, MAX_SWEEPS)
    if not converged:
        raise RuntimeError("Jacobi sweep did not converge within %d sweeps" % MAX_SWEEPS)
    w = np.diag(a).copy()
    order = np.argsort(-w)
    return w[order], v[:, order]


def _check_hermitian(matrix: np.ndarray) -> np.ndarray:
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix, got shape %r" % (m.shape,))
    dev = np.abs(m - m.conj().T).max() if m.size else 0.0
    if dev > HERMITICITY_TOL:
        raise ValueError(
            "matrix is not Hermitian within %g (max deviation %g)" % (HERMITICITY_TOL, dev)
        )
    return m


def hermitian_eig(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Full eigendecomposition of a Hermitian matrix.

    Parameters
    ----------
    matrix : (n, n) array_like
        Hermitian within 1e-8; rejected otherwise.

    Returns
    -------
    w : (n,) ndarray
        Eigenvalues sorted descending.
    vecs : (n, n) ndarray
        Orthonormal eigenvectors, vecs[:, k] belonging to w[k].
    """
    m = _check_hermitian(matrix)
    n = m.shape[0]
    if n == 1:
        return np.array([m[0, 0].real]), np.ones((1, 1), dtype=complex)
    a = np.real(m)
    b = np.imag(m)
    # Hermitise exactly so the embedding is symmetric to the last bit.
    a = 0.5 * (a + a.T)
    b = 0.5 * (b - b.T)
    embed = np.block([[a, -b], [b, a]])
    w2, v2 = symmetric_eig(embed)

    # Each eigenvalue of m appears twice; every real eigenvector (x; y)
    # maps to a complex eigenvector x + iy.  Duplicates differ only by a
    # phase, so a modified Gram-Schmidt pass with an acceptance threshold
    # keeps exactly one complex vector per true dimension.
    vals = np.empty(n)
    vecs = np.empty((n, n), dtype=complex)
    kept = 0
    for k in range(2 * n):
        z = v2[:n, k] + 1j * v2[n:, k]
        for j in range(kept):
            z = z - (vecs[:, j].conj() @ z) * vecs[:, j]
        nz = np.linalg.norm(z)
        if nz > 0.5:
            vecs[:, kept] = z / nz
            vals[kept] = w2[k]
            kept += 1
            if kept == n:
                break
    if kept != n:
        raise RuntimeError("failed to extract a full complex eigenbasis")
    return vals, vecs


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted descending."""
    m = _check_hermitian(matrix)
    n = m.shape[0]
    if n == 1:
        return np.array([m[0, 0].real])
    a = 0.5 * (np.real(m) + np.real(m).T)
    b = np.imag(m)
    b = 0.5 * (b - b.T)
    embed = np.block([[a, -b], [b, a]])
    w2, _ = symmetric_eig(embed)
    # Sorted descending with exact pairing: take every other entry.
    return w2[::2].copy()


def warmup() -> None:
    """Trigger JIT compilation on a tiny input (no-op without numba)."""
    hermitian_eig(np.array([[1.0, 1j], [-1j, 0.0]]))
