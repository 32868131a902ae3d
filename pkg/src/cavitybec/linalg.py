"""Dense real symmetric eigendecomposition with a fixed sort and sign gauge.

Two back ends satisfy the same contract: LAPACK through :func:`numpy.linalg.eigh`
(the default, used by the solvers) and a cyclic Jacobi sweep written here,
which the test-suite uses as an independent cross-check.
"""

from typing import NamedTuple

import numpy as np

from .errors import InvalidParameterError, NoConvergenceError

__all__ = ["EigenDecomposition", "eigh", "jacobi_eigh", "as_symmetric", "fix_sign_gauge"]

_SYM_RTOL = 1e-12
_TIE_RTOL = 1e-12


class EigenDecomposition(NamedTuple):
    """Eigenvalues in ascending order; column ``k`` of ``eigenvectors`` pairs with ``k``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_symmetric(A):
    """Return ``A`` as a float array after checking that it is square and symmetric.

    Asymmetry at the rounding level (relative ``1e-12``) is averaged away; anything
    larger is rejected.
    """
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise InvalidParameterError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidParameterError("matrix has non-finite entries")
    if np.array_equal(A, A.T):
        return A
    scale = max(1.0, float(np.max(np.abs(A))))
    if np.max(np.abs(A - A.T)) > _SYM_RTOL * scale:
        raise InvalidParameterError("matrix is not symmetric")
    return 0.5 * (A + A.T)


def fix_sign_gauge(V):
    """Flip columns so the first entry of largest magnitude is non-negative."""
    V = np.array(V, dtype=float)
    absV = np.abs(V)
    cutoff = absV.max(axis=0) * (1.0 - _TIE_RTOL)
    lead = np.argmax(absV >= cutoff, axis=0)
    signs = np.where(V[lead, np.arange(V.shape[1])] < 0, -1.0, 1.0)
    return V * signs


def _finish(w, V):
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], fix_sign_gauge(V[:, order]))


def eigh(A, method="lapack"):
    """Eigendecomposition of a real symmetric matrix.

    Parameters
    ----------
    A : array_like, shape (n, n)
        Real symmetric matrix.
    method : {"lapack", "jacobi"}
        Back end.  Both return ascending eigenvalues (stable sort) and
        orthonormal eigenvectors whose largest-magnitude entry (first one on
        ties) is non-negative.

    Returns
    -------
    EigenDecomposition
    """
    A = as_symmetric(A)
    if method == "lapack":
        w, V = np.linalg.eigh(A)
        return _finish(w, V)
    if method == "jacobi":
        return jacobi_eigh(A)
    raise InvalidParameterError(f"unknown eigensolver method {method!r}")


def jacobi_eigh(A, max_sweeps=64):
    """Cyclic Jacobi eigenvalue iteration for small dense symmetric matrices.

    Each sweep annihilates every off-diagonal pair ``(p, q)`` once with a
    plane rotation.  The iteration stops once the off-diagonal Frobenius norm
    drops below ``eps`` times the Frobenius norm of ``A``.
    """
    A = as_symmetric(A)
    n = A.shape[0]
    a = A.copy()
    V = np.eye(n)
    if n == 1:
        return _finish(a.diagonal().copy(), V)

    target = np.finfo(float).eps * max(np.linalg.norm(A), np.finfo(float).tiny)
    iu = np.triu_indices(n, 1)
    for _ in range(max_sweeps):
        off = np.sqrt(2.0 * np.sum(a[iu] ** 2))
        if off <= target:
            return _finish(a.diagonal().copy(), V)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta)) if theta != 0 else 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # A <- J^T A J with J the (p, q) rotation
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
    raise NoConvergenceError(
        f"Jacobi iteration did not converge in {max_sweeps} sweeps", iterations=max_sweeps)
