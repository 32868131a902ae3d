"""Quadratic fluctuations around the mean field and their normal modes.

Index bookkeeping used throughout: row/column 0 of the kernel matrix ``S``
is the photon quadrature, row/column ``k`` (``k = 1..n_cutoff``) is the atomic
mode ``b_k`` along the ``k``-th excited eigenvector of ``M(alpha)``.  The
zero-frequency mode ``b_0`` parallel to the condensate (the Goldstone mode)
is left out of ``S``; its coupling ``g_0`` is still reported because it sets
the slow diffusion of the condensate phase.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import linalg
from .errors import (
    DegenerateGapError,
    DynamicalInstabilityError,
    InvalidParameterError,
    UnstableCavityError,
)
from .model import build_M_alpha_prime, critical_pump

__all__ = [
    "FluctuationResult",
    "coupling_vector",
    "build_S",
    "quasiparticle_spectrum",
    "fluctuations",
    "omega_pm_closed_form",
    "goldstone_phase_growth",
    "MARGINAL_RTOL",
]

# squared frequencies in [-MARGINAL_RTOL * omega_R^2, 0] are clamped to zero
MARGINAL_RTOL = 1e-9
_GAP_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class FluctuationResult:
    """Normal-mode data of the quadratic fluctuation Hamiltonian.

    Attributes
    ----------
    g : ndarray, shape (n_cutoff + 1,)
        Photon couplings ``g_j`` to the atomic modes ``b_j``; ``g[0]`` is the
        Goldstone coupling and does not enter ``S``.
    S : ndarray, shape (n_cutoff + 1, n_cutoff + 1)
        Arrowhead kernel matrix.
    omegas : ndarray
        Quasiparticle frequencies, ascending.
    U : ndarray
        Orthogonal matrix whose column ``j`` is the eigenvector of ``S`` for
        ``omegas[j] ** 2``.
    gaps : ndarray
        ``lambda_k - mu`` for ``k = 1..n_cutoff``.
    Omega : float
        Effective cavity frequency of the underlying mean field.
    marginal : bool
        True if a squared frequency was clamped from the rounding window to 0.
    """

    g: np.ndarray
    S: np.ndarray
    omegas: np.ndarray
    U: np.ndarray
    gaps: np.ndarray
    Omega: float
    marginal: bool = False

    @property
    def omega_min(self):
        return float(self.omegas[0])


def coupling_vector(params, sol):
    """Couplings ``g = O^T M'(alpha) gamma`` of the photon to every mode ``b_j``."""
    Mp = build_M_alpha_prime(params, sol.alpha)
    return sol.O.T @ (Mp @ sol.gamma)


def build_S(params, sol, g):
    """Assemble the arrowhead kernel matrix of the fluctuation Hamiltonian.

    ``S[0, 0] = Omega^2``, ``S[k, k] = (lambda_k - mu)^2`` and
    ``S[0, k] = g_k sqrt(Omega (lambda_k - mu))`` for ``k >= 1``.
    """
    Omega = sol.Omega
    if not Omega > 0:
        raise UnstableCavityError(f"Omega = {Omega} is not positive", omega=Omega,
                                  alpha=sol.alpha)
    gaps = np.asarray(sol.lambdas[1:] - sol.mu, dtype=float)
    if np.any(gaps <= _GAP_RTOL * params.omega_R):
        raise DegenerateGapError(f"non-positive excitation gap: min = {gaps.min():.3e}")
    g = np.asarray(g, dtype=float)
    if g.shape != (params.n_cutoff + 1,):
        raise InvalidParameterError(f"g has shape {g.shape}, expected ({params.n_cutoff + 1},)")

    dim = params.n_cutoff + 1
    S = np.zeros((dim, dim))
    S[0, 0] = Omega ** 2
    S[np.arange(1, dim), np.arange(1, dim)] = gaps ** 2
    edge = g[1:] * np.sqrt(Omega * gaps)
    S[0, 1:] = edge
    S[1:, 0] = edge
    return S


def quasiparticle_spectrum(S, omega_R=1.0, method="lapack"):
    """Quasiparticle frequencies ``omega_j = sqrt(eig_j(S))`` and eigenvectors.

    Returns
    -------
    omegas : ndarray
    U : ndarray
    marginal : bool
        True if an eigenvalue in the rounding window ``[-1e-9 omega_R^2, 0]`` was
        clamped to zero.

    Raises
    ------
    DynamicalInstabilityError
        If an eigenvalue of ``S`` is below ``-1e-9 omega_R^2``.
    """
    w2, U = linalg.eigh(S, method=method)
    floor = -MARGINAL_RTOL * omega_R ** 2
    if w2[0] < floor:
        raise DynamicalInstabilityError(
            f"negative squared frequency {w2[0]:.6g}: no stable ground state")
    marginal = bool(w2[0] <= 0.0)
    return np.sqrt(np.clip(w2, 0.0, None)), U, marginal


def fluctuations(params, sol, method="lapack"):
    """Run the full fluctuation analysis on a converged mean field."""
    g = coupling_vector(params, sol)
    S = build_S(params, sol, g)
    omegas, U, marginal = quasiparticle_spectrum(S, params.omega_R, method=method)
    return FluctuationResult(g=g, S=S, omegas=omegas, U=U, gaps=sol.lambdas[1:] - sol.mu,
                             Omega=sol.Omega, marginal=marginal)


def omega_pm_closed_form(params):
    """Frequencies ``(omega_-, omega_+)`` of the photon / ``c_1`` block in the normal phase.

    The squared frequencies are the roots of
    ``w^2 - (delta_C^2 + omega_R^2) w + delta_C^2 omega_R^2 (1 - y^2 / y_crit^2)``.
    ``omega_+^2`` uses the textbook ``+`` root; ``omega_-^2`` is taken from the
    product of the roots so that it vanishes exactly at ``y = y_crit`` instead
    of losing every digit to cancellation.
    """
    y_crit = critical_pump(params)
    dC2 = params.delta_C ** 2
    wR2 = params.omega_R ** 2
    ratio2 = (params.y / y_crit) ** 2
    if ratio2 > 1.0:
        raise InvalidParameterError(
            f"y = {params.y} exceeds y_crit = {y_crit}: the normal phase is unstable")
    mean = 0.5 * (dC2 + wR2)
    radical = math.sqrt((0.5 * (dC2 - wR2)) ** 2 + dC2 * wR2 * ratio2)
    w2_plus = mean + radical
    w2_minus = dC2 * wR2 * (1.0 - ratio2) / w2_plus
    return math.sqrt(w2_minus), math.sqrt(w2_plus)


def goldstone_phase_growth(params, sol, g0, xx00, N_c):
    """Short-time growth of the condensate phase variance.

    Returns ``(coefficient, timescale)`` where the phase variance grows as
    ``coefficient * t^2`` with ``coefficient = g0^2 <(a^+ + a)^2> / (4 N_c)`` and
    ``<(a^+ + a)^2> = 2 Omega <x_0^2>``; ``timescale = pi sqrt(N_c) / |g0|``
    (infinite when ``g0 = 0``).
    """
    if not N_c > 0:
        raise InvalidParameterError(f"N_c must be positive, got {N_c}")
    quad = 2.0 * sol.Omega * xx00
    coefficient = g0 ** 2 * quad / (4.0 * N_c)
    timescale = math.inf if g0 == 0 else math.pi * math.sqrt(N_c) / abs(g0)
    return coefficient, timescale
