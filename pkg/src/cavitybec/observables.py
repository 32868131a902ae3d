"""Ground-state correlations of the fluctuation Hamiltonian.

The ground state is the vacuum of the quasiparticles, a centred Gaussian
state fixed by the quadrature covariances ``<x_k x_l>`` and ``<p_k p_l>``
(symmetrically ordered ``x p`` correlations vanish identically and are not
stored).  Every population and the photon/atom entanglement follow from
these two matrices.
"""

from dataclasses import dataclass
import math

import numpy as np

from .errors import DynamicalInstabilityError

__all__ = [
    "GroundStateObservables",
    "covariances",
    "incoherent_photons",
    "photons_from_covariances",
    "populations_b",
    "populations_c",
    "entanglement",
    "entropies_from_chi",
    "ground_state_observables",
    "NEAR_CRITICAL_RTOL",
]

# omega_min below NEAR_CRITICAL_RTOL * omega_R marks a near-critical point
NEAR_CRITICAL_RTOL = 1e-6


@dataclass(frozen=True, eq=False)
class GroundStateObservables:
    xx: np.ndarray
    pp: np.ndarray
    n_photon: float
    n_b: np.ndarray
    n_c: np.ndarray
    n_out: float
    chi: float
    S_vn: float
    S_lin: float
    near_critical: bool = False


def _require_stable(omegas):
    omegas = np.asarray(omegas, dtype=float)
    if np.any(omegas <= 0.0):
        raise DynamicalInstabilityError(
            "a quasiparticle frequency is zero: ground-state fluctuations diverge")
    return omegas


def covariances(fluct):
    """Quadrature covariance matrices ``(xx, pp)``.

    ``xx = U diag(1 / (2 omega)) U^T`` and ``pp = U diag(omega / 2) U^T``.
    """
    w = _require_stable(fluct.omegas)
    U = fluct.U
    xx = 0.5 * (U / w) @ U.T
    pp = 0.5 * (U * w) @ U.T
    # exact symmetry for downstream consumers
    return 0.5 * (xx + xx.T), 0.5 * (pp + pp.T)


def _mode_population(weights, w, freq):
    return 0.25 * float(np.sum(weights * (w / freq + freq / w - 2.0)))


def incoherent_photons(fluct, Omega):
    """Photon number carried by the fluctuations, summed over quasiparticles."""
    w = _require_stable(fluct.omegas)
    return _mode_population(fluct.U[0] ** 2, w, Omega)


def photons_from_covariances(xx, pp, Omega):
    """``<a^+ a>`` from the photon quadrature variances."""
    return 0.5 * (Omega * xx[0, 0] + pp[0, 0] / Omega) - 0.5


def populations_b(fluct):
    """Occupations ``<b_k^+ b_k>`` of the atomic modes ``k = 1..n_cutoff``."""
    w = _require_stable(fluct.omegas)
    U = fluct.U
    return np.array([_mode_population(U[k] ** 2, w, gap)
                     for k, gap in enumerate(fluct.gaps, start=1)])


def populations_c(sol, fluct):
    """Fluctuation occupations ``<c_n^+ c_n>`` of the cosine modes ``n = 0..n_cutoff``.

    The correlations ``<b_k^+ b_l>`` of the non-Goldstone modes are rotated
    back to the cosine basis with the condensate eigenvectors ``O``.
    """
    w = _require_stable(fluct.omegas)
    gaps = np.asarray(fluct.gaps, dtype=float)
    Ua = fluct.U[1:]  # atomic rows of U
    sq = np.sqrt(gaps)
    geo = np.outer(sq, sq)           # sqrt(D_k D_l)
    ratio = np.outer(sq, 1.0 / sq)   # sqrt(D_k / D_l)
    # bb[k, l] = <b_k^+ b_l>, k, l >= 1
    bb = np.zeros((gaps.size, gaps.size))
    for j, wj in enumerate(w):
        kernel = geo / wj + wj / geo - ratio - ratio.T
        bb += np.outer(Ua[:, j], Ua[:, j]) * kernel
    bb *= 0.25
    Oa = sol.O[:, 1:]
    return np.einsum("nk,kl,nl->n", Oa, bb, Oa)


def entropies_from_chi(chi):
    """Von Neumann entropy (nats) and linear entropy of a single-mode Gaussian state.

    ``chi = 1`` is the pure state; ``(chi - 1) ln(chi - 1)`` is continued by 0 there.
    """
    if chi < 1.0:
        # rounding can push a pure state marginally below 1
        chi = 1.0
    plus = 0.5 * (chi + 1.0)
    minus = 0.5 * (chi - 1.0)
    s_vn = plus * math.log(plus) - (minus * math.log(minus) if minus > 0 else 0.0)
    return s_vn, 1.0 - 1.0 / chi


def entanglement(fluct, xx, pp):
    """Photon-atom entanglement ``(chi, S_vn, S_lin)`` of the ground state.

    ``chi = 2 sqrt(<x_0^2> <p_0^2>)`` is twice the photon uncertainty product.
    """
    _require_stable(fluct.omegas)
    chi = 2.0 * math.sqrt(xx[0, 0] * pp[0, 0])
    s_vn, s_lin = entropies_from_chi(chi)
    return chi, s_vn, s_lin


def ground_state_observables(sol, fluct):
    """Evaluate every ground-state observable for one working point."""
    xx, pp = covariances(fluct)
    n_b = populations_b(fluct)
    chi, s_vn, s_lin = entanglement(fluct, xx, pp)
    return GroundStateObservables(
        xx=xx, pp=pp,
        n_photon=incoherent_photons(fluct, fluct.Omega),
        n_b=n_b,
        n_c=populations_c(sol, fluct),
        n_out=float(np.sum(n_b)),
        chi=chi, S_vn=s_vn, S_lin=s_lin,
        near_critical=bool(fluct.omega_min < NEAR_CRITICAL_RTOL * sol.params.omega_R),
    )
