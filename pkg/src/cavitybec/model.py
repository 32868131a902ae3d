"""Run parameters and the matrix bookkeeping of the cosine-mode Hamiltonian.

The atom field is expanded in the even box modes ``1/sqrt(L)`` and
``sqrt(2/L) cos(n k x)``, ``n = 1..n_cutoff``, so every operator acting on the
condensate is an ``(n_cutoff + 1)``-dimensional real symmetric matrix.  All
frequencies are angular frequencies in units with hbar = 1.
"""

from dataclasses import dataclass, replace
import math

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "ModelParams",
    "from_microscopic",
    "build_M",
    "effective_frequency",
    "build_M_alpha",
    "build_M_alpha_prime",
    "mean_field_energy",
    "critical_pump",
]

DEFAULT_N_CUTOFF = 10
_UNIT_NORM_TOL = 1e-12


@dataclass(frozen=True)
class ModelParams:
    """Thermodynamic-limit parameters of one run.

    Parameters
    ----------
    omega_R : float
        Recoil frequency, ``k^2 / 2m``.  Must be positive.
    delta_C : float
        Cavity detuning shifted by the homogeneous dispersive shift.
    u : float
        Collective dispersive coupling ``N_c U_0 / 4``.
    y : float
        Collective pump strength ``sqrt(2 N_c) eta_t``; non-negative.
    n_cutoff : int
        Highest cosine-mode index kept; the atomic modes are ``0..n_cutoff``.
        ``n_cutoff = 1`` is the strict two-mode (Dicke) model.
    """

    omega_R: float
    delta_C: float
    u: float
    y: float
    n_cutoff: int = DEFAULT_N_CUTOFF

    def __post_init__(self):
        for name in ("omega_R", "delta_C", "u", "y"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be finite, got {value!r}")
        if self.omega_R <= 0:
            raise InvalidParameterError(f"omega_R must be positive, got {self.omega_R}")
        if self.y < 0:
            raise InvalidParameterError(
                f"y must be non-negative (gauge convention), got {self.y}")
        if isinstance(self.n_cutoff, bool) or int(self.n_cutoff) != self.n_cutoff:
            raise InvalidParameterError(f"n_cutoff must be an integer, got {self.n_cutoff!r}")
        if self.n_cutoff < 1:
            raise InvalidParameterError(f"n_cutoff must be >= 1, got {self.n_cutoff}")
        object.__setattr__(self, "n_cutoff", int(self.n_cutoff))

    @property
    def dim(self):
        """Number of atomic cosine modes, ``n_cutoff + 1``."""
        return self.n_cutoff + 1

    def replace(self, **changes):
        return replace(self, **changes)


def from_microscopic(Delta_C, U0, eta_t, N_c, omega_R, n_cutoff=DEFAULT_N_CUTOFF):
    """Convert microscopic couplings to the reduced thermodynamic-limit set.

    ``delta_C = Delta_C - N_c U0 / 2``, ``u = N_c U0 / 4`` and
    ``y = sqrt(2 N_c) eta_t``.
    """
    if not N_c > 0:
        raise InvalidParameterError(f"N_c must be positive, got {N_c}")
    if not omega_R > 0:
        raise InvalidParameterError(f"omega_R must be positive, got {omega_R}")
    return ModelParams(
        omega_R=float(omega_R),
        delta_C=float(Delta_C - 0.5 * N_c * U0),
        u=float(0.25 * N_c * U0),
        y=float(math.sqrt(2.0 * N_c) * eta_t),
        n_cutoff=n_cutoff,
    )


def build_M(j, n_cutoff):
    """Return the coupling matrix ``M^(j)`` for ``j`` in ``{0, 1, 2}``.

    ``M^(0)`` holds the kinetic energies ``n^2``; ``M^(1)`` is the matrix of
    ``cos(kx)`` and ``M^(2)`` that of ``2 cos^2(kx) - 1 = cos(2kx)`` in the
    normalized cosine basis.

    >>> build_M(0, 3).diagonal()
    array([0., 1., 4., 9.])
    """
    if j not in (0, 1, 2):
        raise InvalidParameterError(f"j must be 0, 1 or 2, got {j!r}")
    if isinstance(n_cutoff, bool) or int(n_cutoff) != n_cutoff or n_cutoff < 1:
        raise InvalidParameterError(f"n_cutoff must be an integer >= 1, got {n_cutoff!r}")
    dim = int(n_cutoff) + 1
    if j == 0:
        return np.diag(np.arange(dim, dtype=float) ** 2)

    M = np.zeros((dim, dim))
    if j == 1:
        M[0, 1] = 1.0
        idx = np.arange(1, dim - 1)
        M[idx, idx + 1] = 1.0 / math.sqrt(2.0)
    else:
        M[1, 1] = 1.0
        if dim > 2:
            M[0, 2] = math.sqrt(2.0)
        idx = np.arange(1, dim - 2)
        M[idx, idx + 2] = 1.0
    # fill the lower triangle from the upper one; symmetric by construction
    return np.triu(M) + np.triu(M, 1).T


def _check_unit(gamma):
    gamma = np.asarray(gamma, dtype=float)
    norm2 = float(gamma @ gamma)
    if abs(norm2 - 1.0) >= _UNIT_NORM_TOL:
        raise InvalidParameterError(f"gamma must be a unit vector, |gamma|^2 = {norm2!r}")
    return gamma


def _check_dim(params, gamma):
    if gamma.shape != (params.dim,):
        raise InvalidParameterError(
            f"gamma has shape {gamma.shape}, expected ({params.dim},)")


def effective_frequency(params, gamma):
    """Effective cavity resonance ``Omega = -delta_C + u gamma^T M2 gamma``."""
    gamma = _check_unit(gamma)
    _check_dim(params, gamma)
    M2 = build_M(2, params.n_cutoff)
    return -params.delta_C + params.u * float(gamma @ M2 @ gamma)


def build_M_alpha(params, alpha):
    """Condensate matrix ``omega_R M0 + y alpha M1 + u alpha^2 (M2 + 2I)``."""
    n = params.n_cutoff
    return (params.omega_R * build_M(0, n)
            + params.y * alpha * build_M(1, n)
            + params.u * alpha ** 2 * (build_M(2, n) + 2.0 * np.eye(n + 1)))


def build_M_alpha_prime(params, alpha):
    """Derivative of :func:`build_M_alpha` with respect to ``alpha``."""
    n = params.n_cutoff
    return (params.y * build_M(1, n)
            + 2.0 * params.u * alpha * (build_M(2, n) + 2.0 * np.eye(n + 1)))


def mean_field_energy(params, alpha, gamma, mu):
    """Mean-field grand-canonical energy per condensed atom, ``K^(0) / N_c``."""
    gamma = _check_unit(gamma)
    _check_dim(params, gamma)
    n = params.n_cutoff
    q0 = float(gamma @ build_M(0, n) @ gamma)
    q1 = float(gamma @ build_M(1, n) @ gamma)
    q2 = float(gamma @ build_M(2, n) @ gamma)
    return (-params.delta_C * alpha ** 2 + params.omega_R * q0
            + params.y * alpha * q1 + params.u * alpha ** 2 * q2 - mu)


def critical_pump(params):
    """Pump strength ``sqrt(-delta_C omega_R)`` at which the normal phase softens."""
    if params.delta_C >= 0:
        raise InvalidParameterError(
            f"critical pump needs delta_C < 0, got {params.delta_C}")
    return math.sqrt(-params.delta_C * params.omega_R)
