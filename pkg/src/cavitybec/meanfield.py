"""Self-consistent mean field of the pumped condensate and cavity mode.

The stationary point satisfies two coupled conditions:

* the cavity amplitude balances the pump scattering,
  ``Omega(gamma) alpha + (y / 2) gamma^T M1 gamma = 0``;
* the condensate amplitudes form the ground state of the matrix built from
  that amplitude, ``M(alpha) gamma = mu gamma``.

The pair is solved by damped fixed-point iteration in ``alpha``, with ``gamma``
slaved to ``alpha`` through the lowest eigenvector of ``M(alpha)``.
"""

from dataclasses import dataclass, field, replace
import math

import numpy as np

from . import linalg
from .errors import (
    BracketError,
    DegenerateGroundStateError,
    InvalidParameterError,
    NoConvergenceError,
    UnstableCavityError,
)
from .model import ModelParams, build_M, effective_frequency

__all__ = [
    "SolverOptions",
    "MeanFieldSolution",
    "update_alpha",
    "normal_phase_solution",
    "solve_mean_field",
    "detect_threshold",
    "THRESHOLD_INDICATOR",
]

# |alpha| above this counts as the ordered (self-organized) phase
THRESHOLD_INDICATOR = 1e-6
# converged amplitudes below this are indistinguishable from the normal phase
_ZERO_ALPHA = 1e-8
# a non-trivial root is accepted once its estimated Newton correction is this small
_RESOLVE_RTOL = 1e-6
_GROUND_GAP_RTOL = 1e-8
_OMEGA_FLOOR_RTOL = 1e-9


@dataclass(frozen=True)
class SolverOptions:
    """Knobs of the fixed-point iteration.

    ``seed_alpha`` is the size of the symmetry-breaking kick used when no warm
    start is given.  Its sign picks one of the two parity-related ordered
    branches: a positive seed starts the iteration at ``alpha = -seed_alpha``,
    which lands on the branch with ``gamma_1 > 0`` and ``alpha < 0``.
    ``accelerate`` replaces the damped step by a secant (Newton) step wherever
    the fixed point being approached is attracting, which removes the
    critical slowing down close to threshold.
    """

    tol: float = 1e-10
    max_iter: int = 10_000
    damping: float = 0.5
    seed_alpha: float = 1e-3
    accelerate: bool = True
    eig_method: str = "lapack"

    def __post_init__(self):
        if not self.tol > 0:
            raise InvalidParameterError(f"tol must be positive, got {self.tol}")
        if not 0 < self.damping <= 1:
            raise InvalidParameterError(f"damping must lie in (0, 1], got {self.damping}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise InvalidParameterError(f"max_iter must be a positive integer, got {self.max_iter}")
        if not math.isfinite(self.seed_alpha) or self.seed_alpha == 0:
            raise InvalidParameterError("seed_alpha must be finite and non-zero")


@dataclass(frozen=True, eq=False)
class MeanFieldSolution:
    params: ModelParams
    alpha: float
    gamma: np.ndarray
    mu: float
    lambdas: np.ndarray
    O: np.ndarray
    Omega: float
    iterations: int = 0
    residual: float = 0.0
    options: SolverOptions = field(default_factory=SolverOptions)

    @property
    def is_normal(self):
        """True for the trivial solution ``alpha = 0``, homogeneous condensate."""
        return self.alpha == 0.0

    @property
    def gaps(self):
        """Excitation gaps ``lambda_k - mu`` for ``k = 1..n_cutoff``."""
        return self.lambdas[1:] - self.mu


def update_alpha(params, gamma):
    """Cavity amplitude balancing the pump for a given condensate ``gamma``."""
    gamma = np.asarray(gamma, dtype=float)
    Omega = effective_frequency(params, gamma)
    if abs(Omega) < _OMEGA_FLOOR_RTOL * params.omega_R:
        raise UnstableCavityError(
            f"effective cavity frequency vanishes (Omega = {Omega:.3e})", omega=Omega)
    q1 = float(gamma @ build_M(1, params.n_cutoff) @ gamma)
    return -0.5 * params.y * q1 / Omega


def _condensate_modes(params, alpha, Ma, method):
    lambdas, O = linalg.eigh(Ma, method=method)
    if lambdas[1] - lambdas[0] < _GROUND_GAP_RTOL * params.omega_R:
        raise DegenerateGroundStateError(
            f"lowest eigenvalue of M(alpha) is degenerate at alpha = {alpha!r} "
            f"(gap {lambdas[1] - lambdas[0]:.3e})")
    # gauge: condensate amplitude in the homogeneous mode is positive
    if O[0, 0] < 0:
        O = O.copy()
        O[:, 0] = -O[:, 0]
    return lambdas, O


def _residual(params, alpha, gamma, mu, Omega, M1, Ma):
    r_alpha = Omega * alpha + 0.5 * params.y * float(gamma @ M1 @ gamma)
    r_gamma = float(np.linalg.norm(Ma @ gamma - mu * gamma))
    return max(abs(r_alpha), r_gamma) / params.omega_R


def normal_phase_solution(params, opts=None):
    """The exact trivial solution: no cavity field, homogeneous condensate."""
    opts = opts or SolverOptions()
    n = params.n_cutoff
    Omega = -params.delta_C
    if Omega <= 0:
        raise UnstableCavityError(
            f"normal phase needs delta_C < 0 (Omega = {Omega})", omega=Omega, alpha=0.0)
    lambdas = params.omega_R * np.arange(n + 1, dtype=float) ** 2
    O = np.eye(n + 1)
    return MeanFieldSolution(params=params, alpha=0.0, gamma=O[:, 0].copy(), mu=0.0,
                             lambdas=lambdas, O=O, Omega=Omega, options=opts)


def solve_mean_field(params, opts=None, alpha0=None):
    """Solve the self-consistent mean-field problem.

    Parameters
    ----------
    params : ModelParams
    opts : SolverOptions, optional
    alpha0 : float, optional
        Warm start (continuation).  When omitted, or zero, the iteration starts
        from ``-opts.seed_alpha``.

    Returns
    -------
    MeanFieldSolution

    Raises
    ------
    UnstableCavityError
        If an accepted iterate has ``Omega(gamma) <= 0``.
    NoConvergenceError
        If the residual stays above ``opts.tol`` after ``opts.max_iter`` steps.
    """
    opts = opts or SolverOptions()
    d = opts.damping
    n = params.n_cutoff
    M0 = build_M(0, n)
    M1 = build_M(1, n)
    M2 = build_M(2, n)
    M2I = M2 + 2.0 * np.eye(n + 1)

    alpha = float(alpha0) if alpha0 else -opts.seed_alpha
    fallback = None  # plain damped step to retry if an accelerated one overshoots
    res = math.inf
    prev = None  # (alpha, h) of the previous accepted iterate
    slope = None  # secant estimate of dh/dalpha
    for it in range(1, opts.max_iter + 1):
        # same assembly as build_M_alpha, with the constant matrices hoisted
        Ma = params.omega_R * M0 + params.y * alpha * M1 + params.u * alpha ** 2 * M2I
        lambdas, O = _condensate_modes(params, alpha, Ma, opts.eig_method)
        gamma = O[:, 0]
        mu = float(lambdas[0])
        Omega = -params.delta_C + params.u * float(gamma @ M2 @ gamma)
        if Omega <= 0:
            if fallback is None:
                raise UnstableCavityError(
                    f"Omega(gamma) = {Omega:.6g} <= 0 at alpha = {alpha:.6g}",
                    omega=Omega, alpha=alpha)
            alpha, fallback = fallback, None
            continue
        fallback = None

        target = -0.5 * params.y * float(gamma @ M1 @ gamma) / Omega
        # fixed points of the map are the roots of h
        h = alpha - target
        if prev is not None and alpha != prev[0]:
            slope = (h - prev[1]) / (alpha - prev[0])
        prev = (alpha, h)

        res = _residual(params, alpha, gamma, mu, Omega, M1, Ma)
        if res <= opts.tol:
            if abs(alpha) < _ZERO_ALPHA:
                return replace(normal_phase_solution(params, opts), iterations=it)
            # near a marginal point the residual is flat in alpha; insist that
            # the root itself is resolved before accepting an ordered solution
            if slope is not None and abs(h) <= _RESOLVE_RTOL * abs(alpha * slope):
                return MeanFieldSolution(params=params, alpha=alpha, gamma=gamma.copy(),
                                         mu=mu, lambdas=lambdas, O=O, Omega=Omega,
                                         iterations=it, residual=res, options=opts)

        nxt = (1.0 - d) * alpha + d * target
        # secant step only where the root is attracting (dh/dalpha > 0); with a
        # negative slope it would pull back onto the repelling trivial solution
        if opts.accelerate and slope is not None and slope > 0.0:
            newton = alpha - h / slope
            if newton * alpha > 0.0 and abs(newton) <= 4.0 * abs(alpha):
                fallback, nxt = nxt, newton
            elif newton * alpha <= 0.0 and abs(newton) <= abs(alpha):
                # the root the secant model sees is the trivial one
                fallback, nxt = nxt, 0.0
        elif opts.accelerate and slope is not None and slope < 0.0 and abs(nxt) > abs(alpha):
            # escaping the repelling trivial solution: grow at least geometrically
            if abs(nxt) < 2.0 * abs(alpha):
                fallback, nxt = nxt, 2.0 * alpha
        alpha = nxt

    raise NoConvergenceError(
        f"mean-field iteration did not converge in {opts.max_iter} steps "
        f"(residual {res:.3e}, alpha {alpha:.6g})", iterations=opts.max_iter, residual=res)


def detect_threshold(params, y_range, opts=None, width=1e-6):
    """Locate the onset of self-organization in the pump strength by bisection.

    The indicator is ``|alpha| > THRESHOLD_INDICATOR`` after a symmetry-broken
    solve.  Every midpoint is warm-started from the closest ordered solution
    found so far, so the iteration always approaches the ordered branch from
    larger amplitudes.  ``params.y`` is ignored.

    Raises
    ------
    BracketError
        If the low end is already ordered or the high end is not.
    """
    opts = opts or SolverOptions()
    lo, hi = (float(v) for v in y_range)
    if not 0 <= lo < hi:
        raise InvalidParameterError(f"y_range must satisfy 0 <= lo < hi, got {y_range}")
    if not width > 0:
        raise InvalidParameterError(f"width must be positive, got {width}")

    low = solve_mean_field(params.replace(y=lo), opts)
    high = solve_mean_field(params.replace(y=hi), opts)
    if abs(low.alpha) > THRESHOLD_INDICATOR or abs(high.alpha) <= THRESHOLD_INDICATOR:
        raise BracketError(
            f"no onset inside y in [{lo}, {hi}]: |alpha| = {abs(low.alpha):.3e} at the low "
            f"end, {abs(high.alpha):.3e} at the high end")

    seed = high.alpha
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        sol = solve_mean_field(params.replace(y=mid), opts, alpha0=seed)
        if abs(sol.alpha) > THRESHOLD_INDICATOR:
            hi, seed = mid, sol.alpha
        else:
            lo = mid
    return 0.5 * (lo + hi)
