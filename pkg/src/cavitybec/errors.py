"""Exception hierarchy shared by every stage of the pipeline."""


class CavityBECError(Exception):
    """Base class for all errors raised by :mod:`cavitybec`."""


class InvalidParameterError(CavityBECError, ValueError):
    """A model or solver parameter violates its documented domain."""


class UnstableCavityError(CavityBECError, ArithmeticError):
    """The effective cavity frequency Omega(gamma) is not positive."""

    def __init__(self, message, omega=None, alpha=None):
        super().__init__(message)
        self.omega = omega
        self.alpha = alpha


class NoConvergenceError(CavityBECError, RuntimeError):
    """An iterative scheme exhausted its iteration budget."""

    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


class DegenerateGroundStateError(CavityBECError, ArithmeticError):
    """The two lowest eigenvalues of M(alpha) coincide, so gamma is ambiguous."""


class DegenerateGapError(CavityBECError, ArithmeticError):
    """An excitation gap lambda_k - mu (k >= 1) is not strictly positive."""


class DynamicalInstabilityError(CavityBECError, ArithmeticError):
    """The quadratic fluctuation Hamiltonian has no stable ground state."""


class BracketError(CavityBECError, ValueError):
    """A bisection interval does not bracket a change of the indicator."""


class ConfigError(CavityBECError, ValueError):
    """A run configuration document is malformed."""
