"""Mean-field and quantum-fluctuation numerics for a transversely pumped
condensate coupled to a single cavity mode."""

from .errors import (
    BracketError,
    CavityBECError,
    ConfigError,
    DegenerateGapError,
    DegenerateGroundStateError,
    DynamicalInstabilityError,
    InvalidParameterError,
    NoConvergenceError,
    UnstableCavityError,
)
from .model import (
    ModelParams,
    build_M,
    build_M_alpha,
    build_M_alpha_prime,
    critical_pump,
    effective_frequency,
    from_microscopic,
    mean_field_energy,
)
from .linalg import eigh, jacobi_eigh
from .meanfield import (
    MeanFieldSolution,
    SolverOptions,
    detect_threshold,
    normal_phase_solution,
    solve_mean_field,
    update_alpha,
)
from .fluctuations import (
    FluctuationResult,
    build_S,
    coupling_vector,
    fluctuations,
    goldstone_phase_growth,
    omega_pm_closed_form,
    quasiparticle_spectrum,
)
from .observables import GroundStateObservables, ground_state_observables

__version__ = "0.1.0"
