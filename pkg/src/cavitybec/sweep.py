"""Parameter sweeps over the pump strength ``y`` or the dispersive coupling ``u``.

A run is described by a small TOML document::

    omega_R  = 1.0
    delta_C  = -100.0
    u        = -20.0        # the coupling that stays fixed
    n_cutoff = 10
    # N_c    = 1e5          # optional, adds Goldstone phase-growth columns
    # output = "pump_scan"  # optional CSV path prefix

    [sweep]
    axis  = "y"             # "y" or "u"
    start = 0.0
    stop  = 20.0
    steps = 201

    [solver]                # optional, every key has a default
    tol        = 1e-10
    max_iter   = 10000
    damping    = 0.5
    seed_alpha = 1e-3
    accelerate = true

Exactly one of ``u`` / ``y`` appears at top level: the one not swept.  Unknown
keys anywhere are rejected.  The grid is traversed from ``start`` to ``stop``
(either direction) and every point is warm-started from its predecessor.
"""

from dataclasses import asdict, dataclass, field
import json
import math
import re
import sys

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import (
    BracketError,
    ConfigError,
    DegenerateGapError,
    DegenerateGroundStateError,
    DynamicalInstabilityError,
    NoConvergenceError,
    UnstableCavityError,
)
from .fluctuations import fluctuations, goldstone_phase_growth
from .meanfield import THRESHOLD_INDICATOR, SolverOptions, detect_threshold, solve_mean_field
from .model import ModelParams
from .observables import NEAR_CRITICAL_RTOL, ground_state_observables

__all__ = [
    "RunConfig",
    "SweepRecord",
    "SweepResult",
    "parse_config",
    "run_sweep",
    "write_csv",
    "csv_header",
    "EXIT_OK",
    "EXIT_NO_CONVERGE",
    "EXIT_UNSTABLE",
    "EXIT_BAD_CONFIG",
]

EXIT_OK = 0
EXIT_NO_CONVERGE = 2
EXIT_UNSTABLE = 3
EXIT_BAD_CONFIG = 4

OK = "ok"
NEAR_CRITICAL = "near-critical"
UNSTABLE = "unstable"
NO_CONVERGE = "no-converge"

_TOP_KEYS = {"omega_R", "delta_C", "u", "y", "n_cutoff", "N_c", "output", "sweep", "solver"}
_SWEEP_KEYS = {"axis", "start", "stop", "steps"}
_SOLVER_KEYS = {"tol", "max_iter", "damping", "seed_alpha", "accelerate"}


@dataclass(frozen=True)
class RunConfig:
    omega_R: float
    delta_C: float
    n_cutoff: int
    axis: str
    fixed: float
    start: float
    stop: float
    steps: int
    solver: SolverOptions = field(default_factory=SolverOptions)
    N_c: float = None
    output: str = None

    @property
    def fixed_name(self):
        return "u" if self.axis == "y" else "y"

    def grid(self):
        return np.linspace(self.start, self.stop, self.steps)

    def base_params(self):
        """Model parameters with the swept coupling at ``start``."""
        couplings = {self.axis: self.start, self.fixed_name: self.fixed}
        return ModelParams(omega_R=self.omega_R, delta_C=self.delta_C,
                           n_cutoff=self.n_cutoff, **couplings)

    def to_dict(self):
        """Canonical, fully-defaulted form echoed into the CSV header."""
        out = {
            "omega_R": self.omega_R,
            "delta_C": self.delta_C,
            self.fixed_name: self.fixed,
            "n_cutoff": self.n_cutoff,
            "sweep": {"axis": self.axis, "start": self.start, "stop": self.stop,
                      "steps": self.steps},
            "solver": {k: v for k, v in asdict(self.solver).items() if k in _SOLVER_KEYS},
        }
        if self.N_c is not None:
            out["N_c"] = self.N_c
        if self.output is not None:
            out["output"] = self.output
        return out


def _line_of(text, key):
    m = re.search(rf"^[ \t]*{re.escape(key)}[ \t]*=", text, flags=re.MULTILINE)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _fail(text, key, message):
    line = _line_of(text, key.split(".")[-1]) if key else None
    where = f"line {line}, " if line else ""
    raise ConfigError(f"{where}field '{key}': {message}")


def _number(text, doc, key, path=None, integer=False):
    path = path or key
    value = doc[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        _fail(text, path, f"expected a number, got {value!r}")
    if integer:
        if isinstance(value, float) and not value.is_integer():
            _fail(text, path, f"expected an integer, got {value!r}")
        return int(value)
    value = float(value)
    if not math.isfinite(value):
        _fail(text, path, f"must be finite, got {value!r}")
    return value


def _reject_unknown(text, table, allowed, prefix=""):
    for key in table:
        if key not in allowed:
            _fail(text, prefix + key, "unknown key (allowed: " + ", ".join(sorted(allowed)) + ")")


def parse_config(text):
    """Parse a run configuration document into a :class:`RunConfig`.

    Raises
    ------
    ConfigError
        With the offending line and field whenever the document is malformed.
    """
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"syntax error: {exc}") from None

    _reject_unknown(text, doc, _TOP_KEYS)
    for key in ("omega_R", "delta_C", "n_cutoff", "sweep"):
        if key not in doc:
            raise ConfigError(f"missing required field '{key}'")

    sweep = doc["sweep"]
    if not isinstance(sweep, dict):
        _fail(text, "sweep", "must be a table ([sweep])")
    _reject_unknown(text, sweep, _SWEEP_KEYS, "sweep.")
    for key in _SWEEP_KEYS:
        if key not in sweep:
            raise ConfigError(f"missing required field 'sweep.{key}'")
    axis = sweep["axis"]
    if axis not in ("y", "u"):
        _fail(text, "sweep.axis", f"must be \"y\" or \"u\", got {axis!r}")
    fixed_name = "u" if axis == "y" else "y"
    if axis in doc:
        _fail(text, axis, f"'{axis}' is swept; give only the fixed coupling '{fixed_name}'")
    if fixed_name not in doc:
        raise ConfigError(f"missing required field '{fixed_name}' (fixed while sweeping {axis})")

    start = _number(text, sweep, "start", "sweep.start")
    stop = _number(text, sweep, "stop", "sweep.stop")
    steps = _number(text, sweep, "steps", "sweep.steps", integer=True)
    if steps < 2:
        _fail(text, "sweep.steps", f"must be >= 2, got {steps}")
    if start == stop:
        _fail(text, "sweep.stop", "start and stop must differ")
    if axis == "y" and min(start, stop) < 0:
        _fail(text, "sweep.start", "pump strength y must be non-negative")

    solver_doc = doc.get("solver", {})
    if not isinstance(solver_doc, dict):
        _fail(text, "solver", "must be a table ([solver])")
    _reject_unknown(text, solver_doc, _SOLVER_KEYS, "solver.")
    solver_kwargs = {}
    for key, value in solver_doc.items():
        if key == "accelerate":
            if not isinstance(value, bool):
                _fail(text, "solver.accelerate", f"expected true/false, got {value!r}")
            solver_kwargs[key] = value
        else:
            solver_kwargs[key] = _number(text, solver_doc, key, "solver." + key,
                                         integer=(key == "max_iter"))
    try:
        solver = SolverOptions(**solver_kwargs)
    except ValueError as exc:
        raise ConfigError(f"[solver]: {exc}") from None

    N_c = None
    if "N_c" in doc:
        N_c = _number(text, doc, "N_c")
        if N_c <= 0:
            _fail(text, "N_c", f"must be positive, got {N_c}")
    output = doc.get("output")
    if output is not None and not isinstance(output, str):
        _fail(text, "output", f"expected a string, got {output!r}")

    config = RunConfig(
        omega_R=_number(text, doc, "omega_R"),
        delta_C=_number(text, doc, "delta_C"),
        n_cutoff=_number(text, doc, "n_cutoff", integer=True),
        axis=axis,
        fixed=_number(text, doc, fixed_name),
        start=start, stop=stop, steps=steps,
        solver=solver, N_c=N_c, output=output,
    )
    try:
        config.base_params()
        if axis == "y":
            config.base_params().replace(y=stop)
    except ValueError as exc:
        raise ConfigError(f"invalid model parameters: {exc}") from None
    return config


@dataclass
class SweepRecord:
    swept: float
    status: str
    alpha_abs: float = math.nan
    mu: float = math.nan
    Omega: float = math.nan
    n_photon: float = math.nan
    n_out: float = math.nan
    chi: float = math.nan
    S_vn: float = math.nan
    S_lin: float = math.nan
    gamma: np.ndarray = None
    omegas: np.ndarray = None
    n_c: np.ndarray = None
    g0: float = math.nan
    phase_growth: float = math.nan
    phase_timescale: float = math.nan
    message: str = ""


@dataclass
class SweepResult:
    config: RunConfig
    records: list
    exit_code: int
    threshold: float = None
    divergence: tuple = None
    failures: list = field(default_factory=list)

    def summary(self):
        lines = [f"{len(self.records)} of {self.config.steps} points evaluated"]
        counts = {}
        for rec in self.records:
            counts[rec.status] = counts.get(rec.status, 0) + 1
        lines.append("status: " + ", ".join(f"{k}={v}" for k, v in sorted(counts.items())))
        if self.threshold is not None:
            lines.append(f"threshold: y = {self.threshold:.10g}")
        if self.divergence is not None:
            last_ok, first_bad = self.divergence
            lines.append(f"unstable region entered between {self.config.axis} = "
                         f"{last_ok!r} and {first_bad!r}")
        for value, status, message in self.failures:
            lines.append(f"{status} at {self.config.axis} = {value!r}: {message}")
        return "\n".join(lines)


def _column_names(config):
    N = config.n_cutoff
    cols = ["swept", "alpha_abs", "mu", "Omega", "n_photon", "n_out", "chi", "S_vn", "S_lin",
            "status"]
    cols += [f"gamma_{i}" for i in range(N + 1)]
    cols += [f"omega_{i}" for i in range(N + 1)]
    cols += [f"nc_{i}" for i in range(N + 1)]
    if config.N_c is not None:
        cols += ["g0", "phase_growth", "phase_timescale"]
    return cols


def _fmt(x):
    return "%.17g" % x


def _vector(values, n):
    if values is None:
        return [_fmt(math.nan)] * n
    return [_fmt(v) for v in values]


def csv_header(config):
    """The two header lines: config echo (``#`` comment) and column names."""
    echo = json.dumps(config.to_dict(), sort_keys=True, separators=(",", ":"))
    return "# " + echo + "\n" + ",".join(_column_names(config)) + "\n"


def _row(rec, config):
    n = config.n_cutoff + 1
    cells = [_fmt(rec.swept)]
    cells += [_fmt(v) for v in (rec.alpha_abs, rec.mu, rec.Omega, rec.n_photon, rec.n_out,
                                rec.chi, rec.S_vn, rec.S_lin)]
    cells.append(rec.status)
    cells += _vector(rec.gamma, n) + _vector(rec.omegas, n) + _vector(rec.n_c, n)
    if config.N_c is not None:
        cells += [_fmt(rec.g0), _fmt(rec.phase_growth), _fmt(rec.phase_timescale)]
    return ",".join(cells) + "\n"


def write_csv(result, path):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(csv_header(result.config))
        for rec in result.records:
            fh.write(_row(rec, result.config))


def _evaluate_point(config, params, alpha0):
    """Solve one grid point; returns ``(record, solution_or_None)``."""
    value = getattr(params, config.axis)
    try:
        sol = solve_mean_field(params, config.solver, alpha0=alpha0)
    except UnstableCavityError as exc:
        return SweepRecord(value, UNSTABLE, message=str(exc)), None
    except (NoConvergenceError, DegenerateGroundStateError) as exc:
        return SweepRecord(value, NO_CONVERGE, message=str(exc)), None

    rec = SweepRecord(value, OK, alpha_abs=abs(sol.alpha), mu=sol.mu, Omega=sol.Omega,
                      gamma=sol.gamma.copy())
    try:
        fl = fluctuations(params, sol)
    except (DynamicalInstabilityError, DegenerateGapError) as exc:
        rec.status, rec.message = UNSTABLE, str(exc)
        return rec, sol
    rec.omegas = fl.omegas.copy()
    rec.g0 = float(fl.g[0])
    if fl.marginal or fl.omega_min < NEAR_CRITICAL_RTOL * params.omega_R:
        rec.status = NEAR_CRITICAL
    try:
        obs = ground_state_observables(sol, fl)
    except DynamicalInstabilityError as exc:
        # zero frequency: the covariances diverge, leave them as NaN
        rec.message = str(exc)
        return rec, sol
    rec.n_photon, rec.n_out = obs.n_photon, obs.n_out
    rec.chi, rec.S_vn, rec.S_lin = obs.chi, obs.S_vn, obs.S_lin
    rec.n_c = obs.n_c.copy()
    if config.N_c is not None:
        rec.phase_growth, rec.phase_timescale = goldstone_phase_growth(
            params, sol, rec.g0, obs.xx[0, 0], config.N_c)
    return rec, sol


def run_sweep(config, refine_threshold=True):
    """Run the sweep described by ``config``.

    Each point warm-starts from the last ordered solution (continuation);
    points in the normal phase restart from the symmetry-broken seed.  The
    sweep stops at the first dynamically unstable point, which is recorded
    with status ``unstable``.  Non-converged points are recorded and skipped.

    Returns
    -------
    SweepResult
        ``exit_code`` is 0 on full success, 2 if any point failed to converge,
        3 if the sweep entered an unstable region.
    """
    base = config.base_params()
    records = []
    failures = []
    exit_code = EXIT_OK
    divergence = None
    alpha0 = None
    last_ok = None
    for value in config.grid():
        params = base.replace(**{config.axis: float(value)})
        rec, sol = _evaluate_point(config, params, alpha0)
        records.append(rec)
        if rec.status == UNSTABLE:
            failures.append((rec.swept, rec.status, rec.message))
            divergence = (last_ok, rec.swept)
            exit_code = EXIT_UNSTABLE
            break
        if rec.status == NO_CONVERGE:
            failures.append((rec.swept, rec.status, rec.message))
            exit_code = EXIT_NO_CONVERGE
            continue
        last_ok = rec.swept
        alpha0 = sol.alpha if abs(sol.alpha) > THRESHOLD_INDICATOR else None

    threshold = None
    if refine_threshold and config.axis == "y":
        threshold = _refine_threshold(config, base, records)
    return SweepResult(config=config, records=records, exit_code=exit_code,
                       threshold=threshold, divergence=divergence, failures=failures)


def _refine_threshold(config, base, records):
    """Bisect the first grid interval where the normal phase gives way to order."""
    solved = [r for r in records if r.status in (OK, NEAR_CRITICAL)]
    for a, b in zip(solved, solved[1:]):
        ordered_a = a.alpha_abs > THRESHOLD_INDICATOR
        ordered_b = b.alpha_abs > THRESHOLD_INDICATOR
        if ordered_a != ordered_b:
            lo, hi = sorted((a.swept, b.swept))
            try:
                return detect_threshold(base, (lo, hi), config.solver)
            except (BracketError, NoConvergenceError, UnstableCavityError,
                    DegenerateGroundStateError):
                return None
    return None


def threshold_only(config):
    """Bisect for the onset over the whole sweep range (``axis`` must be ``y``)."""
    if config.axis != "y":
        raise ConfigError("threshold detection needs a sweep over y")
    lo, hi = sorted((config.start, config.stop))
    return detect_threshold(config.base_params(), (lo, hi), config.solver)
