"""Bogoliubov frequencies on both sides of the transition and the normal-phase closed form."""
import numpy as np

from cavitybec import ModelParams, fluctuations, omega_pm_closed_form, solve_mean_field

p = ModelParams(omega_R=1.0, delta_C=-100.0, u=-20.0, y=0.0, n_cutoff=5)
print("     y    omega_0    omega_1    omega_2    omega_3    closed-form omega_-")
seed = None
for y in np.r_[np.linspace(0.0, 9.0, 4), 9.9, 10.0, 10.5, 12.0, 16.0, 20.0]:
    q = p.replace(y=y)
    sol = solve_mean_field(q, alpha0=seed)
    seed = sol.alpha if abs(sol.alpha) > 1e-6 else None
    w = fluctuations(q, sol).omegas
    closed = f"{omega_pm_closed_form(q)[0]:10.6f}" if sol.is_normal else "         -"
    print(f"{y:6.2f}  " + "  ".join(f"{v:9.5f}" for v in w[:4]) + "    " + closed)

# at y = 0: ideal gas k^2 omega_R plus the bare cavity at |delta_C|
print("\ny = 0 spectrum:", fluctuations(p, solve_mean_field(p)).omegas)
