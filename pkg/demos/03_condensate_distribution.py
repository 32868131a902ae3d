"""Occupation of the cosine modes in the condensate wave function above threshold."""
import numpy as np

from cavitybec import ModelParams, solve_mean_field

p = ModelParams(omega_R=1.0, delta_C=-100.0, u=-20.0, y=0.0, n_cutoff=10)
print("     y   gamma_0^2  gamma_1^2  gamma_2^2  gamma_3^2       mu")
seed = None
for y in np.r_[9.5, 10.0, np.linspace(10.01, 10.1, 4), np.linspace(10.5, 20.0, 6)]:
    sol = solve_mean_field(p.replace(y=y), alpha0=seed)
    seed = sol.alpha if abs(sol.alpha) > 1e-6 else None
    g2 = sol.gamma[:4] ** 2
    print(f"{y:6.2f}  " + "  ".join(f"{v:9.6f}" for v in g2) + f"  {sol.mu:9.5f}")

# gamma_1^2 leaves zero linearly, gamma_2^2 only quadratically
eps = np.array([1e-3, 2e-3])
pops = np.array([solve_mean_field(p.replace(y=10 + e)).gamma[:3] ** 2 for e in eps])
print("\nslope of gamma_1^2 at threshold ~", (pops[1, 1] - pops[0, 1]) / 1e-3)
print("slope of gamma_2^2 at threshold ~", (pops[1, 2] - pops[0, 2]) / 1e-3)
