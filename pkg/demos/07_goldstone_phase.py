"""Spreading of the condensate phase driven by the Goldstone coupling above threshold."""
from cavitybec import ModelParams, fluctuations, goldstone_phase_growth, solve_mean_field
from cavitybec.observables import covariances

p = ModelParams(omega_R=1.0, delta_C=-100.0, u=-20.0, y=0.0, n_cutoff=10)
print("     y        g0       coefficient (N=1e5)   timescale (N=1e5)   timescale (N=1e7)")
for y in [5.0, 10.5, 11.0, 15.0, 20.0]:
    q = p.replace(y=y)
    sol = solve_mean_field(q)
    fl = fluctuations(q, sol)
    xx, _ = covariances(fl)
    c5, t5 = goldstone_phase_growth(q, sol, fl.g[0], xx[0, 0], 1e5)
    _, t7 = goldstone_phase_growth(q, sol, fl.g[0], xx[0, 0], 1e7)
    print(f"{y:6.1f}  {fl.g[0]:9.5f}   {c5:18.6e}   {t5:17.4f}   {t7:17.4f}")
