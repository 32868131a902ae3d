"""Photons and atoms driven out of the condensate by quantum fluctuations."""
import numpy as np

from cavitybec import ModelParams, fluctuations, ground_state_observables, solve_mean_field
from cavitybec.observables import photons_from_covariances

p = ModelParams(omega_R=1.0, delta_C=-100.0, u=-20.0, y=0.0, n_cutoff=3)
print("     y       n_photon       n_out       n_c[0]      n_c[1]    route check")
for y in [0.0, 5.0, 9.0, 9.9, 9.99, 9.999, 10.001, 10.01, 10.1, 11.0, 14.0]:
    q = p.replace(y=y)
    sol = solve_mean_field(q)
    fl = fluctuations(q, sol)
    obs = ground_state_observables(sol, fl)
    check = abs(obs.n_photon - photons_from_covariances(obs.xx, obs.pp, sol.Omega))
    print(f"{y:7.3f}  {obs.n_photon:11.6f}  {obs.n_out:11.6f}  {obs.n_c[0]:10.6f}  "
          f"{obs.n_c[1]:10.6f}    {check:.1e}")
    assert abs(np.sum(obs.n_c) - obs.n_out) < 1e-10 * (1 + obs.n_out)
