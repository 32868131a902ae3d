"""Photon-atom entanglement of the ground state, through chi and the two entropies."""
import numpy as np

from cavitybec import ModelParams, fluctuations, ground_state_observables, solve_mean_field
from cavitybec.observables import entropies_from_chi

p = ModelParams(omega_R=1.0, delta_C=-100.0, u=-20.0, y=0.0, n_cutoff=3)
print("       y          chi        S_vn       S_lin")
for y in np.r_[0.0, 5.0, 9.0, 10 * (1 - 10.0 ** -np.arange(2, 9)), 10.01, 10.5, 12.0, 16.0]:
    q = p.replace(y=y)
    sol = solve_mean_field(q)
    obs = ground_state_observables(sol, fluctuations(q, sol))
    print(f"{y:12.8f}  {obs.chi:9.5f}  {obs.S_vn:9.5f}  {obs.S_lin:9.6f}")

print("\nchi = 3:", entropies_from_chi(3.0), " expected (2 ln 2, 2/3)")
