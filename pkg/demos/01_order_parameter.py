"""Cavity amplitude across the self-organization threshold, for two cutoffs."""
import numpy as np

from cavitybec import ModelParams, critical_pump, detect_threshold, solve_mean_field

base = ModelParams(omega_R=1.0, delta_C=-100.0, u=-20.0, y=0.0)
print("critical pump from the closed form:", critical_pump(base))

# sweep y with continuation: each point starts from the previous ordered amplitude
ys = np.linspace(0.0, 20.0, 21)
table = {}
for n in (2, 10):
    p = base.replace(n_cutoff=n)
    seed = None
    col = []
    for y in ys:
        sol = solve_mean_field(p.replace(y=y), alpha0=seed)
        seed = sol.alpha if abs(sol.alpha) > 1e-6 else None
        col.append(abs(sol.alpha))
    table[n] = col
    print(f"n_cutoff={n:2d}: bisected threshold y_c = {detect_threshold(p, (0.0, 20.0)):.8f}")

print("\n    y    |alpha| n=2   |alpha| n=10")
for y, a2, a10 in zip(ys, table[2], table[10]):
    print(f"{y:6.1f}   {a2:11.6f}   {a10:11.6f}")
