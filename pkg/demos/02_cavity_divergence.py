"""Growth of the cavity field with the dispersive coupling until the cavity frequency closes."""
import math

from cavitybec.sweep import RunConfig, run_sweep

for n in (1, 2, 10):
    cfg = RunConfig(omega_R=1.0, delta_C=-100.0, n_cutoff=n, axis="u", fixed=11.0,
                    start=0.0, stop=-150.0, steps=601)
    res = run_sweep(cfg, refine_threshold=False)
    ok = [r for r in res.records if r.status == "ok"]
    print(f"n_cutoff={n:2d}: last stable u = {res.divergence[0]:8.2f}, "
          f"|alpha| there = {ok[-1].alpha_abs:.4f}, Omega = {ok[-1].Omega:.4f}")
    for r in ok[::80]:
        print(f"    u = {r.swept:8.2f}   |alpha| = {r.alpha_abs:.5f}   Omega = {r.Omega:8.3f}")

# with modes 0..2 the quadratic form of M2 is bounded by sqrt(2), so Omega can
# close already at u = delta_C / sqrt(2)
print("\ndelta_C / sqrt(2) =", -100.0 / math.sqrt(2))
