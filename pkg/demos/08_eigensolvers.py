"""The two eigensolver back ends on random symmetric matrices and on M(alpha)."""
import time

import numpy as np

from cavitybec import ModelParams, build_M_alpha, linalg

rng = np.random.default_rng(1)
print(" dim   max |w_lapack - w_jacobi|   reconstruction   t_lapack    t_jacobi")
for dim in (4, 11, 32, 64):
    A = rng.normal(size=(dim, dim))
    A = 0.5 * (A + A.T)
    t0 = time.perf_counter()
    wl, Vl = linalg.eigh(A)
    t1 = time.perf_counter()
    wj, Vj = linalg.eigh(A, method="jacobi")
    t2 = time.perf_counter()
    rec = np.max(np.abs((Vj * wj) @ Vj.T - A))
    print(f"{dim:4d}   {np.max(np.abs(wl - wj)):24.2e}   {rec:14.2e}   {t1 - t0:8.5f}s  {t2 - t1:8.5f}s")

Ma = build_M_alpha(ModelParams(omega_R=1.0, delta_C=-100.0, u=-20.0, y=11.0), -0.042)
w, V = linalg.eigh(Ma)
print("\nlowest eigenpair of M(alpha = -0.042):", w[0], V[:4, 0])
