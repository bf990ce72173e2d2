"""
Boundary layer at the loaded end
================================

A manufactured solution with an exponential layer of width ``eps`` near
``x = 1``. The solution vanishes there, so errors are absolute.
"""

# %%
import numpy as np
import peribc as pb

p = pb.BarProblem.exponential(0.1)
print("traction g =", pb.neumann_data(p))

# %%
errs = {"LLEM": [], "VHM": []}
ns = (32, 64, 128, 256, 512)
for n in ns:
    disc = pb.Discretization(n)
    for m in errs:
        errs[m].append(pb.solve(p, disc, m)[1].max_absolute)
for m, e in errs.items():
    print(m, " ".join(f"{v:.4e}" for v in e))
    print("  rates", np.round(pb.observed_rates(zip([1 / n for n in ns], e)), 3))

# %%
# Thinner layers need far finer grids before the rate settles near two.
p = pb.BarProblem.exponential(0.01)
for n in (512, 2048, 8192):
    print(n, pb.solve(p, pb.Discretization(n), "VHM")[1].max_absolute)
