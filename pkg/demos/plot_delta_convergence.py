"""
Delta-convergence
=================

Halve the horizon together with the grid (``delta = 2h``) and watch the
errors against the local solution.
"""

# %%
import tempfile

import peribc as pb
from peribc.studies import DeltaConvergence, StudySpec, run_study

out = tempfile.mkdtemp()

# %%
# The quadratic case is reproduced exactly by the local model and by the
# variable horizon method. The extended domain method converges at first
# order only.
for case in ("quadratic", "cubic", "quartic"):
    res = run_study(StudySpec(DeltaConvergence(pb.Case(case)), out))
    print(case)
    print("  ", ",".join(res.header))
    for row in res.rows:
        print("  ", row[0], " ".join(f"{v:.5f}" for v in row[2:]))
    for name, rates in res.rates.items():
        print("   rate", name, ["exact" if r is None else round(r, 2) for r in rates])

# %%
# Rates can also be computed by hand from any ``(h, error)`` sequence.
errs = [(1 / n, pb.solve(pb.BarProblem("quartic"), pb.Discretization(n), "VHM")[1].max_relative)
        for n in (8, 16, 32, 64)]
print(pb.observed_rates(errs))
