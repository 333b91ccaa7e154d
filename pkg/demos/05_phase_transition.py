"""
The satisfiability transition
=============================

Sweep c at fixed n, estimate P(Phi_R satisfiable) with Wilson intervals,
then bisect for the crossing of 1/2.  The rigorous union bound sits far
to the right of the empirical transition.
"""

import numpy as np

from triangular_lo.bounds import c_zero
from triangular_lo.experiments import SweepConfig, estimate_threshold, run_sweep
from triangular_lo.fileio import summary_text

n = 80
cfg = SweepConfig(n, c_values=list(np.round(np.arange(0.05, 0.65, 0.05), 2)), trials=60,
                  master_seed=7)
points, records = run_sweep(cfg)
print(summary_text(points))
print(len(records), "trial records; first:", records[0])

result = estimate_threshold(n, 0.05, 0.6, trials=60, seed=7)
print(f"empirical crossing at c ~ {result.estimate:.3f} (c_0 = {c_zero():.4f})")
for pt in result.points:
    print(f"  c = {pt.c:.4f}  P(sat) = {pt.estimate:.2f}")

# the R_m model: m uniform draws, compared against 2^n q^m
cfg = SweepConfig(n, c_values=[0.3, 0.4, 0.5], model="uniform_m", trials=60, master_seed=7)
for pt in run_sweep(cfg)[0]:
    print(f"m = {pt.m}: P(sat) = {pt.estimate:.2f}, union bound {pt.union_bound:.3g}")
