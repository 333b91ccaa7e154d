"""
Deciding Phi_R
==============

Three ways to decide a formula: exhaustive search, a DPLL solver
(lowest-index variable, true first, unit propagation and pure literals),
and a clause-learning solver.  All three agree; the learning solver is what
makes n = 150 instances take milliseconds.
"""

import time

from triangular_lo.encoding import encode_presentation
from triangular_lo.sat import brute_force, solve
from triangular_lo.words import sample_binomial

pres = sample_binomial(12, 0.15 / 144, seed=5)
phi = encode_presentation(pres)
exact = brute_force(phi, count=True)
print("brute force:", exact.status, "models:", exact.count)
for method in ("dpll", "cdcl"):
    v = solve(phi, method=method)
    print(method, v.status, v.model_literals())

# near the transition DPLL needs exponentially many decisions
n = 120
phi = encode_presentation(sample_binomial(n, 0.25 / n ** 2, seed=8))
for method in ("cdcl", "dpll"):
    t0 = time.perf_counter()
    v = solve(phi, method=method, budget_ms=5000)
    print(f"{method}: {v.status} after {v.stats['decisions']} decisions, "
          f"{time.perf_counter() - t0:.2f} s")
