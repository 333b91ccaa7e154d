"""
Exact finite-n bounds
=====================

Under any sign assignment exactly 2n^3 words of W_3 fail their clause
pair, so a uniform word is satisfied with probability q = 1 - 2n^3/|W_3|
whatever the assignment.  A union bound over the 2^n assignments gives
P(Phi_{R_m} satisfiable) <= 2^n q^m, which is below one once
m > 8 c_0 n with c_0 = log 2 / (8 log 4/3).
"""

import math

import numpy as np

from triangular_lo.bounds import (
    alpha_for_epsilon,
    bound_report,
    c_zero,
    quotient_bound,
    relator_pass_probability,
    union_bound,
)

print("c_0 =", c_zero())
print("q at n = 2:", relator_pass_probability(2), " union_bound(2, 5) =", union_bound(2, 5))

# q tends to 3/4, so 2 q^(8c) crosses one at c = c_0
for n in (10, 100, 1000):
    q = float(relator_pass_probability(n))
    print(n, q, 2 * q ** (8 * c_zero()))

# the bound collapses quickly once c clears c_0
n = 150
for c in np.arange(0.2, 0.65, 0.1):
    m = math.ceil(8 * c * n)
    print(f"c = {c:.1f}  m = {m}  bound = {union_bound(n, m):.3g}")

rep = bound_report(150, p=0.6 / 150 ** 2, alpha=alpha_for_epsilon(0.5))
for key, value in rep.as_dict().items():
    print(f"  {key}: {value}")

# quotients: both bounds at the log n / n^2 scale, for a few densities
n, alpha = 150, 0.1
for factor in (0.5, 1.0, 1.5):
    p = factor * math.log(n) / n ** 2
    print(factor, quotient_bound(n, p, alpha))
