"""
Certifying that large quotients are not left-orderable
======================================================

If a left-orderable quotient keeps every generator of A nontrivial, then
Phi_{R,A} is satisfiable.  So "unsatisfiable for every A with
|A| >= (1 - alpha) n" rules out such quotients.  Small n can be checked
subset by subset; a single survivor query covers all subsets at once.
"""

import math

from triangular_lo.certificates import pa_emptiness, quotient_certificate
from triangular_lo.experiments import run_quotient_trials, survivor_frequency
from triangular_lo.words import sample_binomial

n = 10
pres = sample_binomial(n, 0.008, seed=2)
print(pres)
for alpha in (0.2, 0.5):
    for strategy in ("exhaustive", "survivor_query", "sampled_subsets"):
        v = quotient_certificate(pres, alpha, strategy=strategy, solver="cdcl", seed=1)
        print(f"alpha = {alpha}  {strategy:16s} {v.status:13s} k = {v.k}  solves = {v.solves}  "
              f"witness = {v.witness_subset}")

# a quotient killing exactly A forces R to avoid P_A = {abc : a, b in A, c not in A}
print(pa_emptiness(pres, [1, 2, 3]))

# at p = 1.5 log n / n^2 almost every sample is certified at alpha = 0.1
for n in (30, 50):
    summary, _ = run_quotient_trials(n, 1.5 * math.log(n) / n ** 2, 0.1, trials=10, seed=2,
                                     solver="cadical")
    print(n, summary.certified, "of", summary.trials, "certified")

# far below that scale some generator is untouched and the group maps onto Z
n = 300
print("untouched generator frequency:", survivor_frequency(n, math.log(n) / (50 * n ** 2), 50, 9))
