"""
Words, relators and random presentations
=========================================

Relators are cyclically reduced words of length 3 in s_1..s_n and their
inverses.  This walks through the word set W_3 and the two random models.
"""

import numpy as np

from triangular_lo.words import (
    Word3,
    count_w3,
    enumerate_w3,
    find_surviving_generator,
    restrict,
    sample_binomial,
    sample_uniform_m,
    word_inverse,
)

# a word is three signed generator indices; s1 s2^-1 s3
w = Word3.of(1, -2, 3)
print(w, "  inverse:", word_inverse(w))

# s1 s2 s1^-1 cancels across the wrap-around, so it is rejected
try:
    Word3.of(1, 2, -1)
except ValueError as exc:
    print("rejected:", exc)

# W_3 grows like 8n^3
for n in range(1, 7):
    print(n, count_w3(n), len(enumerate_w3(n)), 8 * n ** 3)

# binomial model: each word kept independently with probability p = c / n^2
n, c = 60, 0.2
pres = sample_binomial(n, c / n ** 2, seed=1)
print(pres, "expected size", c / n ** 2 * count_w3(n))
print(pres.array[:5])

# relators only over the first ten generators
print("relators over s1..s10:", len(restrict(pres, range(1, 11))))

# an untouched generator maps onto Z, killing every other one; at this
# density all 60 are touched, at a tenth of it most samples leave one free
print("surviving generator:", find_surviving_generator(pres))
print("sparser sample:", find_surviving_generator(sample_binomial(n, 0.02 / n ** 2, seed=1)))

# m uniform draws with replacement; repeats are possible
draws = sample_uniform_m(20, 50, seed=3)
print("all distinct:", draws.all_distinct)
freq = np.mean([sample_uniform_m(20, 50, seed=s).all_distinct for s in range(500)])
print("P(all 50 draws distinct) ~", freq)
