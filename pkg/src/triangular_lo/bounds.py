"""Exact finite-n probability bounds for random triangular presentations.

All returned probabilities are clamped to [0, 1].
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .words import count_w3


def c_zero():
    """(1/8) log_{4/3} 2, the density constant of the non-orderability bound."""
    return math.log(2) / (8 * math.log(4 / 3))


def failing_word_count(n, t):
    """Number of words w in W_3 such that an assignment with ``t`` true
    variables falsifies phi_w.

    Under any assignment exactly one letter of each pair {s_i, s_i^-1} has a
    true literal.  phi_w fails iff the three literals of w agree, i.e. w uses
    only true letters or only false letters.  Neither set contains an
    inverse pair, so all n^3 words of each kind are cyclically reduced:
    2n^3 words, whatever t is.
    """
    if not 0 <= t <= n:
        raise ValueError(f"t must lie in [0, {n}], got {t}")
    return 2 * n ** 3


def relator_pass_probability(n):
    """Largest probability, over assignments, that a uniform word's phi is satisfied."""
    worst = min(failing_word_count(n, t) for t in range(n + 1))
    return 1 - Fraction(worst, count_w3(n))


def union_bound(n, m):
    """min(1, 2^n q^m): upper bound on P(Phi_{R_m} satisfiable) for m uniform words."""
    if n < 1 or m < 0:
        raise ValueError(f"need n >= 1 and m >= 0, got n={n}, m={m}")
    q = relator_pass_probability(n)
    if m == 0:
        return 1.0
    if q == 0:
        return 0.0
    log_bound = n * math.log(2) + m * math.log(q)
    return 1.0 if log_bound >= 0 else math.exp(log_bound)


def distinctness_lower(n, m):
    """max(0, 1 - m^2/|W_3|), a lower bound on P(m uniform words are distinct)."""
    if n < 1 or m < 1:
        raise ValueError(f"need n >= 1 and m >= 1, got n={n}, m={m}")
    return max(0.0, 1.0 - m * m / count_w3(n))


def theta_correction(n, m):
    """1/P_lower - 1, the multiplicative slack of switching to the R_m model."""
    low = distinctness_lower(n, m)
    return math.inf if low == 0 else 1.0 / low - 1.0


def concentration_delta(n, p):
    """delta = (p |W_3|)^(-1/3); Chebyshev puts |R| outside (1 +- delta) E|R| w.p. <= delta."""
    mean = p * count_w3(n)
    if mean <= 0:
        return math.inf
    return mean ** (-1 / 3)


def property_star_bound(n, p, alpha):
    """min(1, exp(exp(log n - p alpha^2 n^2)) - 1): chance that some quotient kills >= alpha n generators."""
    _check_alpha(alpha)
    inner = math.log(n) - p * alpha ** 2 * n ** 2
    if inner > math.log(math.log(2)):
        return 1.0
    return min(1.0, math.expm1(math.exp(inner)))


def quotient_tail_bound(n, p, alpha):
    """min(1, exp(n log 4 - p (1-alpha)^3 n^3)): chance of a left-orderable quotient keeping >= (1-alpha) n generators."""
    _check_alpha(alpha)
    expo = n * math.log(4) - p * (1 - alpha) ** 3 * n ** 3
    return 1.0 if expo >= 0 else math.exp(expo)


def alpha_for_epsilon(epsilon):
    """Smallest alpha in (0, 1) with alpha^2 (1 + epsilon) > 1, nudged up by 1e-6."""
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return (1 + epsilon) ** -0.5 + 1e-6


def _check_alpha(alpha):
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")


@dataclass
class BoundReport:
    n: int
    m: int
    p: float
    c: float
    c_zero: float
    q_exact: Fraction
    union_bound: float
    delta: float
    distinctness_lower: float
    theta: float
    alpha: float = None
    property_star_bound: float = None
    quotient_bound: float = None

    def as_dict(self):
        d = dict(self.__dict__)
        d["q_exact"] = f"{self.q_exact.numerator}/{self.q_exact.denominator}"
        d["q"] = float(self.q_exact)
        return d


def bound_report(n, m=None, p=None, alpha=None):
    """Collect every bound for one (n, m) or (n, p) point.

    With ``p`` given, the union bound is evaluated at the smallest relator
    count of the concentration window, m = ceil((1 - delta) p |W_3|).
    With ``m`` given, p is taken as m / |W_3|.
    """
    if (m is None) == (p is None):
        raise ValueError("give exactly one of m and p")
    total = count_w3(n)
    if p is None:
        p = m / total
    elif not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    delta = concentration_delta(n, p)
    if m is None:
        m = max(0, math.ceil((1 - min(delta, 1.0)) * p * total))
    report = BoundReport(
        n=n,
        m=m,
        p=p,
        c=p * n * n,
        c_zero=c_zero(),
        q_exact=relator_pass_probability(n),
        union_bound=union_bound(n, m),
        delta=delta,
        distinctness_lower=distinctness_lower(n, m) if m >= 1 else 1.0,
        theta=theta_correction(n, m) if m >= 1 else 0.0,
    )
    if alpha is not None:
        report.alpha = alpha
        report.property_star_bound = property_star_bound(n, p, alpha)
        report.quotient_bound = quotient_tail_bound(n, p, alpha)
    return report


def quotient_bound(n, p, alpha):
    """(property-star failure bound, quotient tail bound) at one (n, p, alpha)."""
    return property_star_bound(n, p, alpha), quotient_tail_bound(n, p, alpha)
