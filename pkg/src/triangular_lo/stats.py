from math import sqrt

Z95 = 1.959963984540054


def wilson_interval(successes, trials, z=Z95):
    """Wilson score interval for a binomial proportion (95% by default)."""
    if trials == 0:
        return 0.0, 1.0
    phat = successes / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z / denom * sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    # clamp so the point estimate always lies inside, despite rounding
    return min(max(0.0, center - half), phat), max(min(1.0, center + half), phat)


def standard_error(phat, trials):
    return sqrt(phat * (1 - phat) / trials) if trials else 0.0
