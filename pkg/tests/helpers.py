from triangular_lo.words import Presentation, enumerate_w3


def random_presentation(rng, n, max_relators=None):
    """Uniformly sized random relator subset of W_3(n), drawn with a numpy Generator."""
    words = enumerate_w3(n)
    limit = len(words) if max_relators is None else min(max_relators, len(words))
    m = int(rng.integers(0, limit + 1))
    pick = rng.choice(len(words), size=m, replace=False)
    return Presentation(n, [words[i] for i in sorted(pick)])


def density_presentation(rng, n, ratio):
    """About ratio * n relators, which keeps instances near the interesting region."""
    words = enumerate_w3(n)
    m = min(len(words), int(rng.poisson(ratio * n)))
    pick = rng.choice(len(words), size=m, replace=False)
    return Presentation(n, [words[i] for i in sorted(pick)])
