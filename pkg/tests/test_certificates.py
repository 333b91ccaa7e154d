import pytest

import oracles
from helpers import density_presentation
from triangular_lo.certificates import (
    CERTIFIED,
    INCONCLUSIVE,
    REFUTED,
    pa_emptiness,
    pa_size,
    quotient_certificate,
    surviving_threshold,
)
from triangular_lo.encoding import encode_presentation
from triangular_lo.sat import evaluate
from triangular_lo.words import Presentation


def test_threshold_rounding():
    assert surviving_threshold(150, 0.1) == 135
    assert surviving_threshold(10, 0.25) == 8
    for bad in (0, 1, 1.5):
        with pytest.raises(ValueError):
            surviving_threshold(10, bad)


@pytest.mark.parametrize("strategy", ["exhaustive", "survivor_query"])
def test_certificate_examples(strategy):
    v = quotient_certificate(Presentation(4), 0.5, strategy=strategy)
    assert v.status == REFUTED and len(v.witness_subset) >= 2
    v = quotient_certificate(Presentation(1, [(1, 1, 1)]), 0.5, strategy=strategy)
    assert v.status == CERTIFIED and v.k == 1


def test_alpha_is_validated():
    with pytest.raises(ValueError):
        quotient_certificate(Presentation(3), 1.0)
    with pytest.raises(ValueError):
        quotient_certificate(Presentation(3), 0.5, strategy="guess")
    with pytest.raises(ValueError):
        quotient_certificate(Presentation(21), 0.5, strategy="exhaustive")


def test_refutation_witnesses_are_checked():
    pres = Presentation(5, [(1, 2, 3), (-1, 4, 4)])
    for strategy in ("exhaustive", "survivor_query", "sampled_subsets"):
        v = quotient_certificate(pres, 0.3, strategy=strategy, seed=3)
        assert v.status == REFUTED
        subset = set(v.witness_subset)
        assert len(subset) >= v.k
        eta = [False] * pres.n
        for lit in v.witness_model:
            eta[abs(lit) - 1] = lit > 0
        assert {abs(l) for l in v.witness_model} == subset
        assert evaluate(encode_presentation(pres, subset), eta)


def test_sampled_never_certifies():
    v = quotient_certificate(Presentation(1, [(1, 1, 1)]), 0.5, strategy="sampled_subsets", samples=5)
    assert v.status == INCONCLUSIVE


def test_survivor_matches_exhaustive(rng):
    for _ in range(300):
        n = int(rng.integers(1, 11))
        pres = density_presentation(rng, n, float(rng.uniform(0.5, 4)))
        alpha = float(rng.uniform(0.05, 0.95))
        a = quotient_certificate(pres, alpha, strategy="exhaustive", solver="cdcl")
        b = quotient_certificate(pres, alpha, strategy="survivor_query", solver="cdcl")
        assert a.status == b.status


def test_exhaustive_matches_plain_oracle(rng):
    for _ in range(40):
        n = int(rng.integers(1, 6))
        pres = density_presentation(rng, n, 2.0)
        alpha = float(rng.uniform(0.05, 0.95))
        v = quotient_certificate(pres, alpha, strategy="exhaustive")
        rel = [w.to_ints() for w in pres.relators]
        assert (v.status == REFUTED) == oracles.survivor_exists(rel, n, v.k)


def test_pa_examples():
    assert pa_emptiness(Presentation(4), [1, 2]) == (True, 8)
    assert pa_emptiness(Presentation(3, [(1, 2, 3)]), [1, 2]) == (False, 4)
    # a negative letter is not in P_A
    assert pa_emptiness(Presentation(3, [(1, 2, -3)]), [1, 2])[0]
    # 6 * 6 * (10 - 6); direct enumeration of the defining set agrees
    assert pa_size(10, 6) == 144
    A = range(1, 7)
    assert pa_size(10, 6) == len([(a, b, c) for a in A for b in A for c in range(7, 11)])
    for bad in ([], [1, 2, 3]):
        with pytest.raises(ValueError):
            pa_emptiness(Presentation(3), bad)


def test_pa_matches_definition(rng):
    for _ in range(50):
        n = int(rng.integers(2, 7))
        pres = density_presentation(rng, n, 3.0)
        size = int(rng.integers(1, n))
        subset = set(int(i) + 1 for i in rng.choice(n, size=size, replace=False))
        pa = {(a, b, c) for a in subset for b in subset for c in range(1, n + 1) if c not in subset}
        hit = any(w.to_ints() in pa for w in pres.relators)
        assert pa_emptiness(pres, subset) == (not hit, len(pa))
