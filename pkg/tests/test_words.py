from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from frozen import W3_SIZES
from triangular_lo.words import (
    Presentation,
    SignedGenerator,
    Word3,
    count_w3,
    enumerate_w3,
    euler_characteristic,
    find_surviving_generator,
    inverse,
    is_cyclically_reduced,
    restrict,
    sample_binomial,
    sample_uniform_m,
    word_inverse,
)

S = SignedGenerator.from_int


def test_inverse_flips_sign():
    assert inverse(S(1)) == S(-1)
    assert inverse(S(-7)) == S(7)
    assert inverse(inverse(S(3))) == S(3)


def test_generator_validation():
    with pytest.raises(ValueError):
        SignedGenerator(0, 1)
    with pytest.raises(ValueError):
        SignedGenerator(2, 0)
    with pytest.raises(ValueError):
        S(0)


def test_cyclic_reduction_examples():
    assert not is_cyclically_reduced(S(1), S(-1), S(2))
    assert not is_cyclically_reduced(S(1), S(2), S(-1))
    assert is_cyclically_reduced(S(1), S(1), S(1))


def test_word3_rejects_bad_words():
    with pytest.raises(ValueError):
        Word3.of(1, 2, -1)
    with pytest.raises(ValueError):
        Word3((1, 2))


def test_word_identity_is_positional():
    assert Word3.of(1, 2, 3) != Word3.of(2, 3, 1)
    assert Word3.of(1, 2, 3) == Word3((S(1), S(2), S(3)))


def test_word_inverse_examples():
    assert word_inverse(Word3.of(1, 2, 3)) == Word3.of(-3, -2, -1)
    assert word_inverse(Word3.of(1, 1, 2)) == Word3.of(-2, -1, -1)
    for w in enumerate_w3(3):
        assert word_inverse(word_inverse(w)) == w


def test_enumerate_small():
    assert enumerate_w3(1) == [Word3.of(1, 1, 1), Word3.of(-1, -1, -1)]
    assert len(enumerate_w3(2)) == 28


@pytest.mark.parametrize("n", range(1, 6))
def test_enumeration_matches_brute_force(n):
    words = enumerate_w3(n)
    assert {w.to_ints() for w in words} == set(oracles.w3_by_brute_force(n))
    assert len(words) == len(set(words))
    keys = [w.sort_key for w in words]
    assert keys == sorted(keys)


@pytest.mark.parametrize("n", range(1, 7))
def test_count_closed_form(n):
    assert count_w3(n) == W3_SIZES[n] == len(enumerate_w3(n))
    assert 2 * n * (2 * n - 1) * (2 * n - 2) <= count_w3(n) <= (2 * n) ** 3


@pytest.mark.parametrize("bad", [0, -1])
def test_enumerate_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        enumerate_w3(bad)
    with pytest.raises(ValueError):
        count_w3(bad)


def test_presentation_validation():
    with pytest.raises(ValueError):
        Presentation(2, [(1, 2, 3)])
    with pytest.raises(ValueError):
        Presentation(2, [(1, 1, 1), (1, 1, 1)])
    with pytest.raises(ValueError):
        Presentation(2, [(1, -1, 2)])
    p = Presentation(3, [(1, 2, 3), (-1, -1, -2)])
    assert p == Presentation(3, [(-1, -1, -2), (1, 2, 3)])
    assert p.relators[1] == Word3.of(-1, -1, -2)


def test_binomial_extremes():
    for seed in range(5):
        assert len(sample_binomial(4, 0.0, seed)) == 0
    full = sample_binomial(1, 1.0, 3)
    assert set(full.relators) == set(enumerate_w3(1))
    assert len(sample_binomial(3, 1.0, 9)) == count_w3(3)
    with pytest.raises(ValueError):
        sample_binomial(3, 1.5, 0)
    with pytest.raises(ValueError):
        sample_binomial(0, 0.5, 0)


def test_binomial_mean_size():
    sizes = np.array([len(sample_binomial(2, 0.5, s)) for s in range(10_000)])
    se = np.sqrt(28 * 0.25 / 10_000)
    assert abs(sizes.mean() - 14) <= 3 * se


def test_binomial_complement_branch_is_uniform():
    # p > 1/2 takes the complement path; every word should still appear w.p. p
    counts = Counter()
    trials = 4000
    for s in range(trials):
        counts.update(w.to_ints() for w in sample_binomial(2, 0.8, s).relators)
    for w in oracles.w3_by_brute_force(2):
        freq = counts[w] / trials
        assert abs(freq - 0.8) <= 4 * np.sqrt(0.16 / trials)


def test_samplers_are_deterministic():
    assert sample_binomial(10, 0.01, 42) == sample_binomial(10, 0.01, 42)
    a, b = sample_uniform_m(10, 30, 5), sample_uniform_m(10, 30, 5)
    assert np.array_equal(a.array, b.array) and a.all_distinct == b.all_distinct


def test_uniform_m_examples():
    empty = sample_uniform_m(3, 0, 1)
    assert len(empty) == 0 and empty.all_distinct
    assert not sample_uniform_m(1, 3, 1).all_distinct
    with pytest.raises(ValueError):
        sample_uniform_m(3, -1, 0)


def test_uniform_m_is_uniform():
    trials = 28_000
    counts = Counter(sample_uniform_m(2, 1, s).relators[0].to_ints() for s in range(trials))
    p = 1 / 28
    se = np.sqrt(p * (1 - p) / trials)
    for w in oracles.w3_by_brute_force(2):
        assert abs(counts[w] / trials - p) <= 3 * se


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 12), st.integers(0, 60), st.integers(0, 2 ** 64 - 1))
def test_sampled_words_are_reduced(n, m, seed):
    out = sample_uniform_m(n, m, seed)
    for w in out.relators:
        assert is_cyclically_reduced(*w.letters)
    assert out.all_distinct == (len(set(out.relators)) == m)
    pres = sample_binomial(n, min(1.0, m / count_w3(n)), seed)
    assert all(is_cyclically_reduced(*w.letters) for w in pres.relators)


def test_restrict_examples():
    pres = Presentation(3, [(1, 2, 3), (1, 1, 2)])
    assert restrict(pres, [1, 2]) == Presentation(3, [(1, 1, 2)])
    assert restrict(pres, "all") == pres
    assert len(restrict(pres, [])) == 0
    with pytest.raises(ValueError):
        restrict(pres, [4])


def test_euler_characteristic():
    assert euler_characteristic(Presentation(3)) == -2
    assert euler_characteristic(Presentation(3, [(1, 1, 1), (2, 2, 2), (3, 3, 3)])) == 1
    words = enumerate_w3(10)[:9]
    assert euler_characteristic(Presentation(10, words)) == 0


def test_surviving_generator():
    assert find_surviving_generator(Presentation(4)) == 1
    assert find_surviving_generator(Presentation(2, [(1, 1, 1)])) == 2
    assert find_surviving_generator(Presentation(2, [(1, 1, 2)])) is None
