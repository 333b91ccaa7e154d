"""Letters, cyclically reduced words of length 3, and random relator sets.

A letter s_i^e is a :class:`SignedGenerator`.  Internally letters are also
handled as signed integers (``+i`` for s_i, ``-i`` for s_i^-1) and as
*letter codes* ``2*(i-1) + (e < 0)``, so the inverse of a letter code ``L``
is ``L ^ 1``.  Word identity is positional: ``s1 s2 s3`` and ``s2 s3 s1``
are different elements of W_3.

The documented letter order is s1 < s1^-1 < s2 < s2^-1 < ..., i.e. the
order of letter codes; :func:`enumerate_w3` lists words lexicographically
in that order.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .rng import make_rng


@dataclass(frozen=True)
class SignedGenerator:
    index: int
    sign: int

    def __post_init__(self):
        if self.index < 1:
            raise ValueError(f"generator index must be >= 1, got {self.index}")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @classmethod
    def from_int(cls, value):
        value = int(value)
        if value == 0:
            raise ValueError("0 is not a letter")
        return cls(abs(value), 1 if value > 0 else -1)

    def __int__(self):
        return self.sign * self.index

    @property
    def code(self):
        return 2 * (self.index - 1) + (self.sign < 0)

    def __str__(self):
        return f"s{self.index}" if self.sign > 0 else f"s{self.index}^-1"


def inverse(letter):
    return SignedGenerator(letter.index, -letter.sign)


def is_cyclically_reduced(a, b, c):
    """True iff no two cyclically adjacent letters of ``abc`` cancel."""
    return b != inverse(a) and c != inverse(b) and a != inverse(c)


@dataclass(frozen=True)
class Word3:
    letters: tuple

    def __post_init__(self):
        letters = tuple(self.letters)
        if len(letters) != 3:
            raise ValueError(f"a Word3 has exactly 3 letters, got {len(letters)}")
        letters = tuple(
            l if isinstance(l, SignedGenerator) else SignedGenerator.from_int(l)
            for l in letters
        )
        if not is_cyclically_reduced(*letters):
            raise ValueError(f"{' '.join(map(str, letters))} is not cyclically reduced")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def of(cls, a, b, c):
        """Build a word from three signed integers, e.g. ``Word3.of(1, -2, 3)``."""
        return cls((a, b, c))

    def __iter__(self):
        return iter(self.letters)

    def to_ints(self):
        return tuple(int(l) for l in self.letters)

    @property
    def indices(self):
        return tuple(l.index for l in self.letters)

    @property
    def sort_key(self):
        return tuple(l.code for l in self.letters)

    def __str__(self):
        return " ".join(map(str, self.letters))


def word_inverse(w):
    a, b, c = w.letters
    return Word3((inverse(c), inverse(b), inverse(a)))


def _check_n(n):
    if int(n) != n or n < 1:
        raise ValueError(f"generator count must be a positive integer, got {n}")
    return int(n)


def enumerate_w3(n):
    """All cyclically reduced length-3 words over n generators, in letter order."""
    n = _check_n(n)
    letters = [SignedGenerator(i, e) for i in range(1, n + 1) for e in (1, -1)]
    return [Word3(t) for t in product(letters, repeat=3) if is_cyclically_reduced(*t)]


def count_w3(n):
    """|W_3| in closed form.

    W_3 is the set of closed walks of length 3 in the letter graph whose
    adjacency matrix is J - P (P pairs each letter with its inverse).  Its
    spectrum is 2n-1 once, -1 with multiplicity n-1 and +1 with multiplicity
    n, so the trace of the cube is (2n-1)^3 + 1.
    """
    n = _check_n(n)
    return (2 * n - 1) ** 3 + 1


# --- array representation -------------------------------------------------

def signed_to_codes(arr):
    arr = np.asarray(arr, dtype=np.int64)
    return 2 * (np.abs(arr) - 1) + (arr < 0)


def codes_to_signed(codes):
    codes = np.asarray(codes, dtype=np.int64)
    return (codes // 2 + 1) * (1 - 2 * (codes % 2))


def _reduced_mask(letter_codes):
    a, b, c = letter_codes[:, 0], letter_codes[:, 1], letter_codes[:, 2]
    return (b != (a ^ 1)) & (c != (b ^ 1)) & (a != (c ^ 1))


def _word_codes(letter_codes, n):
    base = 2 * n
    return (letter_codes[:, 0] * base + letter_codes[:, 1]) * base + letter_codes[:, 2]


def _letters_of_word_codes(word_codes, n):
    base = 2 * n
    word_codes = np.asarray(word_codes, dtype=np.int64)
    return np.stack([word_codes // (base * base), (word_codes // base) % base, word_codes % base], axis=1)


class Presentation:
    """A generator count ``n`` and a duplicate-free list of relators.

    Relators are stored as an ``(m, 3)`` array of signed integers; the
    :attr:`relators` view builds :class:`Word3` objects on demand.  Order is
    kept as given, equality ignores it.
    """

    def __init__(self, n, relators=()):
        self.n = _check_n(n)
        if isinstance(relators, np.ndarray):
            arr = relators.astype(np.int64, copy=True).reshape(-1, 3)
        else:
            rows = [r.to_ints() if isinstance(r, Word3) else tuple(r) for r in relators]
            arr = np.array(rows, dtype=np.int64).reshape(-1, 3)
        if arr.size:
            if np.any(arr == 0) or np.any(np.abs(arr) > self.n):
                raise ValueError(f"relator letter index outside [1, {self.n}]")
            codes = signed_to_codes(arr)
            if not np.all(_reduced_mask(codes)):
                bad = arr[~_reduced_mask(codes)][0]
                raise ValueError(f"relator {tuple(bad.tolist())} is not cyclically reduced")
            if len(np.unique(_word_codes(codes, self.n))) != len(arr):
                raise ValueError("duplicate relators")
        arr.setflags(write=False)
        self._array = arr

    @property
    def array(self):
        return self._array

    @cached_property
    def relators(self):
        return tuple(Word3(tuple(row)) for row in self._array.tolist())

    def word_codes(self):
        return _word_codes(signed_to_codes(self._array), self.n)

    def __len__(self):
        return len(self._array)

    def __eq__(self, other):
        if not isinstance(other, Presentation):
            return NotImplemented
        return self.n == other.n and np.array_equal(
            np.sort(self.word_codes()), np.sort(other.word_codes())
        )

    def __repr__(self):
        return f"Presentation(n={self.n}, |R|={len(self)})"


@dataclass(frozen=True)
class SampleOutcome:
    """Result of m independent uniform draws from W_3 (repeats allowed)."""

    n: int
    array: np.ndarray
    all_distinct: bool

    @property
    def relators(self):
        return [Word3(tuple(row)) for row in self.array.tolist()]

    def __len__(self):
        return len(self.array)


def _draw_reduced(rng, n, count):
    """``count`` uniform words from W_3 by rejection, as letter codes."""
    chunks = []
    need = count
    while need > 0:
        draws = rng.integers(0, 2 * n, size=(need + need // 2 + 16, 3))
        accepted = draws[_reduced_mask(draws)][:need]
        chunks.append(accepted)
        need -= len(accepted)
    if not chunks:
        return np.empty((0, 3), dtype=np.int64)
    return np.concatenate(chunks)


def _draw_distinct_codes(rng, n, count):
    seen = set()
    out = []
    while len(out) < count:
        for code in _word_codes(_draw_reduced(rng, n, count - len(out)), n).tolist():
            if code not in seen:
                seen.add(code)
                out.append(code)
    return np.array(out, dtype=np.int64)


def _all_word_codes(n):
    codes = np.arange((2 * n) ** 3, dtype=np.int64)
    return codes[_reduced_mask(_letters_of_word_codes(codes, n))]


def _binomial_count(rng, total, p):
    return int(rng.binomial(total, p))


def relator_count(n, p, seed):
    """|R| alone: the same draw :func:`sample_binomial` makes first for this seed."""
    n = _check_n(n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return _binomial_count(make_rng(seed), count_w3(n), p)


def sample_binomial(n, p, seed):
    """Relator set of the triangular binomial model: each word of W_3 independently w.p. p.

    |R| is drawn from Binomial(|W_3|, p) and then that many distinct words
    are drawn uniformly by rejection, so W_3 is never materialised unless
    more than half of it is kept.  Relators come out sorted in letter order.
    """
    n = _check_n(n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = make_rng(seed)
    total = count_w3(n)
    m = _binomial_count(rng, total, p)
    if 2 * m <= total:
        codes = np.sort(_draw_distinct_codes(rng, n, m))
    else:
        dropped = _draw_distinct_codes(rng, n, total - m)
        codes = np.setdiff1d(_all_word_codes(n), dropped)
    return Presentation(n, codes_to_signed(_letters_of_word_codes(codes, n)))


def sample_uniform_m(n, m, seed):
    """m independent uniform draws from W_3, in draw order."""
    n = _check_n(n)
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    letters = _draw_reduced(make_rng(seed), n, m)
    all_distinct = len(np.unique(_word_codes(letters, n))) == m
    arr = codes_to_signed(letters)
    arr.setflags(write=False)
    return SampleOutcome(n, arr, all_distinct)


# --- diagnostics ----------------------------------------------------------

def check_subset(n, subset):
    """Normalise a generator subset; ``None`` or ``"all"`` mean every generator."""
    if subset is None or subset == "all":
        return frozenset(range(1, n + 1))
    subset = frozenset(int(i) for i in subset)
    bad = [i for i in subset if not 1 <= i <= n]
    if bad:
        raise ValueError(f"subset indices {sorted(bad)} outside [1, {n}]")
    return subset


def restrict(pres, subset):
    """R_A: the relators all of whose letters lie over ``subset``."""
    subset = check_subset(pres.n, subset)
    if not len(pres):
        return Presentation(pres.n)
    keep = np.isin(np.abs(pres.array), list(subset)).all(axis=1)
    return Presentation(pres.n, pres.array[keep])


def euler_characteristic(pres):
    return 1 - pres.n + len(pres)


def find_surviving_generator(pres):
    """Smallest generator index touched by no relator, or None."""
    touched = np.zeros(pres.n + 1, dtype=bool)
    touched[np.abs(pres.array).ravel()] = True
    free = np.flatnonzero(~touched[1:])
    return int(free[0]) + 1 if len(free) else None
