"""One-directional certificates against left-orderable quotients.

``certified`` means Phi_{R,A} is unsatisfiable for every generator subset A
with |A| >= ceil((1 - alpha) n).  So no left-orderable quotient keeps that
many generators nontrivial.  ``refuted`` only says some such A admits a
satisfying assignment, which is a witness against the certificate and says
nothing about the group.
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .encoding import encode_presentation, encode_survivor_query
from .rng import make_rng
from .sat import INDETERMINATE, SAT, UNSAT, solve
from .words import check_subset

CERTIFIED = "certified"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"

STRATEGIES = ("exhaustive", "survivor_query", "sampled_subsets")
MAX_EXHAUSTIVE_N = 20


@dataclass
class QuotientVerdict:
    status: str
    k: int
    witness_subset: tuple = None
    witness_model: tuple = None
    solves: int = 0
    stats: dict = None


def surviving_threshold(n, alpha):
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    # guard against 0.9 * 150 = 135.00000000000003 style rounding
    return math.ceil(round((1 - alpha) * n, 9))


def _subset_solve(pres, subset, solver, budget_ms):
    verdict = solve(encode_presentation(pres, subset), budget_ms=budget_ms, method=solver)
    if verdict.status != SAT:
        return verdict, None
    model = tuple(int(i) if verdict.model[i - 1] else -int(i) for i in sorted(subset))
    return verdict, model


def quotient_certificate(pres, alpha, strategy="survivor_query", solver="cdcl",
                         budget_ms=None, samples=64, seed=0):
    """Certify that every subset of at least ceil((1-alpha) n) generators gives
    an unsatisfiable Phi_{R,A}.

    ``exhaustive`` checks each subset of exactly that size; larger subsets
    carry more relators, so they are unsatisfiable whenever a subset of
    them is.  ``survivor_query`` makes one solver call on the
    activity/cardinality encoding.  ``sampled_subsets`` tries ``samples``
    random subsets and can only refute.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; choose from {STRATEGIES}")
    n = pres.n
    k = surviving_threshold(n, alpha)

    if strategy == "survivor_query":
        verdict = solve(encode_survivor_query(pres, k), budget_ms=budget_ms, method=solver)
        if verdict.status == UNSAT:
            return QuotientVerdict(CERTIFIED, k, solves=1, stats=verdict.stats)
        if verdict.status == INDETERMINATE:
            return QuotientVerdict(INDETERMINATE, k, solves=1, stats=verdict.stats)
        alive = tuple(i for i in range(1, n + 1) if verdict.model[n + i - 1])
        model = tuple(i if verdict.model[i - 1] else -i for i in alive)
        return QuotientVerdict(REFUTED, k, alive, model, solves=1, stats=verdict.stats)

    if strategy == "exhaustive":
        if n > MAX_EXHAUSTIVE_N:
            raise ValueError(f"exhaustive strategy is limited to n <= {MAX_EXHAUSTIVE_N}")
        subsets = combinations(range(1, n + 1), k)
    else:
        rng = make_rng(seed)
        subsets = (
            tuple(sorted(int(i) + 1 for i in rng.choice(n, size=k, replace=False)))
            for _ in range(samples)
        )

    solves = 0
    timed_out = False
    for subset in subsets:
        verdict, model = _subset_solve(pres, subset, solver, budget_ms)
        solves += 1
        if verdict.status == SAT:
            return QuotientVerdict(REFUTED, k, tuple(subset), model, solves=solves)
        timed_out |= verdict.status == INDETERMINATE
    if timed_out:
        return QuotientVerdict(INDETERMINATE, k, solves=solves)
    return QuotientVerdict(CERTIFIED if strategy == "exhaustive" else INCONCLUSIVE, k, solves=solves)


def pa_size(n, subset_size):
    """|P_A| = |A|^2 (n - |A|)."""
    return subset_size * subset_size * (n - subset_size)


def pa_emptiness(pres, subset):
    """Whether R avoids P_A = {abc : a, b in A, c not in A} (positive letters).

    Returns ``(empty, |P_A|)``.  If some nontrivial quotient kills exactly
    the generators in A, then P_A and R are disjoint.
    """
    subset = check_subset(pres.n, subset)
    if not subset or len(subset) == pres.n:
        raise ValueError("A must be a proper nonempty subset of the generators")
    size = pa_size(pres.n, len(subset))
    arr = pres.array
    if not len(arr):
        return True, size
    inside = np.isin(arr, list(subset))
    hits = (arr[:, 2] > 0) & ~np.isin(arr[:, 2], list(subset)) & inside[:, 0] & inside[:, 1]
    return not bool(hits.any()), size
