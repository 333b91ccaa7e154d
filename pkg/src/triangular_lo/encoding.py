"""Propositional obstructions to left-orderability.

Literals are signed integers in the DIMACS convention: ``v`` is the
variable, ``-v`` its negation.  Generator s_i owns variable x_i = i, so the
letter s_i^e maps to the literal ``e * i``.

Variable layout of every formula built here:

* ``1..n``      generator-sign variables x_i
* ``n+1..2n``   activity variables a_i (survivor queries only)
* ``2n+1..``    sequential-counter auxiliaries (survivor queries only)

An unsatisfiable Phi_{R,A} rules out left-orderable quotients in which every
generator of A stays nontrivial.  A satisfiable one proves nothing.
"""

from dataclasses import dataclass, field

import numpy as np

from .words import restrict

ROLE_GENERATOR = "generator-sign"
ROLE_ACTIVITY = "activity"
ROLE_COUNTER = "counter"


@dataclass
class CnfFormula:
    """Conjunction of clauses; an empty clause list is the true formula."""

    num_variables: int
    clauses: list
    variable_doc: dict = field(default_factory=dict)

    def __post_init__(self):
        self.clauses = [tuple(int(l) for l in c) for c in self.clauses]
        for c in self.clauses:
            if not c:
                raise ValueError("clauses must be nonempty")
            if any(l == 0 or abs(l) > self.num_variables for l in c):
                raise ValueError(f"clause {c} mentions a variable outside 1..{self.num_variables}")

    def __len__(self):
        return len(self.clauses)


@dataclass
class NaeFormula:
    """Three-literal clauses read with not-all-equal semantics."""

    num_variables: int
    clauses: list

    def __post_init__(self):
        self.clauses = [tuple(int(l) for l in c) for c in self.clauses]
        for c in self.clauses:
            if len(c) != 3:
                raise ValueError(f"NAE clause {c} does not have 3 literals")
            if any(l == 0 or abs(l) > self.num_variables for l in c):
                raise ValueError(f"clause {c} mentions a variable outside 1..{self.num_variables}")

    def __len__(self):
        return len(self.clauses)


def generator_roles(n):
    return {i: ROLE_GENERATOR for i in range(1, n + 1)}


def encode_relator(word):
    """phi_r as a pair of clauses: the letters' literals, then their negations."""
    lits = word.to_ints()
    return lits, tuple(-l for l in lits)


def _phi_clauses(arr):
    # rows (l1, l2, l3) -> clauses l1 l2 l3, -l1 -l2 -l3, relator order preserved
    arr = np.asarray(arr, dtype=np.int64).reshape(-1, 3)
    both = np.empty((2 * len(arr), 3), dtype=np.int64)
    both[0::2] = arr
    both[1::2] = -arr
    return [tuple(row) for row in both.tolist()]


def encode_presentation(pres, subset=None):
    """Phi_{R,A} over the n generator variables; ``subset=None`` gives Phi_R.

    ``pres`` may be a :class:`~triangular_lo.words.Presentation` or a
    :class:`~triangular_lo.words.SampleOutcome` (repeated relators then give
    repeated clause pairs).
    """
    if subset is None:
        arr = pres.array
    else:
        arr = restrict(pres, subset).array
    return CnfFormula(pres.n, _phi_clauses(arr), generator_roles(pres.n))


def encode_nae(pres):
    arr = np.asarray(pres.array, dtype=np.int64).reshape(-1, 3)
    return NaeFormula(pres.n, [tuple(row) for row in arr.tolist()])


def nae_to_cnf(formula):
    """NAE(l1, l2, l3) as the clause pair (l1 | l2 | l3), (-l1 | -l2 | -l3)."""
    return CnfFormula(formula.num_variables, _phi_clauses(formula.clauses))


def _at_least_counter(xs, k, next_var):
    """Sequential counter for sum(xs) >= k with 1 <= k <= len(xs).

    r[i][j] (j = 1..k) means "at least j of xs[0..i] are true"; each r only
    implies its support, and r[-1][k] is asserted.
    """
    clauses = []
    n = len(xs)
    r = [[0] * (k + 1) for _ in range(n)]
    for i in range(n):
        for j in range(1, min(i + 1, k) + 1):
            r[i][j] = next_var
            next_var += 1
    for i in range(n):
        for j in range(1, min(i + 1, k) + 1):
            prev_same = r[i - 1][j] if i > 0 and j <= i else 0
            prev_less = r[i - 1][j - 1] if i > 0 and j > 1 else 0
            # r[i][j] -> prev_same or x_i
            clauses.append((-r[i][j], xs[i]) + ((prev_same,) if prev_same else ()))
            # r[i][j] -> prev_same or prev_less
            if j > 1:
                clauses.append((-r[i][j], prev_less) + ((prev_same,) if prev_same else ()))
    clauses.append((r[n - 1][k],))
    return clauses, next_var


def _at_most_counter(xs, b, next_var):
    """Sequential counter (Sinz) for sum(xs) <= b with 0 <= b < len(xs)."""
    n = len(xs)
    if b == 0:
        return [(-x,) for x in xs], next_var
    s = [[next_var + i * b + j for j in range(b)] for i in range(n - 1)]
    next_var += (n - 1) * b
    clauses = [(-xs[0], s[0][0])]
    clauses += [(-s[0][j],) for j in range(1, b)]
    for i in range(1, n - 1):
        clauses.append((-xs[i], s[i][0]))
        clauses.append((-s[i - 1][0], s[i][0]))
        for j in range(1, b):
            clauses.append((-xs[i], -s[i - 1][j - 1], s[i][j]))
            clauses.append((-s[i - 1][j], s[i][j]))
        clauses.append((-xs[i], -s[i - 1][b - 1]))
    clauses.append((-xs[n - 1], -s[n - 2][b - 1]))
    return clauses, next_var


def cardinality_at_least(xs, k, next_var):
    """Clauses forcing at least ``k`` of the literals ``xs`` true.

    Uses whichever sequential counter is smaller: "at least k" directly, or
    "at most len(xs)-k" over the negated literals.  Returns the clauses and
    the next unused variable id.
    """
    n = len(xs)
    if k <= 0:
        return [], next_var
    if k <= n - k:
        return _at_least_counter(xs, k, next_var)
    return _at_most_counter([-x for x in xs], n - k, next_var)


def encode_survivor_query(pres, k):
    """CNF satisfiable iff Phi_{R,A} is satisfiable for some A with |A| >= k.

    a_i (variable n+i) marks s_i as surviving; each relator's clauses are
    only enforced when all three of its generators survive.
    """
    n = pres.n
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    arr = np.asarray(pres.array, dtype=np.int64).reshape(-1, 3)
    guards = -(np.abs(arr) + n)
    clauses = []
    for g, lits in zip(guards.tolist(), arr.tolist()):
        clauses.append(tuple(g) + tuple(lits))
        clauses.append(tuple(g) + tuple(-l for l in lits))
    card, next_var = cardinality_at_least([n + i for i in range(1, n + 1)], k, 2 * n + 1)
    clauses += card
    doc = generator_roles(n)
    doc.update({n + i: ROLE_ACTIVITY for i in range(1, n + 1)})
    doc.update({v: ROLE_COUNTER for v in range(2 * n + 1, next_var)})
    return CnfFormula(next_var - 1, clauses, doc)
