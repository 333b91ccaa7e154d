"""Independent reference implementations, written without the package's code paths.

Everything here is plain Python over signed-integer letters and is only
fit for tiny inputs.
"""

from itertools import combinations, product


def letters(n):
    return [s * i for i in range(1, n + 1) for s in (1, -1)]


def w3_by_brute_force(n):
    """Every triple over the 2n letters with no cancelling neighbour, wrap-around included."""
    return [t for t in product(letters(n), repeat=3)
            if t[1] != -t[0] and t[2] != -t[1] and t[0] != -t[2]]


def lit_value(eta, lit):
    return eta[abs(lit) - 1] == (lit > 0)


def failing_words(n, eta):
    """Words whose two-clause encoding fails under eta: all literals equal."""
    count = 0
    for w in w3_by_brute_force(n):
        vals = {lit_value(eta, l) for l in w}
        if len(vals) == 1:
            count += 1
    return count


def cnf_satisfied(clauses, eta):
    return all(any(lit_value(eta, l) for l in c) for c in clauses)


def nae_satisfied(clauses, eta):
    return all(len({lit_value(eta, l) for l in c}) == 2 for c in clauses)


def count_models(num_vars, clauses, nae=False):
    check = nae_satisfied if nae else cnf_satisfied
    return sum(check(clauses, eta) for eta in product((False, True), repeat=num_vars))


def phi_sat(relators, n, subset=None):
    """Is the two-clause encoding of the relators over subset satisfiable?"""
    keep = [r for r in relators if subset is None or all(abs(l) in subset for l in r)]
    clauses = [c for r in keep for c in (tuple(r), tuple(-l for l in r))]
    return any(cnf_satisfied(clauses, eta) for eta in product((False, True), repeat=n))


def survivor_exists(relators, n, k):
    """Some A with |A| >= k gives a satisfiable encoding."""
    for size in range(k, n + 1):
        for subset in combinations(range(1, n + 1), size):
            if phi_sat(relators, n, set(subset)):
                return True
    return False
