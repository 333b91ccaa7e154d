import pytest

import oracles
from helpers import density_presentation
from triangular_lo.encoding import (
    CnfFormula,
    NaeFormula,
    encode_presentation,
    encode_survivor_query,
)
from triangular_lo.sat import (
    INDETERMINATE,
    SAT,
    UNSAT,
    brute_force,
    evaluate,
    evaluate_nae,
    solve,
)
from triangular_lo.words import Presentation

METHODS = ["dpll", "cdcl", "cadical"]


def test_evaluate_examples():
    assert evaluate(CnfFormula(2, []), [True, False])
    phi = encode_presentation(Presentation(1, [(1, 1, 1)]))
    assert not evaluate(phi, [True]) and not evaluate(phi, [False])
    assert evaluate(encode_presentation(Presentation(3, [(1, 2, 3)])), [True, True, False])
    with pytest.raises(ValueError):
        evaluate(phi, [True, False])


def test_evaluate_nae_examples():
    f = NaeFormula(3, [(1, 2, 3)])
    assert not evaluate_nae(f, [True, True, True])
    assert evaluate_nae(f, [True, False, False])
    with pytest.raises(ValueError):
        evaluate_nae(f, [True])


def test_brute_force_examples():
    v = brute_force(CnfFormula(2, []), count=True)
    assert v.status == SAT and v.count == 4
    v = brute_force(encode_presentation(Presentation(1, [(1, 1, 1)])), count=True)
    assert v.status == UNSAT and v.count == 0 and v.model is None
    v = brute_force(encode_presentation(Presentation(3, [(1, 2, 3)])), count=True)
    assert v.count == 6 == oracles.count_models(3, [(1, 2, 3), (-1, -2, -3)])
    with pytest.raises(ValueError):
        brute_force(CnfFormula(27, []))


def test_brute_force_first_model_order():
    # x1 most significant, false first: first model of (x1 | x2) is (F, T)
    v = brute_force(CnfFormula(2, [(1, 2)]))
    assert v.model.tolist() == [False, True]


def test_brute_force_small_block_matches(rng):
    for _ in range(20):
        pres = density_presentation(rng, 7, 1.5)
        f = encode_presentation(pres)
        a, b = brute_force(f, count=True), brute_force(f, count=True, block=7)
        assert a.count == b.count and a.status == b.status
        assert a.count == oracles.count_models(7, f.clauses)


@pytest.mark.parametrize("method", METHODS)
def test_trivial_formulas(method):
    assert solve(CnfFormula(0, []), method=method).status == SAT
    assert solve(CnfFormula(3, []), method=method).status == SAT
    assert solve(CnfFormula(1, [(1,), (-1,)]), method=method).status == UNSAT
    v = solve(CnfFormula(2, [(1, 1, -2), (2,)]), method=method)
    assert v.status == SAT and v.model.tolist() == [True, True]
    assert solve(CnfFormula(2, [(1, -1), (2, -2)]), method=method).satisfiable


def test_dpll_branches_true_first():
    # no propagation applies and no literal is pure, so x1 is decided true first
    f = CnfFormula(3, [(1, 2), (-1, -2), (2, 3), (-2, -3)])
    v = solve(f, method="dpll")
    assert v.model.tolist() == [True, False, True]


@pytest.mark.parametrize("method", ["dpll", "cdcl"])
def test_solvers_match_brute_force(method, rng):
    for _ in range(300):
        n = int(rng.integers(1, 13))
        pres = density_presentation(rng, n, float(rng.uniform(0.5, 4)))
        f = encode_presentation(pres)
        got, want = solve(f, method=method), brute_force(f)
        assert got.status == want.status
        if got.satisfiable:
            assert evaluate(f, got.model)


@pytest.mark.parametrize("method", ["dpll", "cdcl"])
def test_solvers_on_general_cnf(method, rng):
    # random mixed-width CNF, beyond the two-clause relator shape
    for _ in range(200):
        nv = int(rng.integers(1, 11))
        clauses = []
        for _ in range(int(rng.integers(0, 5 * nv))):
            width = int(rng.integers(1, 5))
            vars_ = rng.integers(1, nv + 1, size=width)
            signs = rng.choice([-1, 1], size=width)
            clauses.append(tuple(int(v * s) for v, s in zip(vars_, signs)))
        f = CnfFormula(nv, clauses)
        assert solve(f, method=method).status == brute_force(f).status


def test_survivor_queries_match_subset_oracle(rng):
    for _ in range(100):
        n = int(rng.integers(1, 7))
        pres = density_presentation(rng, n, float(rng.uniform(0.5, 3)))
        rel = [w.to_ints() for w in pres.relators]
        k = int(rng.integers(0, n + 1))
        want = oracles.survivor_exists(rel, n, k)
        for method in ("dpll", "cdcl"):
            assert solve(encode_survivor_query(pres, k), method=method).satisfiable == want


def _pigeonhole(holes):
    pigeons = holes + 1
    var = lambda p, h: p * holes + h + 1
    clauses = [tuple(var(p, h) for h in range(holes)) for p in range(pigeons)]
    for h in range(holes):
        for p in range(pigeons):
            for q in range(p + 1, pigeons):
                clauses.append((-var(p, h), -var(q, h)))
    return CnfFormula(pigeons * holes, clauses)


@pytest.mark.parametrize("method", ["dpll", "cdcl"])
def test_budgets_give_indeterminate(method):
    hard = _pigeonhole(10)
    v = solve(hard, method=method, max_steps=50)
    assert v.status == INDETERMINATE and v.model is None
    v = solve(hard, method=method, budget_ms=1)
    assert v.status == INDETERMINATE


def test_cdcl_proves_pigeonhole():
    assert solve(_pigeonhole(6), method="cdcl").status == UNSAT


def test_model_literals():
    v = solve(CnfFormula(3, [(1,), (-2,), (3,)]))
    assert v.model_literals() == [1, -2, 3]


def test_unknown_method():
    with pytest.raises(ValueError):
        solve(CnfFormula(1, []), method="walksat")
