import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels as K

SAT = "satisfiable"
UNSAT = "unsatisfiable"
INDETERMINATE = "indeterminate"

_STATUS = {K.STATUS_SAT: SAT, K.STATUS_UNSAT: UNSAT, K.STATUS_TIMEOUT: INDETERMINATE}

MAX_BRUTE_FORCE_VARS = 26


@dataclass
class Verdict:
    """Outcome of a satisfiability check.

    ``model`` is a boolean array indexed by ``variable - 1`` and is present
    exactly when ``status == SAT``.  ``indeterminate`` means the budget ran
    out; it is never a verdict about the formula.
    """

    status: str
    model: np.ndarray = None
    stats: dict = field(default_factory=dict)
    count: int = None

    @property
    def satisfiable(self):
        return self.status == SAT

    def model_literals(self):
        """The model as signed DIMACS literals."""
        if self.model is None:
            return []
        return [v if b else -v for v, b in enumerate(self.model.tolist(), 1)]


def _check_size(num_variables, assignment):
    values = np.asarray(assignment, dtype=bool)
    if values.shape != (num_variables,):
        raise ValueError(
            f"assignment has {values.size} values, formula has {num_variables} variables"
        )
    return values


def _lit_true(values, lit):
    return values[abs(lit) - 1] == (lit > 0)


def evaluate(formula, assignment):
    values = _check_size(formula.num_variables, assignment)
    return all(any(_lit_true(values, l) for l in c) for c in formula.clauses)


def evaluate_nae(formula, assignment):
    values = _check_size(formula.num_variables, assignment)
    for c in formula.clauses:
        truth = {bool(_lit_true(values, l)) for l in c}
        if len(truth) != 2:
            return False
    return True


def _assignment_block(num_variables, start, stop):
    # row r is assignment number start + r; variable 1 is the most significant bit
    idx = np.arange(start, stop, dtype=np.int64)
    shifts = np.arange(num_variables - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts[None, :]) & 1).astype(bool)


def brute_force(formula, count=False, nae=False, block=1 << 16):
    """Exhaustive scan of all 2^n assignments.

    Assignments are visited in binary order with x1 most significant and
    false before true.  Returns the first satisfying assignment; with
    ``count=True`` also the number of satisfying assignments.  ``nae=True``
    reads the clauses with not-all-equal semantics.
    """
    nv = formula.num_variables
    if nv > MAX_BRUTE_FORCE_VARS:
        raise ValueError(f"brute force is limited to {MAX_BRUTE_FORCE_VARS} variables, got {nv}")
    t0 = time.perf_counter()
    clauses = formula.clauses
    width = max((len(c) for c in clauses), default=1)
    var_idx = np.zeros((len(clauses), width), dtype=np.int64)
    want = np.zeros((len(clauses), width), dtype=bool)
    for i, c in enumerate(clauses):
        # pad short clauses by repeating their first literal
        padded = list(c) + [c[0]] * (width - len(c))
        var_idx[i] = [abs(l) - 1 for l in padded]
        want[i] = [l > 0 for l in padded]
    first = None
    total = 0
    for start in range(0, 1 << nv, block):
        vals = _assignment_block(nv, start, min(start + block, 1 << nv))
        if clauses:
            lit_true = vals[:, var_idx] == want[None, :, :]
            any_true = lit_true.any(axis=2)
            if nae:
                ok = (any_true & ~lit_true.all(axis=2)).all(axis=1)
            else:
                ok = any_true.all(axis=1)
        else:
            ok = np.ones(len(vals), dtype=bool)
        hits = np.flatnonzero(ok)
        if first is None and len(hits):
            first = vals[hits[0]].copy()
            if not count:
                break
        total += len(hits)
    stats = {"elapsed_ms": 1000 * (time.perf_counter() - t0)}
    status = SAT if first is not None else UNSAT
    return Verdict(status, first, stats, total if count else None)


def _kernel_input(formula):
    """Flatten clauses for the kernels: duplicate literals merged, tautologies
    dropped, unit clauses split off."""
    lits, starts, lens, units = [], [], [], []
    for c in formula.clauses:
        enc = list(dict.fromkeys((abs(l) - 1) * 2 + (l < 0) for l in c))
        if any((e ^ 1) in enc for e in enc):
            continue
        if len(enc) == 1:
            units.append(enc[0])
            continue
        starts.append(len(lits))
        lens.append(len(enc))
        lits.extend(enc)
    return (
        np.array(lits, dtype=np.int64),
        np.array(starts, dtype=np.int64),
        np.array(lens, dtype=np.int64),
        np.array(units, dtype=np.int64),
    )


SOLVERS = ("dpll", "cdcl", "cadical")


def _solve_cadical(formula, budget_ms):
    # python-sat's CaDiCaL; imported lazily so the numba solvers work without it
    import threading

    from pysat.solvers import Solver

    with Solver(name="cadical195", bootstrap_with=formula.clauses) as s:
        timer = None
        if budget_ms is not None:
            timer = threading.Timer(budget_ms / 1000.0, s.interrupt)
            timer.start()
        try:
            result = s.solve_limited(expect_interrupt=True)
        finally:
            if timer is not None:
                timer.cancel()
        raw = s.accum_stats()
        values = None
        if result:
            values = np.ones(formula.num_variables, dtype=np.int8)
            for lit in s.get_model():
                if abs(lit) <= formula.num_variables:
                    values[abs(lit) - 1] = lit > 0
    status = {True: SAT, False: UNSAT, None: INDETERMINATE}[result]
    return status, values, raw


def solve(formula, budget_ms=None, method="dpll", max_steps=None):
    """Decide satisfiability of a CNF formula.

    ``method="dpll"`` (the default) branches on the lowest-index unassigned
    variable, true first, with unit propagation and pure-literal
    elimination.  ``method="cdcl"`` enables clause learning with activity
    based branching; it reaches the same verdicts, usually much faster, but
    may return a different model.  ``budget_ms`` bounds wall time and
    ``max_steps`` bounds decisions (dpll) or conflicts (cdcl); exhausting
    either yields an ``indeterminate`` verdict.  ``method="cadical"`` hands
    the formula to CaDiCaL through python-sat, for instances beyond the
    built-in solvers (``max_steps`` is ignored there).
    """
    if method not in SOLVERS:
        raise ValueError(f"unknown solver {method!r}; choose from {SOLVERS}")
    if budget_ms is not None and budget_ms < 0:
        raise ValueError(f"budget_ms must be non-negative, got {budget_ms}")
    nv = formula.num_variables
    t0 = time.perf_counter()
    if method == "cadical":
        status, values, raw = _solve_cadical(formula, budget_ms)
        stats = {k: int(raw.get(k, 0)) for k in ("decisions", "propagations", "conflicts")}
        stats["elapsed_ms"] = 1000 * (time.perf_counter() - t0)
        return _finish(formula, status, values, stats)
    if nv == 0:
        status, values = (UNSAT if formula.clauses else SAT), np.zeros(0, dtype=np.int8)
        raw = np.zeros(K.N_STATS, dtype=np.int64)
    else:
        lits, starts, lens, units = _kernel_input(formula)
        budget_s = -1.0 if budget_ms is None else budget_ms / 1000.0
        limit = -1 if max_steps is None else int(max_steps)
        kernel = K.dpll if method == "dpll" else K.cdcl
        code, values, raw = kernel(nv, lits, starts, lens, units, budget_s, limit)
        status = _STATUS[int(code)]
    stats = {
        "decisions": int(raw[K.ST_DECISIONS]),
        "propagations": int(raw[K.ST_PROPAGATIONS]),
        "conflicts": int(raw[K.ST_CONFLICTS]),
        "elapsed_ms": 1000 * (time.perf_counter() - t0),
    }
    if method == "cdcl":
        stats["restarts"] = int(raw[K.ST_RESTARTS])
        stats["learned"] = int(raw[K.ST_LEARNED])
    return _finish(formula, status, values, stats)


def _finish(formula, status, values, stats):
    model = None
    if status == SAT:
        model = np.asarray(values) != 0
        if not evaluate(formula, model):
            raise AssertionError("solver produced a model that does not satisfy the formula")
    return Verdict(status, model, stats)
