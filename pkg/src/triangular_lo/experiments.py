"""Monte Carlo experiments over random triangular presentations.

Every trial is a pure function of its parameters and its derived seed, so
runs can be spread over worker processes and still produce identical
records in trial order.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .bounds import bound_report, concentration_delta, union_bound
from .certificates import CERTIFIED, REFUTED, quotient_certificate, surviving_threshold
from .encoding import encode_presentation
from .rng import check_seed, trial_seed
from .sat import INDETERMINATE, SAT, UNSAT, solve
from .stats import standard_error, wilson_interval
from .words import (
    count_w3,
    find_surviving_generator,
    relator_count,
    sample_binomial,
    sample_uniform_m,
)

MODELS = ("binomial", "uniform_m")


@dataclass
class SweepConfig:
    """Grid of (n, c) or (n, p) points to run.

    p = c / n^2 when densities are given as ``c_values``.  Under the
    ``uniform_m`` model each point draws m = ceil(8 c n) words
    (ceil(p |W_3|) for ``p_values``), unless ``m_values`` fixes m directly.
    """

    n: int
    c_values: list = None
    p_values: list = None
    m_values: list = None
    trials: int = 100
    master_seed: int = 0
    model: str = "binomial"
    solver: str = "cdcl"
    budget_ms: float = 10_000
    record_timings: bool = False

    def __post_init__(self):
        given = [v is not None for v in (self.c_values, self.p_values, self.m_values)]
        if sum(given) != 1:
            raise ValueError("give exactly one of c_values, p_values, m_values")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.model not in MODELS:
            raise ValueError(f"unknown model {self.model!r}; choose from {MODELS}")
        if self.m_values is not None and self.model != "uniform_m":
            raise ValueError("m_values only apply to the uniform_m model")
        check_seed(self.master_seed)
        for _, p, _ in self.points():
            if not 0 <= p <= 1:
                raise ValueError(f"p = {p} outside [0, 1] at n = {self.n}")

    def points(self):
        """(c, p, m) per grid point; m is None under the binomial model."""
        n = self.n
        out = []
        if self.m_values is not None:
            for m in self.m_values:
                out.append((m / (8 * n), m / count_w3(n), int(m)))
            return out
        if self.c_values is not None:
            for c in self.c_values:
                m = math.ceil(round(8 * c * n, 9)) if self.model == "uniform_m" else None
                out.append((float(c), c / n ** 2, m))
        else:
            for p in self.p_values:
                m = math.ceil(round(p * count_w3(n), 9)) if self.model == "uniform_m" else None
                out.append((p * n ** 2, float(p), m))
        for c, p, _ in out:
            if c < 0:
                raise ValueError("densities must be non-negative")
        return out


@dataclass
class SweepPoint:
    n: int
    c: float
    p: float
    m: int
    trials_completed: int
    sat_count: int
    unsat_count: int
    indeterminate_count: int
    estimate: float
    ci_low: float
    ci_high: float
    union_bound: float


def run_trial(task):
    """One seeded trial: sample, encode Phi_R, solve.  Returns a JSON-ready record."""
    n, c, p, m, model, master_seed, index, solver, budget_ms, record_timings = task
    seed = trial_seed(master_seed, index)
    if model == "binomial":
        source = sample_binomial(n, p, seed)
    else:
        source = sample_uniform_m(n, m, seed)
    verdict = solve(encode_presentation(source), budget_ms=budget_ms, method=solver)
    return {
        "record_type": "trial",
        "n": n,
        "c": c,
        "p": p,
        "m": len(source),
        "seed": seed,
        "trial_index": index,
        "status": verdict.status,
        "decisions": verdict.stats["decisions"],
        "elapsed_ms": round(verdict.stats["elapsed_ms"], 3) if record_timings else None,
    }


def _map(fn, tasks, jobs):
    if jobs <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))


def summarize(n, c, p, m, records):
    sat = sum(r["status"] == SAT for r in records)
    unsat = sum(r["status"] == UNSAT for r in records)
    undecided = sum(r["status"] == INDETERMINATE for r in records)
    decided = sat + unsat
    estimate = sat / decided if decided else None
    lo, hi = wilson_interval(sat, decided) if decided else (None, None)
    ub = union_bound(n, m) if m is not None else bound_report(n, p=p).union_bound
    return SweepPoint(n, c, p, m, len(records), sat, unsat, undecided, estimate, lo, hi, ub)


def point_record(point):
    return {"record_type": "point", **asdict(point)}


def run_sweep(cfg, jobs=1):
    """Run every grid point of ``cfg``; returns (points, trial records)."""
    points, records = [], []
    for c, p, m in cfg.points():
        tasks = [
            (cfg.n, c, p, m, cfg.model, cfg.master_seed, i, cfg.solver, cfg.budget_ms,
             cfg.record_timings)
            for i in range(cfg.trials)
        ]
        recs = _map(run_trial, tasks, jobs)
        records.extend(recs)
        points.append(summarize(cfg.n, c, p, m, recs))
    return points, records


def sat_probability_sweep(cfg, jobs=1):
    return run_sweep(cfg, jobs)[0]


@dataclass
class ThresholdResult:
    estimate: float
    bracket: tuple
    points: list = field(default_factory=list)
    records: list = field(default_factory=list)


def estimate_threshold(n, c_lo, c_hi, trials, seed, tol=0.01, model="binomial",
                       solver="cdcl", budget_ms=10_000, jobs=1, record_timings=False):
    """Bisect on c for the density where the empirical P(Phi_R satisfiable) crosses 1/2.

    Each evaluated density reuses the same trial seeds.  The returned
    ``points`` hold every evaluated sweep point in evaluation order,
    endpoints first, and ``records`` the trial records behind them.
    """
    if not c_lo < c_hi:
        raise ValueError("need c_lo < c_hi")
    records = []

    def at(c):
        cfg = SweepConfig(n, c_values=[c], trials=trials, master_seed=seed, model=model,
                          solver=solver, budget_ms=budget_ms, record_timings=record_timings)
        pts, recs = run_sweep(cfg, jobs)
        records.extend(recs)
        return pts[0]

    lo_pt, hi_pt = at(c_lo), at(c_hi)
    trace = [lo_pt, hi_pt]
    if lo_pt.estimate is None or hi_pt.estimate is None or not (lo_pt.estimate > 0.5 > hi_pt.estimate):
        raise ValueError(
            f"bracket does not straddle 1/2: P({c_lo}) = {lo_pt.estimate}, P({c_hi}) = {hi_pt.estimate}"
        )
    lo, hi = c_lo, c_hi
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        pt = at(mid)
        trace.append(pt)
        if pt.estimate is not None and pt.estimate > 0.5:
            lo = mid
        else:
            hi = mid
    return ThresholdResult((lo + hi) / 2, (lo, hi), trace, records)


@dataclass
class ConcentrationReport:
    n: int
    p: float
    trials: int
    mean: float
    delta: float
    interval: tuple
    asymptotic_interval: tuple
    deviations: int
    frequency: float
    allowed: float
    passed: bool


def concentration_check(n, p, trials, seed):
    """Frequency of |R| outside (1 +- delta) p|W_3| against Chebyshev's delta.

    Chebyshev bounds that frequency by delta at every n; the check fails
    only if the observed frequency exceeds delta plus three standard errors.
    The asymptotic window (1 +- delta) 8pn^3 is reported for comparison.
    """
    mean = p * count_w3(n)
    delta = concentration_delta(n, p)
    if delta >= 1:
        raise ValueError(f"delta = {delta:.3f} >= 1; need p |W_3| > 1")
    counts = np.array([relator_count(n, p, trial_seed(seed, i)) for i in range(trials)])
    deviations = int(np.sum(np.abs(counts - mean) >= delta * mean))
    frequency = deviations / trials
    allowed = delta + 3 * standard_error(delta, trials)
    asymptotic = 8 * p * n ** 3
    return ConcentrationReport(
        n, p, trials, mean, delta,
        ((1 - delta) * mean, (1 + delta) * mean),
        ((1 - delta) * asymptotic, (1 + delta) * asymptotic),
        deviations, frequency, allowed, frequency <= allowed,
    )


def distinctness_frequency(n, m, trials, seed):
    """Fraction of R_m samples whose m words are pairwise distinct."""
    hits = sum(sample_uniform_m(n, m, trial_seed(seed, i)).all_distinct for i in range(trials))
    return hits / trials


def survivor_frequency(n, p, trials, seed):
    """Fraction of sampled presentations with a generator touched by no relator."""
    hits = sum(
        find_surviving_generator(sample_binomial(n, p, trial_seed(seed, i))) is not None
        for i in range(trials)
    )
    return hits / trials


def run_quotient_trial(task):
    n, p, alpha, master_seed, index, strategy, solver, budget_ms, record_timings = task
    seed = trial_seed(master_seed, index)
    pres = sample_binomial(n, p, seed)
    verdict = quotient_certificate(pres, alpha, strategy=strategy, solver=solver,
                                   budget_ms=budget_ms, seed=seed)
    stats = verdict.stats or {}
    return {
        "record_type": "quotient_trial",
        "n": n,
        "c": p * n * n,
        "p": p,
        "m": len(pres),
        "seed": seed,
        "trial_index": index,
        "alpha": alpha,
        "k": verdict.k,
        "status": verdict.status,
        "decisions": stats.get("decisions"),
        "elapsed_ms": round(stats["elapsed_ms"], 3) if record_timings and stats else None,
    }


@dataclass
class CertificateSummary:
    n: int
    p: float
    alpha: float
    trials: int
    certified: int
    refuted: int
    indeterminate: int
    fraction: float
    ci_low: float
    ci_high: float


def run_quotient_trials(n, p, alpha, trials, seed, strategy="survivor_query", solver="cadical",
                        budget_ms=None, jobs=1, record_timings=False):
    """Certificate attempts on ``trials`` binomial presentations.

    Returns (summary, records); the certified fraction counts every trial,
    so timeouts count against it.
    """
    surviving_threshold(n, alpha)
    tasks = [(n, p, alpha, seed, i, strategy, solver, budget_ms, record_timings)
             for i in range(trials)]
    records = _map(run_quotient_trial, tasks, jobs)
    certified = sum(r["status"] == CERTIFIED for r in records)
    refuted = sum(r["status"] == REFUTED for r in records)
    lo, hi = wilson_interval(certified, trials)
    summary = CertificateSummary(n, p, alpha, trials, certified, refuted,
                                 trials - certified - refuted, certified / trials, lo, hi)
    return summary, records
