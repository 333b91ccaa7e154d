"""Command-line interface: ``trilo <subcommand> ...`` or ``python -m triangular_lo``.

Exit status: 0 on success, 1 on bad input or failure (one-line diagnostic
on stderr), 2 when a solver budget ran out and left a result
indeterminate.  ``sweep`` and ``threshold`` exit 0 with a warning instead
when ``--allow-timeouts`` is given.
"""

import argparse
import math
import shlex
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .bounds import alpha_for_epsilon, bound_report
from .certificates import quotient_certificate
from .dimacs import from_dimacs, to_dimacs
from .encoding import NaeFormula, encode_nae, encode_presentation, nae_to_cnf
from .experiments import (
    SweepConfig,
    estimate_threshold,
    point_record,
    run_quotient_trials,
    run_sweep,
)
from .fileio import (
    atomic_write,
    read_jsonl,
    read_presentation,
    summary_text,
    table_text,
    write_config,
    write_jsonl,
    write_presentation,
)
from .rng import check_seed
from .sat import INDETERMINATE, SOLVERS, evaluate_nae, solve
from .words import Presentation, check_subset, count_w3, restrict, sample_binomial, sample_uniform_m

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INDETERMINATE = 2

STRATEGY_NAMES = {"exhaustive": "exhaustive", "survivor": "survivor_query", "sampled": "sampled_subsets"}
QUOTIENT_COLUMNS = ("n", "p", "alpha", "trials", "certified", "refuted", "indeterminate",
                    "fraction", "ci_low", "ci_high")


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(f"{self.prog}: {message}")


def _seed(text):
    try:
        return check_seed(int(text, 0))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _subset(text):
    if text == "all":
        return None
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"subset must be 'all' or i,j,..., got {text!r}") from None


def _invocation(argv):
    return "trilo " + " ".join(shlex.quote(a) for a in argv)


def _config(args, argv, **extra):
    params = {k: v for k, v in vars(args).items() if k != "func"}
    return {"invocation": _invocation(argv), "argv": list(argv), "version": __version__,
            **params, **extra}


def _density(args):
    """p from --p or --c (p = c / n^2)."""
    if args.p is not None:
        return args.p
    return args.c / args.n ** 2


# --- subcommands ------------------------------------------------------------

def cmd_sample(args, argv):
    n = args.n
    comments = [_invocation(argv), f"seed={args.seed}"]
    if args.model == "binomial":
        if args.p is None and args.c is None:
            raise CliError("sample: binomial model needs --p or --c")
        pres = sample_binomial(n, _density(args), args.seed)
    else:
        m = args.m
        if m is None:
            if args.p is None and args.c is None:
                raise CliError("sample: uniform-m model needs --m, --p or --c")
            m = math.ceil(round(8 * args.c * n, 9)) if args.c is not None else math.ceil(
                round(args.p * count_w3(n), 9))
        draws = sample_uniform_m(n, m, args.seed)
        # repeated draws add no new constraint; keep first occurrences in draw order
        _, first = np.unique(draws.array, axis=0, return_index=True)
        pres = Presentation(n, draws.array[np.sort(first)])
        comments.append(f"draws={m} distinct={len(pres)} all_distinct={str(draws.all_distinct).lower()}")
    write_presentation(args.out, pres, comments)
    print(f"wrote {args.out}: n={n}, {len(pres)} relators")
    return EXIT_OK


def cmd_encode(args, argv):
    pres = read_presentation(args.input)
    if args.nae:
        source = pres if args.subset is None else restrict(pres, args.subset)
        formula = encode_nae(source)
    else:
        if args.subset is not None:
            check_subset(pres.n, args.subset)
        formula = encode_presentation(pres, args.subset)
    header = f"c {_invocation(argv)}\n"
    atomic_write(args.out, header + to_dimacs(formula))
    print(f"wrote {args.out}: {formula.num_variables} variables, {len(formula.clauses)} clauses")
    return EXIT_OK


def _stats_line(stats):
    return "stats: " + " ".join(
        f"{k}={v:.3f}" if isinstance(v, float) else f"{k}={v}" for k, v in stats.items()
    )


def cmd_solve(args, argv):
    if args.input is not None:
        formula = encode_presentation(read_presentation(args.input))
    else:
        formula = from_dimacs(Path(args.dimacs).read_text())
    nae = isinstance(formula, NaeFormula)
    verdict = solve(nae_to_cnf(formula) if nae else formula, budget_ms=args.budget_ms,
                    method=args.solver)
    if nae and verdict.model is not None:
        assert evaluate_nae(formula, verdict.model)
    print(f"verdict: {verdict.status}")
    if verdict.model is not None:
        print("model: " + " ".join(map(str, verdict.model_literals())))
    print(_stats_line(verdict.stats))
    return EXIT_INDETERMINATE if verdict.status == INDETERMINATE else EXIT_OK


def _c_grid(c_min, c_max, step):
    if step <= 0:
        raise CliError("sweep: --c-step must be positive")
    if c_max < c_min:
        raise CliError("sweep: --c-max is below --c-min")
    count = int(math.floor((c_max - c_min) / step + 1e-9)) + 1
    return [round(c_min + i * step, 10) for i in range(count)]


def _finish_timeouts(indeterminate, args, what):
    if not indeterminate:
        return EXIT_OK
    if args.allow_timeouts:
        print(f"warning: {indeterminate} indeterminate {what} excluded from estimates", file=sys.stderr)
        return EXIT_OK
    print(f"error: {indeterminate} indeterminate {what}; rerun with a larger --budget-ms "
          "or pass --allow-timeouts", file=sys.stderr)
    return EXIT_INDETERMINATE


def _write_run(out, config, records, summary):
    out = Path(out)
    write_jsonl(out / "trials.jsonl", records)
    atomic_write(out / "summary.csv", summary)
    write_config(out / "config.json", config)


def cmd_sweep(args, argv):
    cfg = SweepConfig(
        args.n, c_values=_c_grid(args.c_min, args.c_max, args.c_step), trials=args.trials,
        master_seed=args.seed, model=args.model.replace("-", "_"), solver=args.solver,
        budget_ms=args.budget_ms, record_timings=args.timings,
    )
    points, records = run_sweep(cfg, jobs=args.jobs)
    records = records + [point_record(p) for p in points]
    _write_run(args.out, _config(args, argv, c_values=cfg.c_values), records, summary_text(points))
    sys.stdout.write(summary_text(points))
    return _finish_timeouts(sum(p.indeterminate_count for p in points), args, "trials")


def cmd_threshold(args, argv):
    result = estimate_threshold(
        args.n, args.c_lo, args.c_hi, args.trials, args.seed, tol=args.tol,
        model=args.model.replace("-", "_"), solver=args.solver, budget_ms=args.budget_ms,
        jobs=args.jobs, record_timings=args.timings,
    )
    print(f"estimate: {result.estimate:.6f}")
    print(f"bracket: {result.bracket[0]:.6f} {result.bracket[1]:.6f}")
    print("trace:")
    sys.stdout.write(summary_text(result.points))
    if args.out:
        records = result.records + [point_record(p) for p in result.points]
        config = _config(args, argv, estimate=result.estimate, bracket=list(result.bracket))
        _write_run(args.out, config, records, summary_text(result.points))
    return _finish_timeouts(sum(p.indeterminate_count for p in result.points), args, "trials")


def _alpha(args):
    if args.alpha is not None:
        return args.alpha
    if args.epsilon is not None:
        return alpha_for_epsilon(args.epsilon)
    raise CliError("quotient: give --alpha or --epsilon")


def cmd_quotient(args, argv):
    alpha = _alpha(args)
    strategy = STRATEGY_NAMES[args.strategy]
    if args.input is not None:
        if strategy == "sampled_subsets" and args.seed is None:
            raise CliError("quotient: the sampled strategy needs --seed")
        pres = read_presentation(args.input)
        v = quotient_certificate(pres, alpha, strategy=strategy, solver=args.solver,
                                 budget_ms=args.budget_ms, samples=args.samples,
                                 seed=args.seed or 0)
        print(f"verdict: {v.status}")
        print(f"k: {v.k}")
        print(f"alpha: {alpha}")
        if v.witness_subset is not None:
            print("witness_subset: " + ",".join(map(str, v.witness_subset)))
            print("witness_model: " + " ".join(map(str, v.witness_model)))
        print(f"solves: {v.solves}")
        return EXIT_INDETERMINATE if v.status == INDETERMINATE else EXIT_OK

    missing = [f for f, val in (("--n", args.n), ("--trials", args.trials), ("--seed", args.seed),
                                ("--out", args.out)) if val is None]
    if missing or (args.p is None and args.c is None and args.log_c is None):
        raise CliError("quotient: give --in, or --n, --p/--c/--log-c, --trials, --seed and --out")
    if args.log_c is not None:
        p = args.log_c * math.log(args.n) / args.n ** 2
    else:
        p = _density(args)
    summary, records = run_quotient_trials(
        args.n, p, alpha, args.trials, args.seed, strategy=strategy, solver=args.solver,
        budget_ms=args.budget_ms, jobs=args.jobs, record_timings=args.timings,
    )
    records = records + [{"record_type": "quotient_summary", **asdict(summary)}]
    text = table_text([asdict(summary)], QUOTIENT_COLUMNS)
    _write_run(args.out, _config(args, argv, p_value=p, alpha_value=alpha), records, text)
    sys.stdout.write(text)
    return _finish_timeouts(summary.indeterminate, args, "certificate attempts")


def cmd_bounds(args, argv):
    alpha = args.alpha
    if alpha is None and args.epsilon is not None:
        alpha = alpha_for_epsilon(args.epsilon)
    if args.m is not None:
        report = bound_report(args.n, m=args.m, alpha=alpha)
    else:
        report = bound_report(args.n, p=_density(args), alpha=alpha)
    for key, value in report.as_dict().items():
        if value is not None:
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_report(args, argv):
    root = Path(args.input)
    if not root.is_dir():
        raise CliError(f"report: {root} is not a directory")
    files = sorted(root.rglob("trials.jsonl"))
    if not files:
        raise CliError(f"report: no trials.jsonl under {root}")
    points, quotients = [], []
    for f in files:
        for rec in read_jsonl(f):
            if rec.get("record_type") == "point":
                points.append(rec)
            elif rec.get("record_type") == "quotient_summary":
                quotients.append(rec)
    delim = "," if args.format == "csv" else "\t"
    if points:
        points.sort(key=lambda r: (r["n"], r["c"]))
        sys.stdout.write(summary_text(points, delimiter=delim))
    if quotients:
        quotients.sort(key=lambda r: (r["n"], r["p"]))
        sys.stdout.write(table_text(quotients, QUOTIENT_COLUMNS, delimiter=delim))
    if not points and not quotients:
        raise CliError(f"report: no summary records under {root}")
    return EXIT_OK


# --- parser -----------------------------------------------------------------

def _add_run_flags(p, solver="cdcl"):
    p.add_argument("--budget-ms", type=float, default=10_000, help="per-instance solver budget")
    p.add_argument("--solver", choices=SOLVERS, default=solver)
    p.add_argument("--jobs", type=_positive_int, default=1, help="worker processes")
    p.add_argument("--allow-timeouts", action="store_true",
                   help="exit 0 with a warning when some trials time out")
    p.add_argument("--timings", action="store_true",
                   help="record wall times in trials.jsonl (makes it run-dependent)")


def build_parser():
    parser = _Parser(prog="trilo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a random presentation")
    p.add_argument("--n", type=_positive_int, required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--p", type=float)
    g.add_argument("--c", type=float)
    p.add_argument("--model", choices=("binomial", "uniform-m"), default="binomial")
    p.add_argument("--m", type=int)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("encode", help="write Phi_{R,A} (or the NAE form) as DIMACS")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--subset", type=_subset, default=None)
    p.add_argument("--nae", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("solve", help="decide a presentation's Phi_R or a DIMACS file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--in", dest="input")
    g.add_argument("--dimacs")
    p.add_argument("--budget-ms", type=float, default=None)
    p.add_argument("--solver", choices=SOLVERS, default="cdcl")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="estimate P(Phi_R satisfiable) over a grid of c")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--c-min", type=float, required=True)
    p.add_argument("--c-max", type=float, required=True)
    p.add_argument("--c-step", type=float, required=True)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--model", choices=("binomial", "uniform-m"), default="binomial")
    p.add_argument("--out", required=True)
    _add_run_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="bisect for the c where P(sat) crosses 1/2")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--c-lo", type=float, required=True)
    p.add_argument("--c-hi", type=float, required=True)
    p.add_argument("--trials", type=_positive_int, required=True)
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--tol", type=float, default=0.01)
    p.add_argument("--model", choices=("binomial", "uniform-m"), default="binomial")
    p.add_argument("--out")
    _add_run_flags(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("quotient", help="certify absence of large left-orderable quotients")
    p.add_argument("--in", dest="input")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--alpha", type=float)
    g.add_argument("--epsilon", type=float)
    p.add_argument("--strategy", choices=tuple(STRATEGY_NAMES), default="survivor")
    p.add_argument("--samples", type=_positive_int, default=64)
    p.add_argument("--seed", type=_seed)
    p.add_argument("--n", type=_positive_int, help="batch mode: sample --trials presentations")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--p", type=float)
    g.add_argument("--c", type=float)
    g.add_argument("--log-c", type=float, help="p = LOG_C * log(n) / n^2")
    p.add_argument("--trials", type=_positive_int)
    p.add_argument("--out")
    _add_run_flags(p, solver="cadical")
    p.set_defaults(func=cmd_quotient, budget_ms=None)

    p = sub.add_parser("bounds", help="print the finite-n bounds at one point")
    p.add_argument("--n", type=_positive_int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--m", type=int)
    g.add_argument("--p", type=float)
    g.add_argument("--c", type=float)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--alpha", type=float)
    g.add_argument("--epsilon", type=float)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("report", help="aggregate sweep outputs under a directory")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--format", choices=("csv", "tsv"), default="csv")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args, argv)
    except (CliError, ValueError, OSError) as exc:
        message = " ".join(str(exc).split()) or type(exc).__name__
        print(f"error: {message}", file=sys.stderr)
        return EXIT_ERROR


run = main
