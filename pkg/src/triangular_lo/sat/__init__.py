from .solver import (
    INDETERMINATE,
    MAX_BRUTE_FORCE_VARS,
    SAT,
    SOLVERS,
    UNSAT,
    Verdict,
    brute_force,
    evaluate,
    evaluate_nae,
    solve,
)

__all__ = [
    "INDETERMINATE",
    "MAX_BRUTE_FORCE_VARS",
    "SAT",
    "SOLVERS",
    "UNSAT",
    "Verdict",
    "brute_force",
    "evaluate",
    "evaluate_nae",
    "solve",
]
