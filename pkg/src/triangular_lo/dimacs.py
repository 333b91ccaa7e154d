"""DIMACS CNF reader and writer.

Variable roles travel as comment lines ``c role <first>-<last> <tag>`` ahead
of the header.  Formulas without role information are written with no
comments at all.  A not-all-equal formula is marked by a ``c nae`` line and
otherwise uses the same clause syntax.
"""

from itertools import groupby

from .encoding import CnfFormula, NaeFormula

NAE_MARKER = "c nae"


class DimacsError(ValueError):
    pass


def _role_runs(doc):
    runs = []
    items = sorted(doc.items())
    for _, grp in groupby(enumerate(items), key=lambda t: (t[1][0] - t[0], t[1][1])):
        grp = [v for _, v in grp]
        runs.append((grp[0][0], grp[-1][0], grp[0][1]))
    return runs


def to_dimacs(formula):
    lines = [f"c role {lo}-{hi} {tag}" for lo, hi, tag in _role_runs(getattr(formula, "variable_doc", {}))]
    if isinstance(formula, NaeFormula):
        lines.insert(0, NAE_MARKER)
    lines.append(f"p cnf {formula.num_variables} {len(formula.clauses)}")
    lines.extend(" ".join(map(str, c)) + " 0" for c in formula.clauses)
    return "\n".join(lines) + "\n"


def from_dimacs(text):
    doc = {}
    nae = False
    header = None
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            parts = line.split()
            if parts == ["c", "nae"]:
                nae = True
                continue
            if len(parts) == 4 and parts[1] == "role":
                lo, _, hi = parts[2].partition("-")
                try:
                    for v in range(int(lo), int(hi or lo) + 1):
                        doc[v] = parts[3]
                except ValueError:
                    raise DimacsError(f"line {lineno}: bad role comment {line!r}") from None
            continue
        if line.startswith("p"):
            if header is not None:
                raise DimacsError(f"line {lineno}: second header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if header[0] < 0 or header[1] < 0:
                raise DimacsError(f"line {lineno}: negative counts in header")
            continue
        if header is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                tokens.append(int(tok))
            except ValueError:
                raise DimacsError(f"line {lineno}: bad literal {tok!r}") from None
    if header is None:
        raise DimacsError("missing 'p cnf' header")
    num_vars, num_clauses = header
    clauses = []
    current = []
    for lit in tokens:
        if lit == 0:
            if not current:
                raise DimacsError("empty clause")
            clauses.append(tuple(current))
            current = []
        elif abs(lit) > num_vars:
            raise DimacsError(f"literal {lit} exceeds declared {num_vars} variables")
        else:
            current.append(lit)
    if current:
        raise DimacsError("last clause is missing its 0 terminator")
    if len(clauses) != num_clauses:
        raise DimacsError(f"header declares {num_clauses} clauses, found {len(clauses)}")
    if nae:
        try:
            return NaeFormula(num_vars, clauses)
        except ValueError as exc:
            raise DimacsError(str(exc)) from None
    doc = {v: tag for v, tag in doc.items() if 1 <= v <= num_vars}
    return CnfFormula(num_vars, clauses, doc)
