"""Presentation files, JSON Lines records, CSV summaries and run configs.

Presentation text format::

    # comment lines start with '#'
    n=3
    +1 -2 +3
    -1 -1 -1

Every file is written atomically (temporary file, then rename), so an
interrupted run never leaves a half-written artifact behind.
"""

import csv
import io
import json
import os
import tempfile
from dataclasses import asdict
from pathlib import Path

import numpy as np

from .words import Presentation


class PresentationFormatError(ValueError):
    pass


def format_presentation(pres, comments=()):
    lines = [f"# {c}" for c in comments]
    lines.append(f"n={pres.n}")
    lines.extend(" ".join(f"{v:+d}" for v in row) for row in pres.array.tolist())
    return "\n".join(lines) + "\n"


def parse_presentation(text):
    n = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if n is None:
            key, eq, value = line.partition("=")
            if key.strip() != "n" or not eq:
                raise PresentationFormatError(f"line {lineno}: expected 'n=<int>', got {line!r}")
            try:
                n = int(value)
            except ValueError:
                raise PresentationFormatError(f"line {lineno}: bad generator count {value!r}") from None
            continue
        parts = line.split()
        if len(parts) != 3:
            raise PresentationFormatError(f"line {lineno}: a relator needs 3 letters, got {line!r}")
        try:
            rows.append(tuple(int(t) for t in parts))
        except ValueError:
            raise PresentationFormatError(f"line {lineno}: bad letter in {line!r}") from None
    if n is None:
        raise PresentationFormatError("missing 'n=<int>' line")
    try:
        return Presentation(n, rows)
    except ValueError as exc:
        raise PresentationFormatError(str(exc)) from None


def atomic_write(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_presentation(path):
    return parse_presentation(Path(path).read_text())


def write_presentation(path, pres, comments=()):
    atomic_write(path, format_presentation(pres, comments))


def _plain(value):
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, (tuple, list)):
        return [_plain(v) for v in value]
    return value


def jsonl_text(records):
    return "".join(json.dumps({k: _plain(v) for k, v in r.items()}) + "\n" for r in records)


def write_jsonl(path, records):
    atomic_write(path, jsonl_text(records))


def read_jsonl(path):
    with open(path) as fh:
        return [json.loads(line) for line in fh if line.strip()]


SUMMARY_COLUMNS = ("n", "c", "p", "trials", "sat", "unsat", "indeterminate",
                   "estimate", "ci_low", "ci_high", "union_bound")


def summary_row(point):
    d = point if isinstance(point, dict) else asdict(point)
    return {
        "n": d["n"], "c": d["c"], "p": d["p"], "trials": d["trials_completed"],
        "sat": d["sat_count"], "unsat": d["unsat_count"],
        "indeterminate": d["indeterminate_count"], "estimate": d["estimate"],
        "ci_low": d["ci_low"], "ci_high": d["ci_high"], "union_bound": d["union_bound"],
    }


def table_text(rows, columns, delimiter=","):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, delimiter=delimiter, lineterminator="\n",
                            extrasaction="ignore")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row.get(k) is None else row.get(k)) for k in columns})
    return buf.getvalue()


def summary_text(points, delimiter=","):
    return table_text([summary_row(p) for p in points], SUMMARY_COLUMNS, delimiter)


def write_summary_csv(path, points):
    atomic_write(path, summary_text(points))


def write_config(path, config):
    atomic_write(path, json.dumps(config, indent=2, sort_keys=True) + "\n")
