"""File formats and parsing helpers for the CLI.

Triangular arrays: one row per line, whitespace-separated decimals; the
line holding the row for size n carries exactly n values and row sizes
strictly increase down the file.  Floats are emitted with repr so a
written file re-ingests bit-for-bit.

Parameter documents: JSON {"alpha": [...], "beta": x, "gamma": y} with
gamma omitted (or 0) for the nonnegative variant.  Rationals such as
multiplicities are strings like "1/2".
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import DomainError
from .experiments import ConvergenceReport, make_grid
from .vk import TriangularArray, VKParams, VKParamsPlus

__all__ = [
    "parse_rational",
    "parse_p_rule",
    "read_triangular",
    "write_triangular",
    "load_omega",
    "load_omega_plus",
    "parse_x_grid",
    "report_rows_csv",
    "report_summary_csv",
    "report_json",
    "read_report_csv",
]


def parse_rational(text) -> Fraction:
    """Exact rational from '1/2', '3', or a JSON number."""
    if isinstance(text, str):
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse rational {text!r}") from exc
    return Fraction(text)


_P_RULE = re.compile(r"^\s*(\d*)\s*n\s*(?:([+-])\s*(\d+))?\s*$")


def parse_p_rule(expr: str):
    """Affine rules over n: 'n', '2n', 'n+3', '2n-1'."""
    m = _P_RULE.match(expr)
    if not m:
        raise DomainError(f"cannot parse p rule {expr!r} (want e.g. n, 2n, n+c)")
    a = int(m.group(1)) if m.group(1) else 1
    c = int(m.group(3)) if m.group(3) else 0
    if m.group(2) == "-":
        c = -c

    def rule(n: int) -> int:
        return a * n + c

    rule.label = expr.strip()
    return rule


def read_triangular(path) -> TriangularArray:
    rows = {}
    with open(path) as fh:
        prev = 0
        for lineno, line in enumerate(fh, 1):
            vals = line.split()
            if not vals:
                continue
            n = len(vals)
            if n <= prev:
                raise DomainError(
                    f"{path}:{lineno}: row sizes must strictly increase "
                    f"({n} after {prev})"
                )
            prev = n
            rows[n] = np.array([float(v) for v in vals])
    return TriangularArray(rows)


def write_triangular(arr: TriangularArray, path) -> None:
    with open(path, "w") as fh:
        for n in arr.sizes():
            fh.write(" ".join(repr(float(v)) for v in arr.rows[n]) + "\n")


def _as_float_list(node, name):
    if node is None:
        return []
    if not isinstance(node, list):
        raise DomainError(f"{name} must be a JSON array")
    return [float(v) for v in node]


def load_omega(path) -> VKParams:
    with open(path) as fh:
        doc = json.load(fh)
    return VKParams(
        tuple(_as_float_list(doc.get("alpha"), "alpha")),
        float(doc.get("beta", 0.0)),
        float(doc.get("gamma", 0.0)),
    )


def load_omega_plus(path) -> VKParamsPlus:
    with open(path) as fh:
        doc = json.load(fh)
    if float(doc.get("gamma", 0.0)) != 0.0:
        raise DomainError("nonnegative parameters require gamma = 0 (or omitted)")
    alpha = tuple(a for a in _as_float_list(doc.get("alpha"), "alpha") if a != 0.0)
    return VKParamsPlus(alpha, float(doc.get("beta", 0.0)))


_GRID = re.compile(r"^(lin|rand):(-?[\d.]+):(-?[\d.]+):(\d+):r([123])$")


def parse_x_grid(spec: str, seed: Optional[int] = None, chamber: bool = False) -> np.ndarray:
    """Grid argument: 'lin:LO:HI:COUNT:rR', 'rand:LO:HI:COUNT:rR', or a
    path to a whitespace file with one point per line."""
    m = _GRID.match(spec.strip())
    if m:
        kind, lo, hi, count, r = m.groups()
        return make_grid(kind, float(lo), float(hi), int(count), int(r),
                         seed=seed, chamber=chamber)
    try:
        with open(spec) as fh:
            pts = [[float(v) for v in line.split()] for line in fh if line.split()]
    except OSError as exc:
        raise DomainError(f"x-grid {spec!r} is neither a grid spec nor a file") from exc
    if not pts:
        raise DomainError(f"x-grid file {spec!r} is empty")
    width = len(pts[0])
    if any(len(p) != width for p in pts):
        raise DomainError("x-grid file rows must all have the same dimension")
    grid = np.asarray(pts, dtype=float)
    if chamber:
        grid = -np.sort(-grid, axis=1)
    return grid


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def report_rows_csv(report: ConvergenceReport) -> str:
    r = report.spec.x_grid.shape[1]
    head = ["n"] + [f"x_{i+1}" for i in range(r)] + [
        "re_finite", "im_finite", "re_limit", "im_limit", "abs_err", "truncation_flag",
    ]
    lines = [",".join(head)]
    for row in report.rows:
        cells = [str(row["n"])]
        cells += [repr(v) for v in row["x"]]
        cells += [
            repr(row["re_finite"]), repr(row["im_finite"]),
            repr(row["re_limit"]), repr(row["im_limit"]),
            repr(row["abs_err"]), str(row["truncation_flag"]),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def report_summary_csv(report: ConvergenceReport) -> str:
    lines = ["n,sup_err,mean_err,max_truncation_estimate"]
    for s in report.summary:
        lines.append(
            f"{s['n']},{s['sup_err']!r},{s['mean_err']!r},"
            f"{s['max_truncation_estimate']!r}"
        )
    return "\n".join(lines) + "\n"


def report_json(report: ConvergenceReport) -> str:
    doc = {
        "kind": report.spec.kind,
        "k": str(report.spec.k),
        "n_list": list(report.spec.n_list),
        "rows": report.rows,
        "summary": report.summary,
        "meta": report.meta,
    }
    return json.dumps(doc, indent=2, default=float) + "\n"


def read_report_csv(text: str) -> list:
    """Re-ingest a rows CSV; floats parse back bit-for-bit."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split(",")
    out = []
    for ln in lines[1:]:
        cells = ln.split(",")
        rec = {}
        for name, cell in zip(head, cells):
            if name in ("n", "truncation_flag"):
                rec[name] = int(cell)
            else:
                rec[name] = float(cell)
        out.append(rec)
    return out
