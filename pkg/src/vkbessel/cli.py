"""Command-line front end.

Subcommands: bessel-a, bessel-b, limit-a, limit-b, vk-generate,
vk-analyze, converge-a, converge-b, selftest.  Exit codes: 0 success,
1 usage error, 2 domain/precondition error, 3 selftest failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import io as vio
from .bessel import MultiplicityB, SeriesConfig, bessel_a, bessel_b
from .errors import DomainError
from .experiments import ExperimentSpec, run_convergence
from .limits import lim_bessel_a, lim_bessel_b
from .selftest import run_selftest
from .vk import (
    TriangularArray,
    estimate_params,
    generate_vk,
    generate_vk_plus,
    geometric_preset,
)

_PRESET_D = {"R": 1, "C": 2, "H": 4}


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _floats(text: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",") if v.strip() != ""])
    except ValueError as exc:
        raise DomainError(f"cannot parse float list {text!r}") from exc


def _ints(text: str) -> tuple:
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError as exc:
        raise DomainError(f"cannot parse integer list {text!r}") from exc


def _series_config(args) -> SeriesConfig:
    return SeriesConfig(
        max_degree=args.max_degree,
        rel_tol=args.tol,
        stagnation_window=args.stagnation_window,
    )


def _add_series_flags(p):
    p.add_argument("--max-degree", type=int, default=60,
                   help="total-degree cap of the series (default 60)")
    p.add_argument("--tol", type=float, default=1e-10,
                   help="relative stagnation tolerance (default 1e-10)")
    p.add_argument("--stagnation-window", type=int, default=3,
                   help="consecutive quiet layers required to stop (default 3)")


def _add_out_flags(p):
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _emit(text: str, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="vkbessel", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bessel-a", help="evaluate J_A(i*lam, x)")
    p.add_argument("--k", required=True, help="multiplicity, e.g. 1 or 1/2")
    p.add_argument("--lam", required=True, help="spectral vector, comma list")
    p.add_argument("--z", required=True, help="argument vector, comma list (r <= 3)")
    _add_series_flags(p)

    p = sub.add_parser("bessel-b", help="evaluate J_B(i*lam, x)")
    p.add_argument("--k", required=True)
    p.add_argument("--kprime", required=True, help="multiplicity on short roots")
    p.add_argument("--lam", required=True)
    p.add_argument("--z", required=True)
    _add_series_flags(p)

    p = sub.add_parser("limit-a", help="rank-infinity type A limit on a grid")
    p.add_argument("--k", required=True)
    p.add_argument("--omega", required=True, help="JSON parameter document")
    p.add_argument("--x-grid", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_out_flags(p)

    p = sub.add_parser("limit-b", help="rank-infinity type B limit on a grid")
    p.add_argument("--k", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--x-grid", required=True)
    p.add_argument("--seed", type=int, default=0)
    _add_out_flags(p)

    p = sub.add_parser("vk-generate", help="write rows of a parameter-realizing array")
    p.add_argument("--omega", required=True)
    p.add_argument("--n-list", required=True, help="ascending sizes, e.g. 8,16,32,64")
    p.add_argument("--plus", action="store_true",
                   help="use the nonnegative generator (gamma must be 0)")
    p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("vk-analyze", help="estimate parameters from an array file")
    p.add_argument("--array", required=True, help="triangular array path")
    p.add_argument("--i-max", type=int, default=4)
    _add_out_flags(p)

    p = sub.add_parser("converge-a", help="type A convergence experiment")
    p.add_argument("--k", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--n-list", default="8,16,32,64")
    p.add_argument("--x-grid", default="lin:-2:2:5:r2")
    p.add_argument("--seed", type=int, default=0)
    _add_series_flags(p)
    _add_out_flags(p)

    p = sub.add_parser("converge-b", help="type B convergence experiment")
    p.add_argument("--k", help="long-root multiplicity (overridden by --preset)")
    p.add_argument("--kprime",
                   help="constant k' or comma list aligned with --n-list")
    p.add_argument("--preset", choices=tuple(_PRESET_D),
                   help="geometric multiplicity preset (R, C, or H)")
    p.add_argument("--p-rule", default="n",
                   help="dimension rule for the preset: n, 2n, n+c")
    p.add_argument("--omega", required=True)
    p.add_argument("--n-list", default="8,16,32,64")
    p.add_argument("--x-grid", default="lin:0:2:5:r2")
    p.add_argument("--seed", type=int, default=0)
    _add_series_flags(p)
    _add_out_flags(p)

    p = sub.add_parser("selftest", help="run every property suite")
    p.add_argument("--inject-fault", help=argparse.SUPPRESS)

    return ap


def _value_doc(res) -> str:
    return json.dumps(
        {
            "re": res.value.real,
            "im": res.value.imag,
            "tail_estimate": res.tail_estimate,
            "converged": res.converged,
            "degree_used": res.degree_used,
        }
    ) + "\n"


def _grid_table(grid, values) -> str:
    r = grid.shape[1]
    head = [f"x_{i+1}" for i in range(r)] + ["re", "im"]
    lines = [",".join(head)]
    for x, v in zip(grid, values):
        v = complex(v)
        lines.append(",".join([repr(float(c)) for c in x] + [repr(v.real), repr(v.imag)]))
    return "\n".join(lines) + "\n"


def _run(args) -> int:
    if args.command == "bessel-a":
        res = bessel_a(vio.parse_rational(args.k), 1j * _floats(args.lam),
                       _floats(args.z), _series_config(args))
        sys.stdout.write(_value_doc(res))
        return 0

    if args.command == "bessel-b":
        mult = MultiplicityB(vio.parse_rational(args.kprime), vio.parse_rational(args.k))
        res = bessel_b(mult, 1j * _floats(args.lam), _floats(args.z),
                       _series_config(args))
        sys.stdout.write(_value_doc(res))
        return 0

    if args.command in ("limit-a", "limit-b"):
        k = vio.parse_rational(args.k)
        grid = vio.parse_x_grid(args.x_grid, seed=args.seed,
                                chamber=args.command == "limit-b")
        if args.command == "limit-a":
            omega = vio.load_omega(args.omega)
            vals = [lim_bessel_a(omega, k, x) for x in grid]
        else:
            omega = vio.load_omega_plus(args.omega).as_params()
            vals = [lim_bessel_b(omega, k, x) for x in grid]
        if args.format == "json":
            doc = [
                {"x": list(map(float, x)), "re": complex(v).real, "im": complex(v).imag}
                for x, v in zip(grid, vals)
            ]
            _emit(json.dumps(doc, indent=2) + "\n", args.out)
        else:
            _emit(_grid_table(grid, vals), args.out)
        return 0

    if args.command == "vk-generate":
        n_list = _ints(args.n_list)
        if args.plus:
            params = vio.load_omega_plus(args.omega)
            rows = {n: generate_vk_plus(params, n) for n in n_list}
        else:
            omega = vio.load_omega(args.omega)
            rows = {n: generate_vk(omega, n) for n in n_list}
        arr = TriangularArray(rows)
        if args.out:
            vio.write_triangular(arr, args.out)
        else:
            for n in arr.sizes():
                sys.stdout.write(" ".join(repr(float(v)) for v in arr.rows[n]) + "\n")
        return 0

    if args.command == "vk-analyze":
        arr = vio.read_triangular(args.array)
        recs = []
        for n in arr.sizes():
            est = estimate_params(arr, n, min(args.i_max, n))
            recs.append(
                {
                    "n": n,
                    "beta_hat": est.beta,
                    "delta_hat": est.delta,
                    "gamma_hat": est.gamma,
                    "alpha_hat": [float(a) for a in est.alpha],
                }
            )
        if args.format == "json":
            _emit(json.dumps(recs, indent=2) + "\n", args.out)
        else:
            imax = max(len(r["alpha_hat"]) for r in recs)
            head = ["n", "beta_hat", "delta_hat", "gamma_hat"] + [
                f"alpha_{i+1}" for i in range(imax)
            ]
            lines = [",".join(head)]
            for r in recs:
                cells = [str(r["n"]), repr(r["beta_hat"]), repr(r["delta_hat"]),
                         repr(r["gamma_hat"])]
                cells += [repr(a) for a in r["alpha_hat"]]
                cells += [""] * (imax - len(r["alpha_hat"]))
                lines.append(",".join(cells))
            _emit("\n".join(lines) + "\n", args.out)
        return 0

    if args.command in ("converge-a", "converge-b"):
        series = _series_config(args)
        n_list = _ints(args.n_list)
        if args.command == "converge-a":
            spec = ExperimentSpec(
                "converge-a", vio.parse_rational(args.k), vio.load_omega(args.omega),
                n_list, vio.parse_x_grid(args.x_grid, seed=args.seed), series,
            )
        else:
            omega = vio.load_omega_plus(args.omega)
            grid = vio.parse_x_grid(args.x_grid, seed=args.seed, chamber=True)
            if args.preset:
                sched = geometric_preset(_PRESET_D[args.preset],
                                         vio.parse_p_rule(args.p_rule))
                spec = ExperimentSpec("converge-b", sched.k, omega, n_list, grid,
                                      series, schedule=sched)
            else:
                if not (args.k and args.kprime):
                    raise DomainError("converge-b needs --preset or --k with --kprime")
                kprimes = tuple(vio.parse_rational(v) for v in args.kprime.split(","))
                spec = ExperimentSpec("converge-b", vio.parse_rational(args.k), omega,
                                      n_list, grid, series, kprime_list=kprimes)
        report = run_convergence(spec)
        if args.format == "json":
            _emit(vio.report_json(report), args.out)
        else:
            _emit(vio.report_rows_csv(report), args.out)
            sys.stdout.write(vio.report_summary_csv(report))
        return 0

    if args.command == "selftest":
        return run_selftest(fault=args.inject_fault)

    raise DomainError(f"unhandled command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _run(args)
    except DomainError as exc:
        print(f"vkbessel: domain error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"vkbessel: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())
