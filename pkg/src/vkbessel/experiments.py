"""Desk-scale convergence experiments.

For a parameter target and a list of row sizes, evaluate the finite-rank
Bessel function along generated spectral rows against the rank-infinity
limit and report per-point and per-size errors.

Type A rows come from ``generate_vk``; type B rows are built so that
row^2/nu_n realizes the nonnegative target, i.e. lambda(n) =
sqrt(nu_n * rho(n)) with rho the nonnegative generator output.  When the
multiplicity schedule has k'_n/n -> 0 (so nu_n ~ kn) that regime is
reported in the summary metadata.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .bessel import DEFAULT_CONFIG, MultiplicityB, SeriesConfig, bessel_a, bessel_b
from .errors import DomainError
from .limits import lim_bessel_a, lim_bessel_b
from .symfun import as_jack_param
from .vk import (
    MultiplicitySchedule,
    VKParams,
    VKParamsPlus,
    generate_vk,
    generate_vk_plus,
)

__all__ = ["ExperimentSpec", "ConvergenceReport", "run_convergence", "make_grid"]


def make_grid(kind: str, lo: float, hi: float, count: int, r: int,
              seed: Optional[int] = None, chamber: bool = False) -> np.ndarray:
    """Evaluation grid of shape (npts, r).

    kind 'lin' is the Cartesian product of a count-point linspace per
    coordinate (count^r points); 'rand' draws count uniform points with
    the given seed.  ``chamber`` maps each point to descending coordinate
    order.
    """
    if r < 1 or r > 3:
        raise DomainError("grids support 1 <= r <= 3")
    if kind == "lin":
        axis = np.linspace(lo, hi, count)
        pts = np.stack(np.meshgrid(*([axis] * r), indexing="ij"), axis=-1).reshape(-1, r)
    elif kind == "rand":
        rng = np.random.default_rng(seed)
        pts = rng.uniform(lo, hi, size=(count, r))
    else:
        raise DomainError(f"unknown grid kind {kind!r}")
    if chamber:
        pts = -np.sort(-pts, axis=1)
    return pts


@dataclass(frozen=True)
class ExperimentSpec:
    """Specification of one convergence run."""

    kind: str  # "converge-a" | "converge-b"
    k: Fraction
    omega: VKParams | VKParamsPlus
    n_list: tuple
    x_grid: np.ndarray
    series: SeriesConfig = DEFAULT_CONFIG
    schedule: Optional[MultiplicitySchedule] = None
    kprime_list: Optional[tuple] = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ("converge-a", "converge-b"):
            raise DomainError(f"unknown experiment kind {self.kind!r}")
        n_list = tuple(int(n) for n in self.n_list)
        if any(b <= a for a, b in zip(n_list, n_list[1:])):
            raise DomainError("n_list must be ascending")
        object.__setattr__(self, "n_list", n_list)
        grid = np.atleast_2d(np.asarray(self.x_grid, dtype=float))
        object.__setattr__(self, "x_grid", grid)
        r = grid.shape[1]
        if r > 3:
            raise DomainError("evaluation dimension r is capped at 3")
        if any(n < r for n in n_list):
            raise DomainError("every n must be >= the grid dimension r")
        object.__setattr__(self, "k", Fraction(self.k))
        if self.kind == "converge-b":
            if not isinstance(self.omega, VKParamsPlus):
                raise DomainError("converge-b needs nonnegative parameters")
            if self.schedule is None and self.kprime_list is None:
                raise DomainError("converge-b needs a preset or explicit k' list")
            if self.kprime_list is not None:
                kl = tuple(Fraction(v) for v in self.kprime_list)
                if len(kl) not in (1, len(n_list)):
                    raise DomainError("k' list must have one entry or match n_list")
                object.__setattr__(self, "kprime_list", kl)
        else:
            if not isinstance(self.omega, VKParams):
                raise DomainError("converge-a needs full (alpha, beta, gamma)")

    def multiplicity(self, i: int, n: int) -> MultiplicityB:
        if self.schedule is not None:
            return self.schedule.multiplicity(n)
        kl = self.kprime_list
        kp = kl[0] if len(kl) == 1 else kl[i]
        return MultiplicityB(kp, self.k)


@dataclass
class ConvergenceReport:
    spec: ExperimentSpec
    rows: list = field(default_factory=list)
    summary: list = field(default_factory=list)
    meta: dict = field(default_factory=dict)


def run_convergence(spec: ExperimentSpec) -> ConvergenceReport:
    """Evaluate finite-rank values against the limit across spec.n_list.

    Row records: (n, x..., re/im finite, re/im limit, abs_err,
    truncation_flag); summary records: (n, sup_err, mean_err,
    max_truncation_estimate).  Deterministic given the spec.
    """
    report = ConvergenceReport(spec)
    jp = as_jack_param(spec.k)
    if spec.kind == "converge-a":
        limit_fn = lambda x: lim_bessel_a(spec.omega, jp, x)
    else:
        omega_full = spec.omega.as_params()
        limit_fn = lambda x: complex(lim_bessel_b(omega_full, jp, x))
        report.meta["kprime_sublinear"] = (
            spec.schedule.kprime_sublinear if spec.schedule is not None else None
        )

    for i, n in enumerate(spec.n_list):
        errs = []
        tails = []
        for x in spec.x_grid:
            if spec.kind == "converge-a":
                lam = generate_vk(spec.omega, n)
                res = bessel_a(jp, 1j * lam, x, spec.series)
            else:
                mult = spec.multiplicity(i, n)
                rho = generate_vk_plus(spec.omega, n)
                lam = np.sqrt(float(mult.nu(n)) * rho)
                res = bessel_b(mult, 1j * lam, x, spec.series)
            lim = complex(limit_fn(x))
            err = float(abs(res.value - lim))
            errs.append(err)
            tails.append(res.tail_estimate)
            report.rows.append(
                dict(
                    n=n,
                    x=tuple(float(v) for v in x),
                    re_finite=float(res.value.real),
                    im_finite=float(res.value.imag),
                    re_limit=float(lim.real),
                    im_limit=float(lim.imag),
                    abs_err=err,
                    truncation_flag=int(not res.converged),
                )
            )
        report.summary.append(
            dict(
                n=n,
                sup_err=max(errs),
                mean_err=float(np.mean(errs)),
                max_truncation_estimate=max(tails),
            )
        )
    return report
