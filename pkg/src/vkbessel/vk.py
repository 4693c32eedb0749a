"""Vershik-Kerov spectral-parameter sequences.

The magnitude-then-sign order << on the reals (x << y iff |x| < |y|, or
|x| = |y| and x <= y) governs row ordering.  A triangular array maps each
row size n to a <<-descending vector in R^n; the VK parameters are the
limits of entries/n, p_1/n and p_2/n^2.  Generators construct rows
realizing prescribed parameters:

  * finite alpha block: entries n*alpha_i, exactly as prescribed;
  * gamma > 0: a tail of entries +-sqrt(gamma n) whose sign balance is
    chosen to steer the row sum to n*beta (a deterministic realization of
    a conditionally-convergent rearrangement);
  * gamma = 0: a constant tail n*beta'/(n-m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple

import numpy as np

from .bessel import MultiplicityB
from .errors import DomainError

__all__ = [
    "VKParams",
    "VKParamsPlus",
    "TriangularArray",
    "VKEstimate",
    "ll_compare",
    "ll_key",
    "sort_ll_desc",
    "is_ll_descending",
    "estimate_params",
    "generate_vk",
    "generate_vk_plus",
    "min_valid_n",
    "min_valid_n_plus",
    "MultiplicitySchedule",
    "geometric_preset",
]


def ll_key(x: float):
    """Sort key realizing <<: ascending key order is ascending <<."""
    return (abs(x), x)


def ll_compare(x: float, y: float) -> int:
    """-1 when x << y strictly, 0 when x == y, +1 when y << x strictly."""
    kx, ky = ll_key(x), ll_key(y)
    if kx < ky:
        return -1
    if kx > ky:
        return 1
    return 0


def sort_ll_desc(v) -> np.ndarray:
    """Stable descending sort for <<."""
    vals = list(np.atleast_1d(np.asarray(v, dtype=float)))
    vals.sort(key=ll_key, reverse=True)
    return np.asarray(vals, dtype=float)


def is_ll_descending(v) -> bool:
    vals = np.atleast_1d(np.asarray(v, dtype=float))
    return all(
        ll_compare(vals[i + 1], vals[i]) <= 0 for i in range(len(vals) - 1)
    )


@dataclass(frozen=True)
class VKParams:
    """Limit triple (alpha, beta, gamma); alpha finite, <<-descending."""

    alpha: tuple
    beta: float
    gamma: float

    def __post_init__(self):
        alpha = tuple(float(a) for a in self.alpha)
        if alpha and not is_ll_descending(np.asarray(alpha)):
            raise DomainError(f"alpha must be <<-descending, got {alpha}")
        while alpha and alpha[-1] == 0.0:  # the zero tail is implied
            alpha = alpha[:-1]
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "gamma", float(self.gamma))
        if self.gamma < 0:
            raise DomainError(f"gamma must be nonnegative, got {self.gamma}")

    @property
    def delta(self) -> float:
        return self.gamma + sum(a * a for a in self.alpha)


@dataclass(frozen=True)
class VKParamsPlus:
    """Nonnegative variant: alpha_1 >= ... >= alpha_m > 0, sum alpha <= beta."""

    alpha: tuple
    beta: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        object.__setattr__(self, "beta", float(self.beta))
        if self.beta < 0:
            raise DomainError("beta must be nonnegative")
        alphas = self.alpha
        if any(a <= 0 for a in alphas):
            raise DomainError("alpha entries must be positive (drop zeros)")
        if any(alphas[i] < alphas[i + 1] for i in range(len(alphas) - 1)):
            raise DomainError("alpha must be weakly decreasing")
        if sum(alphas) > self.beta + 1e-12 * max(1.0, self.beta):
            raise DomainError("sum(alpha) must not exceed beta")

    @property
    def beta_prime(self) -> float:
        return self.beta - sum(self.alpha)

    def as_params(self) -> VKParams:
        return VKParams(self.alpha, self.beta, 0.0)


@dataclass
class TriangularArray:
    """Rows indexed by strictly increasing n; row n lives in R^n."""

    rows: dict

    def __post_init__(self):
        cleaned = {}
        for n in sorted(self.rows):
            row = np.atleast_1d(np.asarray(self.rows[n], dtype=float))
            if row.size != int(n):
                raise DomainError(f"row for n={n} has {row.size} entries")
            if not is_ll_descending(row):
                raise DomainError(f"row for n={n} is not <<-descending")
            cleaned[int(n)] = row
        self.rows = cleaned

    def sizes(self) -> list:
        return sorted(self.rows)

    def row(self, n: int) -> np.ndarray:
        if n not in self.rows:
            raise DomainError(f"no row of size {n} in the array")
        return self.rows[n]


class VKEstimate(NamedTuple):
    alpha: np.ndarray
    beta: float
    delta: float
    gamma: float


def estimate_params(arr: TriangularArray, n: int, i_max: int) -> VKEstimate:
    """Finite-n parameter estimates from row n.

    alpha_hat_i = row_i / n for i <= i_max, beta_hat = p_1/n,
    delta_hat = p_2/n^2 and gamma_hat = delta_hat - sum alpha_hat_i^2.
    gamma_hat is reported signed; its sign is itself a diagnostic.
    """
    row = arr.row(n)
    if not 1 <= i_max <= n:
        raise DomainError(f"need 1 <= i_max <= n, got i_max={i_max}")
    alpha_hat = row[:i_max] / n
    beta_hat = math.fsum(row) / n
    delta_hat = math.fsum(v * v for v in row) / (n * n)
    gamma_hat = delta_hat - math.fsum(a * a for a in alpha_hat)
    return VKEstimate(alpha_hat, beta_hat, delta_hat, gamma_hat)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def _build_row(omega: VKParams, n: int) -> np.ndarray:
    m = len(omega.alpha)
    if n <= m:
        raise DomainError(f"need n > {m} (length of alpha)")
    head = [n * a for a in omega.alpha]
    L = n - m
    beta_prime = omega.beta - sum(omega.alpha)
    if omega.gamma == 0.0:
        tail = [n * beta_prime / L] * L
    else:
        # entries of magnitude sqrt(gamma n); signs appended greedily
        # toward the sum target, with one final entry absorbing the
        # residual so the row sum is n*beta up to rounding
        s = math.sqrt(omega.gamma * n)
        target = n * beta_prime
        tail = []
        partial = 0.0
        for _ in range(L - 1):
            step = s if partial <= target else -s
            tail.append(step)
            partial += step
        tail.append(min(max(target - partial, -s), s))
    row = head + sorted(tail, key=ll_key, reverse=True)
    return np.asarray(row, dtype=float)


def min_valid_n(omega: VKParams, n_cap: int = 1 << 22) -> int:
    """Smallest n for which the constructed row is <<-descending."""
    m = len(omega.alpha)
    if m == 0:
        return 1
    a_min = abs(omega.alpha[-1])
    beta_prime = omega.beta - sum(omega.alpha)
    # the head/tail interface needs n*a_min to beat the tail magnitude,
    # sqrt(gamma*n) resp. |n beta'/(n-m)|; start near the analytic bound
    start = m + 1
    if omega.gamma > 0:
        start = max(start, math.floor(omega.gamma / (a_min * a_min)) - 1)
    elif beta_prime != 0:
        start = max(start, m + math.floor(abs(beta_prime) / a_min) - 1)
    n = max(m + 1, start)
    while n <= n_cap:
        try:
            if is_ll_descending(_build_row(omega, n)):
                return n
        except DomainError:
            pass
        n += 1
    raise DomainError(f"no valid row size found up to {n_cap}")


def generate_vk(omega: VKParams, n: int) -> np.ndarray:
    """Row n of a triangular array whose VK parameters are ``omega``.

    Raises when n is below the smallest size at which the construction is
    <<-descending; the error reports that threshold.
    """
    row = None
    err = None
    try:
        row = _build_row(omega, n)
    except DomainError as exc:
        err = str(exc)
    if row is None or not is_ll_descending(row):
        n0 = min_valid_n(omega)
        detail = err or "row is not <<-descending"
        raise DomainError(f"n={n} too small ({detail}); minimal valid n is {n0}")
    return row


def min_valid_n_plus(params: VKParamsPlus) -> int:
    """First n at which n*alpha_m >= n*beta'/(n-m), i.e. the row descends."""
    m = len(params.alpha)
    if m == 0:
        return 1
    n = m + 1
    while True:
        if params.alpha[m - 1] >= params.beta_prime / (n - m):
            return n
        n += 1


def generate_vk_plus(params: VKParamsPlus, n: int) -> np.ndarray:
    """Nonnegative row (n alpha_1, ..., n alpha_m, c, ..., c) with the
    constant c = n beta'/(n-m); the row sum is n*beta by construction."""
    m = len(params.alpha)
    if n <= m:
        raise DomainError(f"need n > m = {m}")
    n0 = min_valid_n_plus(params)
    if n < n0:
        raise DomainError(f"n={n} below minimal valid size {n0}")
    # exact rational construction keeps the row sum at n*beta whenever the
    # inputs are binary floats (they always are here)
    alpha = [Fraction(a) for a in params.alpha]
    beta_prime = Fraction(params.beta) - sum(alpha, Fraction(0))
    c = Fraction(n) * beta_prime / (n - m)
    row = [float(Fraction(n) * a) for a in alpha] + [float(c)] * (n - m)
    return np.asarray(row, dtype=float)


@dataclass(frozen=True)
class MultiplicitySchedule:
    """n-dependent type-B multiplicity (k fixed, k_prime varying)."""

    d: int
    p_rule: Callable[[int], int]
    label: str = ""

    def __post_init__(self):
        if self.d not in (1, 2, 4):
            raise DomainError(f"d must be one of 1, 2, 4, got {self.d}")

    @property
    def k(self) -> Fraction:
        return Fraction(self.d, 2)

    def k_prime(self, n: int) -> Fraction:
        p = int(self.p_rule(n))
        if p < n:
            raise DomainError(f"p rule gave p={p} < n={n}")
        return Fraction(self.d, 2) * (p - n + 1) - Fraction(1, 2)

    def multiplicity(self, n: int) -> MultiplicityB:
        return MultiplicityB(self.k_prime(n), self.k)

    def nu(self, n: int) -> Fraction:
        return self.multiplicity(n).nu(n)

    @property
    def kprime_sublinear(self) -> bool:
        """Whether k'_n/n tends to 0 (the nu_n ~ kn regime)."""
        lo = self.k_prime(1 << 10) / (1 << 10)
        hi = self.k_prime(1 << 17) / (1 << 17)
        return abs(hi) < abs(lo) / 8 or (lo == 0 and hi == 0)


def geometric_preset(d: int, p_rule: Callable[[int], int]) -> MultiplicitySchedule:
    """Multiplicity schedule of the matrix motion groups over R, C, H:
    k = d/2 and k'_n = (d/2)(p_n - n + 1) - 1/2 with p_n >= n."""
    sched = MultiplicitySchedule(d, p_rule)
    sched.k_prime(1)  # validate the rule early at n = 1
    return sched
