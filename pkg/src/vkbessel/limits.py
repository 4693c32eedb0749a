"""Infinite-rank limit objects.

For VK parameters omega = (alpha, beta, gamma) the scaled power sums
converge to

  tp_0 = 1,  tp_1 = beta,  tp_2 = delta = gamma + sum alpha_i^2,
  tp_m = sum alpha_i^m  (m >= 3),

and every symmetric function f acquires a limit value by substituting
tp into its power-sum expansion (the limit factorizes over power-sum
monomials because f(x)/n^deg splits into the per-factor scalings).  The
one-variable limit of the product Phi is

  Psi(omega; z) = exp(k beta z + k gamma z^2/2)
                  * prod_l exp(-k alpha_l z) / (1 - alpha_l z)^k,

whose coordinatewise product Psi_hat evaluated at ix/k and -x^2/(4k)
gives the rank-infinity limits of the type A and type B Bessel functions.
"""

from __future__ import annotations

import cmath
import math

import numpy as np

from . import branching
from .bessel import SeriesConfig, SeriesResult, DEFAULT_CONFIG, _layered_sum
from .errors import DomainError
from .partitions import Partition
from .symfun import as_jack_param, hook_upper, jack_p_expansion, _factorial
from .vk import VKParams

__all__ = [
    "tilde_p",
    "tilde_c",
    "psi_eval",
    "psi_hat",
    "lim_bessel_a",
    "lim_bessel_b",
    "series_psi_hat",
]


def tilde_p(omega: VKParams, m: int) -> float:
    """Limit of p_m(lambda(n))/n^m along a VK sequence."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    if m == 0:
        return 1.0
    if m == 1:
        return omega.beta
    if m == 2:
        return omega.delta
    return math.fsum(a ** m for a in omega.alpha)


def tilde_c(omega: VKParams, kappa, k) -> float:
    """Limit of C_kappa(lambda(n)/n): substitute tilde_p into the exact
    power-sum expansion of C_kappa."""
    kappa = Partition(kappa)
    jp = as_jack_param(k)
    exp = jack_p_expansion(kappa, jp)
    return exp.substitute(lambda m: tilde_p(omega, m))


def psi_eval(omega: VKParams, k, z) -> complex:
    """The limit product Psi(omega; z); principal branch per factor.

    Raises DomainError naming the first alpha_l with alpha_l * z on the
    cut [1, infinity).
    """
    jp = as_jack_param(k)
    kf = float(jp.k)
    z = complex(z)
    out = cmath.exp(kf * omega.beta * z + kf * omega.gamma * z * z / 2.0)
    for idx, a in enumerate(omega.alpha):
        w = a * z
        if w.imag == 0.0 and w.real >= 1.0:
            raise DomainError(
                f"branch cut: alpha[{idx}] = {a} gives alpha*z = {w.real} in [1, inf)"
            )
        out *= cmath.exp(-kf * w) * cmath.exp(-kf * cmath.log(1.0 - w))
    return out


def psi_hat(omega: VKParams, k, z) -> complex:
    """Coordinatewise product of Psi over a finite argument vector."""
    out = 1.0 + 0.0j
    for zj in np.atleast_1d(np.asarray(z)):
        out *= psi_eval(omega, k, complex(zj))
    return out


def lim_bessel_a(omega: VKParams, k, x) -> complex:
    """Rank-infinity limit of the type A Bessel functions at real x:
    Psi_hat(omega; ix/k).  Modulus never exceeds 1."""
    jp = as_jack_param(k)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    return psi_hat(omega, jp, 1j * x / float(jp.k))


def lim_bessel_b(omega: VKParams, k, x) -> float:
    """Rank-infinity limit of the type B Bessel functions at real x:
    Psi_hat(omega; -x^2/(4k)).  Requires gamma = 0 and alpha >= 0."""
    if omega.gamma != 0.0:
        raise DomainError(f"type B limit needs gamma = 0, got {omega.gamma}")
    if any(a < 0 for a in omega.alpha):
        raise DomainError("type B limit needs nonnegative alpha")
    jp = as_jack_param(k)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    val = psi_hat(omega, jp, -(x * x) / (4.0 * float(jp.k)))
    return float(val.real)


def series_psi_hat(omega: VKParams, k, z, cfg: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Psi_hat(omega; z) through its Jack expansion, for |z| small.

    Sums tilde_C_kappa(omega) k^|kappa| h_kappa / |kappa|! * P_kappa(z)
    over partitions of length <= r.  Exact expansions back tilde_C, so the
    practical degree cap is ~20; the intended domain is max |z_j| below
    roughly 0.3 / max(|alpha|, |beta|, sqrt(delta)).
    """
    jp = as_jack_param(k)
    z = np.atleast_1d(np.asarray(z))
    r = z.size
    table = branching.get_table(r, cfg.max_degree)
    coef = np.empty(table.size)
    for i, kap in enumerate(table.partitions):
        m = kap.weight
        scale = float(jp.k ** m * hook_upper(kap, jp)) / _factorial(m)
        coef[i] = scale * tilde_c(omega, kap, jp)
    p_z = branching.jack_p_values(table, jp.k, z[None, :])[0]
    terms = coef * p_z
    total, tail, converged, used = _layered_sum(table, terms, cfg)
    if not np.iscomplexobj(terms):
        total = total.real
    return SeriesResult(complex(total), float(tail), converged, used)
