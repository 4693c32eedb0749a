"""Truncated Jack hypergeometric series for the Bessel functions of root
systems A_{n-1} and B_n, moment formulas of their representing measures,
and a Gram positive-definiteness probe.

With P_kappa monic and z restricted to r coordinates, the series

  type A:  sum over kappa, l(kappa) <= r, of
           P_kappa(lambda) P_kappa(z) k^|kappa| h_kappa / (h'_kappa [kn]_kappa)
  type B:  same with lambda^2, z^2, an extra 4^|kappa| [nu_n]_kappa in the
           denominator

which is the C-normalized expansion after cancelling [kr]_kappa against
the ones-value of P.  Terms are summed by total-degree layer; the sum
stops once `stagnation_window` consecutive layers fall below the relative
tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import branching
from .errors import DomainError
from .partitions import Partition
from .symfun import as_jack_param, g_coeffs, rising_factorial, _factorial

__all__ = [
    "MultiplicityB",
    "SeriesConfig",
    "SeriesResult",
    "gen_pochhammer",
    "bessel_a",
    "bessel_b",
    "project_pi",
    "moments_a",
    "moments_b",
    "gram_min_eig",
]


@dataclass(frozen=True)
class MultiplicityB:
    """Type-B multiplicity: k on the roots +-(e_i +- e_j), k_prime on +-e_i."""

    k_prime: Fraction
    k: Fraction

    def __post_init__(self):
        if not isinstance(self.k_prime, Fraction):
            object.__setattr__(self, "k_prime", Fraction(self.k_prime))
        if not isinstance(self.k, Fraction):
            object.__setattr__(self, "k", Fraction(self.k))
        if self.k <= 0:
            raise DomainError(f"k must be positive, got {self.k}")
        if self.k_prime < 0:
            raise DomainError(f"k_prime must be nonnegative, got {self.k_prime}")

    def nu(self, n: int) -> Fraction:
        """One-half plus k_prime + k(n-1), the 0F1 denominator parameter."""
        return self.k_prime + self.k * (n - 1) + Fraction(1, 2)


@dataclass(frozen=True)
class SeriesConfig:
    """Truncation policy for the hypergeometric series."""

    max_degree: int = 60
    rel_tol: float = 1e-10
    stagnation_window: int = 3

    def __post_init__(self):
        if self.max_degree < 1:
            raise DomainError("max_degree must be >= 1")
        if not (0 < self.rel_tol < 1):
            raise DomainError("rel_tol must be in (0, 1)")
        if self.stagnation_window < 1:
            raise DomainError("stagnation_window must be >= 1")


DEFAULT_CONFIG = SeriesConfig()


@dataclass(frozen=True)
class SeriesResult:
    """Value of a truncated series plus truncation diagnostics."""

    value: complex
    tail_estimate: float
    converged: bool
    degree_used: int
    excluded: tuple = ()

    def __complex__(self):
        return complex(self.value)


def gen_pochhammer(mu, kappa, k):
    """Generalized Pochhammer [mu]_kappa = prod_j (mu - k(j-1))_{kappa_j}.

    Exact (Fraction) when mu and k are rational, numeric otherwise.
    """
    kappa = Partition(kappa)
    jp = as_jack_param(k)
    exact = isinstance(mu, Rational)
    base = Fraction(mu) if exact else mu
    kk = jp.k if exact else float(jp.k)
    out = Fraction(1) if exact else 1.0
    for j, part in enumerate(kappa, 1):
        out *= rising_factorial(base - kk * (j - 1), part)
    return out


def project_pi(z):
    """Orthogonal (bilinear) projection onto the zero-sum hyperplane."""
    z = np.atleast_1d(np.asarray(z))
    if z.size < 1:
        raise DomainError("need at least one coordinate")
    return z - z.sum() / z.size


# ---------------------------------------------------------------------------
# per-partition coefficient tables, cached per (table, k, n [, k_prime])
# ---------------------------------------------------------------------------

_coef_cache: dict = {}


def _poch_array(table, base: float, kf: float) -> np.ndarray:
    out = np.ones(table.size)
    for i, kap in enumerate(table.partitions):
        v = 1.0
        for j, part in enumerate(kap, 1):
            x = base - kf * (j - 1)
            for t in range(part):
                v *= x + t
        out[i] = v
    return out


def _hook_scale(table, k: Fraction) -> np.ndarray:
    """k^|kappa| h_kappa / h'_kappa per table partition, float64.

    All hook factors are positive for k > 0, so the float product is
    stable; exact hooks are only needed by the rational ones-value API.
    """
    key = ("hooks", id(table), k)
    hit = _coef_cache.get(key)
    if hit is None:
        kf = float(k)
        out = np.empty(table.size)
        width = table.parts.shape[1]
        for i in range(table.size):
            row = table.parts[i]
            v = 1.0
            for ii in range(width):
                part = row[ii]
                if part == 0:
                    break
                for j in range(1, part + 1):
                    conj = 0
                    for t in range(width):
                        if row[t] >= j:
                            conj += 1
                    a = part - j
                    leg = conj - (ii + 1)
                    v *= kf * (a / kf + leg + 1.0) / (a + kf * leg + 1.0)
            out[i] = v
        hit = out
        _coef_cache[key] = hit
    return hit


def _coeffs_a(table, k: Fraction, n: int):
    key = ("A", id(table), k, n)
    hit = _coef_cache.get(key)
    if hit is None:
        kf = float(k)
        poch = _poch_array(table, kf * n, kf)
        with np.errstate(divide="ignore", invalid="ignore"):
            hit = _hook_scale(table, k) / poch
        # a vanishing [kn]_kappa marks partitions longer than n, which are
        # outside the series index set
        hit[poch == 0.0] = 0.0
        _coef_cache[key] = hit
    return hit


def _coeffs_b(table, mult: MultiplicityB, n: int):
    key = ("B", id(table), mult.k, mult.k_prime, n)
    hit = _coef_cache.get(key)
    if hit is None:
        k = mult.k
        kf = float(k)
        nu = mult.nu(n)
        coef = _coeffs_a(table, k, n).copy()
        coef /= 4.0 ** table.weights
        # guard: a nonpositive base k' + k(n-1) + 1/2 - k(j-1) cannot occur
        # for l(kappa) <= n, but misuse must be loud, not silently wrong
        excluded = []
        nupoch = np.ones(table.size)
        for i, kap in enumerate(table.partitions):
            bad = any(float(nu) - kf * (j - 1) <= 0 for j in range(1, kap.length + 1))
            if bad:
                excluded.append(kap)
                coef[i] = 0.0
            else:
                v = 1.0
                for j, part in enumerate(kap, 1):
                    x = float(nu) - kf * (j - 1)
                    for t in range(part):
                        v *= x + t
                nupoch[i] = v
        coef /= nupoch
        hit = (coef, tuple(excluded))
        _coef_cache[key] = hit
    return hit


def _layered_sum(table, terms: np.ndarray, cfg: SeriesConfig):
    """Degree-layer accumulation with the stagnation stopping rule."""
    total = 0.0 + 0.0j
    tail = []
    degree_used = 0
    converged = False
    top = min(cfg.max_degree, table.max_degree)
    for m in range(top + 1):
        layer = terms[table.layer_slice(m)].sum()
        total += layer
        degree_used = m
        tail.append(abs(layer))
        if len(tail) > cfg.stagnation_window:
            tail.pop(0)
        if (
            m >= cfg.stagnation_window
            and len(tail) == cfg.stagnation_window
            and all(t < cfg.rel_tol * max(abs(total), 1e-300) for t in tail)
        ):
            converged = True
            break
    return total, max(tail) if tail else 0.0, converged, degree_used


def bessel_a(k, lam, z, cfg: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Bessel function of type A_{n-1}, spectral vector ``lam`` in C^n,
    argument ``z`` in C^r with r <= n.

    The value at z = 0 is exactly 1.  If the stagnation rule is not met by
    ``cfg.max_degree`` the value is still returned with ``converged`` False.
    """
    jp = as_jack_param(k)
    lam = np.atleast_1d(np.asarray(lam))
    z = np.atleast_1d(np.asarray(z))
    n, r = lam.size, z.size
    if not 1 <= r <= n:
        raise DomainError(f"need 1 <= r <= n, got r={r}, n={n}")
    table = branching.get_table(r, cfg.max_degree)
    p_lam = branching.jack_p_values_cached(table, jp.k, lam)
    p_z = branching.jack_p_values_cached(table, jp.k, z)
    terms = (_coeffs_a(table, jp.k, n) * p_lam) * p_z
    total, tail, converged, used = _layered_sum(table, terms, cfg)
    if not np.iscomplexobj(terms):
        total = total.real
    return SeriesResult(complex(total), float(tail), converged, used)


def bessel_b(mult: MultiplicityB, lam, z, cfg: SeriesConfig = DEFAULT_CONFIG) -> SeriesResult:
    """Bessel function of type B_n with multiplicity (k_prime, k).

    Depends on the componentwise squares of both arguments, hence is
    invariant under coordinate signs and permutations.
    """
    if not isinstance(mult, MultiplicityB):
        raise TypeError("first argument must be a MultiplicityB")
    lam = np.atleast_1d(np.asarray(lam))
    z = np.atleast_1d(np.asarray(z))
    n, r = lam.size, z.size
    if not 1 <= r <= n:
        raise DomainError(f"need 1 <= r <= n, got r={r}, n={n}")
    table = branching.get_table(r, cfg.max_degree)
    coef, excluded = _coeffs_b(table, mult, n)
    p_lam = branching.jack_p_values_cached(table, mult.k, lam * lam)
    p_z = branching.jack_p_values_cached(table, mult.k, z * z)
    terms = (coef * p_lam) * p_z
    total, tail, converged, used = _layered_sum(table, terms, cfg)
    if not np.iscomplexobj(terms):
        total = total.real
    return SeriesResult(complex(total), float(tail), converged, used, excluded)


# ---------------------------------------------------------------------------
# moments of the representing measures on R
# ---------------------------------------------------------------------------


def moments_a(lam, k, j: int) -> float:
    """j-th moment of the measure representing x -> J_A(i lam, x) on R:
    j! g_j(lam) / (kn)_j."""
    if j < 0:
        raise DomainError("moment order must be nonnegative")
    jp = as_jack_param(k)
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    n = lam.size
    g = g_coeffs(list(lam), jp, j)
    return _factorial(j) * float(g[j]) / float(rising_factorial(jp.k * n, j))


def moments_b(lam, mult: MultiplicityB, order: int) -> float:
    """Moments of the measure representing x -> J_B(i lam, x) on R.

    Odd moments vanish (the measure is even); the even ones are
    (2j)! g_j(lam^2) / (4^j (kn)_j (nu_n)_j).
    """
    if order < 0:
        raise DomainError("moment order must be nonnegative")
    if order % 2 == 1:
        return 0.0
    j = order // 2
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    n = lam.size
    g = g_coeffs(list(lam * lam), mult.k, j)
    den = (
        4.0 ** j
        * float(rising_factorial(mult.k * n, j))
        * float(rising_factorial(mult.nu(n), j))
    )
    return _factorial(2 * j) * float(g[j]) / den


def gram_min_eig(evaluator, points, herm_tol: float = 1e-8) -> float:
    """Minimum eigenvalue of the Gram matrix G_ab = phi(x_a - x_b).

    ``evaluator`` must be Hermitian-symmetric (phi(-x) = conj phi(x)); a
    Gram matrix that fails that check beyond ``herm_tol`` raises.
    """
    pts = [np.atleast_1d(np.asarray(p, dtype=float)) for p in points]
    if not pts:
        raise DomainError("need at least one point")
    N = len(pts)
    G = np.empty((N, N), dtype=complex)
    for a in range(N):
        for b in range(N):
            G[a, b] = complex(evaluator(pts[a] - pts[b]))
    asym = np.abs(G - G.conj().T).max()
    scale = max(1.0, np.abs(G).max())
    if asym > herm_tol * scale:
        raise DomainError(
            f"Gram matrix is not Hermitian within tolerance: deviation {asym:.3e}"
        )
    H = (G + G.conj().T) / 2.0
    return float(np.linalg.eigvalsh(H).min())
