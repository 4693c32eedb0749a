"""Power sums, Jack polynomials of index alpha = 1/k, and the Taylor
coefficients of the product Phi(lambda; z) = prod_j (1 - lambda_j z)^(-k).

Jack polynomials appear in two normalizations:

  * P_kappa, monic in the monomial basis (used by the evaluation kernels);
  * C_kappa, scaled so that the degree-m Jacks sum to (x_1 + ... + x_n)^m.

They are related through the hook products

  h_kappa  = prod over boxes (a/k + l + 1),
  h'_kappa = prod over boxes (a + k l + 1),
  C_kappa  = (|kappa|! / h'_kappa) * P_kappa,
  P_kappa(1_n) = k^(-|kappa|) [kn]_kappa / h_kappa,

with a/l the arm and leg of a box and [.]_kappa the generalized Pochhammer
symbol.  Exact expansion coefficients are computed once per (kappa, k) by
a dominance-triangular solve against a Laplace-Beltrami type eigenoperator
and memoized; point evaluation runs in floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from . import _pbasis, branching
from .errors import DomainError
from .partitions import Partition

__all__ = [
    "JackParam",
    "PExpansion",
    "as_jack_param",
    "power_sum",
    "rising_factorial",
    "hook_upper",
    "hook_lower",
    "jack_p_expansion",
    "jack_eval",
    "jack_at_ones",
    "g_coeffs",
    "g_explicit",
    "g_vs_jack_identity",
    "phi_eval",
]


@dataclass(frozen=True)
class JackParam:
    """Root multiplicity k > 0; the Jack index is alpha = 1/k."""

    k: Fraction

    def __post_init__(self):
        if not isinstance(self.k, Fraction):
            object.__setattr__(self, "k", Fraction(self.k))
        if self.k <= 0:
            raise DomainError(f"multiplicity k must be positive, got {self.k}")

    @property
    def alpha(self) -> Fraction:
        return 1 / self.k


def as_jack_param(k) -> JackParam:
    """Coerce int / str / Fraction / JackParam to a JackParam."""
    if isinstance(k, JackParam):
        return k
    if isinstance(k, str):
        return JackParam(Fraction(k))
    return JackParam(Fraction(k))


@dataclass(frozen=True)
class PExpansion:
    """Homogeneous symmetric function in the power-sum basis.

    ``coeffs`` maps partitions of ``degree`` to exact rationals; zero
    coefficients are never stored.
    """

    degree: int
    coeffs: dict

    def __post_init__(self):
        for mu, c in self.coeffs.items():
            if mu.weight != self.degree:
                raise ValueError(f"key {mu} has weight {mu.weight} != {self.degree}")
            if c == 0:
                raise ValueError("zero coefficients must be dropped")

    def evaluate(self, x):
        """Float/complex value at a point: sum of c_mu * prod p_{mu_i}(x)."""
        x = np.asarray(x)
        total = 0.0 + 0.0j if np.iscomplexobj(x) else 0.0
        pcache = {}
        for mu, c in self.coeffs.items():
            term = float(c)
            for part in mu:
                if part not in pcache:
                    pcache[part] = power_sum(part, x)
                term = term * pcache[part]
            total = total + term
        return total

    def substitute(self, p_values) -> float:
        """Value under a formal assignment m -> p_values(m) of power sums."""
        total = 0.0
        for mu, c in self.coeffs.items():
            term = float(c)
            for part in mu:
                term *= p_values(part)
            total += term
        return total


def power_sum(m: int, x):
    """p_m(x) = sum x_i^m, with p_0 identically 1 (even on no variables)."""
    if m < 0:
        raise ValueError("power sum index must be nonnegative")
    if m == 0:
        return 1.0
    x = np.asarray(x)
    if x.size == 0:
        return 0.0
    return (x ** m).sum()


def rising_factorial(x, j: int):
    """(x)_j = x (x+1) ... (x+j-1); exact for Rational x."""
    out = Fraction(1) if isinstance(x, Rational) else 1.0
    for t in range(j):
        out = out * (x + t)
    return out


# ---------------------------------------------------------------------------
# hook products
# ---------------------------------------------------------------------------


def _arm_leg(kappa: Partition):
    conj = kappa.conjugate()
    for i, part in enumerate(kappa, start=1):
        for j in range(1, part + 1):
            yield part - j, conj[j - 1] - i


def hook_upper(kappa: Partition, k) -> Fraction:
    """h_kappa = prod (a/k + l + 1).  Equals P_kappa(1_n) k^|kappa| / [kn]."""
    k = as_jack_param(k).k
    out = Fraction(1)
    for a, l in _arm_leg(kappa):
        out *= Fraction(a, 1) / k + l + 1
    return out


def hook_lower(kappa: Partition, k) -> Fraction:
    """h'_kappa = prod (a + k l + 1).  C_kappa = |kappa|!/h'_kappa * P_kappa."""
    k = as_jack_param(k).k
    out = Fraction(1)
    for a, l in _arm_leg(kappa):
        out *= a + k * l + 1
    return out


# ---------------------------------------------------------------------------
# exact expansion: dominance-triangular eigenoperator solve
#
# D = (alpha/2) sum x_i^2 d_i^2 + sum_{i != j} x_i^2/(x_i - x_j) d_i acts on
# monomials of degree m in n = m variables.  P_kappa is the unique
# eigenfunction that is monic at m_kappa with support below kappa.
# ---------------------------------------------------------------------------


def _lb_eigenvalue(lam: Partition, alpha: Fraction, nvars: int) -> Fraction:
    return sum(
        part * (alpha * (part - 1) / 2 + (nvars - i)) for i, part in enumerate(lam, 1)
    )


def _lb_coupling(nu: Partition, nvars: int) -> dict:
    """Off-diagonal monomial action of the interaction term.

    Moving the pair of part values (a, b) to (a - t, b + t) lowers
    dominance strictly; the integer coefficient counts unordered position
    pairs carrying the target values, zero parts included.
    """
    out = {}
    values = sorted(set(nu) | {0}, reverse=True)
    mults = {v: 0 for v in values}
    for part in nu:
        mults[part] += 1
    mults[0] = nvars - nu.length
    for ai, a in enumerate(values):
        if mults[a] == 0:
            continue
        for b in values[ai + 1:]:
            if mults[b] == 0:
                continue
            for t in range(1, (a - b) // 2 + 1):
                u, v = a - t, b + t
                parts = list(nu)
                parts.remove(a)
                if b:
                    parts.remove(b)
                parts.extend(p for p in (u, v) if p)
                parts.sort(reverse=True)
                target = Partition(parts)
                tmult = list(target) + [0] * (nvars - target.length)
                cu = tmult.count(u)
                if u == v:
                    npairs = cu * (cu - 1) // 2
                else:
                    npairs = cu * tmult.count(v)
                out[target] = out.get(target, 0) + (a - b) * npairs
    return out


_expansion_cache: dict = {}


def jack_p_expansion(kappa, k) -> PExpansion:
    """Exact power-sum expansion of C_kappa for index alpha = 1/k.

    Cost grows with p(|kappa|)^2; intended for weights up to ~20.  Results
    are memoized per (kappa, k); recomputation is idempotent so concurrent
    fills are harmless.
    """
    kappa = Partition(kappa)
    jp = as_jack_param(k)
    key = (kappa, jp.k)
    hit = _expansion_cache.get(key)
    if hit is not None:
        return hit

    m = kappa.weight
    if m == 0:
        result = PExpansion(0, {Partition(): Fraction(1)})
        _expansion_cache[key] = result
        return result

    alpha = jp.alpha
    order = _pbasis.partitions_of(m)
    rho_kappa = _lb_eigenvalue(kappa, alpha, m)

    # monic monomial coefficients of P_kappa on the dominance down-set
    u = {kappa: Fraction(1)}
    acc: dict = {}
    started = False
    for nu in order:
        if nu == kappa:
            started = True
        elif started and nu in acc:
            gap = rho_kappa - _lb_eigenvalue(nu, alpha, m)
            u[nu] = acc.pop(nu) / gap
        else:
            continue
        coeff = u[nu]
        for mu, c in _lb_coupling(nu, m).items():
            acc[mu] = acc.get(mu, Fraction(0)) + coeff * c

    d = _pbasis.monomial_to_power(u, m)
    scale = Fraction(_factorial(m)) / hook_lower(kappa, jp)
    result = PExpansion(m, {mu: c * scale for mu, c in d.items() if c * scale != 0})
    _expansion_cache[key] = result
    return result


def _factorial(m: int) -> int:
    out = 1
    for t in range(2, m + 1):
        out *= t
    return out


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def jack_eval(kappa, k, x):
    """C_kappa(x) by the interlacing recursion; float or complex.

    Stable under zero padding, and exactly 0 when the partition is longer
    than the number of variables.
    """
    kappa = Partition(kappa)
    jp = as_jack_param(k)
    x = np.atleast_1d(np.asarray(x))
    if kappa.weight == 0:
        return 1.0
    table = branching.get_table(max(kappa.length, 1), kappa.weight)
    vals = branching.jack_p_values(table, jp.k, x[None, :])[0]
    scale = float(Fraction(_factorial(kappa.weight)) / hook_lower(kappa, jp))
    return scale * vals[table.index[kappa]]


def jack_at_ones(kappa, k, n: int) -> Fraction:
    """C_kappa(1_n), exact.

    Uses C_kappa(1_n) = |kappa|! / h'_kappa * k^(-|kappa|) [kn]_kappa / h_kappa,
    so the ones-ratio identity C(1_r)/C(1_n) = [kr]/[kn] holds by
    construction; the expansion-based cross-check lives in the tests.
    """
    kappa = Partition(kappa)
    jp = as_jack_param(k)
    if n < 1:
        raise DomainError("n must be >= 1")
    m = kappa.weight
    # generalized Pochhammer [kn]_kappa, exact
    poch = Fraction(1)
    for j, part in enumerate(kappa, 1):
        poch *= rising_factorial(jp.k * n - jp.k * (j - 1), part)
    return (
        Fraction(_factorial(m))
        / hook_lower(kappa, jp)
        * poch
        / (jp.k ** m * hook_upper(kappa, jp))
    )


# ---------------------------------------------------------------------------
# Taylor coefficients of Phi
# ---------------------------------------------------------------------------


def g_coeffs(lam, k, j_max: int) -> list:
    """Coefficients g_0..g_J of Phi(lam; z) = prod (1 - lam_j z)^(-k).

    Newton-type recursion j g_j = k sum_{m=1..j} p_m(lam) g_{j-m}; O(J^2)
    after the power sums.  Exact when the entries of lam are rational.
    """
    jp = as_jack_param(k)
    vals = list(lam)
    exact = all(isinstance(v, Rational) for v in vals)
    kval = jp.k if exact else float(jp.k)
    one = Fraction(1) if exact else 1.0
    g = [one]
    psums = [None]
    for m in range(1, j_max + 1):
        psums.append(sum((v ** m for v in vals), one * 0))
    for j in range(1, j_max + 1):
        s = sum(psums[m] * g[j - m] for m in range(1, j + 1))
        g.append(kval * s / j)
    return g


def g_explicit(lam, j: int, k):
    """Direct combinatorial value of g_j: sum over weakly increasing index
    tuples, i.e. over compositions (c_1..c_L) of j with factor
    (k)_{c_l}/c_l! lam_l^{c_l} per slot.  Small-instance oracle; cost grows
    like binom(j + L - 1, L - 1).
    """
    jp = as_jack_param(k)
    vals = list(lam)
    exact = all(isinstance(v, Rational) for v in vals)
    kval = jp.k if exact else float(jp.k)

    def rec(slot, remaining):
        if slot == len(vals):
            return (Fraction(1) if exact else 1.0) if remaining == 0 else 0
        total = Fraction(0) if exact else 0.0
        for c in range(remaining + 1):
            tail = rec(slot + 1, remaining - c)
            if tail:
                w = rising_factorial(kval, c) / _factorial(c)
                total += w * (vals[slot] ** c) * tail
        return total

    if not vals:
        return (Fraction(1) if exact else 1.0) if j == 0 else (Fraction(0) if exact else 0.0)
    return rec(0, j)


def g_vs_jack_identity(lam, j: int, k) -> float:
    """Residual of g_j(lam) = (k)_j / j! * C_(j)(lam); expected ~0."""
    jp = as_jack_param(k)
    lhs = float(g_coeffs(lam, jp, j)[j])
    scale = float(rising_factorial(jp.k, j)) / _factorial(j)
    rhs = scale * jack_eval(Partition([j] if j else []), jp, np.asarray(lam, dtype=float))
    return abs(lhs - rhs)


def phi_eval(lam, k, z) -> complex:
    """Phi(lam; z) = prod_j (1 - lam_j z)^(-k), principal branch per factor.

    Raises DomainError naming the first index with lam_j * z on the cut
    [1, infinity).
    """
    jp = as_jack_param(k)
    kf = float(jp.k)
    z = complex(z)
    out = 1.0 + 0.0j
    for idx, lj in enumerate(np.atleast_1d(np.asarray(lam))):
        w = complex(lj) * z
        if w.imag == 0.0 and w.real >= 1.0:
            raise DomainError(
                f"branch cut: lambda[{idx}] * z = {w.real} lies in [1, inf)"
            )
        out *= np.exp(-kf * np.log(1.0 - w))
    return complex(out)
