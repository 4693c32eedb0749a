"""Exact change of basis between monomial and power-sum symmetric functions.

Everything here is per homogeneous degree, exact (integer / Fraction), and
cached.  The table for degree m is quadratic in p(m), the number of
partitions of m, which keeps this practical up to degree ~20; callers that
need higher degrees should evaluate numerically instead of expanding.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .partitions import Partition, enumerate_partitions

__all__ = [
    "partitions_of",
    "power_in_monomials",
    "monomial_to_power",
]


@lru_cache(maxsize=None)
def partitions_of(m: int) -> tuple[Partition, ...]:
    """Partitions of m in reverse lexicographic (dominance-refining) order."""
    return tuple(enumerate_partitions(m, m if m else 1))


def _multiply_power(expansion: dict, j: int) -> dict:
    """Multiply a monomial-basis expansion by the power sum p_j.

    Adding j to one copy of an existing part value v (v = 0 meaning a new
    part) sends m_{mu'} into m_mu; the coefficient picks up the
    multiplicity of v + j in the target.
    """
    out = {}
    for mu_prime, coeff in expansion.items():
        values = set(mu_prime)
        values.add(0)
        for v in values:
            parts = list(mu_prime)
            if v == 0:
                parts.append(j)
            else:
                parts.remove(v)
                parts.append(v + j)
            parts.sort(reverse=True)
            target = Partition(parts)
            mult = parts.count(v + j)
            out[target] = out.get(target, 0) + coeff * mult
    return out


@lru_cache(maxsize=None)
def power_in_monomials(nu: Partition) -> dict:
    """Expansion of p_nu = prod_i p_{nu_i} in the monomial basis.

    Coefficients are positive integers; the support lies dominance-above
    nu, with diagonal entry prod_v mult_v(nu)!.
    """
    nu = Partition(nu)
    if not nu:
        return {Partition(): 1}
    head = power_in_monomials(Partition(nu[:-1]))
    return _multiply_power(head, nu[-1])


@lru_cache(maxsize=None)
def _monomial_columns(m: int) -> dict:
    """Transposed view: mu -> {nu: coeff of m_mu in p_nu}."""
    cols = {mu: {} for mu in partitions_of(m)}
    for nu in partitions_of(m):
        for mu, c in power_in_monomials(nu).items():
            cols[mu][nu] = c
    return cols


def monomial_to_power(coeffs: dict, m: int) -> dict:
    """Rewrite a degree-m monomial-basis expansion in the power-sum basis.

    Solves the triangular system against the integer table from
    ``power_in_monomials``; exact Fractions throughout.  Zero coefficients
    are dropped from the result.
    """
    cols = _monomial_columns(m)
    order = partitions_of(m)
    d = {}
    # dominance-ascending scan: every p_nu hitting m_mu has nu <= mu,
    # so those d_nu are already known when mu is reached
    for mu in reversed(order):
        acc = Fraction(coeffs.get(mu, 0))
        col = cols[mu]
        for nu, r in col.items():
            if nu != mu and nu in d:
                acc -= r * d[nu]
        diag = col[mu]
        val = acc / diag
        if val:
            d[mu] = val
    return d
