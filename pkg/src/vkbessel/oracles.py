"""Independent reference implementations used only for cross-checking.

Everything here is deliberately naive and kept separate from the code
paths it validates: a recursive partition counter, literal polynomial
algebra in explicit exponent vectors, a Gram-Schmidt construction of the
Jack basis from the alpha-deformed power-sum inner product, a hook/Schur
route for index 1, and scalar series for the rank-one Bessel values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import permutations

import numpy as np

from .partitions import Partition, z_lambda
from .symfun import as_jack_param

__all__ = [
    "count_partitions",
    "gs_jack_expansions",
    "schur_c_normalized",
    "scalar_exp_series",
    "scalar_0f1_series",
]


@lru_cache(maxsize=None)
def count_partitions(weight: int, max_length: int) -> int:
    """Number of partitions of ``weight`` into at most ``max_length`` parts,
    by the textbook recursion on the largest part."""
    if weight == 0:
        return 1
    if max_length == 0:
        return 0

    @lru_cache(maxsize=None)
    def rec(rem, largest, slots):
        if rem == 0:
            return 1
        if slots == 0:
            return 0
        return sum(rec(rem - f, f, slots - 1) for f in range(1, min(rem, largest) + 1))

    return rec(weight, weight, max_length)


# ---------------------------------------------------------------------------
# literal symmetric polynomials in m variables (exponent-vector dicts)
# ---------------------------------------------------------------------------


def _poly_mul(f: dict, g: dict) -> dict:
    out = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, Fraction(0)) + ca * cb
    return {e: c for e, c in out.items() if c}


def _power_poly(j: int, nvars: int) -> dict:
    out = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = j
        out[tuple(e)] = Fraction(1)
    return out


def _monomial_poly(mu: Partition, nvars: int) -> dict:
    base = tuple(mu) + (0,) * (nvars - len(mu))
    return {e: Fraction(1) for e in set(permutations(base))}


def _orbit_coeffs(poly: dict, nvars: int) -> dict:
    """Collapse a literal polynomial to monomial-basis coefficients,
    verifying the coefficient is constant on each symmetric orbit."""
    out = {}
    for e, c in poly.items():
        key = Partition(sorted(e, reverse=True))
        if key in out and out[key] != c:
            raise AssertionError(f"polynomial is not symmetric at orbit {key}")
        out[key] = c
    return out


def _monomials_in_powers(m: int) -> dict:
    """m_mu -> power-sum coordinates, by literal expansion and Gaussian
    elimination in the orbit space (independent of the production tables)."""
    from .partitions import enumerate_partitions

    parts = enumerate_partitions(m, m if m else 1)
    nvars = max(m, 1)
    p_polys = {}
    for nu in parts:
        poly = {tuple([0] * nvars): Fraction(1)}
        for part in nu:
            poly = _poly_mul(poly, _power_poly(part, nvars))
        p_polys[nu] = _orbit_coeffs(poly, nvars)

    out = {}
    for mu in parts:
        coords = {}
        remaining = _orbit_coeffs(_monomial_poly(mu, nvars), nvars)
        # eliminate dominance-ascending: p_nu is supported on orbits >= nu,
        # so clearing coordinate nu only pollutes not-yet-visited ones
        for nu in reversed(parts):
            c = remaining.get(nu, Fraction(0))
            if c == 0:
                continue
            factor = c / p_polys[nu][nu]
            coords[nu] = factor
            for key, val in p_polys[nu].items():
                newv = remaining.get(key, Fraction(0)) - factor * val
                if newv:
                    remaining[key] = newv
                else:
                    remaining.pop(key, None)
        if remaining:
            raise AssertionError(f"elimination left a residue for {mu}: {remaining}")
        out[mu] = coords
    return out


def gs_jack_expansions(m: int, k) -> dict:
    """C-normalized Jack expansions of degree m via Gram-Schmidt.

    Orthogonalizes the monomial basis (dominance-ascending) under
    <p_a, p_b> = delta z_a (1/k)^{len(a)}, then rescales so the degree-m
    family sums to p_1^m.  Returns {kappa: {mu: Fraction}}.
    """
    from .partitions import enumerate_partitions

    jp = as_jack_param(k)
    alpha = jp.alpha
    parts = enumerate_partitions(m, m if m else 1)
    if m == 0:
        return {Partition(): {Partition(): Fraction(1)}}
    mono = _monomials_in_powers(m)
    norms = {nu: z_lambda(nu) * alpha ** len(nu) for nu in parts}

    def inner(f, g):
        tot = Fraction(0)
        for nu, c in f.items():
            if nu in g:
                tot += c * g[nu] * norms[nu]
        return tot

    P = {}
    for mu in reversed(parts):  # dominance-ascending
        vec = dict(mono[mu])
        for prev, pvec in P.items():
            coeff = inner(vec, pvec) / inner(pvec, pvec)
            if coeff:
                for nu, c in pvec.items():
                    newv = vec.get(nu, Fraction(0)) - coeff * c
                    if newv:
                        vec[nu] = newv
                    else:
                        vec.pop(nu, None)
        P[mu] = vec

    # rescale: orthogonality gives the coefficients of p_1^m directly as
    # projections onto each P_kappa
    target = {Partition([1] * m): Fraction(1)}
    scale = {}
    for mu in parts:
        vec = P[mu]
        scale[mu] = inner(target, vec) / inner(vec, vec)
    out = {}
    for mu in parts:
        out[mu] = {nu: scale[mu] * c for nu, c in P[mu].items() if scale[mu] * c != 0}
    # consistency: the rescaled family must sum to p_1^m exactly
    total = {}
    for vec in out.values():
        for nu, c in vec.items():
            total[nu] = total.get(nu, Fraction(0)) + c
    total = {nu: c for nu, c in total.items() if c}
    if total != target:
        raise AssertionError(f"normalization solve failed: {total}")
    return out


def schur_c_normalized(kappa: Partition, x) -> float:
    """C-normalized Jack at index 1 via hooks and Schur polynomials:
    |kappa|!/prod(hooks) * s_kappa(x), with s_kappa from the
    Jacobi-Trudi determinant in complete homogeneous functions (robust
    for repeated coordinates, unlike alternants)."""
    kappa = Partition(kappa)
    x = np.atleast_1d(np.asarray(x, dtype=float))
    n = x.size
    if kappa.length > n:
        return 0.0
    conj = kappa.conjugate()
    hooks = 1
    for i, part in enumerate(kappa, 1):
        for j in range(1, part + 1):
            hooks *= (part - j) + (conj[j - 1] - i) + 1
    m = kappa.weight
    p = [float(n)] + [float((x ** j).sum()) for j in range(1, m + 1)]
    h = [1.0]
    for j in range(1, m + 1):
        h.append(sum(p[i] * h[j - i] for i in range(1, j + 1)) / j)

    def h_at(idx: int) -> float:
        if idx < 0:
            return 0.0
        return h[idx] if idx <= m else 0.0

    ell = kappa.length
    jt = np.empty((ell, ell))
    for i in range(ell):
        for j in range(ell):
            jt[i, j] = h_at(kappa[i] - (i + 1) + (j + 1))
    s = float(np.linalg.det(jt))
    return math.factorial(m) / hooks * s


def scalar_exp_series(c: complex, terms: int = 80) -> complex:
    """Reference sum of c^j / j!."""
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for j in range(terms):
        total += term
        term *= c / (j + 1)
    return total


def scalar_0f1_series(nu: float, u: complex, terms: int = 80) -> complex:
    """Reference sum of u^j / ((nu)_j j!)."""
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for j in range(terms):
        total += term
        term *= u / ((nu + j) * (j + 1))
    return total
