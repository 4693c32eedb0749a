"""Evaluation of monic Jack polynomials by the interlacing recursion.

P_lam in j variables is a sum over horizontal strips lam/mu of the value
of P_mu in j-1 variables times x_j^(|lam|-|mu|).  A BranchTable holds every
partition with bounded length and weight plus the flat strip-pair arrays;
evaluation then sweeps one variable at a time through the kernels.

This scales to the series regime (weight <= 60) where exact expansions are
out of reach, and it is cross-checked against the exact machinery at low
degree in the test suite.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import kernels
from .partitions import Partition, enumerate_partitions

__all__ = ["BranchTable", "get_table", "jack_p_values", "jack_p_values_cached"]


class BranchTable:
    """Partitions of length <= width and weight <= max_degree, with strips.

    Partitions are ordered by (weight, reverse lexicographic); layer m
    occupies ``layer_slice(m)``.  ``psi_for(k)`` caches the strip
    coefficients per multiplicity.
    """

    def __init__(self, width: int, max_degree: int):
        if width < 1 or max_degree < 0:
            raise ValueError("need width >= 1 and max_degree >= 0")
        self.width = width
        self.max_degree = max_degree

        plist = []
        offsets = [0]
        for m in range(max_degree + 1):
            plist.extend(enumerate_partitions(m, width))
            offsets.append(len(plist))
        self.partitions = tuple(plist)
        self._offsets = offsets
        self.index = {p: i for i, p in enumerate(plist)}
        self.size = len(plist)

        parts = np.zeros((self.size, width), dtype=np.int64)
        for i, p in enumerate(plist):
            parts[i, : len(p)] = p
        self.parts = parts

        lam_idx, mu_idx, gaps = [], [], []
        for i, lam in enumerate(plist):
            lam_p = list(lam) + [0] * (width - len(lam))
            for mu in _interlacing(lam_p):
                j = self.index[Partition(mu)]
                lam_idx.append(i)
                mu_idx.append(j)
                gaps.append(lam.weight - sum(mu))
        self.pair_lam = np.asarray(lam_idx, dtype=np.int64)
        self.pair_mu = np.asarray(mu_idx, dtype=np.int64)
        self.pair_gap = np.asarray(gaps, dtype=np.int64)

        self.weights = np.asarray([p.weight for p in plist], dtype=np.int64)
        self._psi = {}

    def layer_slice(self, m: int) -> slice:
        return slice(self._offsets[m], self._offsets[m + 1])

    def psi_for(self, k: Fraction, backend=None) -> np.ndarray:
        key = (k, backend or kernels.active_backend())
        cached = self._psi.get(key)
        if cached is None:
            cached = kernels.psi_table(
                self.parts, self.pair_lam, self.pair_mu, float(k), backend=backend
            )
            self._psi[key] = cached
        return cached


def _interlacing(lam_padded):
    """Yield all mu with lam_i >= mu_i >= lam_{i+1} (horizontal strips)."""
    width = len(lam_padded)

    def rec(i, prefix):
        if i == width:
            yield tuple(prefix)
            return
        lo = lam_padded[i + 1] if i + 1 < width else 0
        for v in range(lam_padded[i], lo - 1, -1):
            prefix.append(v)
            yield from rec(i + 1, prefix)
            prefix.pop()

    yield from rec(0, [])


_tables: dict[tuple[int, int], BranchTable] = {}


def get_table(width: int, max_degree: int) -> BranchTable:
    key = (width, max_degree)
    table = _tables.get(key)
    if table is None:
        table = BranchTable(width, max_degree)
        _tables[key] = table
    return table


def jack_p_values(table: BranchTable, k, xs, backend=None) -> np.ndarray:
    """Monic Jack values P_lam(x) for every table partition.

    ``xs`` has shape (npts, nvars); the result has shape (npts, size).
    Real input stays on the float64 path; any complex input switches the
    sweep to complex128.
    """
    xs = np.asarray(xs)
    if xs.ndim == 1:
        xs = xs[None, :]
    npts, nvars = xs.shape
    dtype = np.complex128 if np.iscomplexobj(xs) else np.float64
    xs = xs.astype(dtype)

    psi = table.psi_for(Fraction(k), backend=backend)
    vals = np.zeros((npts, table.size), dtype=dtype)
    vals[:, table.index[Partition()]] = 1.0
    if nvars == 0:
        return vals
    out = np.empty_like(vals)
    M = table.max_degree
    xpows = np.empty((npts, M + 1), dtype=dtype)
    for v in range(nvars):
        xpows[:, 0] = 1.0
        for e in range(1, M + 1):
            xpows[:, e] = xpows[:, e - 1] * xs[:, v]
        kernels.sweep(
            vals, xpows, table.pair_lam, table.pair_mu, psi, table.pair_gap,
            out, backend=backend,
        )
        vals, out = out, vals
    return vals


_value_cache: dict[tuple, np.ndarray] = {}


def jack_p_values_cached(table: BranchTable, k, x) -> np.ndarray:
    """Single-point variant of ``jack_p_values`` with memoization.

    Convergence experiments and Gram tests reuse the same spectral vector
    many times; the cache key is the raw byte image of the point.
    """
    x = np.asarray(x)
    dtype = np.complex128 if np.iscomplexobj(x) else np.float64
    x = x.astype(dtype)
    key = (
        id(table), Fraction(k), kernels.active_backend(),
        np.dtype(dtype).str, x.tobytes(),
    )
    hit = _value_cache.get(key)
    if hit is None:
        hit = jack_p_values(table, k, x[None, :])[0]
        if len(_value_cache) > 4096:
            _value_cache.clear()
        _value_cache[key] = hit
    return hit
