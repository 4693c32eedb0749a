"""Hot numeric kernels: horizontal-strip coefficients and variable sweeps.

Two interchangeable backends are provided.  The default uses numba
``@njit`` kernels; a pure-numpy path is kept both as a fallback when numba
is unavailable and for cross-checking.  Selection:

    VKBESSEL_BACKEND=numba   force numba (error if not importable)
    VKBESSEL_BACKEND=numpy   force the numpy path
    unset                    numba when importable, else numpy

``benchmarks/bench_jack_kernels.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(fn):
            return fn

        if args and callable(args[0]):
            return args[0]
        return wrap


_ENV_VAR = "VKBESSEL_BACKEND"


def active_backend() -> str:
    """Resolve the backend name from the environment."""
    choice = os.environ.get(_ENV_VAR, "").strip().lower()
    if choice in ("numba", "numpy"):
        if choice == "numba" and not HAVE_NUMBA:
            raise RuntimeError(f"{_ENV_VAR}=numba but numba is not importable")
        return choice
    return "numba" if HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# horizontal-strip coefficients
#
# For a strip lam/mu the coefficient is a product over the boxes of mu that
# sit in a row meeting the strip but in a column that does not:
#
#   psi = prod (a_mu + k (l_mu + 1)) / (a_mu + k l_mu + 1)
#              * (a_lam + k l_lam + 1) / (a_lam + k (l_lam + 1))
#
# with a/l the arm and leg lengths of the box in the respective diagram.
# ---------------------------------------------------------------------------


def _psi_pair_py(lam, mu, width, kval):
    val = 1.0
    for i in range(width):
        if mu[i] == 0:
            break
        if lam[i] == mu[i]:
            continue  # row i has no strip box
        for j in range(1, mu[i] + 1):
            lam_conj = 0
            mu_conj = 0
            for t in range(width):
                if lam[t] >= j:
                    lam_conj += 1
                if mu[t] >= j:
                    mu_conj += 1
            if lam_conj == mu_conj + 1:
                continue  # column j meets the strip
            a_mu = mu[i] - j
            l_mu = mu_conj - (i + 1)
            a_lam = lam[i] - j
            l_lam = lam_conj - (i + 1)
            val *= (a_mu + kval * (l_mu + 1)) / (a_mu + kval * l_mu + 1.0)
            val *= (a_lam + kval * l_lam + 1.0) / (a_lam + kval * (l_lam + 1))
    return val


def _psi_table_numpy(parts, pair_lam, pair_mu, kval):
    """Vectorized over pairs: sweep columns j and rows i, multiplying the
    box factor into the lanes whose box lies in R minus C."""
    lam = parts[pair_lam].astype(np.float64)
    mu = parts[pair_mu].astype(np.float64)
    npairs, width = lam.shape
    out = np.ones(npairs, dtype=np.float64)
    max_part = int(parts.max()) if parts.size else 0
    for j in range(1, max_part + 1):
        lam_conj = (lam >= j).sum(axis=1)
        mu_conj = (mu >= j).sum(axis=1)
        col_meets_strip = lam_conj == mu_conj + 1
        for i in range(width):
            mask = (mu[:, i] >= j) & (lam[:, i] > mu[:, i]) & ~col_meets_strip
            idx = np.nonzero(mask)[0]
            if idx.size == 0:
                continue
            a_mu = mu[idx, i] - j
            l_mu = mu_conj[idx] - (i + 1)
            a_lam = lam[idx, i] - j
            l_lam = lam_conj[idx] - (i + 1)
            out[idx] *= (a_mu + kval * (l_mu + 1)) / (a_mu + kval * l_mu + 1.0)
            out[idx] *= (a_lam + kval * l_lam + 1.0) / (a_lam + kval * (l_lam + 1))
    return out


@njit(cache=True)
def _psi_table_numba(parts, pair_lam, pair_mu, kval):  # pragma: no cover - jit
    width = parts.shape[1]
    out = np.empty(pair_lam.size, dtype=np.float64)
    for p in range(pair_lam.size):
        lam = parts[pair_lam[p]]
        mu = parts[pair_mu[p]]
        val = 1.0
        for i in range(width):
            if mu[i] == 0:
                break
            if lam[i] == mu[i]:
                continue
            for j in range(1, mu[i] + 1):
                lam_conj = 0
                mu_conj = 0
                for t in range(width):
                    if lam[t] >= j:
                        lam_conj += 1
                    if mu[t] >= j:
                        mu_conj += 1
                if lam_conj == mu_conj + 1:
                    continue
                a_mu = mu[i] - j
                l_mu = mu_conj - (i + 1)
                a_lam = lam[i] - j
                l_lam = lam_conj - (i + 1)
                val *= (a_mu + kval * (l_mu + 1)) / (a_mu + kval * l_mu + 1.0)
                val *= (a_lam + kval * l_lam + 1.0) / (a_lam + kval * (l_lam + 1))
        out[p] = val
    return out


def psi_table(parts, pair_lam, pair_mu, kval, backend=None):
    """Strip coefficients for every (lam, mu) pair, as float64."""
    backend = backend or active_backend()
    if backend == "numba":
        return _psi_table_numba(parts, pair_lam, pair_mu, float(kval))
    return _psi_table_numpy(parts, pair_lam, pair_mu, float(kval))


# ---------------------------------------------------------------------------
# variable sweep: values over all table partitions gain one variable
#
#   new[lam] = sum over strips lam/mu of psi * old[mu] * x^(|lam|-|mu|)
# ---------------------------------------------------------------------------


def _sweep_numpy(vals, xpows, pair_lam, pair_mu, psi, gap, out):
    npts, nparts = vals.shape
    complex_path = np.iscomplexobj(vals) or np.iscomplexobj(xpows)
    for t in range(npts):
        w = psi * vals[t, pair_mu] * xpows[t, gap]
        if complex_path:
            out[t, :] = np.bincount(
                pair_lam, weights=w.real, minlength=nparts
            ) + 1j * np.bincount(pair_lam, weights=w.imag, minlength=nparts)
        else:
            out[t, :] = np.bincount(pair_lam, weights=w, minlength=nparts)
    return out


@njit(cache=True)
def _sweep_numba(vals, xpows, pair_lam, pair_mu, psi, gap, out):  # pragma: no cover
    npts = vals.shape[0]
    npairs = pair_lam.size
    out[:, :] = 0
    for t in range(npts):
        for p in range(npairs):
            out[t, pair_lam[p]] += psi[p] * vals[t, pair_mu[p]] * xpows[t, gap[p]]
    return out


def sweep(vals, xpows, pair_lam, pair_mu, psi, gap, out, backend=None):
    """One variable sweep.  ``out`` is overwritten and returned."""
    backend = backend or active_backend()
    if backend == "numba":
        return _sweep_numba(vals, xpows, pair_lam, pair_mu, psi, gap, out)
    return _sweep_numpy(vals, xpows, pair_lam, pair_mu, psi, gap, out)
