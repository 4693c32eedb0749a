"""Self-contained property suites for every module, runnable without any
input files.  The CLI `selftest` subcommand executes all of them and
prints one JSON line per check; the pytest acceptance module reuses the
same functions.  Checks raise AssertionError (or return a detail string)
and are deliberately oracle-heavy: independent constructions verify the
production paths wherever one exists.
"""

from __future__ import annotations

import cmath
import json
import math
import sys
import time
from fractions import Fraction

import numpy as np

from . import branching, oracles
from .bessel import (
    DEFAULT_CONFIG,
    MultiplicityB,
    SeriesConfig,
    _coeffs_a,
    _coeffs_b,
    _hook_scale,
    bessel_a,
    bessel_b,
    gen_pochhammer,
    gram_min_eig,
    moments_a,
    moments_b,
    project_pi,
)
from .errors import DomainError
from .experiments import ExperimentSpec, make_grid, run_convergence
from .limits import (
    lim_bessel_a,
    lim_bessel_b,
    psi_eval,
    psi_hat,
    series_psi_hat,
    tilde_c,
    tilde_p,
)
from .partitions import Partition, dominance_leq, enumerate_partitions, z_lambda
from .symfun import (
    g_coeffs,
    g_explicit,
    g_vs_jack_identity,
    jack_at_ones,
    jack_eval,
    jack_p_expansion,
    phi_eval,
)
from .vk import (
    TriangularArray,
    VKParams,
    VKParamsPlus,
    estimate_params,
    generate_vk,
    generate_vk_plus,
    geometric_preset,
    ll_compare,
    sort_ll_desc,
)

K_SET = (Fraction(1, 2), Fraction(1), Fraction(2))
OMEGA_A = VKParams((0.5, 0.25), 1.0, 0.25)
OMEGA_PLUS = VKParamsPlus((0.5,), 1.0)
N_LIST = (8, 16, 32, 64)
TREND_CONFIG = SeriesConfig(max_degree=140, rel_tol=1e-8, stagnation_window=3)


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


def check_partition_enumeration():
    assert enumerate_partitions(0, 3) == [Partition()]
    assert enumerate_partitions(3, 2) == [Partition((3,)), Partition((2, 1))]
    assert len(enumerate_partitions(8, 3)) == 10
    total = 0
    for m in range(21):
        for r in range(1, 6):
            got = enumerate_partitions(m, r)
            assert len(got) == oracles.count_partitions(m, r), (m, r)
            assert len(set(got)) == len(got)
            for p in got:
                assert all(a >= b for a, b in zip(p, p[1:])) and all(v >= 1 for v in p)
                assert p.weight == m and p.length <= r
            total += len(got)
    assert z_lambda(Partition()) == 1
    assert z_lambda(Partition((1, 1))) == 2
    assert z_lambda(Partition((2, 2, 1))) == 8
    return f"{total} enumerations against the recursive counter"


def check_dominance_laws():
    assert dominance_leq((2, 1), (3,)) is True
    assert dominance_leq((1, 1, 1), (2, 1)) is True
    assert dominance_leq((2, 2, 2), (3, 1, 1, 1)) is None
    pairs = 0
    for m in range(9):
        parts = enumerate_partitions(m, m if m else 1)
        for a in parts:
            assert dominance_leq(a, a) is True
            for b in parts:
                ab = dominance_leq(a, b)
                ba = dominance_leq(b, a)
                pairs += 1
                if ab is True and ba is True:
                    assert a == b  # antisymmetry
                for c in parts:
                    if ab is True and dominance_leq(b, c) is True:
                        assert dominance_leq(a, c) is True  # transitivity
    try:
        dominance_leq((2,), (1,))
        raise AssertionError("unequal weights must raise")
    except ValueError:
        pass
    return f"order laws over {pairs} pairs (weights <= 8)"


# ---------------------------------------------------------------------------
# symfun
# ---------------------------------------------------------------------------


def check_normalization_exact():
    for k in K_SET:
        for m in range(7):
            total = {}
            for kap in enumerate_partitions(m, m if m else 1):
                for mu, c in jack_p_expansion(kap, k).coeffs.items():
                    total[mu] = total.get(mu, Fraction(0)) + c
            total = {mu: c for mu, c in total.items() if c}
            expect = {Partition([1] * m if m else []): Fraction(1)}
            assert total == expect, f"normalization sum broke at k={k}, m={m}"
    return "sum of degree-m expansions is p_1^m exactly, m <= 6"


def check_normalization_eval():
    rng = np.random.default_rng(1234)
    worst = 0.0
    for k in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)):
        for n in range(1, 7):
            table = branching.get_table(n, 8)
            xs = rng.uniform(-1.0, 1.0, size=(20, n))
            vals = branching.jack_p_values(table, k, xs)
            scale = _c_scale(table, k)  # C_kappa = |kappa|!/h' * P_kappa
            for m in range(9):
                sl = table.layer_slice(m)
                got = (vals[:, sl] * scale[sl]).sum(axis=1)
                p1m = xs.sum(axis=1) ** m
                bound = 1e-10 * np.maximum(1.0, np.abs(p1m))
                worst = max(worst, float(np.max(np.abs(got - p1m) / bound)))
                assert np.all(np.abs(got - p1m) <= bound), (k, n, m)
    return f"float normalization, worst residual {worst:.3f}x tolerance"


def _c_scale(table, k):
    kf = float(k)
    return np.array(
        [
            math.factorial(p.weight) / _hook_float(p, kf, upper=False)
            for p in table.partitions
        ]
    )


def _hook_float(kap, kf, upper):
    v = 1.0
    conj = kap.conjugate()
    for i, part in enumerate(kap, 1):
        for j in range(1, part + 1):
            a = part - j
            l = conj[j - 1] - i
            v *= (a / kf + l + 1.0) if upper else (a + kf * l + 1.0)
    return v


def check_oracle_equivalence():
    count = 0
    for k in K_SET:
        for m in range(7):
            oracle = oracles.gs_jack_expansions(m, k)
            for kap in enumerate_partitions(m, m if m else 1):
                mine = jack_p_expansion(kap, k).coeffs
                assert oracle[kap] == mine, f"expansion mismatch at {kap}, k={k}"
                count += 1
    return f"{count} expansions equal the Gram-Schmidt oracle exactly"


def check_stability():
    rng = np.random.default_rng(77)
    for k in K_SET:
        for kap in ((2, 1), (3,), (2, 2), (4, 2, 1)):
            kap = Partition(kap)
            x = rng.uniform(-1.2, 1.2, size=4)
            a = jack_eval(kap, k, x)
            b = jack_eval(kap, k, np.concatenate([x, np.zeros(3)]))
            assert a == b, "zero padding must be bitwise stable"
        assert jack_eval((1, 1, 1), k, np.array([1.0, 2.0])) == 0.0
    # hook/Schur route at index 1
    for kap in ((2, 1), (2, 2), (3, 1), (1, 1, 1)):
        x = rng.uniform(-1.0, 1.4, size=4)
        a = jack_eval(kap, 1, x)
        b = oracles.schur_c_normalized(Partition(kap), x)
        assert abs(a - b) <= 1e-10 * max(1.0, abs(b))
    assert abs(jack_eval((1, 1), 1, np.array([1.0, 1.0])) - 1.0) < 1e-13
    return "padding bitwise, length collapse, and the index-1 Schur route"


def check_ones_ratio():
    checked = 0
    for k in K_SET:
        for m in range(9):
            for kap in enumerate_partitions(m, 8):
                for n in range(1, 9):
                    for r in range(1, n + 1):
                        num = jack_at_ones(kap, k, r)
                        den = jack_at_ones(kap, k, n)
                        pr = gen_pochhammer(Fraction(k) * r, kap, k)
                        pn = gen_pochhammer(Fraction(k) * n, kap, k)
                        # cross-multiplied to stay in exact arithmetic when
                        # the denominators vanish (length > variables)
                        assert num * pn == den * pr, (kap, k, r, n)
                        checked += 1
    # expansion cross-check: ones value equals the exact expansion at 1_n
    for k in K_SET:
        for m in range(7):
            for kap in enumerate_partitions(m, m if m else 1):
                for n in (2, 5, 7):
                    via_exp = sum(
                        c * Fraction(n) ** mu.length
                        for mu, c in jack_p_expansion(kap, k).coeffs.items()
                    )
                    assert via_exp == jack_at_ones(kap, k, n)
    return f"{checked} exact ratio identities plus expansion cross-checks"


def check_g_identities():
    rng = np.random.default_rng(5)
    worst = 0.0
    for k in K_SET:
        for dim in (1, 3, 5):
            lam = list(rng.uniform(-1.3, 1.3, size=dim))
            g = g_coeffs(lam, k, 6)
            for j in range(7):
                ge = g_explicit(lam, j, k)
                err = abs(float(g[j]) - float(ge)) / max(1.0, abs(float(ge)))
                worst = max(worst, err)
                assert err <= 1e-12, (k, dim, j)
            for j in range(7):
                res = g_vs_jack_identity(lam, j, k)
                rel = res / max(1.0, abs(float(g[j])))
                worst = max(worst, rel)
                assert rel <= 1e-12, (k, dim, j, res)
    lamq = [Fraction(1, 3), Fraction(-2, 5), Fraction(7, 4), Fraction(0)]
    for k in K_SET:
        g = g_coeffs(lamq, k, 2)
        p1 = sum(lamq)
        p2 = sum(v * v for v in lamq)
        assert 2 * g[2] == Fraction(k) ** 2 * p1 * p1 + Fraction(k) * p2
        assert g[1] == Fraction(k) * p1 and g[0] == 1
    return f"recursion vs explicit sum vs Jack route, worst rel {worst:.2e}"


def check_phi_taylor():
    rng = np.random.default_rng(11)
    lam = rng.uniform(-1.0, 1.0, size=4)
    N = 64
    rho = 0.1 / max(1.0, np.abs(lam).max())
    for k in (Fraction(1, 2), Fraction(2)):
        g = g_coeffs(list(lam), k, 6)
        samples = [
            phi_eval(lam, k, rho * cmath.exp(2j * cmath.pi * t / N)) for t in range(N)
        ]
        for j in range(7):
            c = sum(
                samples[t] * cmath.exp(-2j * cmath.pi * j * t / N) for t in range(N)
            ) / (N * rho ** j)
            assert abs(c - float(g[j])) <= 1e-8 * max(1.0, abs(float(g[j])))
    try:
        phi_eval([2.0], 1, 0.75)
        raise AssertionError("branch guard failed to fire")
    except DomainError:
        pass
    assert phi_eval([0.0, 0.0], 1, 3.7) == 1.0
    return "circle-method Taylor coefficients match g, branch guard fires"


# ---------------------------------------------------------------------------
# bessel
# ---------------------------------------------------------------------------


def check_scalar_oracles():
    target = float(oracles.scalar_0f1_series(1.0, 1.0).real)
    assert abs(target - 2.2795853023360673) < 1e-13
    for k in K_SET:
        mult = MultiplicityB(Fraction(1, 2), k)
        got = bessel_b(mult, [2.0], [1.0]).value.real
        assert abs(got - 2.2795853023360673) <= 1e-12, (k, got)
    rng = np.random.default_rng(3)
    for k in K_SET:
        lam, z = rng.uniform(-1.5, 1.5, size=2)
        res = bessel_a(k, [lam], [z])
        ref = oracles.scalar_exp_series(lam * z)
        assert abs(res.value - ref) <= 10 * DEFAULT_CONFIG.rel_tol * abs(ref)
        val = bessel_a(k, np.full(6, 0.8), [0.45]).value
        assert abs(val - math.exp(0.8 * 0.45)) <= 1e-10
    assert bessel_a(1, [0.3, 0.1], [0.0]).value == 1.0
    assert bessel_b(MultiplicityB(1, 1), [0.3, 0.1], [0.0]).value == 1.0
    return "rank-one values against scalar exp / 0F1 series"


def check_cauchy_identity():
    rng = np.random.default_rng(21)
    worst = 0.0
    for k in K_SET:
        for n in (3, 5):
            for r in (1, 2):
                lam = rng.uniform(-1.0, 1.0, size=n)
                z = rng.uniform(-1.0, 1.0, size=r)
                z *= 0.3 / (np.abs(lam).max() * np.abs(z).max())
                table = branching.get_table(r, DEFAULT_CONFIG.max_degree)
                pl = branching.jack_p_values_cached(table, Fraction(k), lam)
                pz = branching.jack_p_values_cached(table, Fraction(k), z)
                series = float((_hook_scale(table, Fraction(k)) * pl * pz).sum())
                product = np.prod([phi_eval(lam, k, zj).real for zj in z])
                err = abs(series - product) / abs(product)
                worst = max(worst, err)
                assert err <= 1e-8, (k, n, r, err)
    return f"truncated Cauchy sum vs product, worst rel {worst:.2e}"


def check_reduction_identity():
    rng = np.random.default_rng(42)
    cfg = SeriesConfig(max_degree=32, rel_tol=1e-12, stagnation_window=3)
    worst = 0.0
    for n in (3, 5):
        for _ in range(3):
            z = rng.uniform(-1, 1, size=n) + 1j * rng.uniform(-1, 1, size=n)
            w = rng.uniform(-1, 1, size=n) + 1j * rng.uniform(-1, 1, size=n)
            z /= max(1.0, np.abs(z).max())
            w /= max(1.0, np.abs(w).max())
            for k in K_SET:
                lhs = bessel_a(k, z, w, cfg).value
                factor = cmath.exp(z.sum() * w.sum() / n)
                rhs = factor * bessel_a(k, project_pi(z), project_pi(w), cfg).value
                err = abs(lhs - rhs)
                worst = max(worst, err)
                assert err <= 1e-8, (n, k, err)
    return f"type A reduction identity, worst abs {worst:.2e}"


def check_positive_definite():
    rng = np.random.default_rng(99)
    floor = 0.0
    for k in K_SET:
        for r in (1, 2):
            pts = [rng.uniform(-1, 1, size=r) for _ in range(12)]
            for trial in range(5):
                n = int(rng.integers(r, 9))
                lam = rng.uniform(-2, 2, size=n)
                ev = lambda x: bessel_a(k, 1j * lam, x).value
                m = gram_min_eig(ev, pts)
                floor = min(floor, m)
                assert m >= -1e-8, ("A", k, r, trial, m)
                lam_b = np.abs(lam)
                mult = MultiplicityB(Fraction(1, 2), k)
                ev_b = lambda x: bessel_b(mult, 1j * lam_b, x).value
                m = gram_min_eig(ev_b, pts)
                floor = min(floor, m)
                assert m >= -1e-8, ("B", k, r, trial, m)
    # limit functions
    for k in K_SET:
        pts = [rng.uniform(-1, 1, size=2) for _ in range(12)]
        m = gram_min_eig(lambda x: lim_bessel_a(OMEGA_A, k, x), pts)
        floor = min(floor, m)
        assert m >= -1e-8
        m = gram_min_eig(
            lambda x: complex(lim_bessel_b(OMEGA_PLUS.as_params(), k, x)), pts
        )
        floor = min(floor, m)
        assert m >= -1e-8
    # reference sanity values for the probe itself
    assert abs(gram_min_eig(lambda x: 1.0, [np.zeros(1)] * 4)) <= 1e-12
    assert abs(gram_min_eig(lambda x: 1.0, [np.zeros(1)]) - 1.0) <= 1e-12
    return f"Gram minimum eigenvalue floor {floor:.2e}"


def check_w_invariance():
    rng = np.random.default_rng(13)
    for k in K_SET:
        lam = rng.uniform(-1.5, 1.5, size=5)
        z = rng.uniform(-1.5, 1.5, size=2)
        base = bessel_a(k, 1j * lam, z).value
        perm = bessel_a(k, 1j * rng.permutation(lam), z).value
        assert abs(base - perm) <= 1e-11 * abs(base)
        swap = bessel_a(k, 1j * lam, z[::-1].copy()).value
        assert abs(base - swap) <= 1e-11 * abs(base)
        mult = MultiplicityB(Fraction(3, 2), k)
        vb = bessel_b(mult, 1j * lam, z).value
        vb_flip = bessel_b(mult, -1j * lam, z * np.array([-1.0, 1.0])).value
        assert vb == vb_flip  # depends on squares only
        vb_perm = bessel_b(mult, 1j * rng.permutation(lam), z[::-1].copy()).value
        assert abs(vb - vb_perm) <= 1e-11 * abs(vb)
    return "permutation and sign invariance"


def check_moment_consistency():
    rng = np.random.default_rng(31)
    worst = 0.0
    for k in K_SET:
        for n in (2, 5, 6):
            lam = rng.uniform(-1.4, 1.4, size=n)
            table = branching.get_table(1, 12)
            pl = branching.jack_p_values_cached(table, Fraction(k), 1j * lam)
            coeffs = _coeffs_a(table, Fraction(k), n) * pl  # z = 1: layer j is c_j
            for j in range(7):
                cj = coeffs[table.layer_slice(j)].sum()
                got = ((-1j) ** j * cj * math.factorial(j)).real
                want = moments_a(lam, k, j)
                err = abs(got - want) / max(1.0, abs(want))
                worst = max(worst, err)
                assert err <= 1e-10, ("A", k, n, j)
            mult = MultiplicityB(Fraction(1, 2), k)
            cb, _ = _coeffs_b(table, mult, n)
            pb = branching.jack_p_values_cached(table, Fraction(k), -lam * lam)
            termb = cb * pb
            for j in range(7):
                cj = termb[table.layer_slice(j)].sum()
                got = ((-1.0) ** j * cj * math.factorial(2 * j)).real
                want = moments_b(lam, mult, 2 * j)
                err = abs(got - want) / max(1.0, abs(want))
                worst = max(worst, err)
                assert err <= 1e-10, ("B", k, n, j)
            assert moments_b(lam, mult, 3) == 0.0
            assert moments_a(lam, k, 0) == 1.0
    return f"moments vs series coefficients, worst rel {worst:.2e}"


# ---------------------------------------------------------------------------
# vk
# ---------------------------------------------------------------------------


def check_order_laws():
    assert ll_compare(-3, 3) == -1
    assert ll_compare(2, -3) == -1
    assert ll_compare(-1, -1) == 0
    assert list(sort_ll_desc([1, -1, 0, 2])) == [2, 1, -1, 0]
    ref = [3, -3, 2, 1, -1, -1, 0, 0]
    assert list(sort_ll_desc(ref)) == ref
    assert list(sort_ll_desc([])) == []
    rng = np.random.default_rng(2)
    vals = list(rng.normal(size=40)) + [0.5, -0.5, 0.5]
    s = list(sort_ll_desc(vals))
    for a, b in zip(s, s[1:]):
        assert ll_compare(b, a) <= 0
    assert sorted(s) == sorted(vals)
    return "<< comparison and stable descending sort"


def check_generator_examples():
    row = generate_vk(VKParams((), 0.7, 0.0), 6)
    assert np.allclose(row, 0.7) and row.size == 6
    row = generate_vk(VKParams((0.5,), 0.5, 0.0), 9)
    assert row[0] == 4.5 and np.all(row[1:] == 0.0)
    row = generate_vk(VKParams((), 0.0, 1.0), 10)
    assert np.all(np.abs(row) == math.sqrt(10.0))
    est = estimate_params(TriangularArray({10: row}), 10, 2)
    assert abs(est.beta) < 1e-12 and abs(est.delta - 1.0) < 1e-12
    assert abs(est.gamma - 1.0) <= 2.0 / 10 + 1e-12
    try:
        generate_vk(VKParams((0.1,), 0.1, 4.0), 8)
        raise AssertionError("undersized n must raise")
    except DomainError as exc:
        assert "minimal valid n" in str(exc)
    rows = {n: generate_vk(OMEGA_A, n) for n in N_LIST}
    arr = TriangularArray(rows)  # validates <<-descent of every row
    errs = []
    for n in N_LIST:
        e = estimate_params(arr, n, 2)
        errs.append(
            max(
                abs(e.alpha[0] - 0.5),
                abs(e.alpha[1] - 0.25),
                abs(e.beta - 1.0),
                abs(e.delta - OMEGA_A.delta),
                abs(e.gamma - 0.25),
            )
        )
    assert errs[-1] <= errs[0] / 2, errs
    return f"constructions match targets; estimate error {errs[0]:.3f} -> {errs[-1]:.4f}"


def check_plus_generator():
    assert list(generate_vk_plus(VKParamsPlus((2, 1), 4), 4)) == [8, 4, 2, 2]
    assert list(generate_vk_plus(VKParamsPlus((), 1), 3)) == [1, 1, 1]
    assert list(generate_vk_plus(VKParamsPlus((1,), 1), 5)) == [5, 0, 0, 0, 0]
    for n in N_LIST:
        row = generate_vk_plus(OMEGA_PLUS, n)
        assert np.all(row >= 0)
        est = estimate_params(TriangularArray({n: row}), n, 1)
        assert est.beta == 1.0, est.beta  # dyadic data: exact row sum
    try:
        generate_vk_plus(VKParamsPlus((2, 1), 4), 2)
        raise AssertionError("n <= m must raise")
    except DomainError:
        pass
    return "nonnegative rows, exact sums, threshold errors"


def check_gamma_diagnostics():
    arr = TriangularArray({n: generate_vk(OMEGA_A, n) for n in N_LIST})
    neg = []
    for n in N_LIST:
        g = estimate_params(arr, n, 2).gamma
        neg.append(abs(min(0.0, g)))
    assert neg[-1] <= 0.05
    assert all(b <= a + 1e-15 for a, b in zip(neg, neg[1:])), neg
    plus = TriangularArray({n: generate_vk_plus(OMEGA_PLUS, n) for n in N_LIST})
    gabs = []
    for n in N_LIST:
        g = estimate_params(plus, n, 1).gamma
        gabs.append(abs(g))
    assert gabs[-1] <= 0.05
    assert all(b < a for a, b in zip(gabs, gabs[1:])), gabs
    return f"negative-part {neg}, nonnegative-array gamma {['%.4f' % g for g in gabs]}"


def check_geometric_presets():
    s = geometric_preset(2, lambda n: n)
    assert s.k == 1 and s.k_prime(10) == Fraction(1, 2) and s.kprime_sublinear
    s = geometric_preset(1, lambda n: n)
    assert s.k == Fraction(1, 2) and s.k_prime(7) == 0
    s = geometric_preset(4, lambda n: 2 * n)
    assert s.k == 2 and s.k_prime(3) == Fraction(15, 2) and not s.kprime_sublinear
    assert s.nu(3) == Fraction(15, 2) + 2 * 2 + Fraction(1, 2)
    try:
        geometric_preset(2, lambda n: n - 1)
        raise AssertionError("p < n must raise")
    except DomainError:
        pass
    return "R, C, H multiplicity schedules"


# ---------------------------------------------------------------------------
# limits
# ---------------------------------------------------------------------------


def check_limit_bounds():
    rng = np.random.default_rng(17)
    for k in K_SET:
        assert abs(lim_bessel_a(OMEGA_A, k, np.zeros(2)) - 1.0) < 1e-14
        assert lim_bessel_b(OMEGA_PLUS.as_params(), k, np.zeros(2)) == 1.0
        for _ in range(25):
            x = rng.uniform(-3, 3, size=2)
            va = lim_bessel_a(OMEGA_A, k, x)
            assert abs(va) <= 1.0 + 1e-12
            assert abs(va - np.conj(lim_bessel_a(OMEGA_A, k, -x))) <= 1e-14
            vb = lim_bessel_b(OMEGA_PLUS.as_params(), k, x)
            assert 0.0 < vb <= 1.0 + 1e-15
        # modulus factorization
        x = rng.uniform(-2, 2, size=2)
        kf = float(k)
        mod = np.prod(
            [
                math.exp(-OMEGA_A.gamma * xj * xj / (2 * kf))
                * np.prod([(1 + a * a * xj * xj / kf ** 2) ** (-kf / 2) for a in OMEGA_A.alpha])
                for xj in x
            ]
        )
        assert abs(abs(lim_bessel_a(OMEGA_A, k, x)) - mod) <= 1e-12
    # tilde examples
    om = VKParams((0.5,), 1.25, 0.25)
    assert tilde_p(om, 0) == 1.0 and tilde_p(om, 1) == 1.25
    assert abs(tilde_p(om, 3) - 0.125) < 1e-15
    for k in K_SET:
        kf = float(k)
        assert abs(tilde_c(om, (1,), k) - om.beta) < 1e-14
        want = (kf * om.beta ** 2 + om.delta) / (kf + 1.0)
        assert abs(tilde_c(om, (2,), k) - want) < 1e-13
    zero = VKParams((), 0.0, 0.0)
    assert tilde_c(zero, (), 1) == 1.0
    assert tilde_c(zero, (2, 1), 1) == 0.0
    # psi special shapes
    assert abs(psi_eval(VKParams((0.5,), 0.5, 0.0), 2, 0.9) - (1 - 0.45) ** -2) < 1e-13
    try:
        psi_eval(VKParams((0.5,), 0.5, 0.0), 1, 2.5)
        raise AssertionError("psi branch guard failed")
    except DomainError as exc:
        assert "alpha" in str(exc)
    return "bounds, Hermitian symmetry, modulus product, tilde values"


def check_series_vs_product():
    rng = np.random.default_rng(8)
    om = VKParams((0.5,), 1.0, 0.25)
    cfg = SeriesConfig(max_degree=16, rel_tol=1e-9, stagnation_window=3)
    worst = 0.0
    for r in (1, 2):
        for _ in range(4):
            z = rng.uniform(-0.25, 0.25, size=r)
            got = series_psi_hat(om, 1, z, cfg).value
            want = psi_hat(om, 1, z)
            err = abs(got - want) / abs(want)
            worst = max(worst, err)
            assert err <= 1e-8, (r, z, err)
    return f"series vs product on the small-z domain, worst rel {worst:.2e}"


def check_log_derivative():
    om = OMEGA_A
    h = 1e-5
    worst = 0.0
    for k in K_SET:
        kf = float(k)
        for z0 in (0.01, -0.02, 0.04):
            f = lambda z: math.log(psi_eval(om, k, z).real)
            fd = (f(z0 + h) - f(z0 - h)) / (2 * h)
            series = kf * sum(tilde_p(om, m + 1) * z0 ** m for m in range(9))
            worst = max(worst, abs(fd - series))
            assert abs(fd - series) <= 1e-6, (k, z0, fd, series)
    return f"log-derivative matches scaled power-sum series, worst {worst:.2e}"


# ---------------------------------------------------------------------------
# experiments / cli plumbing
# ---------------------------------------------------------------------------


def check_report_roundtrip():
    import tempfile, os
    from . import io as vio

    arr = TriangularArray({n: generate_vk(OMEGA_A, n) for n in (8, 16)})
    with tempfile.TemporaryDirectory() as td:
        path = os.path.join(td, "arr.txt")
        vio.write_triangular(arr, path)
        back = vio.read_triangular(path)
        for n in (8, 16):
            assert np.array_equal(arr.rows[n], back.rows[n])
        vio.write_triangular(back, path + ".2")
        assert open(path).read() == open(path + ".2").read()
    spec = ExperimentSpec(
        "converge-a", Fraction(1), OMEGA_A, (8, 16),
        make_grid("rand", -1, 1, 4, 2, seed=3),
        SeriesConfig(40, 1e-9, 3),
    )
    rep = run_convergence(spec)
    text = vio.report_rows_csv(rep)
    back_rows = vio.read_report_csv(text)
    for mine, theirs in zip(rep.rows, back_rows):
        assert mine["re_finite"] == theirs["re_finite"]
        assert mine["abs_err"] == theirs["abs_err"]
        for i, v in enumerate(mine["x"]):
            assert v == theirs[f"x_{i+1}"]
    rep2 = run_convergence(spec)
    assert rep.rows == rep2.rows
    return "triangular and report CSV round-trips are bit-for-bit"


def check_converge_a():
    grid = make_grid("lin", -2, 2, 5, 2)
    details = []
    for k in K_SET:
        spec = ExperimentSpec("converge-a", k, OMEGA_A, N_LIST, grid, TREND_CONFIG)
        rep = run_convergence(spec)
        sup = [s["sup_err"] for s in rep.summary]
        assert all(a > b for a, b in zip(sup, sup[1:])), (k, sup)
        assert sup[-1] <= sup[0] / 2, (k, sup)
        details.append(f"k={k}: {sup[0]:.3f}->{sup[-1]:.4f}")
    return "; ".join(details)


def check_converge_b():
    grid = make_grid("lin", 0, 2, 5, 2, chamber=True)
    details = []
    presets = ((1, "n", lambda n: n), (2, "n", lambda n: n), (4, "2n", lambda n: 2 * n))
    for d, label, rule in presets:
        sched = geometric_preset(d, rule)
        spec = ExperimentSpec(
            "converge-b", sched.k, OMEGA_PLUS, N_LIST, grid,
            DEFAULT_CONFIG, schedule=sched,
        )
        rep = run_convergence(spec)
        sup = [s["sup_err"] for s in rep.summary]
        assert all(a > b for a, b in zip(sup, sup[1:])), (d, sup)
        assert sup[-1] <= sup[0] / 2, (d, sup)
        details.append(f"d={d},p={label}: {sup[0]:.3f}->{sup[-1]:.4f}")
    # closed-form spot check of the limit for the d=2 preset
    x = np.array([1.0, 0.5])
    lim = lim_bessel_b(OMEGA_PLUS.as_params(), 1, x)
    want = float(np.prod(np.exp(-x ** 2 / 8.0) / (1.0 + x ** 2 / 8.0)))
    assert abs(lim - want) <= 1e-14
    return "; ".join(details)


# ---------------------------------------------------------------------------
# runner
# ---------------------------------------------------------------------------

CHECKS = [
    ("partitions.enumeration-oracle", check_partition_enumeration),
    ("partitions.dominance-laws", check_dominance_laws),
    ("symfun.normalization-exact", check_normalization_exact),
    ("symfun.normalization-eval", check_normalization_eval),
    ("symfun.oracle-equivalence", check_oracle_equivalence),
    ("symfun.stability", check_stability),
    ("symfun.ones-ratio", check_ones_ratio),
    ("symfun.g-identities", check_g_identities),
    ("symfun.phi-taylor", check_phi_taylor),
    ("bessel.scalar-oracles", check_scalar_oracles),
    ("bessel.cauchy-identity", check_cauchy_identity),
    ("bessel.reduction-identity", check_reduction_identity),
    ("bessel.positive-definite", check_positive_definite),
    ("bessel.w-invariance", check_w_invariance),
    ("bessel.moment-consistency", check_moment_consistency),
    ("vk.order-laws", check_order_laws),
    ("vk.generator-consistency", check_generator_examples),
    ("vk.plus-generator", check_plus_generator),
    ("vk.gamma-diagnostics", check_gamma_diagnostics),
    ("vk.geometric-presets", check_geometric_presets),
    ("limits.bounds-and-values", check_limit_bounds),
    ("limits.series-vs-product", check_series_vs_product),
    ("limits.log-derivative", check_log_derivative),
    ("cli.report-roundtrip", check_report_roundtrip),
    ("converge.type-a-trend", check_converge_a),
    ("converge.type-b-trend", check_converge_b),
]


def inject_fault(kind: str) -> None:
    """Deliberately corrupt internal state (test mode only)."""
    if kind == "jack-cache":
        exp = jack_p_expansion((2,), 1)
        key = Partition((1, 1))
        exp.coeffs[key] = exp.coeffs[key] + Fraction(1, 7)
    else:
        raise DomainError(f"unknown fault {kind!r}")


def run_selftest(names=None, fault=None, stream=None) -> int:
    """Run the property suites; print one JSON line per check.

    Returns 0 when everything passes, 3 otherwise (the CLI exit code).
    """
    stream = stream or sys.stdout
    if fault:
        inject_fault(fault)
    selected = [(n, f) for n, f in CHECKS if names is None or n in names]
    failed = []
    t_all = time.time()
    for name, fn in selected:
        t0 = time.time()
        try:
            detail = fn() or ""
            ok = True
        except Exception as exc:  # deliberate: report, keep running
            detail = f"{type(exc).__name__}: {exc}"
            ok = False
            failed.append(name)
        print(
            json.dumps(
                {
                    "check": name,
                    "ok": ok,
                    "seconds": round(time.time() - t0, 3),
                    "detail": str(detail)[:300],
                }
            ),
            file=stream,
        )
    print(
        json.dumps(
            {
                "selftest": "pass" if not failed else "fail",
                "checks": len(selected),
                "failed": failed,
                "seconds": round(time.time() - t_all, 3),
            }
        ),
        file=stream,
    )
    return 0 if not failed else 3
