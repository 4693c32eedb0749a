import math
from fractions import Fraction

import numpy as np
import pytest

from vkbessel import branching
from vkbessel.bessel import (
    MultiplicityB,
    SeriesConfig,
    _coeffs_b,
    bessel_a,
    bessel_b,
    gen_pochhammer,
    gram_min_eig,
    moments_a,
    moments_b,
    project_pi,
)
from vkbessel.errors import DomainError
from vkbessel.oracles import scalar_0f1_series, scalar_exp_series


def test_gen_pochhammer():
    assert gen_pochhammer(5, (), 1) == 1
    assert gen_pochhammer(1, (1,), "7/2") == 1
    assert gen_pochhammer(2, (2, 1), "1/2") == 9
    assert gen_pochhammer(Fraction(3, 2), (2,), 1) == Fraction(15, 4)
    got = gen_pochhammer(1.5 + 0j, (2,), 1)
    assert abs(got - 3.75) < 1e-14


def test_multiplicity_and_config_validation():
    with pytest.raises(DomainError):
        MultiplicityB(Fraction(-1), Fraction(1))
    with pytest.raises(DomainError):
        MultiplicityB(Fraction(0), Fraction(0))
    assert MultiplicityB(Fraction(1, 2), Fraction(1)).nu(1) == 1
    with pytest.raises(DomainError):
        SeriesConfig(max_degree=0)
    with pytest.raises(DomainError):
        SeriesConfig(rel_tol=2.0)
    with pytest.raises(DomainError):
        SeriesConfig(stagnation_window=0)


def test_bessel_a_values():
    assert bessel_a(1, [0.4, 0.1], [0.0]).value == 1.0
    r = bessel_a("1/2", [0.7], [1.3])
    assert abs(r.value - math.exp(0.91)) < 1e-12
    assert r.converged
    for k in ("1/2", 1, 2):
        val = bessel_a(k, np.full(5, 0.8), [0.45, 0.0]).value
        assert abs(val - math.exp(0.36)) < 1e-10
    with pytest.raises(DomainError):
        bessel_a(1, [0.4], [0.1, 0.2])


def test_bessel_a_imaginary_argument_is_hermitian():
    lam = np.array([0.5, -0.2, 0.9])
    x = np.array([0.7, 0.3])
    a = bessel_a(1, 1j * lam, x).value
    b = bessel_a(1, 1j * lam, -x).value
    assert abs(a - np.conj(b)) < 1e-12
    assert abs(a) <= 1.0 + 1e-12


def test_bessel_b_scalar_oracle():
    mult = MultiplicityB(Fraction(1, 2), Fraction(1))
    got = bessel_b(mult, [2.0], [1.0]).value.real
    assert abs(got - 2.2795853023360673) <= 1e-12
    # same through the generic 0F1 oracle at another point
    nu = float(mult.nu(1))
    got = bessel_b(mult, [1.4], [0.8]).value.real
    want = scalar_0f1_series(nu, (1.4 * 0.8) ** 2 / 4).real
    assert abs(got - want) < 1e-12


def test_bessel_b_symmetry_and_zero():
    mult = MultiplicityB(Fraction(3, 2), Fraction(1, 2))
    lam = np.array([0.9, 0.4, 0.1])
    z = np.array([0.6, 0.2])
    assert bessel_b(mult, lam, z).value == bessel_b(mult, lam, -z).value
    assert bessel_b(mult, -lam, z).value == bessel_b(mult, lam, z).value
    assert bessel_b(mult, lam, np.zeros(2)).value == 1.0


def test_bessel_b_nu_guard_fires_on_misuse():
    table = branching.get_table(3, 4)
    mult = MultiplicityB(Fraction(0), Fraction(2))
    # n=1 with length-3 partitions: nu_1 - k(j-1) <= 0 for j = 2, 3
    coef, excluded = _coeffs_b(table, mult, 1)
    assert excluded
    idx = table.index[excluded[0]]
    assert coef[idx] == 0.0


def test_truncation_flagging():
    cfg = SeriesConfig(max_degree=4, rel_tol=1e-12, stagnation_window=3)
    res = bessel_a(1, np.full(4, 2.0), [1.5], cfg)
    assert not res.converged
    assert res.tail_estimate > 0
    assert res.degree_used == 4


def test_project_pi():
    assert np.allclose(project_pi(np.ones(5)), 0.0)
    z = np.array([0.3, -0.1, -0.2])
    assert np.allclose(project_pi(z), z)
    assert np.allclose(project_pi([2.0, 0.0]), [1.0, -1.0])
    zc = np.array([1 + 1j, 1 - 1j])
    assert np.allclose(project_pi(zc), [1j, -1j])


def test_moments_a():
    lam = np.array([0.3, -0.2, 0.9, 0.1, 0.4])
    assert moments_a(lam, 1, 0) == 1.0
    assert abs(moments_a(lam, "1/2", 1) - lam.sum() / 5) < 1e-14
    with pytest.raises(DomainError):
        moments_a(lam, 1, -1)


def test_moments_b():
    lam = np.array([0.3, -0.2, 0.9])
    mult = MultiplicityB(Fraction(1, 2), Fraction(1))
    assert moments_b(lam, mult, 0) == 1.0
    assert moments_b(lam, mult, 3) == 0.0
    nu = float(mult.nu(3))
    want = (lam ** 2).sum() / (2 * 3 * nu)
    assert abs(moments_b(lam, mult, 2) - want) < 1e-14


def test_gram_min_eig():
    pts = [np.array([t]) for t in np.linspace(-1, 1, 6)]
    assert abs(gram_min_eig(lambda x: 1.0, pts)) <= 1e-12
    assert abs(gram_min_eig(lambda x: 1.0, pts[:1]) - 1.0) <= 1e-12
    assert gram_min_eig(lambda x: math.exp(-(x ** 2).sum()), pts) >= -1e-10
    with pytest.raises(DomainError):
        gram_min_eig(lambda x: complex(0, x.sum() + 1.0), pts)  # not Hermitian
    with pytest.raises(DomainError):
        gram_min_eig(lambda x: 1.0, [])


def test_exp_oracle_helper():
    assert abs(scalar_exp_series(0.3 + 0.2j) - np.exp(0.3 + 0.2j)) < 1e-14
