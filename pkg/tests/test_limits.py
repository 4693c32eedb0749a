import cmath
import math
from fractions import Fraction

import numpy as np
import pytest

from vkbessel.bessel import SeriesConfig
from vkbessel.errors import DomainError
from vkbessel.limits import (
    lim_bessel_a,
    lim_bessel_b,
    psi_eval,
    psi_hat,
    series_psi_hat,
    tilde_c,
    tilde_p,
)
from vkbessel.vk import VKParams


OM = VKParams((0.5, 0.25), 1.0, 0.25)


def test_tilde_p():
    om = VKParams((0.5,), 1.25, 0.25)
    assert tilde_p(om, 0) == 1.0
    assert tilde_p(om, 1) == 1.25
    assert tilde_p(om, 2) == om.delta == 0.5
    assert abs(tilde_p(om, 3) - 0.125) < 1e-16
    with pytest.raises(DomainError):
        tilde_p(om, -1)


def test_tilde_c():
    om = VKParams((0.5,), 1.25, 0.25)
    for k in (Fraction(1, 2), Fraction(1), Fraction(2)):
        assert abs(tilde_c(om, (1,), k) - om.beta) < 1e-14
        want = (float(k) * om.beta ** 2 + om.delta) / (float(k) + 1)
        assert abs(tilde_c(om, (2,), k) - want) < 1e-13
    zero = VKParams((), 0.0, 0.0)
    assert tilde_c(zero, (), 1) == 1.0
    assert tilde_c(zero, (3, 1), 1) == 0.0


def test_psi_eval():
    assert psi_eval(OM, 1, 0.0) == 1.0
    om = VKParams((), 0.7, 0.3)
    z = 0.4 + 0.2j
    want = cmath.exp(0.7 * z + 0.3 * z * z / 2)
    assert abs(psi_eval(om, 1, z) - want) < 1e-14
    om = VKParams((0.5,), 0.5, 0.0)
    assert abs(psi_eval(om, 2, 0.9) - (1 - 0.45) ** -2.0) < 1e-13
    with pytest.raises(DomainError, match="alpha\\[0\\]"):
        psi_eval(om, 1, 2.0)


def test_psi_hat():
    assert psi_hat(OM, 1, np.zeros(3)) == 1.0
    z = 0.2
    assert psi_hat(OM, 1, [z]) == psi_eval(OM, 1, z)
    a = psi_hat(OM, 1, [0.1, 0.0, 0.2])
    b = psi_hat(OM, 1, [0.1, 0.2])
    assert abs(a - b) < 1e-15


def test_lim_bessel_a():
    x = np.array([0.8, -0.4])
    om_phase = VKParams((), 0.9, 0.0)
    got = lim_bessel_a(om_phase, "1/2", x)
    want = np.prod([cmath.exp(0.9j * xj) for xj in x])
    assert abs(got - want) < 1e-14
    om_gauss = VKParams((), 0.0, 0.5)
    got = lim_bessel_a(om_gauss, 2, x)
    want = np.prod([math.exp(-0.5 * xj * xj / 4) for xj in x])
    assert abs(got - want) < 1e-14
    assert abs(lim_bessel_a(OM, 1, np.zeros(2)) - 1.0) == 0.0
    for k in (Fraction(1, 2), Fraction(2)):
        v = lim_bessel_a(OM, k, x)
        assert abs(v) <= 1.0
        assert abs(v - np.conj(lim_bessel_a(OM, k, -x))) < 1e-15


def test_lim_bessel_b():
    x = np.array([1.1, 0.3])
    om0 = VKParams((), 0.0, 0.0)
    assert lim_bessel_b(om0, 1, x) == 1.0
    om_b = VKParams((), 0.8, 0.0)
    got = lim_bessel_b(om_b, 1, x)
    want = float(np.prod(np.exp(-0.8 * x ** 2 / 4)))
    assert abs(got - want) < 1e-15
    om_a = VKParams((0.5,), 0.5, 0.0)
    got = lim_bessel_b(om_a, 2, x)
    want = float(np.prod((1 + 0.5 * x ** 2 / 8) ** -2.0))
    assert abs(got - want) < 1e-14
    with pytest.raises(DomainError):
        lim_bessel_b(VKParams((), 0.0, 0.5), 1, x)
    with pytest.raises(DomainError):
        lim_bessel_b(VKParams((-0.5,), 0.0, 0.0), 1, x)


def test_series_psi_hat():
    cfg = SeriesConfig(max_degree=14, rel_tol=1e-9, stagnation_window=3)
    om = VKParams((0.5,), 1.0, 0.25)
    assert series_psi_hat(om, 1, np.zeros(2), cfg).value == 1.0
    zeros = VKParams((), 0.0, 0.0)
    assert series_psi_hat(zeros, 1, [0.2, 0.1], cfg).value == 1.0
    rng = np.random.default_rng(2)
    for r in (1, 2):
        z = rng.uniform(-0.2, 0.2, size=r)
        got = series_psi_hat(om, 1, z, cfg).value
        want = psi_hat(om, 1, z)
        assert abs(got - want) <= 1e-8 * abs(want)
