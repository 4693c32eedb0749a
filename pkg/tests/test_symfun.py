import math
from fractions import Fraction

import numpy as np
import pytest

from vkbessel.errors import DomainError
from vkbessel.oracles import gs_jack_expansions, schur_c_normalized
from vkbessel.partitions import Partition, enumerate_partitions
from vkbessel.symfun import (
    JackParam,
    as_jack_param,
    g_coeffs,
    g_explicit,
    g_vs_jack_identity,
    jack_at_ones,
    jack_eval,
    jack_p_expansion,
    phi_eval,
    power_sum,
    rising_factorial,
)

K_SET = (Fraction(1, 2), Fraction(1), Fraction(2))


def test_jack_param():
    assert as_jack_param("1/2").k == Fraction(1, 2)
    assert as_jack_param(2).alpha == Fraction(1, 2)
    with pytest.raises(DomainError):
        JackParam(Fraction(0))
    with pytest.raises(DomainError):
        as_jack_param("-1/3")


def test_power_sum():
    assert power_sum(0, np.array([5.0, 7.0])) == 1.0
    assert power_sum(0, np.array([])) == 1.0
    assert power_sum(2, np.array([3.0, 4.0])) == 25.0
    assert power_sum(1, np.array([])) == 0.0
    assert power_sum(3, np.array([1j])) == -1j


def test_expansion_degree_one_and_two():
    assert jack_p_expansion((1,), "7/3").coeffs == {Partition((1,)): Fraction(1)}
    for k in K_SET:
        e2 = jack_p_expansion((2,), k).coeffs
        assert e2[Partition((2,))] == 1 / (k + 1)
        assert e2[Partition((1, 1))] == k / (k + 1)
        e11 = jack_p_expansion((1, 1), k).coeffs
        assert e11[Partition((2,))] == -1 / (k + 1)
        assert e11[Partition((1, 1))] == 1 / (k + 1)


def test_expansion_memoized():
    a = jack_p_expansion((3, 1), Fraction(1, 2))
    b = jack_p_expansion((3, 1), Fraction(1, 2))
    assert a is b


def test_expansion_matches_gram_schmidt_oracle():
    for k in (Fraction(1, 2), Fraction(3)):
        for m in range(5):
            oracle = gs_jack_expansions(m, k)
            for kap in enumerate_partitions(m, max(m, 1)):
                assert jack_p_expansion(kap, k).coeffs == oracle[kap]


def test_eval_examples():
    x = np.array([0.4, -1.1, 0.7])
    assert abs(jack_eval((1,), "1/2", x) - x.sum()) < 1e-14
    assert abs(jack_eval((4,), 2, np.array([1.3])) - 1.3 ** 4) < 1e-12
    assert jack_eval((1, 1), 2, np.array([1.3])) == 0.0
    assert abs(jack_eval((1, 1), 1, np.array([1.0, 1.0])) - 1.0) < 1e-13
    assert jack_eval((), 1, x) == 1.0


def test_eval_padding_is_bitwise_stable():
    x = np.array([0.9, -0.3, 0.2])
    for kap in ((2,), (2, 1), (3, 3)):
        a = jack_eval(kap, "3/2", x)
        b = jack_eval(kap, "3/2", np.concatenate([x, np.zeros(4)]))
        assert a == b


def test_eval_matches_expansion_and_schur():
    rng = np.random.default_rng(5)
    for k in K_SET:
        for m in range(1, 7):
            for kap in enumerate_partitions(m, 3):
                x = rng.uniform(-1.2, 1.2, size=4)
                via_kernel = jack_eval(kap, k, x)
                via_exp = jack_p_expansion(kap, k).evaluate(x)
                assert abs(via_kernel - via_exp) <= 1e-10 * max(1, abs(via_exp))
    for kap in ((3, 1), (2, 2, 1)):
        x = rng.uniform(-1.0, 1.0, size=4)
        assert abs(jack_eval(kap, 1, x) - schur_c_normalized(Partition(kap), x)) < 1e-10


def test_jack_at_ones():
    for k in K_SET:
        assert jack_at_ones((1,), k, 6) == 6
        assert jack_at_ones((), k, 3) == 1
        assert jack_at_ones((2, 1), k, 1) == 0  # longer than the variable count
    # exact ratio identity against the generalized Pochhammer
    from vkbessel.bessel import gen_pochhammer

    for k in K_SET:
        num = jack_at_ones((2, 1), k, 2)
        den = jack_at_ones((2, 1), k, 5)
        assert num / den == gen_pochhammer(2 * k, (2, 1), k) / gen_pochhammer(
            5 * k, (2, 1), k
        )


def test_g_coeffs_and_explicit():
    lam = [0.4, -0.8, 0.2]
    for k in K_SET:
        g = g_coeffs(lam, k, 6)
        assert g[0] == 1
        assert abs(float(g[1]) - float(k) * sum(lam)) < 1e-14
        for j in range(7):
            assert abs(float(g[j]) - float(g_explicit(lam, j, k))) < 1e-12
    # single variable explicit value: (k)_2/2! c^2
    c = 0.37
    k = Fraction(5, 2)
    want = float(rising_factorial(k, 2)) / 2 * c * c
    assert abs(g_explicit([c], 2, k) - want) < 1e-14
    assert g_explicit([0.1, 0.2], 0, 1) == 1.0


def test_g_exact_identity():
    lam = [Fraction(1, 3), Fraction(-2, 5), Fraction(7, 4)]
    k = Fraction(2, 3)
    g = g_coeffs(lam, k, 2)
    p1 = sum(lam)
    p2 = sum(v * v for v in lam)
    assert 2 * g[2] == k * k * p1 * p1 + k * p2


def test_g_vs_jack():
    lam = [0.3, 0.9, -0.5, 0.1, 0.6]
    for k in K_SET:
        assert g_vs_jack_identity(lam, 0, k) == 0.0
        for j in range(1, 7):
            assert g_vs_jack_identity(lam, j, k) <= 1e-12 * max(
                1.0, abs(float(g_coeffs(lam, k, j)[j]))
            )


def test_phi_eval():
    assert phi_eval([0.3, -0.2], 1, 0.0) == 1.0
    assert phi_eval([0.0, 0.0, 0.0], "1/2", 5.0) == 1.0
    a = 0.6
    z = 0.5 + 0.25j
    got = phi_eval([a], "3/2", z)
    assert abs(got - (1 - a * z) ** -1.5) < 1e-13
    with pytest.raises(DomainError, match="lambda\\[1\\]"):
        phi_eval([0.1, 2.0], 1, 0.6)
