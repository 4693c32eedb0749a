import math
from fractions import Fraction

import numpy as np
import pytest

from vkbessel.errors import DomainError
from vkbessel.vk import (
    MultiplicitySchedule,
    TriangularArray,
    VKParams,
    VKParamsPlus,
    estimate_params,
    generate_vk,
    generate_vk_plus,
    geometric_preset,
    is_ll_descending,
    ll_compare,
    min_valid_n,
    min_valid_n_plus,
    sort_ll_desc,
)


def test_ll_compare():
    assert ll_compare(-3, 3) == -1
    assert ll_compare(2, -3) == -1
    assert ll_compare(-1, -1) == 0
    assert ll_compare(3, -3) == 1
    assert ll_compare(0, 0) == 0


def test_sort_ll_desc():
    assert list(sort_ll_desc([1, -1, 0, 2])) == [2, 1, -1, 0]
    ref = [3, -3, 2, 1, -1, -1, 0, 0]
    assert list(sort_ll_desc(ref)) == ref
    assert list(sort_ll_desc([])) == []
    assert is_ll_descending(np.array([2.0, -2.0, 1.0]))
    assert not is_ll_descending(np.array([-2.0, 2.0]))


def test_vk_params_validation():
    with pytest.raises(DomainError):
        VKParams((), 0.0, -0.1)
    with pytest.raises(DomainError):
        VKParams((0.25, 0.5), 1.0, 0.0)  # not <<-descending
    om = VKParams((0.5, -0.5, 0.0), 1.0, 0.25)
    assert om.alpha == (0.5, -0.5)  # zero tail stripped
    assert om.delta == 0.25 + 0.5


def test_vk_params_plus_validation():
    with pytest.raises(DomainError):
        VKParamsPlus((0.5,), 0.25)  # sum alpha > beta
    with pytest.raises(DomainError):
        VKParamsPlus((-0.5,), 1.0)
    with pytest.raises(DomainError):
        VKParamsPlus((0.2, 0.5), 1.0)
    p = VKParamsPlus((0.5, 0.25), 1.0)
    assert p.beta_prime == 0.25
    assert p.as_params().gamma == 0.0


def test_triangular_array_validation():
    with pytest.raises(DomainError):
        TriangularArray({2: np.array([1.0])})
    with pytest.raises(DomainError):
        TriangularArray({2: np.array([-1.0, 2.0])})
    arr = TriangularArray({1: [3.0], 3: [2.0, 1.0, -1.0]})
    assert arr.sizes() == [1, 3]
    with pytest.raises(DomainError):
        arr.row(2)


def test_estimate_params_examples():
    a = 0.7
    n = 10
    arr = TriangularArray({n: np.concatenate([[n * a], np.zeros(n - 1)])})
    est = estimate_params(arr, n, 1)
    assert est.alpha[0] == a and est.beta == a
    assert abs(est.delta - a * a) < 1e-15 and abs(est.gamma) < 1e-15

    c = 1.25
    arr = TriangularArray({4: np.full(4, c)})
    est = estimate_params(arr, 4, 2)
    assert est.beta == c
    assert np.allclose(est.alpha, c / 4)
    assert abs(est.delta - c * c / 4) < 1e-15

    with pytest.raises(DomainError):
        estimate_params(arr, 4, 5)


def test_generate_vk_examples():
    row = generate_vk(VKParams((), 0.7, 0.0), 5)
    assert np.all(row == 0.7)
    row = generate_vk(VKParams((0.5,), 0.5, 0.0), 8)
    assert row[0] == 4.0 and np.all(row[1:] == 0.0)
    row = generate_vk(VKParams((), 0.0, 1.0), 8)
    assert np.all(np.abs(row) == math.sqrt(8.0))
    assert row.sum() == 0.0


def test_generate_vk_threshold_error():
    om = VKParams((0.1,), 0.1, 4.0)
    n0 = min_valid_n(om)
    with pytest.raises(DomainError, match=str(n0)):
        generate_vk(om, max(2, n0 - 1))
    row = generate_vk(om, n0)
    assert is_ll_descending(row)


def test_generate_vk_plus_examples():
    assert list(generate_vk_plus(VKParamsPlus((2, 1), 4), 4)) == [8, 4, 2, 2]
    assert list(generate_vk_plus(VKParamsPlus((), 1), 3)) == [1, 1, 1]
    assert list(generate_vk_plus(VKParamsPlus((1,), 1), 5)) == [5, 0, 0, 0, 0]
    with pytest.raises(DomainError):
        generate_vk_plus(VKParamsPlus((2, 1), 4), 2)
    p = VKParamsPlus((0.25,), 4.0)
    n0 = min_valid_n_plus(p)
    with pytest.raises(DomainError):
        generate_vk_plus(p, n0 - 1)
    assert is_ll_descending(generate_vk_plus(p, n0))


def test_plus_rows_preserve_sum():
    p = VKParamsPlus((0.5,), 1.0)
    for n in (4, 8, 16, 64):
        row = generate_vk_plus(p, n)
        assert math.fsum(row) / n == 1.0


def test_geometric_presets():
    s = geometric_preset(2, lambda n: n)
    assert s.k == 1 and s.k_prime(10) == Fraction(1, 2)
    assert s.nu(10) == Fraction(1, 2) + 9 + Fraction(1, 2)
    assert s.kprime_sublinear
    s = geometric_preset(1, lambda n: n)
    assert s.k == Fraction(1, 2) and s.k_prime(3) == 0
    s = geometric_preset(4, lambda n: 2 * n)
    assert s.k == 2 and s.k_prime(3) == 2 * 4 - Fraction(1, 2)
    assert not s.kprime_sublinear
    with pytest.raises(DomainError):
        geometric_preset(3, lambda n: n)
    with pytest.raises(DomainError):
        geometric_preset(2, lambda n: n - 1)


def test_schedule_multiplicity_object():
    s = MultiplicitySchedule(2, lambda n: n + 2)
    m = s.multiplicity(5)
    assert m.k == 1 and m.k_prime == Fraction(5, 2)
