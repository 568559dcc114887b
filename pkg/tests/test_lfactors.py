from fractions import Fraction as F

import numpy as np
import pytest

from padicgerm.errors import DomainError
from padicgerm.lfactors import (
    SatakeData,
    TruncatedSeries,
    UnramifiedTorusData,
    bf_local_integral,
    bf_product_side,
    bf_unramified_check,
    check_ext_sq_shift,
    exact_sqrt,
    ext_sq_lfactor,
    std_lfactor,
    tate_series,
)


def S(*params, q=3):
    return SatakeData(tuple(F(a) for a in params), F(q))


def coeffs(series):
    return list(series.coeffs)


def test_std_examples():
    assert coeffs(std_lfactor(S(2), 1, 3)) == [1, 2, 4, 8]
    assert coeffs(std_lfactor(S(2), -1, 3)) == [1, -2, 4, -8]
    assert coeffs(std_lfactor(S(1), 1, 2)) == [1, 1, 1]


def test_ext_sq_examples():
    assert coeffs(ext_sq_lfactor(S(1, 1), 1, 2)) == [1, 1, 1]
    assert coeffs(ext_sq_lfactor(S(2, 3), 1, 2)) == [1, 6, 36]
    assert coeffs(ext_sq_lfactor(S(2, 3), -1, 1)) == [1, -6]
    with pytest.raises(DomainError):
        ext_sq_lfactor(S(2), 1, 3)


def test_shift_examples():
    assert check_ext_sq_shift(S(2, 3), 0, 5)
    assert check_ext_sq_shift(S(2, 3, q=5), 1, 5)
    assert check_ext_sq_shift(S(2, "1/2"), 2, 6)


def test_tate_examples():
    d, c = tate_series(UnramifiedTorusData(((1, 1),)), 3)
    assert coeffs(d) == coeffs(c) == [1, 1, 1, 1]
    d, c = tate_series(UnramifiedTorusData(((1, -1),)), 3)
    assert coeffs(d) == coeffs(c) == [1, -1, 1, -1]
    d, c = tate_series(UnramifiedTorusData(((2, 1), (1, -1))), 4)
    assert d == c


def test_bf_examples():
    assert bf_unramified_check(S(1, 1, q=4), 1, 1, 4)
    assert bf_unramified_check(S(2, "1/2", q=9), -1, 1, 4)
    assert bf_unramified_check(S(3, "1/3", q=9), 1, -1, 4)


def test_bf_needs_rank_one_and_square_q():
    with pytest.raises(DomainError):
        bf_unramified_check(S(1, 2, 3, q=4), 1, 1, 3)
    with pytest.raises(DomainError):
        bf_unramified_check(S(1, 2, q=3), 1, 1, 3)


def test_bf_distinct_pairs_fails_generically():
    # the i != j product squares the exterior-square factor; the integral does not
    assert bf_local_integral(S(3, "1/3", q=9), 1, -1, 4) != bf_product_side(S(3, "1/3", q=9), 1, -1, 4, "pairs-distinct")


def test_validation():
    with pytest.raises(DomainError):
        S(0, 1)
    with pytest.raises(DomainError):
        S(1, q=1)
    with pytest.raises(DomainError):
        std_lfactor(S(1), 2, 3)
    with pytest.raises(DomainError):
        UnramifiedTorusData(((0, 1),))
    assert exact_sqrt(F(9, 4)) == F(3, 2)


def test_series_arithmetic():
    a = TruncatedSeries([1, 2, 3, 4])
    assert coeffs(a * a.inverse()) == [1, 0, 0, 0]
    assert coeffs(a + a) == [2, 4, 6, 8]
    assert coeffs(a.rescale(2)) == [1, 4, 12, 32]
    with pytest.raises(ZeroDivisionError):
        TruncatedSeries([0, 1]).inverse()


def _rand_frac(rng):
    while True:
        v = F(int(rng.integers(-6, 7)), int(rng.integers(1, 5)))
        if v:
            return v


@pytest.mark.parametrize("seed", range(20))
def test_ext_sq_shift_sweep(seed):
    rng = np.random.default_rng(seed)
    s = SatakeData(tuple(_rand_frac(rng) for _ in range(int(rng.integers(2, 5)))), int(rng.choice([2, 3, 5])))
    for a in range(-2, 3):
        assert check_ext_sq_shift(s, a, 6)


@pytest.mark.parametrize("seed", range(10))
def test_bf_sweep(seed):
    rng = np.random.default_rng(100 + seed)
    s = SatakeData((_rand_frac(rng), _rand_frac(rng)), int(rng.integers(2, 6)) ** 2)
    for e1 in (1, -1):
        for e0 in (1, -1):
            assert bf_unramified_check(s, e1, e0, 6)


@pytest.mark.parametrize("seed", range(5))
def test_sign_twist_and_conventions(seed):
    rng = np.random.default_rng(200 + seed)
    s = SatakeData(tuple(_rand_frac(rng) for _ in range(3)))
    neg = SatakeData(tuple(-a for a in s.params), s.q_val)
    assert std_lfactor(neg, 1, 6) == std_lfactor(s, -1, 6)
    ordered = ext_sq_lfactor(s, 1, 6)
    assert ext_sq_lfactor(s, 1, 6, "pairs-distinct") == ordered * ordered
