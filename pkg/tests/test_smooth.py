import random
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st
from sympy import isprime as sympy_isprime, n_order, totient

from harmdiff.smooth import (
    NotCoprime,
    PrimalityRangeError,
    SmoothNumber,
    enumerate_smooth,
    is_prime,
    is_smooth,
    make_smooth,
    multiplicative_order,
    power_orbit,
    smooth_divisors,
    trial_factor,
    valuations,
)
from oracles import smooth_values


def test_make_smooth():
    assert make_smooth(3, 2) == SmoothNumber(72, 3, 2)
    with pytest.raises(ValueError):
        make_smooth(-1, 0)
    with pytest.raises(ValueError):
        SmoothNumber(10, 1, 1)


def test_smooth_product():
    assert (make_smooth(1, 2) * make_smooth(3, 0)).value == 144


def test_enumerate_below_1000():
    values = enumerate_smooth(1000)
    assert len(values) == 40
    assert values[-1].value == 972
    assert [s.value for s in values] == smooth_values(1000)


def test_enumerate_edges():
    assert [s.value for s in enumerate_smooth(1)] == [1]
    assert [s.value for s in enumerate_smooth(9)] == [1, 2, 3, 4, 6, 8, 9]


def test_valuations():
    v = valuations(82)
    assert (v.v2, v.v3, v.cofactor) == (1, 0, 41)
    v = valuations(728)
    assert (v.v2, v.v3, v.cofactor) == (3, 0, 91)
    with pytest.raises(ValueError):
        valuations(0)


def test_is_smooth():
    assert is_smooth(972) == (2, 5)
    assert is_smooth(1) == (0, 0)
    assert is_smooth(91) is None


def test_smooth_divisors():
    assert [d.value for d in smooth_divisors(728)] == [1, 2, 4, 8]
    assert [d.value for d in smooth_divisors(41)] == [1]


def test_is_smooth_matches_enumeration():
    members = set(smooth_values(10**6))
    assert all((is_smooth(n) is not None) == (n in members) for n in range(1, 10**6 + 1, 7))
    assert all(is_smooth(n) is not None for n in members)


def test_is_prime_small():
    assert [n for n in range(50) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert not is_prime(91)
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7


def test_is_prime_range():
    assert is_prime(2**64 - 59)
    with pytest.raises(PrimalityRangeError):
        is_prime(2**64)


def test_is_prime_matches_sympy():
    rng = random.Random(7)
    for _ in range(2000):
        n = rng.randrange(2**64)
        assert is_prime(n) == sympy_isprime(n)


def test_trial_factor():
    assert trial_factor(728) == {2: 3, 7: 1, 13: 1}
    assert trial_factor(1) == {}


@pytest.mark.parametrize("base,m,d", [(2, 27, 18), (2, 81, 54), (3, 32, 8), (2, 41, 20), (3, 11, 5), (3, 7, 6), (2, 271, 135)])
def test_known_orders(base, m, d):
    assert multiplicative_order(base, m) == d


def test_order_not_coprime():
    with pytest.raises(NotCoprime):
        multiplicative_order(2, 24)


def test_order_divides_totient():
    for m in range(2, 10**4, 3):
        for base in (2, 3):
            if gcd(base, m) == 1:
                d = multiplicative_order(base, m)
                assert totient(m) % d == 0
                assert d == n_order(base, m)


def test_power_orbit_shape():
    o = power_orbit(2, 24)
    assert (o.preperiod, o.period) == (3, 2)
    o = power_orbit(3, 24)
    assert (o.preperiod, o.period) == (1, 2)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(2, 5000), st.integers(0, 10**6))
def test_power_orbit_reconstructs(base, m, e):
    assert power_orbit(base, m).residue(e) == pow(base, e, m)
