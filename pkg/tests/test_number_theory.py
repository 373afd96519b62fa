import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import brute_minimal_depth, brute_order_2, brute_totient

from loadeddice.number_theory import (
    is_prime,
    is_primitive_root_2,
    minimal_depth,
    multiplicative_order_2,
    totient,
    z_value,
)

PRIMITIVE_ROOT_PRIMES = [3, 5, 11, 13, 19, 29, 37, 53, 59, 61]


def test_z_value():
    assert z_value(3, 3) == 8
    assert z_value(5, 1) == 30
    assert z_value(1, 0) == 1
    with pytest.raises(OverflowError):
        z_value(63, 0)
    with pytest.raises(ValueError):
        z_value(2, 3)


@pytest.mark.parametrize("M, k, l", [(10, 5, 1), (8, 3, 3), (5, 4, 0), (7, 3, 0), (1, 1, 1), (2, 1, 1)])
def test_minimal_depth_examples(M, k, l):
    w = minimal_depth(M)
    assert (w.k, w.l) == (k, l)


def test_minimal_depth_matches_brute_force_scan():
    for M in range(2, 1001):
        w = minimal_depth(M)
        assert (w.k, w.l) == brute_minimal_depth(M), M
        assert w.Z % M == 0
        assert w.k <= M - 1


def test_dyadic_moduli():
    for j in range(1, 31):
        w = minimal_depth(2**j)
        assert w.k == j and w.l == j


def test_primitive_root_primes_reach_the_depth_bound():
    for m in range(3, 1001, 2):
        if is_prime(m) and is_primitive_root_2(m):
            assert minimal_depth(m).k == m - 1
    for m in PRIMITIVE_ROOT_PRIMES:
        assert is_primitive_root_2(m)


@pytest.mark.parametrize("m, phi", [(1, 1), (5, 4), (10, 4), (36, 12), (97, 96)])
def test_totient(m, phi):
    assert totient(m) == phi


def test_totient_against_gcd_count():
    for m in range(1, 500):
        assert totient(m) == brute_totient(m)


@pytest.mark.parametrize("m, expected", [(5, True), (7, False), (11, True), (3, True), (17, False)])
def test_is_primitive_root_2(m, expected):
    assert is_primitive_root_2(m) is expected


@pytest.mark.parametrize("m", [1, 2, 9, 15])
def test_primitive_root_rejects_non_odd_primes(m):
    with pytest.raises(ValueError):
        is_primitive_root_2(m)


@given(st.integers(1, 5000).map(lambda x: 2 * x + 1))
def test_order_of_two(m):
    assert multiplicative_order_2(m) == brute_order_2(m)


def test_scan_limit():
    with pytest.raises(OverflowError):
        minimal_depth(2**31 + 1)
