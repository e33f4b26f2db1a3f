from fractions import Fraction
from math import gcd

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from psisum.arith import (
    divisors,
    euler_phi,
    factorize,
    is_prime,
    is_squarefree,
    lam,
    multiplicative_order,
    primes_up_to,
    psi_cyclic,
    psi_cyclic_lower_bound,
    psi_prime_power,
    ratio_to_decimal,
    smallest_prime_divisor,
)


def brute_psi_cyclic(n):
    i = np.arange(n, dtype=np.int64)
    return int((n // np.gcd(i, n)).sum())


@given(st.integers(min_value=1, max_value=10**9))
def test_factorize_matches_sympy(n):
    assert factorize(n) == sorted(sympy.factorint(n).items())


@given(st.integers(min_value=-5, max_value=10**7))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_sieve():
    assert primes_up_to(1) == []
    assert primes_up_to(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert primes_up_to(10**5) == list(sympy.primerange(2, 10**5 + 1))


@given(st.integers(min_value=1, max_value=10**6))
def test_totient_and_divisors(n):
    assert euler_phi(n) == sympy.totient(n)
    assert divisors(n) == sympy.divisors(n)
    assert is_squarefree(n) == all(e == 1 for e in sympy.factorint(n).values())


@pytest.mark.parametrize("bad", [0, -3])
def test_factorize_rejects_nonpositive(bad):
    with pytest.raises(ValueError):
        factorize(bad)


def test_smallest_prime_divisor():
    assert smallest_prime_divisor(245) == 5
    with pytest.raises(ValueError):
        smallest_prime_divisor(1)


@given(st.integers(min_value=2, max_value=5000), st.integers(min_value=1, max_value=5000))
def test_multiplicative_order(m, r):
    if gcd(r, m) != 1:
        with pytest.raises(ValueError):
            multiplicative_order(r, m)
        return
    assert multiplicative_order(r, m) == sympy.n_order(r, m)


@pytest.mark.parametrize(
    "p,m,value",
    [(2, 2, 11), (3, 1, 7), (3, 2, 61), (7, 1, 43), (7, 2, 2101), (5, 1, 21), (2, 3, 43)],
)
def test_psi_prime_power_values(p, m, value):
    assert psi_prime_power(p, m) == value
    assert psi_prime_power(p, m) == brute_psi_cyclic(p**m)


def test_psi_prime_power_rejects():
    with pytest.raises(ValueError):
        psi_prime_power(4, 1)
    with pytest.raises(ValueError):
        psi_prime_power(3, 0)


@pytest.mark.parametrize("n,value", [(1, 1), (21, 301), (9, 61), (49, 2101), (6, 21), (4, 11), (8, 43)])
def test_psi_cyclic_values(n, value):
    assert psi_cyclic(n) == value


@given(st.integers(min_value=1, max_value=3000))
def test_psi_cyclic_brute_force(n):
    assert psi_cyclic(n) == brute_psi_cyclic(n)


@given(st.integers(min_value=1, max_value=200), st.integers(min_value=1, max_value=200))
def test_psi_cyclic_multiplicative(a, b):
    if gcd(a, b) == 1:
        assert psi_cyclic(a * b) == psi_cyclic(a) * psi_cyclic(b)


def test_lambda_monotone_in_exponent():
    for p in sympy.primerange(2, 101):
        for alpha in range(1, 9):
            assert lam(p) <= lam(p**alpha)
    assert lam(9) == Fraction(61, 9)


@given(st.integers(min_value=2, max_value=20000))
def test_lower_bound(n):
    assert psi_cyclic(n) >= psi_cyclic_lower_bound(n)


def test_lower_bound_rejects_one():
    with pytest.raises(ValueError):
        psi_cyclic_lower_bound(1)


def test_decimal_display():
    assert ratio_to_decimal(Fraction(85, 301)) == "0.282392"
    assert ratio_to_decimal(Fraction(337, 2101)) == "0.160400"
    # ties go to the even neighbour
    assert ratio_to_decimal(Fraction(1234565, 10**7)) == "0.123456"
    assert ratio_to_decimal(Fraction(1234575, 10**7)) == "0.123458"
