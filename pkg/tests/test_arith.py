import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normform.arith import factorize, is_square, is_squarefree, isqrt, kronecker, prime_divisors, xgcd
from normform.errors import NegativeInput, ZeroInput

from oracles import is_squarefree_brute, kronecker_by_definition, trial_factor


@given(st.integers(-10**6, 10**6).filter(bool))
def test_factorize_matches_trial_division(n):
    fac = factorize(n)
    assert dict(fac.factors) == trial_factor(n)
    assert fac.product() == n
    assert fac.primes == tuple(sorted(trial_factor(n)))


def test_factorize_edge_cases():
    assert factorize(1).factors == ()
    assert factorize(-1).sign == -1
    with pytest.raises(ZeroInput):
        factorize(0)
    with pytest.raises(ValueError):
        factorize(2**64)


def test_prime_divisors():
    assert prime_divisors(-4420) == (2, 5, 13, 17)
    assert prime_divisors(1) == ()


@given(st.integers(-5000, 5000).filter(bool))
def test_squarefree_matches_brute(n):
    assert is_squarefree(n) == is_squarefree_brute(n)


def test_squarefree_rejects_zero():
    with pytest.raises(ZeroInput):
        is_squarefree(0)


@given(st.integers(0, 10**30))
def test_isqrt_floor(n):
    r = isqrt(n)
    assert r * r <= n < (r + 1) ** 2
    assert is_square(n) == (r * r == n)


def test_isqrt_negative():
    with pytest.raises(NegativeInput):
        isqrt(-1)
    assert not is_square(-4)


@given(st.integers(-500, 500), st.integers(-500, 500).filter(bool))
def test_kronecker_matches_definition(a, n):
    assert kronecker(a, n) == kronecker_by_definition(a, n)


def test_kronecker_values():
    assert kronecker(2, 7) == 1
    assert kronecker(-1, 3) == -1
    assert kronecker(5, 8) == -1
    assert kronecker(-4, -1) == -1
    with pytest.raises(ZeroInput):
        kronecker(3, 0)


@given(st.integers(-10**9, 10**9), st.integers(-10**9, 10**9))
def test_xgcd_bezout(a, b):
    g, x, y = xgcd(a, b)
    assert g == math.gcd(a, b)
    assert a * x + b * y == g
