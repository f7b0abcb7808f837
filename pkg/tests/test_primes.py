"""Primality and factorization layer, cross-checked against sympy."""

import random

import pytest
import sympy

from sdpc.primes import (
    CERTIFIED_LIMIT,
    is_prime_exact,
    is_probable_prime,
    prime_factors,
    primes_in_range,
    primes_up_to,
)


def test_sieve_small_window_exact():
    assert primes_up_to(1) == ()
    assert primes_up_to(2) == (2,)
    assert primes_up_to(30) == (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def test_sieve_matches_sympy_up_to_10000():
    assert list(primes_up_to(10_000)) == list(sympy.primerange(2, 10_001))


def test_primes_in_range_is_half_open():
    assert primes_in_range(7, 7) == ()
    assert primes_in_range(7, 8) == (7,)
    assert primes_in_range(7, 30) == (7, 11, 13, 17, 19, 23, 29)
    # lower bound included, upper excluded
    assert primes_in_range(11, 13) == (11,)


def test_exact_primality_agrees_with_sympy_on_randoms():
    rng = random.Random(20240817)
    for _ in range(2000):
        n = rng.randrange(2, 10**7)
        assert is_prime_exact(n) == sympy.isprime(n), n


def test_exact_primality_on_adversarial_values():
    # Carmichael numbers, prime squares, and the 64-bit boundary region.
    for n in (561, 1105, 1729, 2465, 2821, 6601, 8911, 41041, 825265):
        assert not is_prime_exact(n)
    for p in (2, 3, 5, 7, 101, 65537):
        assert is_prime_exact(p)
        assert not is_prime_exact(p * p)
    assert not is_prime_exact(0)
    assert not is_prime_exact(1)
    near_boundary = CERTIFIED_LIMIT - 59  # = 2**64 - 59, a known prime
    assert is_prime_exact(near_boundary) == sympy.isprime(near_boundary)


def test_probable_prime_above_certified_range():
    p = sympy.nextprime(CERTIFIED_LIMIT)
    assert is_probable_prime(p)
    assert not is_probable_prime(p + 1)
    # below the boundary the answer is exact regardless of rounds
    assert is_probable_prime(2**61 - 1, rounds=1)


def test_prime_factors_distinct_sorted():
    assert prime_factors(2 * 3 * 5 * 7) == (2, 3, 5, 7)
    assert prime_factors(2**10) == (2,)
    assert prime_factors(-30) == (2, 3, 5)
    assert prime_factors(1) == ()
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(2, 10**9)
        got = prime_factors(n)
        assert got == tuple(sorted(sympy.factorint(n)))
        assert all(is_prime_exact(p) for p in got)


def test_prime_factors_refuses_uncertified_range():
    with pytest.raises(ValueError):
        prime_factors(CERTIFIED_LIMIT + 1)
