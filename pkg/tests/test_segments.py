from __future__ import annotations

import numpy as np
import pytest

from phitilde_suite.phitilde import phi_tilde_values
from phitilde_suite.segments import (
    count_primes_window,
    create_windows,
    ordered_map,
    phi_tilde_windows,
    segmented_prime_count,
    window_arithmetic,
)
from phitilde_suite.sieve import primorial, small_primes, sublinear_prime_count


def test_create_windows_covers_range_in_order() -> None:
    assert create_windows(0, 10, 4) == [(0, 4), (4, 8), (8, 10)]
    assert create_windows(5, 5, 4) == []


def test_ordered_map_keeps_input_order_with_threads() -> None:
    items = list(range(50))
    assert ordered_map(lambda x: x * x, items, threads=4) == [x * x for x in items]
    assert ordered_map(lambda x: x + 1, items) == [x + 1 for x in items]


@pytest.mark.parametrize(("lo", "hi"), [(1, 5000), (900_000, 1_000_001)])
def test_window_arithmetic_matches_tables(tables, lo: int, hi: int) -> None:
    window = window_arithmetic(lo, hi, small_primes(1001))
    assert np.array_equal(window.numbers, np.arange(lo, hi))
    assert np.array_equal(window.phi, tables.phi[lo:hi])
    assert np.array_equal(window.omega, tables.omega[lo:hi])
    assert np.array_equal(window.is_prime, tables.is_prime[lo:hi])


def test_count_primes_window(tables) -> None:
    base = small_primes(1001)
    assert count_primes_window(0, 1001, base) == 168
    assert count_primes_window(0, 2, base) == 0
    expected = int(tables.pi_prefix[10**6]) - int(tables.pi_prefix[998_999])
    assert count_primes_window(999_000, 1_000_001, base) == expected


def test_segmented_prime_count_is_thread_invariant() -> None:
    assert segmented_prime_count(10**6, segment_size=1 << 16) == 78498
    assert segmented_prime_count(10**6, segment_size=1 << 16, threads=4) == 78498
    assert segmented_prime_count(1) == 0


def test_phi_tilde_windows_match_tables(tables) -> None:
    values = phi_tilde_values(tables)
    lo, hi = 500_001, 1_000_001
    pi_before = int(tables.pi_prefix[lo - 1])
    for at_most in (10**5, 10**6):
        expected = np.flatnonzero(values[lo:hi] <= at_most) + lo
        for threads in (1, 3):
            windows = phi_tilde_windows(
                lo, hi, at_most=at_most, pi_before=pi_before, segment_size=1 << 16, threads=threads
            )
            numbers = np.concatenate([n for n, _ in windows])
            found = np.concatenate([v for _, v in windows])
            assert np.array_equal(numbers, expected)
            assert np.array_equal(found, values[expected])


@pytest.mark.slow
def test_segmented_count_agrees_with_sublinear_at_ninth_primorial() -> None:
    x = primorial(9)
    assert segmented_prime_count(x, threads=4) == sublinear_prime_count(x)
