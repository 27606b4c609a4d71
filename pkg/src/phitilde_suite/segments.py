"""Windowed arithmetic over [lo, hi) for scans that run past the in-memory tables.

Each window is computed independently from the base primes up to sqrt(hi); only
the running prime count crosses windows, and it is merged after a separate
counting pass, so results do not depend on how windows are scheduled.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from math import isqrt
from typing import TypeVar

import numpy as np

from .config import SieveConfig
from .sieve import small_primes

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

DEFAULT_SEGMENT_SIZE = SieveConfig().segment_size


@dataclass(frozen=True, eq=False)
class WindowArithmetic:
    lo: int
    phi: np.ndarray
    omega: np.ndarray
    is_prime: np.ndarray

    @property
    def numbers(self) -> np.ndarray:
        return np.arange(self.lo, self.lo + self.phi.size, dtype=np.int64)


def create_windows(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    """Split [lo, hi) into consecutive half-open windows of at most `size` numbers."""
    return [(start, min(start + size, hi)) for start in range(lo, hi, size)]


def ordered_map(fn: Callable[[T], R], items: Iterable[T], threads: int = 1) -> list[R]:
    if threads <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads, thread_name_prefix="phitilde-window") as pool:
        return list(pool.map(fn, items))


def window_arithmetic(lo: int, hi: int, base_primes: np.ndarray) -> WindowArithmetic:
    """phi, omega and primality for every n in [lo, hi); base_primes must reach sqrt(hi - 1)."""
    numbers = np.arange(lo, hi, dtype=np.int64)
    phi = numbers.copy()
    rem = numbers.copy()
    omega = np.zeros(hi - lo, dtype=np.int8)
    for p in base_primes.tolist():
        if p * p > hi - 1:
            break
        start = -(-lo // p) * p
        if start >= hi:
            continue
        offset = start - lo
        phi[offset::p] = phi[offset::p] // p * (p - 1)
        omega[offset::p] += 1
        power = p
        while power < hi:
            first = -(-lo // power) * power
            if first < hi:
                rem[first - lo :: power] //= p
            power *= p
    # What is left above 1 is a single prime factor larger than sqrt(hi - 1).
    big = rem > 1
    phi[big] = phi[big] // rem[big] * (rem[big] - 1)
    omega[big] += 1
    is_prime = (phi == numbers - 1) & (numbers >= 2)
    return WindowArithmetic(lo=lo, phi=phi, omega=omega, is_prime=is_prime)


def count_primes_window(lo: int, hi: int, base_primes: np.ndarray) -> int:
    """Segmented Eratosthenes count of primes in [lo, hi)."""
    if hi <= lo:
        return 0
    mask = np.ones(hi - lo, dtype=bool)
    for n in (0, 1):
        if lo <= n < hi:
            mask[n - lo] = False
    for p in base_primes.tolist():
        if p * p >= hi:
            break
        start = max(p * p, -(-lo // p) * p)
        if start < hi:
            mask[start - lo :: p] = False
    return int(np.count_nonzero(mask))


def segmented_prime_count(
    x: int,
    *,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> int:
    """pi(x) by a full segmented sieve; the direct count used to cross-check sublinear pi."""
    if x < 2:
        return 0
    base = small_primes(isqrt(x) + 1)
    windows = create_windows(0, x + 1, segment_size)
    counts = ordered_map(lambda window: count_primes_window(window[0], window[1], base), windows, threads)
    logger.debug("segmented count of primes <= %d over %d windows", x, len(windows))
    return sum(counts)


def phi_tilde_windows(
    lo: int,
    hi: int,
    *,
    at_most: int,
    pi_before: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    threads: int = 1,
) -> list[tuple[np.ndarray, np.ndarray]]:
    """(n, phi_tilde(n)) for every n in [lo, hi) with phi_tilde(n) <= at_most, one pair per window.

    pi_before must equal pi(lo - 1).
    """
    if hi <= lo:
        return []
    base = small_primes(isqrt(hi) + 1)
    windows = create_windows(lo, hi, segment_size)
    counts = ordered_map(lambda window: count_primes_window(window[0], window[1], base), windows, threads)
    offsets = np.cumsum([pi_before, *counts[:-1]]).tolist()

    def select(job: tuple[tuple[int, int], int]) -> tuple[np.ndarray, np.ndarray]:
        (start, stop), offset = job
        window = window_arithmetic(start, stop, base)
        pi = offset + np.cumsum(window.is_prime, dtype=np.int64)
        values = window.phi - pi + window.omega
        keep = values <= at_most
        return window.numbers[keep], values[keep]

    logger.debug("phi_tilde scan of [%d, %d) over %d windows", lo, hi, len(windows))
    return ordered_map(select, zip(windows, offsets), threads)
