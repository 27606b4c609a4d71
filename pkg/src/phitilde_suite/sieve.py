"""Per-n arithmetic tables (spf, phi, omega, primality, prefix pi) and prime utilities."""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass
from functools import cached_property
from math import isqrt

import numpy as np

from .config import PrimeCountConfig, PrimorialConfig, SieveConfig
from .errors import CapacityError, OutOfRangeError, PrimorialOverflowError, ResourceError

logger = logging.getLogger(__name__)

# Stored arrays (int32 spf/phi/pi, int8 omega, bool is_prime) plus the working
# arrays of the factor-peeling pass.
BYTES_PER_ENTRY = 40

_SIEVE_DEFAULTS = SieveConfig()
_PI_DEFAULTS = PrimeCountConfig()
_PRIMORIAL_DEFAULTS = PrimorialConfig()


def small_primes(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array (plain Eratosthenes)."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    is_prime = np.ones(limit + 1, dtype=bool)
    is_prime[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if is_prime[p]:
            is_prime[p * p :: p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@dataclass(frozen=True, eq=False)
class SieveTables:
    """Arrays indexed 0..limit; index 0 is padding and spf[1] = 1 is a sentinel."""

    limit: int
    spf: np.ndarray
    phi: np.ndarray
    omega: np.ndarray
    is_prime: np.ndarray
    pi_prefix: np.ndarray

    def check_range(self, n: int) -> None:
        if n < 1 or n > self.limit:
            raise OutOfRangeError(f"n={n} is outside the sieve range [1, {self.limit}]")

    @cached_property
    def primes(self) -> np.ndarray:
        primes = np.flatnonzero(self.is_prime).astype(np.int64)
        primes.flags.writeable = False
        return primes


def build_sieve(
    limit: int,
    *,
    max_limit: int = _SIEVE_DEFAULTS.max_limit,
    memory_budget_bytes: int = _SIEVE_DEFAULTS.memory_budget_bytes,
) -> SieveTables:
    if limit < 1:
        raise OutOfRangeError(f"sieve limit must be at least 1, got {limit}")
    if limit > max_limit:
        raise CapacityError(
            f"sieve limit {limit} exceeds max_limit {max_limit} (memory budget {memory_budget_bytes} bytes); "
            "use segmented scanning beyond it"
        )
    needed = (limit + 1) * BYTES_PER_ENTRY
    if needed > memory_budget_bytes:
        raise CapacityError(
            f"sieve limit {limit} needs about {needed} bytes, over the memory budget of {memory_budget_bytes} bytes"
        )

    started = time.perf_counter()
    size = limit + 1
    spf = np.arange(size, dtype=np.int32)
    # Descending order so the smallest prime factor is written last.
    for p in small_primes(isqrt(limit))[::-1]:
        spf[p * p :: p] = p

    phi = np.ones(size, dtype=np.int32)
    phi[0] = 0
    omega = np.zeros(size, dtype=np.int8)
    rem = np.arange(size, dtype=np.int32)
    active = np.arange(2, size)
    while active.size:
        p = spf[rem[active]]
        rem[active] //= p
        phi[active] *= p - 1
        omega[active] += 1
        sub, sub_p = active, p
        while True:
            divisible = rem[sub] % sub_p == 0
            if not divisible.any():
                break
            sub, sub_p = sub[divisible], sub_p[divisible]
            rem[sub] //= sub_p
            phi[sub] *= sub_p
        active = active[rem[active] > 1]
    del rem, active

    is_prime = spf == np.arange(size, dtype=np.int32)
    is_prime[:2] = False
    pi_prefix = np.cumsum(is_prime, dtype=np.int32)

    for array in (spf, phi, omega, is_prime, pi_prefix):
        array.flags.writeable = False
    logger.debug("built sieve tables to %d in %.3fs", limit, time.perf_counter() - started)
    return SieveTables(limit=limit, spf=spf, phi=phi, omega=omega, is_prime=is_prime, pi_prefix=pi_prefix)


def factorize(n: int, tables: SieveTables) -> list[tuple[int, int]]:
    tables.check_range(n)
    factors: list[tuple[int, int]] = []
    while n > 1:
        p = int(tables.spf[n])
        exponent = 0
        while n % p == 0:
            n //= p
            exponent += 1
        factors.append((p, exponent))
    return factors


def _nth_prime_upper_bound(i: int) -> int:
    if i < 6:
        return 15
    log_i = math.log(i)
    return int(i * (log_i + math.log(log_i))) + 3


class PrimeList:
    """Growable list of the first primes; p_1 = 2."""

    def __init__(self, max_index: int = _SIEVE_DEFAULTS.max_prime_index):
        self.max_index = max_index
        self._primes = small_primes(30)

    def __len__(self) -> int:
        return int(self._primes.size)

    def nth(self, i: int) -> int:
        if i < 1:
            raise OutOfRangeError(f"prime index must be at least 1, got {i}")
        if i > self.max_index:
            raise ResourceError(f"prime index {i} is beyond the configured cap of {self.max_index}")
        if i > self._primes.size:
            self._extend(i)
        return int(self._primes[i - 1])

    def _extend(self, i: int) -> None:
        target = max(i, 2 * int(self._primes.size))
        bound = _nth_prime_upper_bound(min(target, self.max_index))
        self._primes = small_primes(bound)
        logger.debug("prime list extended to %d primes (<= %d)", self._primes.size, bound)


_DEFAULT_PRIMES = PrimeList()


def nth_prime(i: int, primes: PrimeList | None = None) -> int:
    return (primes or _DEFAULT_PRIMES).nth(i)


def primorial(
    i: int,
    *,
    max_index: int = _PRIMORIAL_DEFAULTS.max_index,
    primes: PrimeList | None = None,
) -> int:
    """N_i, the product of the first i primes (N_0 = 1)."""
    if i < 0:
        raise OutOfRangeError(f"primorial index must be non-negative, got {i}")
    if i > max_index:
        raise PrimorialOverflowError(f"primorial N_{i} exceeds the 64-bit cap (max index {max_index})")
    value = 1
    for j in range(1, i + 1):
        value *= nth_prime(j, primes)
    if value >= 2**63:
        raise PrimorialOverflowError(f"primorial N_{i} = {value} does not fit in 63 bits")
    return value


def prime_count(
    x: int,
    tables: SieveTables,
    *,
    cap: int = _PI_DEFAULTS.feasibility_cap,
) -> int:
    if x < 1:
        raise OutOfRangeError(f"prime_count argument must be at least 1, got {x}")
    if x <= tables.limit:
        return int(tables.pi_prefix[x])
    if x > cap:
        raise ResourceError(f"prime_count({x}) is beyond the feasibility cap of {cap}")
    return sublinear_prime_count(x)


def sublinear_prime_count(x: int) -> int:
    """pi(x) in O(x^(3/4)) time over the O(sqrt(x)) distinct values of x // d.

    small[v] and large[i] hold the count of integers in [2, v] (resp. [2, x // i])
    that survive sieving by every prime processed so far.
    """
    if x < 2:
        return 0
    r = isqrt(x)
    small = np.arange(-1, r, dtype=np.int64)
    small[0] = 0
    divisors = np.arange(1, r + 1, dtype=np.int64)
    large = np.zeros(r + 1, dtype=np.int64)
    large[1:] = x // divisors - 1

    for p in range(2, r + 1):
        if small[p] == small[p - 1]:
            continue
        below = small[p - 1]
        square = p * p
        top = min(r, x // square)
        if top >= 1:
            d = divisors[:top] * p
            near = d <= r
            values = np.empty(top, dtype=np.int64)
            values[near] = large[d[near]]
            values[~near] = small[x // d[~near]]
            large[1 : top + 1] -= values - below
        if square <= r:
            v = np.arange(square, r + 1, dtype=np.int64)
            small[square:] -= small[v // p] - below
    return int(large[1])
