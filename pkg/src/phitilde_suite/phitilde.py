"""phi_tilde(n) = |E_n|, E_n = {m <= n : gcd(m, n) = 1, m not prime}.

Three routes to the same number: enumeration of E_n (the oracle), the closed
form phi(n) - pi(n) + omega(n), and the primorial form that pairs the totient
product with sublinear prime counting.
"""

from __future__ import annotations

from math import prod
from weakref import WeakKeyDictionary

import numpy as np

from .config import PrimeCountConfig, PrimorialConfig
from .errors import OutOfRangeError
from .models import CoprimeCompositeSet, Counterexample, PhiTildeRecord, VerificationOutcome
from .sieve import PrimeList, SieveTables, factorize, nth_prime, prime_count, primorial

_PI_CAP = PrimeCountConfig().feasibility_cap
_MAX_PRIMORIAL_INDEX = PrimorialConfig().max_index
_VALUES: WeakKeyDictionary[SieveTables, np.ndarray] = WeakKeyDictionary()


def _coprime_nonprime_mask(n: int, tables: SieveTables) -> np.ndarray:
    # mask[m - 1] is True when m belongs to E_n; 1 is never prime.
    mask = ~tables.is_prime[1 : n + 1]
    for p, _ in factorize(n, tables):
        mask[p - 1 :: p] = False
    return mask


def enumerate_E(n: int, tables: SieveTables) -> CoprimeCompositeSet:
    tables.check_range(n)
    mask = _coprime_nonprime_mask(n, tables)
    elements = (np.flatnonzero(mask) + 1).tolist()
    return CoprimeCompositeSet(n=n, elements=tuple(elements))


def phi_tilde_oracle(n: int, tables: SieveTables) -> int:
    tables.check_range(n)
    return int(np.count_nonzero(_coprime_nonprime_mask(n, tables)))


def phi_tilde(n: int, tables: SieveTables) -> PhiTildeRecord:
    tables.check_range(n)
    phi = int(tables.phi[n])
    pi = int(tables.pi_prefix[n])
    omega = int(tables.omega[n])
    return PhiTildeRecord(n=n, phi=phi, pi=pi, omega=omega, phi_tilde=phi - pi + omega)


def phi_tilde_values(tables: SieveTables) -> np.ndarray:
    """Read-only int64 array v with v[n] = phi_tilde(n) for 1 <= n <= limit (v[0] = 0)."""
    values = _VALUES.get(tables)
    if values is None:
        values = tables.phi.astype(np.int64) - tables.pi_prefix + tables.omega
        values[0] = 0
        values.flags.writeable = False
        _VALUES[tables] = values
    return values


def phi_tilde_at_prime_index(k: int, primes: PrimeList | None = None) -> int:
    return nth_prime(k, primes) - k


def phi_tilde_primorial(
    i: int,
    tables: SieveTables,
    *,
    pi_cap: int = _PI_CAP,
    max_index: int = _MAX_PRIMORIAL_INDEX,
    primes: PrimeList | None = None,
) -> int:
    if i < 1:
        raise OutOfRangeError(f"primorial index must be at least 1, got {i}")
    n = primorial(i, max_index=max_index, primes=primes)
    phi = prod(nth_prime(j, primes) - 1 for j in range(1, i + 1))
    return phi - prime_count(n, tables, cap=pi_cap) + i


def unit_group_decomposition(n: int, tables: SieveTables) -> VerificationOutcome:
    """Check U_n + {q | n prime} = E_n + {p <= n prime}, both as disjoint unions."""
    tables.check_range(n)
    numbers = np.arange(1, n + 1)
    coprime = np.ones(n, dtype=bool)
    divisors = [p for p, _ in factorize(n, tables)]
    for p in divisors:
        coprime[p - 1 :: p] = False
    units = set(numbers[coprime].tolist())
    prime_divisors = set(divisors)
    members = set(enumerate_E(n, tables).elements)
    primes_upto = set(numbers[tables.is_prime[1 : n + 1]].tolist())

    left = units | prime_divisors
    right = members | primes_upto
    disjoint = not (units & prime_divisors) and not (members & primes_upto)
    if left == right and disjoint:
        return VerificationOutcome(claim_id=f"unit_decomposition_n{n}", range=f"n={n}", passed=True)
    return VerificationOutcome(
        claim_id=f"unit_decomposition_n{n}",
        range=f"n={n}",
        passed=False,
        counterexample=Counterexample(
            input={"n": n},
            expected=sorted(left),
            actual=sorted(right),
        ),
    )
