"""Effective thresholds behind the finiteness of every preimage s(k).

omega_class_bound(k, b) = p^2 with p = p_(b + l + 1) and l the least integer with
l(l + 1)/2 > k. Among the b + l primes below p at most b divide n, so at least l
coprime primes q_1 < ... < q_l < p remain; the products q_i q_j (i <= j) are
l(l + 1)/2 distinct composites below p^2 < n, coprime to n, and together with 1
they give phi_tilde(n) > k.

Numbers with omega(n) >= max(4, k + 1) are covered by the primorial argument:
phi_tilde(n) >= phi_tilde(N_omega) > |Q_omega| >= omega > k.
"""

from __future__ import annotations

import logging

import numpy as np

from .config import PrimeCountConfig, PrimorialConfig
from .errors import OutOfRangeError, ResourceError
from .models import Counterexample, QiReport, ThresholdCertificate, VerificationOutcome
from .phitilde import phi_tilde_primorial, phi_tilde_values
from .sieve import PrimeList, SieveTables, nth_prime, prime_count, primorial

logger = logging.getLogger(__name__)

_PI_CAP = PrimeCountConfig().feasibility_cap
_MAX_PRIMORIAL_INDEX = PrimorialConfig().max_index
MIN_Q_INDEX = 4


def _q_range(i: int, primes: PrimeList | None, max_index: int = _MAX_PRIMORIAL_INDEX) -> tuple[int, int]:
    """(p_i, largest r with r * p_(i+1) < N_i)."""
    if i < MIN_Q_INDEX:
        raise OutOfRangeError(f"Q_i is defined for i >= {MIN_Q_INDEX}, got {i}")
    top = (primorial(i, max_index=max_index, primes=primes) - 1) // nth_prime(i + 1, primes)
    return nth_prime(i, primes), top


def compute_Q(
    i: int,
    tables: SieveTables,
    primes: PrimeList | None = None,
    *,
    max_index: int = _MAX_PRIMORIAL_INDEX,
) -> QiReport:
    p_i, top = _q_range(i, primes, max_index)
    if top > tables.limit:
        raise OutOfRangeError(f"Q_{i} needs primes up to {top}, beyond the sieve limit {tables.limit}")
    candidates = tables.primes
    # Every prime above p_i is automatically coprime to N_i.
    elements = candidates[(candidates > p_i) & (candidates <= top)].tolist()
    return QiReport(i=i, q_elements=tuple(elements), cardinality=len(elements))


def q_cardinality(
    i: int,
    tables: SieveTables,
    *,
    pi_cap: int = _PI_CAP,
    max_index: int = _MAX_PRIMORIAL_INDEX,
    primes: PrimeList | None = None,
) -> int:
    """|Q_i| = pi(top) - i, counting sublinearly when top is past the sieve."""
    _, top = _q_range(i, primes, max_index)
    return prime_count(top, tables, cap=pi_cap) - i


def triangular_index(k: int) -> int:
    """Least l >= 1 with l(l + 1)/2 > k."""
    ell = 1
    while ell * (ell + 1) // 2 <= k:
        ell += 1
    return ell


def omega_class_bound(k: int, b: int, primes: PrimeList | None = None) -> int:
    if k < 0 or b < 1:
        raise OutOfRangeError(f"omega_class_bound needs k >= 0 and b >= 1, got k={k}, b={b}")
    p = nth_prime(b + triangular_index(k) + 1, primes)
    return p * p


def global_threshold(k: int, primes: PrimeList | None = None) -> ThresholdCertificate:
    """Certificate that every n in s(k) is at most global_bound.

    The bounds depend only on the primes, so unlike the scans no sieve tables
    are taken; omega classes from primorial_cutoff upward need no bound.
    """
    if k < 1:
        raise OutOfRangeError(f"global_threshold needs k >= 1, got {k}")
    cutoff = max(MIN_Q_INDEX, k + 1)
    per_class = tuple((b, omega_class_bound(k, b, primes)) for b in range(1, cutoff))
    return ThresholdCertificate(
        k=k,
        per_class_bounds=per_class,
        primorial_cutoff=cutoff,
        global_bound=max(bound for _, bound in per_class),
    )


def omega_class_members(a: int, b: int, tables: SieveTables, primes: PrimeList | None = None) -> tuple[int, ...]:
    """A(a, b) = {n : phi_tilde(n) = a, omega(n) = b}, complete by omega_class_bound."""
    if b == 0:
        return (1,) if a == 1 else ()
    bound = omega_class_bound(a, b, primes)
    if bound > tables.limit:
        raise OutOfRangeError(f"A({a}, {b}) needs a scan to {bound}, beyond the sieve limit {tables.limit}")
    values = phi_tilde_values(tables)[1 : bound + 1]
    omegas = tables.omega[1 : bound + 1]
    found = np.flatnonzero((values == a) & (omegas == b)) + 1
    return tuple(found.tolist())


def primorial_index_bound(
    n: int,
    tables: SieveTables,
    *,
    pi_cap: int = _PI_CAP,
    max_index: int = _MAX_PRIMORIAL_INDEX,
    primes: PrimeList | None = None,
) -> int:
    """Smallest M with phi_tilde(N_j) > n for every j >= M.

    phi_tilde(N_1) = phi_tilde(N_2) = phi_tilde(N_3) = 1 and phi_tilde grows
    strictly along N_3, N_4, ..., so the first j >= 3 above n is the answer.
    """
    if n < 1:
        return 1
    j = 3
    while phi_tilde_primorial(j, tables, pi_cap=pi_cap, max_index=max_index, primes=primes) <= n:
        j += 1
        if j > max_index:
            raise ResourceError(f"M_{n} lies beyond primorial index {max_index}")
    return j


def verify_primorial_growth(
    i_max: int,
    tables: SieveTables,
    *,
    pi_cap: int = _PI_CAP,
    max_index: int = _MAX_PRIMORIAL_INDEX,
    primes: PrimeList | None = None,
) -> VerificationOutcome:
    if i_max < 3:
        raise OutOfRangeError(f"i_max must be at least 3, got {i_max}")
    claim_range = f"3 <= i <= {i_max}"
    values = {
        i: phi_tilde_primorial(i, tables, pi_cap=pi_cap, max_index=max_index, primes=primes)
        for i in range(3, i_max + 1)
    }
    sizes = {
        i: q_cardinality(i, tables, pi_cap=pi_cap, max_index=max_index, primes=primes)
        for i in range(MIN_Q_INDEX, i_max + 1)
    }
    details = {
        "phi_tilde_primorials": [[i, v] for i, v in values.items()],
        "q_cardinalities": [[i, c] for i, c in sizes.items()],
    }
    logger.info("primorial growth values to i=%d: %s", i_max, values)

    def failed(check: str, i: int, expected: str, actual: object) -> VerificationOutcome:
        return VerificationOutcome(
            claim_id="primorial_growth",
            range=claim_range,
            passed=False,
            counterexample=Counterexample(input={"i": i}, expected=f"{check}: {expected}", actual=actual),
            details=details,
        )

    for i in range(MIN_Q_INDEX, i_max):
        if not sizes[i] < sizes[i + 1]:
            return failed("q_growth", i, f"|Q_{i}| < |Q_{i + 1}|", [sizes[i], sizes[i + 1]])
    for i in range(MIN_Q_INDEX, i_max + 1):
        if sizes[i] < i:
            return failed("q_size", i, f"|Q_{i}| >= {i}", sizes[i])
    for i in range(3, i_max):
        if not values[i] < values[i + 1]:
            return failed("phi_tilde_growth", i, f"phi_tilde(N_{i}) < phi_tilde(N_{i + 1})", [values[i], values[i + 1]])
    for i in range(MIN_Q_INDEX, i_max + 1):
        if not values[i] > sizes[i]:
            return failed("phi_tilde_over_q", i, f"phi_tilde(N_{i}) > |Q_{i}|", [values[i], sizes[i]])
        following = nth_prime(i + 1, primes)
        if not following * following < primorial(i, max_index=max_index, primes=primes):
            return failed("bertrand_member", i, f"p_{i + 1} in Q_{i}", following)
    return VerificationOutcome(claim_id="primorial_growth", range=claim_range, passed=True, details=details)
