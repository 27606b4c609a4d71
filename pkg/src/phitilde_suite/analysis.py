from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .bounds import global_threshold
from .config import ScanConfig, SieveConfig
from .errors import OutOfRangeError, ResourceError, UsageError
from .golden import load_golden
from .models import (
    ConjectureReport,
    Counterexample,
    PreimageReport,
    VerificationOutcome,
    classify,
)
from .phitilde import enumerate_E, phi_tilde_oracle, phi_tilde_values
from .segments import phi_tilde_windows
from .sieve import PrimeList, SieveTables, primorial

logger = logging.getLogger(__name__)

PROPERTY_IDS = (
    "squarefree_part",
    "prime_power_growth",
    "prime_swap",
    "primorial_min",
    "formula_oracle",
    "prime_identity",
)
ONE_ERRATUM_NOTE = "published list omits n=1; phi_tilde(1) = 1 places 1 in s(1)"
PAPER_MIN_LIMIT = 10_000

_SCAN_DEFAULTS = ScanConfig()
_SEGMENT_SIZE = SieveConfig().segment_size


@dataclass(frozen=True, eq=False)
class PreimageCatalog:
    """Every s(k) for k <= max_k, from one scan of [1, bound]."""

    max_k: int
    bound: int
    buckets: dict[int, tuple[int, ...]]

    def elements(self, k: int) -> tuple[int, ...]:
        if k < 1 or k > self.max_k:
            raise OutOfRangeError(f"k={k} is outside this catalog (1..{self.max_k})")
        return self.buckets[k]

    def report(self, k: int, primes: PrimeList | None = None) -> PreimageReport:
        elements = self.elements(k)
        return PreimageReport(
            k=k,
            certificate=global_threshold(k, primes),
            elements=elements,
            classification=classify(len(elements)),
        )


def build_catalog(
    max_k: int,
    tables: SieveTables,
    *,
    segment_size: int = _SEGMENT_SIZE,
    threads: int = _SCAN_DEFAULTS.threads,
    max_scan_bound: int = _SCAN_DEFAULTS.max_bound,
    primes: PrimeList | None = None,
) -> PreimageCatalog:
    """Bucket every n <= global_bound(max_k) with phi_tilde(n) <= max_k.

    Certificates grow with k, so the bound for max_k certifies every smaller k.
    """
    if max_k < 1:
        raise OutOfRangeError(f"max_k must be at least 1, got {max_k}")
    bound = global_threshold(max_k, primes).global_bound
    if bound > max_scan_bound:
        raise ResourceError(f"certified scan for k <= {max_k} needs n <= {bound}, beyond the scan cap {max_scan_bound}")

    in_table = min(bound, tables.limit)
    values = phi_tilde_values(tables)[1 : in_table + 1]
    selected = np.flatnonzero(values <= max_k)
    numbers = [selected + 1]
    found = [values[selected]]
    if bound > tables.limit:
        logger.info("scanning (%d, %d] in windows past the sieve limit", tables.limit, bound)
        windows = phi_tilde_windows(
            tables.limit + 1,
            bound + 1,
            at_most=max_k,
            pi_before=int(tables.pi_prefix[tables.limit]),
            segment_size=segment_size,
            threads=threads,
        )
        for window_numbers, window_values in windows:
            numbers.append(window_numbers)
            found.append(window_values)

    all_numbers = np.concatenate(numbers).astype(np.int64)
    all_values = np.concatenate(found).astype(np.int64)
    order = np.argsort(all_values, kind="stable")
    all_numbers, all_values = all_numbers[order], all_values[order]
    buckets: dict[int, tuple[int, ...]] = {}
    for k in range(1, max_k + 1):
        lo, hi = np.searchsorted(all_values, [k, k + 1])
        buckets[k] = tuple(all_numbers[lo:hi].tolist())
    logger.info("catalog for k <= %d certified by a scan to %d", max_k, bound)
    return PreimageCatalog(max_k=max_k, bound=bound, buckets=buckets)


def _catalog_for(k: int, tables: SieveTables, catalog: PreimageCatalog | None) -> PreimageCatalog:
    if catalog is not None and catalog.max_k >= k:
        return catalog
    return build_catalog(k, tables)


def preimage(k: int, tables: SieveTables, catalog: PreimageCatalog | None = None) -> PreimageReport:
    return _catalog_for(k, tables, catalog).report(k)


def smallest_preimage(k: int, tables: SieveTables, catalog: PreimageCatalog | None = None) -> int | None:
    elements = _catalog_for(k, tables, catalog).elements(k)
    return elements[0] if elements else None


def missing_values(max_k: int, tables: SieveTables, catalog: PreimageCatalog | None = None) -> list[int]:
    source = _catalog_for(max_k, tables, catalog)
    return [k for k in range(1, max_k + 1) if not source.elements(k)]


def singleton_values(max_k: int, tables: SieveTables, catalog: PreimageCatalog | None = None) -> list[int]:
    source = _catalog_for(max_k, tables, catalog)
    return [k for k in range(1, max_k + 1) if len(source.elements(k)) == 1]


def conjecture_scan(max_k: int, tables: SieveTables, catalog: PreimageCatalog | None = None) -> ConjectureReport:
    """Empirical count of values k <= max_k that phi_tilde never takes. Evidence, not proof."""
    source = _catalog_for(max_k, tables, catalog)
    missing = missing_values(max_k, tables, source)
    running = tuple((k, position, round(position / k, 6)) for position, k in enumerate(missing, start=1))
    return ConjectureReport(
        max_k=max_k,
        bound=source.bound,
        missing=tuple(missing),
        count=len(missing),
        density=round(len(missing) / max_k, 6),
        running=running,
    )


def partition_counts(limit: int, tables: SieveTables) -> dict[int, int]:
    """|s(k) intersected with [1, limit]| for every value k taken below limit."""
    tables.check_range(limit)
    values, counts = np.unique(phi_tilde_values(tables)[1 : limit + 1], return_counts=True)
    return dict(zip(values.tolist(), counts.tolist()))


def check_property(property_id: str, limit: int, tables: SieveTables) -> VerificationOutcome:
    if property_id not in PROPERTY_IDS:
        raise UsageError(f"Unknown property id {property_id!r}; expected one of {', '.join(PROPERTY_IDS)}")
    tables.check_range(limit)
    checker = {
        "squarefree_part": _check_squarefree_part,
        "prime_power_growth": _check_prime_power_growth,
        "prime_swap": _check_prime_swap,
        "primorial_min": _check_primorial_min,
        "formula_oracle": _check_formula_oracle,
        "prime_identity": _check_prime_identity,
    }[property_id]
    return checker(limit, tables)


def _outcome(
    claim_id: str,
    claim_range: str,
    counterexample: Counterexample | None = None,
    **details: object,
) -> VerificationOutcome:
    return VerificationOutcome(
        claim_id=claim_id,
        range=claim_range,
        passed=counterexample is None,
        counterexample=counterexample,
        details=dict(details),
    )


def _check_squarefree_part(limit: int, tables: SieveTables) -> VerificationOutcome:
    values = phi_tilde_values(tables)
    kernel = np.ones(limit + 1, dtype=np.int64)
    primes = tables.primes
    for p in primes[primes <= limit].tolist():
        kernel[p::p] *= p
    numbers = np.arange(1, limit + 1)
    bad = np.flatnonzero(values[numbers] < values[kernel[numbers]])
    if bad.size:
        n = int(numbers[bad[0]])
        n0 = int(kernel[n])
        return _outcome(
            "squarefree_part",
            f"n <= {limit}",
            Counterexample(input={"n": n, "n0": n0}, expected=f">= {int(values[n0])}", actual=int(values[n])),
        )
    return _outcome("squarefree_part", f"n <= {limit}", checked=limit)


def _check_prime_power_growth(limit: int, tables: SieveTables) -> VerificationOutcome:
    values = phi_tilde_values(tables)
    checked = 0
    base = 3
    while base * base <= limit:
        power, k = base, 1
        while power * base <= limit:
            if not values[power] < values[power * base]:
                return _outcome(
                    "prime_power_growth",
                    f"3 <= n, n^(k+1) <= {limit}",
                    Counterexample(
                        input={"n": base, "k": k},
                        expected=f"> {int(values[power])}",
                        actual=int(values[power * base]),
                    ),
                )
            checked += 1
            power *= base
            k += 1
        base += 1
    return _outcome("prime_power_growth", f"3 <= n, n^(k+1) <= {limit}", checked=checked)


def _check_prime_swap(limit: int, tables: SieveTables) -> VerificationOutcome:
    # For fixed n the claim is that phi_tilde(n q) dominates phi_tilde(n p) for
    # every smaller admissible p, i.e. a running maximum never exceeds the next value.
    values = phi_tilde_values(tables)
    primes = tables.primes
    checked = 0
    for n in range(1, limit // 3 + 1):
        candidates = primes[primes <= limit // n]
        candidates = candidates[n % candidates != 0]
        if candidates.size < 2:
            continue
        row = values[n * candidates]
        running_max = np.maximum.accumulate(row)
        bad = np.flatnonzero(row[1:] < running_max[:-1])
        checked += candidates.size * (candidates.size - 1) // 2
        if bad.size:
            j = int(bad[0]) + 1
            i = int(np.argmax(row[:j]))
            p, q = int(candidates[i]), int(candidates[j])
            return _outcome(
                "prime_swap",
                f"n q <= {limit}",
                Counterexample(input={"n": n, "p": p, "q": q}, expected=f">= {int(row[i])}", actual=int(row[j])),
            )
    return _outcome("prime_swap", f"n q <= {limit}", checked=checked)


def _check_primorial_min(limit: int, tables: SieveTables) -> VerificationOutcome:
    values = phi_tilde_values(tables)
    floor_by_omega = np.zeros(int(tables.omega[: limit + 1].max()) + 1, dtype=np.int64)
    for i in range(1, floor_by_omega.size):
        floor_by_omega[i] = values[primorial(i)]
    numbers = np.arange(2, limit + 1)
    floors = floor_by_omega[tables.omega[numbers]]
    bad = np.flatnonzero(values[numbers] < floors)
    if bad.size:
        a = int(numbers[bad[0]])
        return _outcome(
            "primorial_min",
            f"2 <= a <= {limit}",
            Counterexample(
                input={"a": a, "omega": int(tables.omega[a])},
                expected=f">= {int(floors[bad[0]])}",
                actual=int(values[a]),
            ),
        )
    return _outcome("primorial_min", f"2 <= a <= {limit}", checked=limit - 1)


def _check_formula_oracle(limit: int, tables: SieveTables) -> VerificationOutcome:
    values = phi_tilde_values(tables)
    for n in range(1, limit + 1):
        counted = phi_tilde_oracle(n, tables)
        if counted != values[n]:
            return _outcome(
                "formula_oracle",
                f"n <= {limit}",
                Counterexample(input={"n": n}, expected=counted, actual=int(values[n])),
            )
    return _outcome("formula_oracle", f"n <= {limit}", checked=limit)


def _check_prime_identity(limit: int, tables: SieveTables) -> VerificationOutcome:
    values = phi_tilde_values(tables)
    primes = tables.primes[tables.primes <= limit]
    expected = primes - np.arange(1, primes.size + 1)
    bad = np.flatnonzero(values[primes] != expected)
    if bad.size:
        j = int(bad[0])
        return _outcome(
            "prime_identity",
            f"primes <= {limit}",
            Counterexample(input={"p": int(primes[j]), "k": j + 1}, expected=int(expected[j]), actual=int(values[primes[j]])),
        )
    return _outcome("prime_identity", f"primes <= {limit}", checked=int(primes.size))


def verify_paper_tables(
    tables: SieveTables,
    catalog: PreimageCatalog | None = None,
    data_dir: str | Path | None = None,
) -> list[VerificationOutcome]:
    if tables.limit < PAPER_MIN_LIMIT:
        raise OutOfRangeError(f"table verification needs a sieve limit of at least {PAPER_MIN_LIMIT}")
    first_twenty = load_golden("first_twenty.txt", data_dir)
    smallest = load_golden("smallest.txt", data_dir)
    observations = load_golden("observations.txt", data_dir)
    lemma_missing = load_golden("missing.txt", data_dir)
    singletons = load_golden("singletons.txt", data_dir)
    max_k = max([*smallest, *observations, *lemma_missing, *singletons])
    source = _catalog_for(max_k, tables, catalog)

    outcomes: list[VerificationOutcome] = []
    for n, expected in first_twenty.items():
        elements = enumerate_E(n, tables).elements
        value = int(phi_tilde_values(tables)[n])
        actual = {"elements": list(elements), "phi_tilde": value}
        wanted = {"elements": list(expected), "phi_tilde": len(expected)}
        outcomes.append(_compare(f"first20_n{n}", f"n={n}", {"n": n}, wanted, actual))

    for k, expected in smallest.items():
        wanted_n = expected[0] if expected else None
        outcomes.append(
            _compare(f"table_k{k}", f"k={k}", {"k": k}, wanted_n, smallest_preimage(k, tables, source))
        )

    for k, expected in observations.items():
        actual_set = list(source.elements(k))
        extra = set(actual_set) - set(expected)
        if extra == {1} and set(expected) <= set(actual_set):
            outcomes.append(
                VerificationOutcome(claim_id=f"obs_{k}", range=f"k={k}", passed=True, note=ONE_ERRATUM_NOTE)
            )
            continue
        outcomes.append(_compare(f"obs_{k}", f"k={k}", {"k": k}, list(expected), actual_set))

    for max_value, expected in lemma_missing.items():
        outcomes.append(
            _compare(
                f"lemma_missing_{max_value}",
                f"k <= {max_value}",
                {"max_k": max_value},
                list(expected),
                missing_values(max_value, tables, source),
            )
        )
    for max_value, expected in singletons.items():
        outcomes.append(
            _compare(
                f"singletons_{max_value}",
                f"k <= {max_value}",
                {"max_k": max_value},
                list(expected),
                singleton_values(max_value, tables, source),
            )
        )
    return outcomes


def _compare(claim_id: str, claim_range: str, inputs: dict[str, int], expected: object, actual: object) -> VerificationOutcome:
    if expected == actual:
        return VerificationOutcome(claim_id=claim_id, range=claim_range, passed=True)
    return VerificationOutcome(
        claim_id=claim_id,
        range=claim_range,
        passed=False,
        counterexample=Counterexample(input=inputs, expected=expected, actual=actual),
    )
