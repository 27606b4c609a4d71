from __future__ import annotations

import pytest

from phitilde_suite.bounds import (
    compute_Q,
    global_threshold,
    omega_class_bound,
    omega_class_members,
    primorial_index_bound,
    q_cardinality,
    triangular_index,
    verify_primorial_growth,
)
from phitilde_suite.errors import OutOfRangeError, PrimorialOverflowError, ResourceError
from phitilde_suite.models import ThresholdCertificate
from phitilde_suite.phitilde import phi_tilde_values
from phitilde_suite.sieve import nth_prime


def test_q_sets(tables) -> None:
    q4 = compute_Q(4, tables)
    assert q4.q_elements == (11, 13, 17, 19)
    assert q4.cardinality == 4
    assert compute_Q(5, tables).cardinality == 35
    for i in range(4, 9):
        report = compute_Q(i, tables)
        assert nth_prime(i + 1) in report.q_elements
        assert q_cardinality(i, tables) == report.cardinality


def test_q_outside_range(tables) -> None:
    with pytest.raises(OutOfRangeError):
        compute_Q(3, tables)
    # Q_9 reaches past 7 * 10^6; only its size is available without a bigger sieve.
    with pytest.raises(OutOfRangeError):
        compute_Q(9, tables)
    assert q_cardinality(9, tables) > q_cardinality(8, tables)


def test_triangular_index() -> None:
    assert [triangular_index(k) for k in (0, 1, 2, 3, 5, 6, 15, 16, 20, 21)] == [1, 2, 2, 3, 3, 4, 6, 6, 6, 7]


def test_omega_class_bounds() -> None:
    assert omega_class_bound(1, 1) == 49
    assert omega_class_bound(4, 2) == 169
    assert omega_class_bound(0, 1) == 25
    with pytest.raises(OutOfRangeError):
        omega_class_bound(3, 0)


def test_global_threshold_certificates() -> None:
    first = global_threshold(1)
    assert first.primorial_cutoff == 4
    assert first.per_class_bounds == ((1, 49), (2, 121), (3, 169))
    assert first.global_bound == 169
    assert global_threshold(13).global_bound == 67**2
    assert global_threshold(100).global_bound == 631**2 == 398161
    with pytest.raises(OutOfRangeError):
        global_threshold(0)


def test_certificate_rejects_inconsistent_maximum() -> None:
    with pytest.raises(ValueError):
        ThresholdCertificate(k=1, per_class_bounds=((1, 49), (2, 121), (3, 169)), primorial_cutoff=4, global_bound=121)


def test_certificates_grow_with_k() -> None:
    bounds = [global_threshold(k).global_bound for k in range(1, 201)]
    assert bounds == sorted(bounds)


def test_no_preimage_past_certified_bound(tables) -> None:
    values = phi_tilde_values(tables)
    for k in range(1, 101):
        bound = global_threshold(k).global_bound
        assert int(values[bound + 1 :].min()) > k


def test_omega_class_members(tables) -> None:
    assert omega_class_members(1, 0, tables) == (1,)
    assert omega_class_members(2, 0, tables) == ()
    assert omega_class_members(1, 1, tables) == (2, 3, 4, 8)
    assert omega_class_members(1, 2, tables) == (6, 12, 18, 24)
    assert omega_class_members(1, 3, tables) == (30,)
    assert omega_class_members(5, 2, tables) == (26, 28)
    assert omega_class_members(5, 3, tables) == (66, 120)


def test_omega_class_bounds_are_sound(tables) -> None:
    values = phi_tilde_values(tables)
    for a in range(1, 31):
        for b in range(1, 6):
            bound = omega_class_bound(a, b)
            members = omega_class_members(a, b, tables)
            assert all(n <= bound for n in members)
            beyond = (values[bound + 1 :] == a) & (tables.omega[bound + 1 :] == b)
            assert not beyond.any()


def test_primorial_index_bound(tables) -> None:
    assert primorial_index_bound(0, tables) == 1
    assert primorial_index_bound(1, tables) == 4
    assert primorial_index_bound(5, tables) == 4
    assert primorial_index_bound(6, tables) == 5
    assert primorial_index_bound(141, tables) == 5
    assert primorial_index_bound(142, tables) == 6
    for n in range(1, 61):
        assert primorial_index_bound(n, tables) <= max(4, n)


def test_primorial_growth_small(tables) -> None:
    outcome = verify_primorial_growth(4, tables)
    assert outcome.passed
    assert outcome.details["q_cardinalities"] == [[4, 4]]
    assert outcome.details["phi_tilde_primorials"] == [[3, 1], [4, 6]]
    assert verify_primorial_growth(3, tables).passed
    with pytest.raises(OutOfRangeError):
        verify_primorial_growth(2, tables)


def test_primorial_cap_is_a_parameter(tables) -> None:
    assert verify_primorial_growth(5, tables, max_index=5).passed
    with pytest.raises(PrimorialOverflowError):
        verify_primorial_growth(6, tables, max_index=5)
    with pytest.raises(PrimorialOverflowError):
        q_cardinality(6, tables, max_index=5)
    assert primorial_index_bound(141, tables, max_index=5) == 5
    with pytest.raises(ResourceError):
        primorial_index_bound(142, tables, max_index=5)


def test_primorial_growth_to_ninth_primorial(tables) -> None:
    outcome = verify_primorial_growth(9, tables)
    assert outcome.passed, outcome.counterexample
    sizes = [size for _, size in outcome.details["q_cardinalities"]]
    assert sizes[:2] == [4, 35]


@pytest.mark.slow
def test_primorial_growth_to_tenth_primorial(tables) -> None:
    assert verify_primorial_growth(10, tables).passed
