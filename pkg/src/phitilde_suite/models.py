from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

EMPTY = "empty"
SINGLETON = "singleton"
MULTIPLE = "multiple"
CLASSIFICATIONS = (EMPTY, SINGLETON, MULTIPLE)


@dataclass(frozen=True)
class PhiTildeRecord:
    n: int
    phi: int
    pi: int
    omega: int
    phi_tilde: int

    def __post_init__(self) -> None:
        if self.phi_tilde != self.phi - self.pi + self.omega:
            raise ValueError(f"phi_tilde({self.n}) breaks phi - pi + omega: {self}")
        if self.phi_tilde < 1:
            raise ValueError(f"phi_tilde({self.n}) must be at least 1, got {self.phi_tilde}")


@dataclass(frozen=True)
class CoprimeCompositeSet:
    """E_n: the m in [1, n] coprime to n that are not prime (1 included)."""

    n: int
    elements: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class QiReport:
    i: int
    q_elements: tuple[int, ...]
    cardinality: int


@dataclass(frozen=True)
class ThresholdCertificate:
    k: int
    per_class_bounds: tuple[tuple[int, int], ...]
    primorial_cutoff: int
    global_bound: int

    def __post_init__(self) -> None:
        classes = [b for b, _ in self.per_class_bounds]
        if classes != list(range(1, self.primorial_cutoff)):
            raise ValueError(f"certificate for k={self.k} must cover classes 1..{self.primorial_cutoff - 1}")
        if self.global_bound != max(bound for _, bound in self.per_class_bounds):
            raise ValueError(f"certificate for k={self.k} has a global bound that is not the class maximum")


@dataclass(frozen=True)
class PreimageReport:
    k: int
    certificate: ThresholdCertificate
    elements: tuple[int, ...]
    classification: str


@dataclass(frozen=True)
class ConjectureReport:
    max_k: int
    bound: int
    missing: tuple[int, ...]
    count: int
    density: float
    running: tuple[tuple[int, int, float], ...]


@dataclass(frozen=True)
class Counterexample:
    input: dict[str, int]
    expected: Any
    actual: Any


@dataclass(frozen=True)
class VerificationOutcome:
    claim_id: str
    range: str
    passed: bool
    counterexample: Counterexample | None = None
    note: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.passed == (self.counterexample is not None):
            raise ValueError(f"outcome {self.claim_id}: passed must hold exactly when no counterexample is given")


def classify(size: int) -> str:
    if size == 0:
        return EMPTY
    if size == 1:
        return SINGLETON
    return MULTIPLE


def record_to_dict(record: PhiTildeRecord) -> dict[str, Any]:
    return {
        "n": record.n,
        "phi": record.phi,
        "pi": record.pi,
        "omega": record.omega,
        "phi_tilde": record.phi_tilde,
    }


def coprime_set_to_dict(item: CoprimeCompositeSet) -> dict[str, Any]:
    return {"n": item.n, "elements": list(item.elements), "phi_tilde": item.size}


def qi_report_to_dict(report: QiReport) -> dict[str, Any]:
    return {"i": report.i, "q_elements": list(report.q_elements), "cardinality": report.cardinality}


def certificate_to_dict(certificate: ThresholdCertificate) -> dict[str, Any]:
    return {
        "k": certificate.k,
        "per_class_bounds": [[b, bound] for b, bound in certificate.per_class_bounds],
        "primorial_cutoff": certificate.primorial_cutoff,
        "global_bound": certificate.global_bound,
    }


def preimage_report_to_dict(report: PreimageReport) -> dict[str, Any]:
    return {
        "k": report.k,
        "elements": list(report.elements),
        "classification": report.classification,
        "bound": report.certificate.global_bound,
        "certificate": certificate_to_dict(report.certificate),
    }


def outcome_to_dict(outcome: VerificationOutcome) -> dict[str, Any]:
    counterexample = None
    if outcome.counterexample is not None:
        counterexample = {
            "input": dict(outcome.counterexample.input),
            "expected": outcome.counterexample.expected,
            "actual": outcome.counterexample.actual,
        }
    return {
        "claim_id": outcome.claim_id,
        "range": outcome.range,
        "passed": outcome.passed,
        "counterexample": counterexample,
        "note": outcome.note,
        "details": dict(outcome.details),
    }


def conjecture_report_to_dict(report: ConjectureReport) -> dict[str, Any]:
    return {
        "max_k": report.max_k,
        "bound": report.bound,
        "missing": list(report.missing),
        "count": report.count,
        "density": report.density,
        "running": [list(item) for item in report.running],
    }
