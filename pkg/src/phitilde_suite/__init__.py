"""phi_tilde: coprime non-primes up to n, their preimages and a regression suite over published tables."""

from .analysis import (
    build_catalog,
    check_property,
    conjecture_scan,
    missing_values,
    preimage,
    singleton_values,
    smallest_preimage,
    verify_paper_tables,
)
from .bounds import compute_Q, global_threshold, omega_class_bound, verify_primorial_growth
from .config import PhiTildeConfig, load_config
from .phitilde import enumerate_E, phi_tilde, phi_tilde_at_prime_index, phi_tilde_oracle, phi_tilde_primorial
from .sieve import SieveTables, build_sieve, factorize, nth_prime, prime_count, primorial

__all__ = [
    "PhiTildeConfig",
    "SieveTables",
    "build_catalog",
    "build_sieve",
    "check_property",
    "compute_Q",
    "conjecture_scan",
    "enumerate_E",
    "factorize",
    "global_threshold",
    "load_config",
    "missing_values",
    "nth_prime",
    "omega_class_bound",
    "phi_tilde",
    "phi_tilde_at_prime_index",
    "phi_tilde_oracle",
    "phi_tilde_primorial",
    "preimage",
    "prime_count",
    "primorial",
    "singleton_values",
    "smallest_preimage",
    "verify_paper_tables",
    "verify_primorial_growth",
]
