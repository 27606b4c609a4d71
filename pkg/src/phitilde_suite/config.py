from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import yaml

CONFIG_ENV_VAR = "PHITILDE_CONFIG"
OUTPUT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class SieveConfig:
    default_limit: int = 1_000_000
    max_limit: int = 100_000_000
    memory_budget_bytes: int = 4_000_000_000
    segment_size: int = 1 << 20
    max_prime_index: int = 2_000_000


@dataclass(frozen=True)
class PrimeCountConfig:
    feasibility_cap: int = 10**11


@dataclass(frozen=True)
class PrimorialConfig:
    # N_15 < 2^63; N_16 does not fit a signed 64-bit word.
    max_index: int = 15


@dataclass(frozen=True)
class ScanConfig:
    max_bound: int = 1_000_000_000
    threads: int = 1


@dataclass(frozen=True)
class OutputConfig:
    format: str = "json"
    indent: int = 2


@dataclass(frozen=True)
class GoldenConfig:
    data_dir: str | None = None


@dataclass(frozen=True)
class PhiTildeConfig:
    sieve: SieveConfig = field(default_factory=SieveConfig)
    prime_count: PrimeCountConfig = field(default_factory=PrimeCountConfig)
    primorial: PrimorialConfig = field(default_factory=PrimorialConfig)
    scan: ScanConfig = field(default_factory=ScanConfig)
    output: OutputConfig = field(default_factory=OutputConfig)
    golden: GoldenConfig = field(default_factory=GoldenConfig)

    @staticmethod
    def from_dict(data: dict[str, Any]) -> "PhiTildeConfig":
        sieve = _section(data, "sieve")
        prime_count = _section(data, "prime_count")
        primorial = _section(data, "primorial")
        scan = _section(data, "scan")
        output = _section(data, "output")
        golden = _section(data, "golden")
        defaults = PhiTildeConfig()

        output_format = str(output.get("format", defaults.output.format))
        if output_format not in OUTPUT_FORMATS:
            raise ValueError(f"output.format must be one of {', '.join(OUTPUT_FORMATS)}, got {output_format!r}")
        data_dir = golden.get("data_dir", defaults.golden.data_dir)

        config = PhiTildeConfig(
            sieve=SieveConfig(
                default_limit=_int(sieve, "sieve", "default_limit", defaults.sieve.default_limit),
                max_limit=_int(sieve, "sieve", "max_limit", defaults.sieve.max_limit),
                memory_budget_bytes=_int(sieve, "sieve", "memory_budget_bytes", defaults.sieve.memory_budget_bytes),
                segment_size=_int(sieve, "sieve", "segment_size", defaults.sieve.segment_size),
                max_prime_index=_int(sieve, "sieve", "max_prime_index", defaults.sieve.max_prime_index),
            ),
            prime_count=PrimeCountConfig(
                feasibility_cap=_int(prime_count, "prime_count", "feasibility_cap", defaults.prime_count.feasibility_cap),
            ),
            primorial=PrimorialConfig(
                max_index=_int(primorial, "primorial", "max_index", defaults.primorial.max_index),
            ),
            scan=ScanConfig(
                max_bound=_int(scan, "scan", "max_bound", defaults.scan.max_bound),
                threads=_int(scan, "scan", "threads", defaults.scan.threads),
            ),
            output=OutputConfig(
                format=output_format,
                indent=_int(output, "output", "indent", defaults.output.indent),
            ),
            golden=GoldenConfig(data_dir=None if data_dir is None else str(data_dir)),
        )
        if config.sieve.default_limit > config.sieve.max_limit:
            raise ValueError("sieve.default_limit must not exceed sieve.max_limit")
        if config.scan.threads < 1:
            raise ValueError("scan.threads must be at least 1")
        return config


def _section(data: dict[str, Any], key: str) -> dict[str, Any]:
    value = data.get(key) or {}
    if not isinstance(value, dict):
        raise ValueError(f"Config section '{key}' must be a mapping.")
    return value


def _int(section: dict[str, Any], section_name: str, key: str, default: int) -> int:
    value = section.get(key, default)
    if isinstance(value, bool):
        raise ValueError(f"Config key {section_name}.{key} must be an integer, got {value!r}")
    try:
        number = int(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"Config key {section_name}.{key} must be an integer, got {value!r}") from exc
    if number < 0:
        raise ValueError(f"Config key {section_name}.{key} must be non-negative, got {number}")
    return number


def load_config(path: str | Path | None = None) -> PhiTildeConfig:
    if path is None:
        env_path = os.getenv(CONFIG_ENV_VAR, "").strip()
        if not env_path:
            return PhiTildeConfig()
        path = env_path
    config_path = Path(path)
    raw = yaml.safe_load(config_path.read_text(encoding="utf-8"))
    if raw is None:
        return PhiTildeConfig()
    if not isinstance(raw, dict):
        raise ValueError("Configuration root must be a mapping.")
    return PhiTildeConfig.from_dict(raw)
