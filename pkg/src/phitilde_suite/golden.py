"""Golden data files: UTF-8, one `key|comma-separated-values` record per line.

An empty right-hand side means the empty set; `#` starts a comment.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .errors import UsageError

GOLDEN_FILES = (
    "first_twenty.txt",
    "smallest.txt",
    "observations.txt",
    "missing.txt",
    "singletons.txt",
)


def parse_golden(text: str, source: str = "<golden>") -> dict[int, tuple[int, ...]]:
    records: dict[int, tuple[int, ...]] = {}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        key_text, separator, values_text = line.partition("|")
        if not separator:
            raise UsageError(f"{source}:{line_number}: expected 'key|values', got {raw_line!r}")
        try:
            key = int(key_text)
            values = tuple(int(item) for item in values_text.split(",") if item.strip())
        except ValueError as exc:
            raise UsageError(f"{source}:{line_number}: non-integer entry in {raw_line!r}") from exc
        if key in records:
            raise UsageError(f"{source}:{line_number}: duplicate key {key}")
        records[key] = values
    return records


def read_golden_text(name: str, data_dir: str | Path | None = None) -> str:
    if data_dir is not None:
        return (Path(data_dir) / name).read_text(encoding="utf-8")
    return resources.files("phitilde_suite").joinpath("data", name).read_text(encoding="utf-8")


def load_golden(name: str, data_dir: str | Path | None = None) -> dict[int, tuple[int, ...]]:
    return parse_golden(read_golden_text(name, data_dir), source=name)
