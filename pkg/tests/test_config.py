from __future__ import annotations

from pathlib import Path

import pytest

from phitilde_suite.config import CONFIG_ENV_VAR, PhiTildeConfig, load_config

ROOT = Path(__file__).resolve().parents[1]


def test_shipped_config_matches_defaults() -> None:
    assert load_config(ROOT / "config" / "phitilde.yaml") == PhiTildeConfig()


def test_missing_path_and_env_fall_back_to_defaults(monkeypatch) -> None:
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)
    assert load_config() == PhiTildeConfig()


def test_env_var_points_at_config(tmp_path, monkeypatch) -> None:
    path = tmp_path / "phitilde.yaml"
    path.write_text("scan:\n  threads: 4\noutput:\n  format: csv\n", encoding="utf-8")
    monkeypatch.setenv(CONFIG_ENV_VAR, str(path))
    config = load_config()
    assert config.scan.threads == 4
    assert config.output.format == "csv"
    assert config.sieve.default_limit == 1_000_000


def test_empty_file_gives_defaults(tmp_path) -> None:
    path = tmp_path / "empty.yaml"
    path.write_text("", encoding="utf-8")
    assert load_config(path) == PhiTildeConfig()


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("- one\n- two\n", "root must be a mapping"),
        ("sieve: 5\n", "'sieve' must be a mapping"),
        ("output:\n  format: xml\n", "output.format"),
        ("sieve:\n  default_limit: lots\n", "sieve.default_limit"),
        ("scan:\n  threads: true\n", "scan.threads"),
        ("sieve:\n  segment_size: -1\n", "non-negative"),
        ("sieve:\n  default_limit: 200\n  max_limit: 100\n", "must not exceed"),
        ("scan:\n  threads: 0\n", "at least 1"),
    ],
)
def test_invalid_config_values(tmp_path, text: str, message: str) -> None:
    path = tmp_path / "bad.yaml"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(ValueError, match=message):
        load_config(path)
