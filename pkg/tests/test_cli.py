from __future__ import annotations

import io
import json

from phitilde_suite.cli import EXIT_FAILED, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, build_parser, run
from phitilde_suite.golden import GOLDEN_FILES, read_golden_text


def _run(argv: list[str]) -> tuple[int, str]:
    out = io.StringIO()
    code = run(argv, stdout=out)
    return code, out.getvalue()


def _run_json(argv: list[str]) -> tuple[int, dict]:
    code, text = _run(argv)
    return code, json.loads(text)


def test_value_command() -> None:
    code, payload = _run_json(["value", "17", "--sieve-limit", "1000"])
    assert code == EXIT_OK
    assert payload == {
        "command": "value",
        "parameters": {"n": 17},
        "result": {"n": 17, "phi": 16, "pi": 7, "omega": 1, "phi_tilde": 10},
        "status": "na",
    }


def test_enumerate_command() -> None:
    code, payload = _run_json(["--sieve-limit", "1000", "enumerate", "11"])
    assert code == EXIT_OK
    assert payload["result"] == {"n": 11, "elements": [1, 4, 6, 8, 9, 10], "phi_tilde": 6}


def test_table_as_csv_with_flag_after_subcommand() -> None:
    code, text = _run(["table", "1", "3", "--format", "csv", "--sieve-limit", "1000"])
    assert code == EXIT_OK
    assert text.splitlines() == ["n,phi,pi,omega,phi_tilde", "1,1,0,0,1", "2,1,1,1,1", "3,2,2,1,1"]


def test_preimage_of_a_missing_value() -> None:
    code, payload = _run_json(["preimage", "13", "--sieve-limit", "10000"])
    assert code == EXIT_OK
    result = payload["result"]
    assert result["elements"] == []
    assert result["classification"] == "empty"
    assert result["bound"] == 4489
    assert result["certificate"]["primorial_cutoff"] == 14


def test_omega_class_and_primorial_index() -> None:
    code, payload = _run_json(["omega-class", "5", "2", "--sieve-limit", "1000"])
    assert code == EXIT_OK
    assert payload["result"] == {"a": 5, "b": 2, "bound": 169, "members": [26, 28]}

    code, payload = _run_json(["primorial-index", "6", "--sieve-limit", "1000"])
    assert code == EXIT_OK
    assert payload["result"] == {"n": 6, "index": 5, "ceiling": 6, "within_ceiling": True}


def test_verify_paper_passes_using_segmented_scan() -> None:
    code, payload = _run_json(["verify-paper", "--sieve-limit", "20000", "--quiet"])
    assert code == EXIT_OK
    assert payload["status"] == "pass"
    assert [item["claim_id"] for item in payload["result"] if item["note"]] == ["obs_1"]


def test_props_all() -> None:
    code, payload = _run_json(["props", "--id", "all", "--limit", "2000"])
    assert code == EXIT_OK
    assert payload["status"] == "pass"
    assert len(payload["result"]) == 6


def test_verification_failure_exit_code(tmp_path) -> None:
    for name in GOLDEN_FILES:
        (tmp_path / name).write_text(read_golden_text(name), encoding="utf-8")
    (tmp_path / "singletons.txt").write_text("100|16\n", encoding="utf-8")
    config = tmp_path / "phitilde.yaml"
    config.write_text(f"golden:\n  data_dir: \"{tmp_path}\"\n", encoding="utf-8")

    code, payload = _run_json(["verify-paper", "--config", str(config), "--sieve-limit", "20000", "--quiet"])
    assert code == EXIT_FAILED
    assert payload["status"] == "fail"


def test_output_is_identical_across_thread_counts() -> None:
    args = ["conjecture-scan", "--max-k", "100", "--sieve-limit", "20000", "--quiet"]
    first = _run([*args, "--threads", "1"])
    second = _run([*args, "--threads", "3"])
    assert first == second
    assert json.loads(first[1])["result"]["count"] == 3


def test_config_file_sets_output_format(tmp_path) -> None:
    config = tmp_path / "phitilde.yaml"
    config.write_text("output:\n  format: csv\n", encoding="utf-8")
    code, text = _run(["--config", str(config), "missing", "--max-k", "100", "--sieve-limit", "20000", "--quiet"])
    assert code == EXIT_OK
    assert text.splitlines() == ["max_k,missing,count", "100,13;31;70,3"]


def test_usage_errors() -> None:
    assert _run([])[0] == EXIT_USAGE
    assert _run(["value", "0"])[0] == EXIT_USAGE
    assert _run(["value", "ten"])[0] == EXIT_USAGE
    assert _run(["table", "5", "3"])[0] == EXIT_USAGE
    assert _run(["props", "--id", "goldbach", "--limit", "10"])[0] == EXIT_USAGE
    assert _run(["smallest"])[0] == EXIT_USAGE
    assert _run(["primorial-growth", "--max-i", "2", "--sieve-limit", "1000"])[0] == EXIT_USAGE
    assert _run(["omega-class", "5", "-1", "--sieve-limit", "1000"])[0] == EXIT_USAGE
    assert _run(["primorial-index", "-3", "--sieve-limit", "1000"])[0] == EXIT_USAGE


def test_bad_config_is_a_usage_error(tmp_path) -> None:
    config = tmp_path / "phitilde.yaml"
    config.write_text("- not\n- a mapping\n", encoding="utf-8")
    assert _run(["--config", str(config), "value", "5"])[0] == EXIT_USAGE


def test_resource_errors() -> None:
    assert _run(["value", "5", "--sieve-limit", "200000000"])[0] == EXIT_RESOURCE
    assert _run(["--config", "/nonexistent/phitilde.yaml", "value", "5"])[0] == EXIT_RESOURCE


def test_primorial_index_cap_comes_from_config(tmp_path) -> None:
    config = tmp_path / "phitilde.yaml"
    config.write_text("primorial:\n  max_index: 5\n", encoding="utf-8")
    capped = ["--config", str(config), "--sieve-limit", "1000", "--quiet"]
    code, payload = _run_json([*capped, "primorial-growth", "--max-i", "5"])
    assert code == EXIT_OK
    assert payload["status"] == "pass"
    assert _run([*capped, "primorial-growth", "--max-i", "7"])[0] == EXIT_RESOURCE
    assert _run([*capped, "primorial-index", "200"])[0] == EXIT_RESOURCE
    assert _run(["--sieve-limit", "1000", "primorial-growth", "--max-i", "7"])[0] == EXIT_OK


def test_parser_lists_every_command() -> None:
    parser = build_parser()
    commands = parser._subparsers._group_actions[0].choices
    assert set(commands) == {
        "value",
        "enumerate",
        "table",
        "preimage",
        "smallest",
        "missing",
        "singletons",
        "conjecture-scan",
        "verify-paper",
        "props",
        "primorial-growth",
        "omega-class",
        "primorial-index",
    }
