from __future__ import annotations

import hashlib

import pytest

from phitilde_suite.errors import UsageError
from phitilde_suite.golden import GOLDEN_FILES, load_golden, parse_golden, read_golden_text

CHECKSUMS = {
    "first_twenty.txt": "40a8f91f0cb18de15638e76a1c5dda732d332872c15c79690836e91dc30f80ed",
    "missing.txt": "baaf798c6754e538cefea98103de2cc14277f7f21665eb93f5daa417b2b937d6",
    "observations.txt": "841e1136aa0cb7318e8c8b83060b60731e13b33466b4ca386b61654423d66336",
    "singletons.txt": "4b7ba2c836a8745d1bedc445ecc0fead831dcb9070ff704e62c9fb2f278180ed",
    "smallest.txt": "cdd4cc2a49d04bdbd28bf3320a775307c7f14f766c9cac93ff67e3aeacef25aa",
}


@pytest.mark.parametrize("name", GOLDEN_FILES)
def test_golden_files_are_unchanged(name: str) -> None:
    digest = hashlib.sha256(read_golden_text(name).encode("utf-8")).hexdigest()
    assert digest == CHECKSUMS[name]


def test_golden_shapes() -> None:
    assert sorted(load_golden("first_twenty.txt")) == list(range(1, 21))
    assert sorted(load_golden("smallest.txt")) == list(range(1, 61))
    assert load_golden("smallest.txt")[13] == ()
    assert load_golden("missing.txt") == {100: (13, 31, 70)}


def test_parse_golden_comments_and_empty_sets() -> None:
    text = "# header\n\n3|1, 4 # trailing\n13|\n"
    assert parse_golden(text) == {3: (1, 4), 13: ()}


@pytest.mark.parametrize("text", ["1,2\n", "x|1\n", "1|2,y\n", "1|2\n1|3\n"])
def test_parse_golden_rejects_malformed_lines(text: str) -> None:
    with pytest.raises(UsageError):
        parse_golden(text, source="bad.txt")


def test_golden_can_come_from_a_directory(tmp_path) -> None:
    (tmp_path / "missing.txt").write_text("50|13,31\n", encoding="utf-8")
    assert load_golden("missing.txt", data_dir=tmp_path) == {50: (13, 31)}


def test_observations_skip_the_empty_value() -> None:
    observations = load_golden("observations.txt")
    assert len(observations) == 19
    assert 13 not in observations
    assert observations[16] == (144,)
