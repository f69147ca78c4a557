import json

import pytest

from lrhopf.session import SessionError, load_session


def write(path, doc):
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def test_minimal_fixture_config(tmp_path):
    s = load_session(write(tmp_path / "s.json", {"fixture": "W1", "command": "check"}))
    assert s.presentation.name == "W1"
    assert s.precision is None and s.seed == 0 and s.arguments == ()


def test_presentation_and_reps_resolve_relative_to_config(tmp_path):
    (tmp_path / "sub").mkdir()
    write(tmp_path / "sub" / "aff.json", {"variables": 1, "rank": 2, "anchor": [["1"], ["x1"]], "bracket": {"2,1": ["-1", "0"]}})
    write(tmp_path / "sub" / "scale.json", {"rank": 1, "matrices": [[["0"]], [["1"]]]})
    cfg = write(
        tmp_path / "s.json",
        {
            "presentation": "sub/aff.json",
            "representations": ["sub/scale.json"],
            "precision": 3,
            "command": "zeta",
            "arguments": ["--rep", "scale", "--phi", "[\"1\"]", "--m", "[\"x1\"]"],
            "seed": 5,
        },
    )
    s = load_session(cfg)
    assert s.presentation.rank == 2
    assert [name for name, _ in s.representations] == ["scale"]
    assert s.precision == 3 and s.seed == 5


def test_negative_precision_rejected(tmp_path):
    with pytest.raises(SessionError) as info:
        load_session(write(tmp_path / "s.json", {"fixture": "W1", "command": "check", "precision": -1}))
    assert info.value.pointer == "/precision"


def test_missing_rep_file_rejected_with_path(tmp_path):
    cfg = write(tmp_path / "s.json", {"fixture": "W1", "command": "zeta", "representations": ["nope.json"]})
    with pytest.raises(SessionError) as info:
        load_session(cfg)
    assert info.value.pointer == "/representations/0"
    assert "nope.json" in str(info.value)


def test_invalid_rep_rejected(tmp_path):
    write(tmp_path / "bad.json", {"rank": 1, "matrices": [[["1"]], [["0"]]]})
    cfg = write(tmp_path / "s.json", {"fixture": "AFF", "command": "zeta", "representations": ["bad.json"]})
    with pytest.raises(SessionError, match="flatness"):
        load_session(cfg)


@pytest.mark.parametrize(
    "doc, pointer",
    [
        ({"fixture": "W1"}, "/"),
        ({"fixture": "W9", "command": "check"}, "/fixture"),
        ({"fixture": "W1", "command": "dance"}, "/command"),
        ({"fixture": "W1", "presentation": "p.json", "command": "check"}, "/"),
        ({"fixture": "W1", "command": "check", "arguments": [1]}, "/arguments/0"),
        ({"fixture": "W1", "command": "check", "extra": 1}, "/"),
    ],
)
def test_schema_violations(tmp_path, doc, pointer):
    with pytest.raises(SessionError) as info:
        load_session(write(tmp_path / "s.json", doc))
    assert info.value.pointer == pointer


def test_missing_config_and_bad_json(tmp_path):
    with pytest.raises(SessionError, match="file not found"):
        load_session(tmp_path / "missing.json")
    (tmp_path / "bad.json").write_text("{", encoding="utf-8")
    with pytest.raises(SessionError, match="invalid JSON"):
        load_session(tmp_path / "bad.json")


def test_bad_presentation_file(tmp_path):
    write(tmp_path / "p.json", {"variables": 1, "rank": 2, "anchor": [["1"], ["x1"]], "bracket": {"2,1": ["1", "0"]}})
    with pytest.raises(SessionError) as info:
        load_session(write(tmp_path / "s.json", {"presentation": "p.json", "command": "check"}))
    assert info.value.pointer == "/presentation"
    assert "anchor-morphism" in str(info.value)
