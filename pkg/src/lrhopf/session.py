"""Session configuration files for the command line.

A session names a presentation (a bundled fixture or a JSON file), optional
representation files, a default precision, and a command with its
arguments.  Relative paths resolve against the config file's directory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .enveloping import Envelope
from .finite_dual import RepError, load_rep
from .fixtures import FIXTURE_NAMES, load_fixture
from .lie_rinehart import LRPresentation, PresentationError, load_presentation, schema_errors

COMMANDS = (
    "check",
    "mul",
    "coprod",
    "translate",
    "antipode",
    "convolve",
    "deltastar",
    "zeta",
    "jets-matrix",
    "density",
)

SESSION_SCHEMA = {
    "type": "object",
    "properties": {
        "presentation": {"type": "string", "minLength": 1},
        "fixture": {"enum": list(FIXTURE_NAMES)},
        "representations": {"type": "array", "items": {"type": "string", "minLength": 1}},
        "precision": {"type": "integer", "minimum": 0},
        "command": {"enum": list(COMMANDS)},
        "arguments": {"type": "array", "items": {"type": "string"}},
        "seed": {"type": "integer"},
    },
    "required": ["command"],
    "oneOf": [{"required": ["presentation"]}, {"required": ["fixture"]}],
    "additionalProperties": False,
}


class SessionError(ValueError):
    """A config problem, located by a JSON pointer."""

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer
        super().__init__(f"{pointer or '/'}: {message}")


@dataclass(frozen=True)
class SessionConfig:
    path: Path
    presentation: LRPresentation
    fixture: str | None
    representations: tuple[tuple[str, dict], ...]
    precision: int | None
    command: str
    arguments: tuple[str, ...] = ()
    seed: int = 0
    rep_paths: tuple[Path, ...] = field(default=())


def _read_json(path: Path, pointer: str):
    if not path.is_file():
        raise SessionError(pointer, f"file not found: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SessionError(pointer, f"invalid JSON in {path}: {exc.msg} (line {exc.lineno})") from None


def rep_documents(doc, stem: str) -> list[tuple[str, dict]]:
    """A rep file holds one document or an object of named documents."""
    if isinstance(doc, dict) and "rank" in doc:
        return [(doc.get("name", stem), doc)]
    if isinstance(doc, dict):
        return list(doc.items())
    raise ValueError("a representation file must hold a JSON object")


def load_session(config_path) -> SessionConfig:
    path = Path(config_path)
    doc = _read_json(path, "")
    errors = schema_errors(doc, SESSION_SCHEMA)
    if errors:
        first = errors[0]
        pointer, _, msg = first.partition(": ")
        raise SessionError(pointer, msg)
    base = path.parent
    fixture = doc.get("fixture")
    if fixture is not None:
        pres = load_fixture(fixture)
    else:
        ppath = base / doc["presentation"]
        pdoc = _read_json(ppath, "/presentation")
        try:
            pres = load_presentation(pdoc, ppath.stem)
        except PresentationError as exc:
            raise SessionError("/presentation", str(exc)) from None
    env = Envelope(pres)
    reps = []
    rep_paths = []
    for i, rel in enumerate(doc.get("representations", [])):
        rpath = base / rel
        pointer = f"/representations/{i}"
        rdoc = _read_json(rpath, pointer)
        try:
            named = rep_documents(rdoc, rpath.stem)
            for name, rep_doc in named:
                load_rep(rep_doc, env, name)
        except (RepError, ValueError) as exc:
            raise SessionError(pointer, f"{rpath}: {exc}") from None
        reps.extend(named)
        rep_paths.append(rpath)
    return SessionConfig(
        path=path,
        presentation=pres,
        fixture=fixture,
        representations=tuple(reps),
        precision=doc.get("precision"),
        command=doc["command"],
        arguments=tuple(doc.get("arguments", [])),
        seed=doc.get("seed", 0),
        rep_paths=tuple(rep_paths),
    )
