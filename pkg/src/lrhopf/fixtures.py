"""Bundled presentations and seed representations."""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .enveloping import Envelope
from .finite_dual import URep, load_rep
from .lie_rinehart import LRPresentation, load_presentation

FIXTURE_NAMES = ("W1", "W2", "AFF", "SL2", "NC")
DESK_FIXTURES = ("W1", "W2", "AFF")


def _data(*parts: str) -> str:
    ref = resources.files("lrhopf").joinpath("data", *parts)
    return ref.read_text(encoding="utf-8")


def fixture_document(name: str) -> dict:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {', '.join(FIXTURE_NAMES)}")
    return json.loads(_data("presentations", f"{name}.json"))


@lru_cache(maxsize=None)
def load_fixture(name: str) -> LRPresentation:
    return load_presentation(fixture_document(name), name)


def envelope(name: str, translation_sign: int = -1) -> Envelope:
    """A fresh arithmetic context for a bundled fixture."""
    return Envelope(load_fixture(name), translation_sign)


def seed_rep_documents(name: str) -> dict:
    fixture_document(name)
    return json.loads(_data("reps", f"{name}.json"))


def seed_reps(env: Envelope, name: str | None = None) -> list[URep]:
    name = name or env.presentation.name
    docs = seed_rep_documents(name)
    return [load_rep(doc, env, key) for key, doc in docs.items()]
