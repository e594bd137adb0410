"""Deterministic rule-and-gazetteer entity labeler.

Serves as the built-in fallback when no external NER backend is configured.
Labels a short answer string as PER, LOC or ORG, or returns None when no
rule fires. Rules are ordered: gazetteer place, org suffix, place suffix,
given-name person, capitalized-pair person.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources


@lru_cache(maxsize=1)
def _gazetteer() -> dict:
    ref = resources.files("kbqa_eval.resources").joinpath("ner_gazetteer.json")
    data = json.loads(ref.read_text(encoding="utf-8"))
    return {
        "given_names": frozenset(data["given_names"]),
        "places": frozenset(data["places"]),
        "org_suffixes": frozenset(data["org_suffixes"]),
        "place_suffixes": frozenset(data["place_suffixes"]),
    }


_PARTICLES = frozenset(
    {"von", "van", "de", "da", "del", "della", "di", "der", "den", "bin", "ibn", "al", "le", "la", "ter"}
)


def _words(text: str) -> list[str]:
    return [w.strip(".,;:!?()[]\"'") for w in text.split()]


def label_entity(text: str) -> str | None:
    """Best-effort PER/LOC/ORG label for one string, None if undecided."""
    gaz = _gazetteer()
    words = [w for w in _words(text) if w]
    if not words:
        return None
    lower = [w.lower() for w in words]

    if " ".join(lower) in gaz["places"] or (len(lower) == 1 and lower[0] in gaz["places"]):
        return "LOC"
    if any(w in gaz["org_suffixes"] for w in lower):
        return "ORG"
    if any(w in gaz["place_suffixes"] for w in lower):
        return "LOC"
    if lower[0] in gaz["given_names"] and len(words) >= 2 and words[1][:1].isupper():
        return "PER"
    if len(words) == 1 and lower[0] in gaz["given_names"]:
        return "PER"
    if any(w in gaz["places"] for w in lower):
        return "LOC"
    if 2 <= len(words) <= 4:
        def cap_alpha(w: str) -> bool:
            return w[:1].isupper() and w.replace("-", "").replace("'", "").isalpha()

        middles_ok = all(
            cap_alpha(w) or w.lower() in _PARTICLES for w in words[1:-1]
        )
        if cap_alpha(words[0]) and cap_alpha(words[-1]) and middles_ok:
            return "PER"
    return None


class RuleNer:
    """Callable wrapper so the labeler can stand in for a remote backend."""

    name = "rule"

    def __call__(self, text: str) -> str | None:
        return label_entity(text)
