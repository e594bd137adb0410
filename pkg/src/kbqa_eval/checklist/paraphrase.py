"""Paraphrase providers for invariance testing.

Providers either look up precomputed paraphrases from a fixture file or
ask a model through the gateway. A paraphrase must differ from the
input; a provider that echoes the input gets one retry and then the
record is skipped with a logged reason.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

_PARAPHRASE_PROMPT = (
    "Rewrite the following question so it keeps exactly the same meaning "
    "but uses different wording. Reply with the rewritten question only.\n\n{question}"
)


class ParaphraseError(RuntimeError):
    """Provider could not produce a usable paraphrase."""


class FixtureParaphraser:
    """Precomputed question -> paraphrase table, keyed by exact text."""

    provider_id = "fixture"

    def __init__(self, table: dict[str, str] | str | Path):
        if isinstance(table, (str, Path)):
            with Path(table).open(encoding="utf-8") as fh:
                table = json.load(fh)
        self.table = dict(table)

    def paraphrase(self, text: str) -> str:
        try:
            return self.table[text]
        except KeyError:
            raise ParaphraseError(f"no precomputed paraphrase for: {text!r}")


class ModelParaphraser:
    """Model-backed provider going through the gateway cache."""

    def __init__(self, gateway, spec, prompt: str = _PARAPHRASE_PROMPT):
        if "{question}" not in prompt:
            raise ValueError("paraphrase prompt must contain {question}")
        self.gateway = gateway
        self.spec = spec
        self.prompt = prompt

    @property
    def provider_id(self) -> str:
        return self.spec.model_id

    def paraphrase(self, text: str) -> str:
        run = self.gateway.ask(self.spec, [self.prompt.format(question=text)])
        return run.output.strip()


def gen_paraphrase(text: str, provider) -> str:
    """One paraphrase distinct from the input, or ParaphraseError."""
    try:
        first = provider.paraphrase(text)
    except ParaphraseError:
        raise
    except Exception as exc:
        raise ParaphraseError(f"provider failed: {exc}") from exc
    if first and first != text:
        return first
    # echoed input gets exactly one retry
    try:
        second = provider.paraphrase(text)
    except Exception as exc:
        raise ParaphraseError(f"provider failed on retry: {exc}") from exc
    if second and second != text:
        return second
    raise ParaphraseError(f"provider returned the input verbatim: {text!r}")
