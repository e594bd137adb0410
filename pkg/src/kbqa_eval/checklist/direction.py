"""Direction test generators: phrase swaps, type hints, two-turn prompts.

Swap rules and hint templates live in versioned resource files so the
phrase inventory can grow without code changes. Swap expectations are
SPARQL keyword sets checked token-wise outside string literals.
"""

from __future__ import annotations

import json
import re
from functools import lru_cache
from importlib import resources

from ..ingest.records import QuestionRecord
from ..taxonomy import AnswerType
from ..taxonomy.sparql import SparqlTokenizeError, tokenize
from .cases import TestCase

_COT_TURN1 = (
    "Before answering, state the key facts you know about {topic}. "
    "Keep it to two or three sentences."
)


class SwapRuleError(ValueError):
    """Swap rule table malformed or not applicable."""


class HintConfigError(ValueError):
    """Hint template configuration is unusable."""


@lru_cache(maxsize=1)
def load_swap_rules() -> dict:
    with resources.files("kbqa_eval.resources").joinpath("swap_rules.json").open(
        encoding="utf-8"
    ) as fh:
        table = json.load(fh)
    for rule in table["rules"]:
        if not rule.get("required") and not rule.get("forbidden"):
            raise SwapRuleError(f"rule {rule['name']} has an empty expectation")
    return table


@lru_cache(maxsize=1)
def load_hint_config() -> dict:
    with resources.files("kbqa_eval.resources").joinpath("hint_templates.json").open(
        encoding="utf-8"
    ) as fh:
        return json.load(fh)


def _apply_rule(rule: dict, text: str) -> str | None:
    kind = rule["kind"]
    if kind == "replace":
        swapped, n = re.subn(rule["pattern"], rule["replacement"], text, count=1)
        return swapped if n else None
    if kind == "suffix":
        stripped = text.rstrip()
        if stripped.endswith("?"):
            return stripped[:-1].rstrip() + rule["suffix"] + "?"
        return stripped + rule["suffix"]
    if kind == "map":
        lowered = text.lower()
        for needle, replacement in rule["map"].items():
            idx = lowered.find(needle)
            if idx >= 0:
                return text[:idx] + replacement + text[idx + len(needle):]
        return None
    raise SwapRuleError(f"unknown rule kind: {kind!r}")


def gen_dir_swap(record: QuestionRecord) -> TestCase:
    """Swap the question's reasoning phrase; expect matching SPARQL shape."""
    operations = {t.value for t in record.tags.operations}
    if not operations:
        raise SwapRuleError(f"{record.id}: no operation tag to swap")
    table = load_swap_rules()
    for rule in table["rules"]:
        if rule["operation"] not in operations:
            continue
        swapped = _apply_rule(rule, record.text)
        if swapped is None or swapped == record.text:
            continue
        return TestCase(
            base_id=record.id,
            kind="DIR_SWAP",
            turns=(f"{table['instruction']} {swapped}",),
            expectation={
                "required": list(rule["required"]),
                "forbidden": list(rule["forbidden"]),
            },
            meta={"rule": rule["name"], "swapped_text": swapped,
                  "rules_version": table["version"]},
        )
    raise SwapRuleError(f"{record.id}: no applicable swap rule")


def _keyword_positions(tokens, keyword: str) -> bool:
    """Token-wise, case-insensitive match; multiword keywords need adjacency."""
    words = keyword.upper().split()
    idents = [t.text.upper() for t in tokens if t.kind == "ident"]
    if len(words) == 1:
        return words[0] in idents
    for i in range(len(idents) - len(words) + 1):
        if idents[i:i + len(words)] == words:
            return True
    return False


def check_sparql_expectation(output: str, expected_keywords) -> bool:
    """True iff every expected keyword appears outside string literals."""
    if not expected_keywords:
        raise ValueError("expectation must name at least one keyword")
    if not output or not output.strip():
        return False
    try:
        tokens = tokenize(output)
    except SparqlTokenizeError:
        # not even tokenizable as a query; fall back to crude masking
        masked = re.sub(r"'[^']*'|\"[^\"]*\"", " ", output)
        words = re.findall(r"[A-Za-z_]+", masked.upper())
        return all(
            all(w in words for w in kw.upper().split()) for kw in expected_keywords
        )
    return all(_keyword_positions(tokens, kw) for kw in expected_keywords)


def check_swap_expectation(output: str, expectation: dict) -> bool:
    """Required keywords present and forbidden ones absent."""
    required = expectation.get("required") or []
    forbidden = expectation.get("forbidden") or []
    if not required and not forbidden:
        raise ValueError("swap expectation is empty")
    if not output or not output.strip():
        return False
    if required and not check_sparql_expectation(output, required):
        return False
    for keyword in forbidden:
        if check_sparql_expectation(output, [keyword]):
            return False
    return True


def gen_dir_hint(record: QuestionRecord, template: str | None = None) -> TestCase:
    """Append an answer-type hint to the question."""
    if record.answer_type is AnswerType.UNA:
        raise ValueError(f"{record.id}: unanswerable questions take no hint")
    config = load_hint_config()
    template = template if template is not None else config["template"]
    if "{hint}" not in template:
        raise HintConfigError("hint template must contain {hint}")
    hint = config["hints"].get(record.answer_type.value)
    if hint is None:
        raise HintConfigError(f"no hint phrase for type {record.answer_type.value}")
    return TestCase(
        base_id=record.id,
        kind="DIR_HINT",
        turns=(record.text + template.format(hint=hint),),
        expectation={"answer_type": record.answer_type.value},
        meta={"hints_version": config["version"]},
    )


_CAP_SPAN_RE = re.compile(r"(?:[A-Z][\w'-]*)(?:\s+[A-Z][\w'-]*)*")


def fallback_nouns(text: str) -> list[str]:
    """Capitalized spans past the first word, else longest word."""
    spans = []
    for m in _CAP_SPAN_RE.finditer(text):
        if m.start() == 0:
            # drop a leading sentence-case word but keep a multiword span
            parts = m.group(0).split(None, 1)
            if len(parts) == 2:
                spans.append(parts[1])
            continue
        spans.append(m.group(0))
    if spans:
        return spans
    words = sorted(re.findall(r"[\w'-]{4,}", text), key=len, reverse=True)
    return words[:1]


def gen_dir_cot(record: QuestionRecord, noun_provider=None) -> TestCase:
    """Two turns: recall facts about the key nouns, then ask the question."""
    nouns: list[str] = []
    if noun_provider is not None:
        try:
            nouns = [n for n in noun_provider(record.text) if n]
        except Exception:
            nouns = []
    if not nouns:
        nouns = fallback_nouns(record.text)
    topic = ", ".join(nouns) if nouns else record.text
    return TestCase(
        base_id=record.id,
        kind="DIR_COT",
        turns=(_COT_TURN1.format(topic=topic), record.text),
        expectation=None,
        meta={"topic": topic},
    )
