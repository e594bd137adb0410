"""Answer-type assignment for question records.

Native dataset annotations win outright when they map to a type (UNA is
assigned only that way, never inferred). Otherwise a first-hit cascade over
the gold answers and the question decides: Boolean, NUM, DATE, WHY, then
entity NER over the gold strings, with MISC as the low-confidence floor.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Sequence

from .ner import label_entity
from .types import AnswerType

_BOOL_TOKENS = frozenset({"yes", "no", "true", "false"})
_NUM_RE = re.compile(r"^[+-]?(\d{1,3}(,\d{3})+|\d+)(\.\d+)?$")
_ISO_DATE_RE = re.compile(r"^\d{4}-\d{1,2}-\d{1,2}([T ].*)?$")
_SLASH_DATE_RE = re.compile(r"^\d{1,2}[/.]\d{1,2}[/.]\d{4}$|^\d{4}[/.]\d{1,2}[/.]\d{1,2}$")
_YEAR_RE = re.compile(r"^\d{3,4}$")
_MONTHS = (
    "january|february|march|april|may|june|july|august"
    "|september|october|november|december"
)
_MONTH_DATE_RE = re.compile(
    rf"^(({_MONTHS})\s+\d{{1,2}}(st|nd|rd|th)?,?\s+\d{{4}}"
    rf"|\d{{1,2}}\s+({_MONTHS})\s+\d{{4}}"
    rf"|({_MONTHS})\s+\d{{4}})$",
    re.IGNORECASE,
)
_WHEN_CUES = ("what year", "which year", "what date", "which date", "what time")


@dataclass(frozen=True)
class AnswerTypeDecision:
    answer_type: AnswerType
    source: str  # native | boolean | number | date | why | ner | fallback
    low_confidence: bool = False


def _is_number(text: str) -> bool:
    return bool(_NUM_RE.match(text.strip()))


def _date_kind(text: str) -> str | None:
    s = text.strip()
    if _ISO_DATE_RE.match(s) or _SLASH_DATE_RE.match(s) or _MONTH_DATE_RE.match(s):
        return "date"
    if _YEAR_RE.match(s):
        return "year"
    return None


def _has_when_cue(question: str) -> bool:
    q = question.strip().lower()
    return q.startswith("when") or any(cue in q for cue in _WHEN_CUES)


def classify_answer_type(
    question: str,
    gold_answers: Sequence[str],
    native_tag: AnswerType | None = None,
    ner: Callable[[str], str | None] | None = None,
) -> AnswerTypeDecision:
    """Decide the answer type for one question and its gold answer strings."""
    if native_tag is not None:
        return AnswerTypeDecision(native_tag, "native")

    golds = [g.strip() for g in gold_answers if g and g.strip()]
    when_cue = _has_when_cue(question)

    if golds and all(g.lower() in _BOOL_TOKENS for g in golds):
        return AnswerTypeDecision(AnswerType.BOOLEAN, "boolean")

    if golds and all(_is_number(g) for g in golds):
        # bare years under a when-cue are dates, not quantities
        if not (when_cue and all(_date_kind(g) == "year" for g in golds)):
            return AnswerTypeDecision(AnswerType.NUM, "number")

    if golds:
        kinds = [_date_kind(g) for g in golds]
        if all(k == "date" for k in kinds):
            return AnswerTypeDecision(AnswerType.DATE, "date")
        if when_cue and all(k is not None for k in kinds):
            return AnswerTypeDecision(AnswerType.DATE, "date")

    if question.strip().lower().startswith("why"):
        return AnswerTypeDecision(AnswerType.WHY, "why")

    labeler = ner if ner is not None else label_entity
    labels = [lab for lab in (labeler(g) for g in golds) if lab in ("PER", "LOC", "ORG")]
    if labels:
        counts = {lab: labels.count(lab) for lab in ("PER", "LOC", "ORG")}
        best = max(counts, key=lambda lab: (counts[lab], -("PER", "LOC", "ORG").index(lab)))
        return AnswerTypeDecision(AnswerType(best), "ner")

    return AnswerTypeDecision(AnswerType.MISC, "fallback", low_confidence=True)
