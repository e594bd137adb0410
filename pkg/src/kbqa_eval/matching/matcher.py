"""Answer verdicts: exact match first, then type-aware or fuzzy fallback.

The candidate pool comes from the model output (constituents when a parse
is available, segment heuristics otherwise). Every verdict tries plain
normalized equality first; only the open-class answer types may fall back
to embedding similarity. Numbers, dates, and booleans get a typed exact
comparison instead, so a fuzzy score can never flip those verdicts.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..ingest.records import QuestionRecord, ReferenceAnswer
from ..taxonomy import AnswerType
from .candidates import CandidatePool, ParseNode, extract_candidates
from .embedding import EmbedderUnavailable, TrigramEmbedder, similarity_matrix
from .normalize import normalize

_NUMBER_RE = re.compile(r"[-+]?\d[\d,]*(?:\.\d+)?")
_ISO_DATE_RE = re.compile(r"^(\d{4})(?:-(\d{2}))?(?:-(\d{2}))?$")
_YEAR_RE = re.compile(r"^\d{3,4}$")

_MONTHS = {
    "january": 1, "february": 2, "march": 3, "april": 4,
    "may": 5, "june": 6, "july": 7, "august": 8,
    "september": 9, "october": 10, "november": 11, "december": 12,
    "jan": 1, "feb": 2, "mar": 3, "apr": 4, "jun": 6, "jul": 7,
    "aug": 8, "sep": 9, "sept": 9, "oct": 10, "nov": 11, "dec": 12,
}

_AFFIRM = {"yes", "yeah", "true", "correct", "indeed", "right"}
_NEGATE = {"no", "false", "not", "never", "incorrect"}
_TRUE_WORDS = {"yes", "true"}
_FALSE_WORDS = {"no", "false"}


@dataclass(frozen=True)
class MatchConfig:
    """Knobs for a single matching run."""

    tau: float = 0.78
    fuzzy_excluded_types: frozenset = frozenset(
        {AnswerType.NUM, AnswerType.DATE, AnswerType.BOOLEAN}
    )
    embedder: object | None = None

    def __post_init__(self):
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must be within [0, 1], got {self.tau}")


@dataclass(frozen=True)
class MatchResult:
    correct: bool
    method: str
    best_similarity: float | None = None
    matched: tuple[str, str] | None = None
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if self.method not in {"exact", "fuzzy", "none"}:
            raise ValueError(f"unknown match method: {self.method}")
        if self.method == "exact" and self.best_similarity not in (None, 1.0):
            raise ValueError("exact matches carry no partial similarity")
        if self.method == "none" and self.correct:
            raise ValueError("a no-match verdict cannot be correct")


def reference_strings(refs: list[ReferenceAnswer]) -> list[str]:
    """Canonical plus aliases for each reference, deduplicated in order."""
    seen: list[str] = []
    for ref in refs:
        for text in [ref.canonical, *ref.aliases]:
            if text and text not in seen:
                seen.append(text)
    return seen


def exact_match(pool: CandidatePool, refs: list[str]) -> MatchResult | None:
    targets = {normalize(r): r for r in refs if normalize(r)}
    for phrase in pool.phrases:
        hit = targets.get(phrase)
        if hit is not None:
            return MatchResult(correct=True, method="exact", matched=(phrase, hit))
    return None


def fuzzy_match(pool: CandidatePool, refs: list[str], config: MatchConfig) -> MatchResult:
    normalized_refs = [normalize(r) for r in refs]
    normalized_refs = [r for r in normalized_refs if r]
    if not pool.phrases or not normalized_refs:
        return MatchResult(correct=False, method="none")
    embedder = config.embedder or TrigramEmbedder()
    flags: tuple[str, ...] = ()
    try:
        sims = similarity_matrix(list(pool.phrases), normalized_refs, embedder)
    except EmbedderUnavailable:
        embedder = TrigramEmbedder()
        sims = similarity_matrix(list(pool.phrases), normalized_refs, embedder)
        flags = ("fallback_embedder",)
    best = float(sims.max())
    ci, ri = divmod(int(sims.argmax()), sims.shape[1])
    matched = (pool.phrases[ci], normalized_refs[ri])
    if best >= config.tau:
        return MatchResult(True, "fuzzy", best_similarity=best, matched=matched, flags=flags)
    return MatchResult(False, "none", best_similarity=best, matched=matched, flags=flags)


def parse_number(text: str) -> float | None:
    cleaned = text.strip().replace(",", "")
    try:
        return float(cleaned)
    except ValueError:
        return None


def extract_numbers(text: str) -> list[float]:
    values = []
    for token in _NUMBER_RE.findall(text):
        parsed = parse_number(token)
        if parsed is not None:
            values.append(parsed)
    return values


def parse_date(text: str) -> tuple[int | None, int | None, int | None] | None:
    """Best-effort (year, month, day) with None for unstated parts."""
    stripped = text.strip().rstrip(".")
    iso = _ISO_DATE_RE.match(stripped)
    if iso:
        year = int(iso.group(1))
        month = int(iso.group(2)) if iso.group(2) else None
        day = int(iso.group(3)) if iso.group(3) else None
        return (year, month, day)
    if _YEAR_RE.match(stripped):
        return (int(stripped), None, None)
    # month-name forms: "October 24, 1648", "24 October 1648", "October 1648"
    words = re.split(r"[\s,]+", stripped.lower())
    words = [w for w in words if w]
    year = month = day = None
    for word in words:
        if word in _MONTHS and month is None:
            month = _MONTHS[word]
        elif re.fullmatch(r"\d{3,4}", word) and year is None:
            year = int(word)
        elif re.fullmatch(r"\d{1,2}(?:st|nd|rd|th)?", word) and day is None:
            day = int(re.sub(r"[a-z]+$", "", word))
    if year is None:
        return None
    return (year, month, day)


def _date_matches(candidate: str, gold: tuple[int | None, int | None, int | None]) -> bool:
    parsed = parse_date(candidate)
    if parsed is None:
        return False
    for have, want in zip(parsed, gold):
        if want is not None and have != want:
            return False
    return True


def parse_boolean(text: str) -> bool | None:
    lowered = normalize(text)
    if lowered in _TRUE_WORDS:
        return True
    if lowered in _FALSE_WORDS:
        return False
    return None


def _boolean_verdict(output: str, refs: list[str]) -> MatchResult:
    gold: bool | None = None
    for ref in refs:
        gold = parse_boolean(ref)
        if gold is not None:
            break
    if gold is None:
        return MatchResult(correct=False, method="none", flags=("unparsed_gold",))
    # leading affirmation or negation cue decides the polarity
    for token in re.findall(r"[a-z']+", output.lower()):
        if token in _AFFIRM:
            return MatchResult(gold is True, "exact" if gold else "none",
                               matched=(token, refs[0]) if gold else None)
        if token in _NEGATE:
            return MatchResult(gold is False, "exact" if not gold else "none",
                               matched=(token, refs[0]) if not gold else None)
    return MatchResult(correct=False, method="none")


def _typed_exact(
    answer_type: AnswerType,
    output: str,
    pool: CandidatePool,
    refs: list[str],
) -> MatchResult:
    if answer_type is AnswerType.BOOLEAN:
        return _boolean_verdict(output, refs)
    if answer_type is AnswerType.NUM:
        gold_values = []
        for ref in refs:
            gold_values.extend(extract_numbers(ref))
        if not gold_values:
            return MatchResult(correct=False, method="none", flags=("unparsed_gold",))
        for phrase in pool.phrases:
            for value in extract_numbers(phrase):
                if any(value == g for g in gold_values):
                    return MatchResult(True, "exact", matched=(phrase, str(value)))
        return MatchResult(correct=False, method="none")
    # DATE
    gold_dates = [d for d in (parse_date(r) for r in refs) if d is not None]
    if not gold_dates:
        return MatchResult(correct=False, method="none", flags=("unparsed_gold",))
    for phrase in pool.phrases:
        for gold in gold_dates:
            if _date_matches(phrase, gold):
                return MatchResult(True, "exact", matched=(phrase, _format_date(gold)))
    return MatchResult(correct=False, method="none")


def _format_date(parts: tuple[int | None, int | None, int | None]) -> str:
    year, month, day = parts
    if month is None:
        return f"{year:04d}"
    if day is None:
        return f"{year:04d}-{month:02d}"
    return f"{year:04d}-{month:02d}-{day:02d}"


def evaluate_answer(
    record: QuestionRecord,
    output: str,
    config: MatchConfig | None = None,
    parse: ParseNode | None = None,
) -> MatchResult:
    """Verdict for one model output against one question's references."""
    config = config or MatchConfig()
    refs = reference_strings(record.gold)
    if not refs:
        return MatchResult(correct=False, method="none", flags=("no_reference",))
    if not output or not output.strip():
        return MatchResult(correct=False, method="none", flags=("empty_output",))
    pool = extract_candidates(output, parse=parse)

    plain = exact_match(pool, refs)
    if plain is not None:
        return plain

    answer_type = record.answer_type
    if answer_type in config.fuzzy_excluded_types:
        return _typed_exact(answer_type, output, pool, refs)
    return fuzzy_match(pool, refs, config)
