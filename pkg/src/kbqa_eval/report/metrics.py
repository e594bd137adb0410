"""Score cells: exact-match accuracy, per-question F1, signed deltas.

F1 here is a harness-defined reading for free-text outputs: asserted
answers come from enumeration segments of the output (list markers,
comma/"and" chains), not from the full candidate pool, so precision
does not collapse on verbose answers. Reports must label the metric as
harness-defined wherever it appears.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..matching.normalize import normalize

_METRICS = ("EM_accuracy", "F1")


@dataclass(frozen=True)
class ScoreCell:
    metric: str
    value: float
    n: int

    def __post_init__(self):
        if self.metric not in _METRICS:
            raise ValueError(f"unknown metric: {self.metric!r}")
        if not 0.0 <= self.value <= 100.0:
            raise ValueError(f"percent out of range: {self.value}")
        if self.n <= 0:
            raise ValueError("a score cell needs at least one sample")

    def rendered(self) -> str:
        return f"{self.value:.2f}"


@dataclass(frozen=True)
class DeltaCell:
    before: float
    after: float

    @property
    def delta(self) -> float:
        return round(self.after - self.before, 2)

    def rendered(self) -> str:
        if self.delta == 0:
            return "0"
        return f"{self.delta:+.2f}"


def _is_correct(verdict) -> bool:
    if isinstance(verdict, dict):
        return bool(verdict["correct"])
    return bool(verdict)


def em_score(verdicts) -> ScoreCell:
    """Percent of correct verdicts."""
    items = list(verdicts)
    if not items:
        raise ValueError("EM needs at least one verdict")
    correct = sum(1 for v in items if _is_correct(v))
    return ScoreCell(
        metric="EM_accuracy",
        value=round(100.0 * correct / len(items), 2),
        n=len(items),
    )


def question_f1(matched_gold: int, gold: int, asserted: int) -> float:
    if gold < 1:
        raise ValueError("each question needs at least one gold answer")
    if matched_gold < 0 or asserted < 0 or matched_gold > gold:
        raise ValueError(
            f"inconsistent counts: matched={matched_gold} gold={gold} asserted={asserted}"
        )
    recall = matched_gold / gold
    if asserted > 0:
        precision = matched_gold / asserted
    else:
        precision = 1.0 if matched_gold > 0 else 0.0
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def f1_score(per_question) -> ScoreCell:
    """Mean question-level F1 as a percent."""
    triples = list(per_question)
    if not triples:
        raise ValueError("F1 needs at least one question")
    total = sum(question_f1(m, g, a) for m, g, a in triples)
    return ScoreCell(
        metric="F1",
        value=round(100.0 * total / len(triples), 2),
        n=len(triples),
    )


_LIST_MARKER_RE = re.compile(r"^\s*(?:[-*•]|\d+[.)])\s+", re.MULTILINE)


def enumeration_segments(output: str) -> list[str]:
    """Asserted answers: list items, else comma/"and" chain parts."""
    if not output or not output.strip():
        return []
    if _LIST_MARKER_RE.search(output):
        items = _LIST_MARKER_RE.split(output)
        segments = [normalize(i) for i in items[1:]]
        return [s for s in segments if s]
    parts = re.split(r",|;|\band\b", output)
    segments = [normalize(p) for p in parts]
    return [s for s in segments if s]


def f1_parts(gold_strings: list[list[str]], output: str) -> tuple[int, int, int]:
    """(matched_gold, gold, asserted) for one question.

    gold_strings holds one alias group per gold answer; a gold answer is
    matched when any asserted segment equals any of its aliases after
    normalization.
    """
    if not gold_strings:
        raise ValueError("f1 parts need at least one gold answer")
    segments = enumeration_segments(output)
    matched = 0
    for group in gold_strings:
        targets = {normalize(g) for g in group if normalize(g)}
        if any(seg in targets for seg in segments):
            matched += 1
    return matched, len(gold_strings), len(segments)
