"""Unified feature-tag vocabulary for KB-based CQA questions.

Every question carries exactly one answer type, one language tag and a
(possibly empty) set of reasoning tags. Reasoning tags split into
operation tags (what the query computes) and topology tags (the shape of
the reasoning graph); SingleHop and MultiHop are mutually exclusive.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class AnswerType(str, enum.Enum):
    MISC = "MISC"
    PER = "PER"
    LOC = "LOC"
    WHY = "WHY"
    DATE = "DATE"
    NUM = "NUM"
    BOOLEAN = "Boolean"
    ORG = "ORG"
    UNA = "UNA"

    def __str__(self) -> str:
        return self.value


class ReasoningType(str, enum.Enum):
    SET_OPERATION = "SetOperation"
    FILTER = "Filter"
    COUNTING = "Counting"
    COMPARATIVE = "Comparative"
    SINGLE_HOP = "SingleHop"
    MULTI_HOP = "MultiHop"
    STAR_SHAPE = "StarShape"

    def __str__(self) -> str:
        return self.value


OPERATION_TAGS = frozenset(
    {
        ReasoningType.SET_OPERATION,
        ReasoningType.FILTER,
        ReasoningType.COUNTING,
        ReasoningType.COMPARATIVE,
    }
)

TOPOLOGY_TAGS = frozenset(
    {
        ReasoningType.SINGLE_HOP,
        ReasoningType.MULTI_HOP,
        ReasoningType.STAR_SHAPE,
    }
)

# Language inventory of the multilingual test sets, plus English.
LANGUAGES = (
    "en",
    "nl",
    "de",
    "es",
    "fr",
    "it",
    "ro",
    "pt_br",
    "pt",
    "ru",
    "hi_in",
    "fa",
    "zh_cn",
)


class TagError(ValueError):
    """A feature tag or tag combination violates the vocabulary rules."""


def normalize_language(code: str) -> str:
    """Normalize an IETF-style code to the inventory form (pt-BR -> pt_br)."""
    if not code:
        raise TagError("empty language code")
    return code.strip().replace("-", "_").lower()


def validate_language(code: str) -> str:
    norm = normalize_language(code)
    if norm not in LANGUAGES:
        raise TagError(f"language {code!r} not in the supported inventory")
    return norm


@dataclass(frozen=True)
class FeatureTags:
    """The unified tag triple assigned to one question."""

    answer_type: AnswerType
    reasoning: frozenset[ReasoningType] = field(default_factory=frozenset)
    language: str = "en"

    def __post_init__(self) -> None:
        object.__setattr__(self, "reasoning", frozenset(self.reasoning))
        validate_language(self.language)
        if (
            ReasoningType.SINGLE_HOP in self.reasoning
            and ReasoningType.MULTI_HOP in self.reasoning
        ):
            raise TagError("SingleHop and MultiHop are mutually exclusive")

    @property
    def operations(self) -> frozenset[ReasoningType]:
        return self.reasoning & OPERATION_TAGS

    @property
    def topology(self) -> frozenset[ReasoningType]:
        return self.reasoning & TOPOLOGY_TAGS
