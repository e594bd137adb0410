"""Unified question record model shared by all dataset readers."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..taxonomy import AnswerType, FeatureTags


class IngestError(ValueError):
    """Source data does not match the dataset's published schema."""

    def __init__(self, message: str, record_ref: str | None = None):
        super().__init__(message if record_ref is None else f"{message} (record {record_ref})")
        self.record_ref = record_ref


class StoreError(ValueError):
    """Store file is malformed; carries the 1-based line number."""

    def __init__(self, message: str, line_no: int | None = None):
        super().__init__(message if line_no is None else f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class ReferenceAnswer:
    canonical: str
    entity_id: str | None = None
    aliases: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.canonical or not self.canonical.strip():
            raise IngestError("reference answer canonical is empty")


@dataclass
class QuestionRecord:
    id: str
    dataset_id: str
    text: str
    gold: list[ReferenceAnswer]
    tags: FeatureTags
    sparql: str | None = None
    flags: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.id:
            raise IngestError("record id is empty")
        if not self.text or not self.text.strip():
            raise IngestError("question text is empty", self.id)
        if not self.gold and self.tags.answer_type != AnswerType.UNA:
            raise IngestError("gold answers empty for answerable record", self.id)

    @property
    def language(self) -> str:
        return self.tags.language

    @property
    def answer_type(self) -> AnswerType:
        return self.tags.answer_type
