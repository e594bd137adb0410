"""Line-delimited JSON store for question records.

One record per line, UTF-8, fixed key order, sorted tag lists: serializing
the same records always produces the same bytes, and read followed by write
reproduces a well-formed store file exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Iterable

from ..taxonomy import AnswerType, FeatureTags, ReasoningType, TagError
from .records import QuestionRecord, ReferenceAnswer, StoreError

_FIELDS = ("id", "dataset", "text", "lang", "gold", "sparql", "answer_type", "reasoning", "flags")


def record_to_dict(record: QuestionRecord) -> dict:
    return {
        "id": record.id,
        "dataset": record.dataset_id,
        "text": record.text,
        "lang": record.language,
        "gold": [
            {"canonical": g.canonical, "entity_id": g.entity_id, "aliases": list(g.aliases)}
            for g in record.gold
        ],
        "sparql": record.sparql,
        "answer_type": record.answer_type.value,
        "reasoning": sorted(t.value for t in record.tags.reasoning),
        "flags": sorted(record.flags),
    }


def record_from_dict(data: dict) -> QuestionRecord:
    missing = [k for k in _FIELDS if k not in data]
    if missing:
        raise KeyError(f"missing fields: {', '.join(missing)}")
    tags = FeatureTags(
        answer_type=AnswerType(data["answer_type"]),
        reasoning=frozenset(ReasoningType(t) for t in data["reasoning"]),
        language=data["lang"],
    )
    gold = [
        ReferenceAnswer(
            canonical=g["canonical"],
            entity_id=g.get("entity_id"),
            aliases=list(g.get("aliases", ())),
        )
        for g in data["gold"]
    ]
    return QuestionRecord(
        id=data["id"],
        dataset_id=data["dataset"],
        text=data["text"],
        gold=gold,
        tags=tags,
        sparql=data["sparql"],
        flags=list(data["flags"]),
    )


def render_record(record: QuestionRecord) -> str:
    return json.dumps(record_to_dict(record), ensure_ascii=False, separators=(",", ":"))


def write_store(records: Iterable[QuestionRecord], path: str | Path) -> Path:
    """Write records as JSONL; returns the path written."""
    out = Path(path)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", encoding="utf-8", newline="\n") as fh:
        for record in records:
            fh.write(render_record(record))
            fh.write("\n")
    return out


def read_store(path: str | Path) -> list[QuestionRecord]:
    """Read a JSONL store; malformed lines raise with their line number."""
    records: list[QuestionRecord] = []
    with Path(path).open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                records.append(record_from_dict(data))
            except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
                if isinstance(exc, StoreError):
                    raise
                raise StoreError(str(exc), line_no) from exc
    return records


def validate_store(records: list[QuestionRecord]) -> list[str]:
    """Store-wide invariant check; returns human-readable violations."""
    violations: list[str] = []
    seen: set[str] = set()
    for record in records:
        if record.id in seen:
            violations.append(f"duplicate id {record.id}")
        seen.add(record.id)
        if not record.gold and record.answer_type != AnswerType.UNA:
            violations.append(f"{record.id}: empty gold for answerable record")
        for g in record.gold:
            if not g.canonical.strip():
                violations.append(f"{record.id}: empty canonical")
        try:
            FeatureTags(
                answer_type=record.tags.answer_type,
                reasoning=record.tags.reasoning,
                language=record.tags.language,
            )
        except TagError as exc:
            violations.append(f"{record.id}: {exc}")
    return violations
