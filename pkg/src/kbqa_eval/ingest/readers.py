"""Readers for the eight source datasets.

Each reader maps one published dump format onto QuestionRecord, normalizing
gold answers to canonical strings plus KB entity ids where the dataset
provides them. Items that fail to parse are skipped and counted; a file
whose items all fail raises an ingest error naming the first offender.
Multilingual datasets yield one record per language variant.
"""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from ..taxonomy import (
    LANGUAGES,
    TOPOLOGY_TAGS,
    AnswerType,
    FeatureTags,
    NativeTags,
    ReasoningClassificationError,
    classify_answer_type,
    classify_reasoning,
    map_native_value,
    normalize_language,
)
from ..taxonomy.types import TagError
from .records import IngestError, QuestionRecord, ReferenceAnswer

logger = logging.getLogger(__name__)

_WIKIDATA_URI_RE = re.compile(r"(?:^|/)(Q\d+)$")


@dataclass
class IngestResult:
    records: list[QuestionRecord]
    skipped: int = 0
    errors: list[str] = field(default_factory=list)


def _merge_reasoning(from_sparql: frozenset, from_native: frozenset) -> frozenset:
    """Union the two tag sets; query-derived topology wins over native."""
    tags = set(from_sparql)
    for tag in from_native:
        if tag in TOPOLOGY_TAGS and tags & TOPOLOGY_TAGS:
            continue
        tags.add(tag)
    return frozenset(tags)


def _build_record(
    dataset_id: str,
    native_id: str,
    text: str,
    gold: list[ReferenceAnswer],
    sparql: str | None,
    native: NativeTags,
    lang: str = "en",
) -> QuestionRecord:
    flags: list[str] = []
    sparql_tags: frozenset = frozenset()
    if sparql:
        try:
            sparql_tags = classify_reasoning(sparql)
        except ReasoningClassificationError:
            flags.append("sparql_unclassified")
    reasoning = _merge_reasoning(sparql_tags, native.reasoning)
    decision = classify_answer_type(
        text, [g.canonical for g in gold], native_tag=native.answer_type
    )
    if decision.low_confidence:
        flags.append("low_confidence")
    tags = FeatureTags(
        answer_type=decision.answer_type,
        reasoning=reasoning,
        language=normalize_language(lang),
    )
    return QuestionRecord(
        id=f"{dataset_id}:{native_id}",
        dataset_id=dataset_id,
        text=text,
        gold=gold,
        tags=tags,
        sparql=sparql,
        flags=flags,
    )


def _entity_id_from_uri(value: str) -> str | None:
    m = _WIKIDATA_URI_RE.search(value)
    return m.group(1) if m else None


def _label_from_uri(value: str) -> str:
    local = value.rstrip("/").rsplit("/", 1)[-1].rsplit("#", 1)[-1]
    return local.replace("_", " ")


def _answer_from_any(raw) -> ReferenceAnswer | None:
    """Normalize one raw gold answer (string, number, or object) or drop it."""
    if raw is None:
        return None
    if isinstance(raw, (int, float)):
        return ReferenceAnswer(canonical=str(raw))
    if isinstance(raw, str):
        text = raw.strip()
        if not text:
            return None
        if text.startswith("http://") or text.startswith("https://"):
            return ReferenceAnswer(
                canonical=_label_from_uri(text), entity_id=_entity_id_from_uri(text)
            )
        return ReferenceAnswer(canonical=text)
    if isinstance(raw, dict):
        label = raw.get("label") or raw.get("name") or raw.get("text") or raw.get("value")
        entity = raw.get("qid") or raw.get("entity") or raw.get("uri")
        entity_id = None
        if isinstance(entity, str):
            entity_id = _entity_id_from_uri(entity) or (
                entity if re.fullmatch(r"Q\d+", entity) else None
            )
        if isinstance(label, str) and label.strip():
            aliases = [a for a in raw.get("aliases", ()) if isinstance(a, str) and a.strip()]
            return ReferenceAnswer(canonical=label.strip(), entity_id=entity_id, aliases=aliases)
        if isinstance(entity, str) and entity.strip():
            return ReferenceAnswer(canonical=_label_from_uri(entity), entity_id=entity_id)
    return None


def _load_json(path: Path):
    text = path.read_text(encoding="utf-8")
    if not text.strip():
        return None
    return json.loads(text)


def _iter_jsonl(path: Path):
    with path.open("r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                yield json.loads(line)


# ---------------------------------------------------------------- readers


def read_kqapro(path: Path) -> IngestResult:
    data = _load_json(path)
    if data is None:
        logger.warning("%s: empty source file", path)
        return IngestResult([])
    result = IngestResult([])
    for idx, item in enumerate(data):
        try:
            native = map_native_value("kqapro", item.get("qtype"))
            answer = item.get("answer")
            gold = [] if answer is None else [g for g in (_answer_from_any(answer),) if g]
            result.records.append(
                _build_record(
                    "kqapro", str(item.get("id", idx)), item["question"],
                    gold, item.get("sparql"), native,
                )
            )
        except (IngestError, TagError, KeyError, TypeError) as exc:
            result.skipped += 1
            result.errors.append(f"kqapro:{idx}: {exc}")
    return result


def read_lcquad2(path: Path) -> IngestResult:
    data = _load_json(path)
    if data is None:
        logger.warning("%s: empty source file", path)
        return IngestResult([])
    result = IngestResult([])
    for idx, item in enumerate(data):
        uid = str(item.get("uid", idx))
        try:
            text = item.get("question") or item.get("paraphrased_question")
            if not text or not str(text).strip():
                raise IngestError("no question text", f"lcquad2:{uid}")
            raw_answers = item.get("answers") or item.get("answer") or []
            gold = [g for g in (_answer_from_any(a) for a in raw_answers) if g]
            native = map_native_value("lcquad2", item.get("subgraph"))
            result.records.append(
                _build_record(
                    "lcquad2", uid, str(text).strip(),
                    gold, item.get("sparql_wikidata"), native,
                )
            )
        except (IngestError, TagError, KeyError, TypeError) as exc:
            result.skipped += 1
            result.errors.append(f"lcquad2:{uid}: {exc}")
    return result


def read_wqsp(path: Path) -> IngestResult:
    data = _load_json(path)
    if data is None:
        logger.warning("%s: empty source file", path)
        return IngestResult([])
    items = data["Questions"] if isinstance(data, dict) else data
    result = IngestResult([])
    for idx, item in enumerate(items):
        qid = str(item.get("QuestionId", idx))
        try:
            parses = item.get("Parses") or []
            sparql, gold = None, []
            for parse in parses:
                answers = parse.get("Answers") or []
                if not answers:
                    continue
                sparql = parse.get("Sparql")
                for ans in answers:
                    if ans.get("AnswerType") == "Entity":
                        canonical = ans.get("EntityName") or ans.get("AnswerArgument")
                        if canonical:
                            gold.append(
                                ReferenceAnswer(
                                    canonical=canonical, entity_id=ans.get("AnswerArgument")
                                )
                            )
                    else:
                        arg = ans.get("AnswerArgument")
                        if arg:
                            gold.append(ReferenceAnswer(canonical=str(arg)))
                if gold:
                    break
            if not gold:
                raise IngestError("no parse with answers", f"wqsp:{qid}")
            text = item.get("RawQuestion") or item.get("ProcessedQuestion")
            native = map_native_value("wqsp", None)
            result.records.append(_build_record("wqsp", qid, text, gold, sparql, native))
        except (IngestError, TagError, KeyError, TypeError) as exc:
            result.skipped += 1
            result.errors.append(f"wqsp:{qid}: {exc}")
    return result


def read_cwq(path: Path) -> IngestResult:
    data = _load_json(path)
    if data is None:
        logger.warning("%s: empty source file", path)
        return IngestResult([])
    result = IngestResult([])
    for idx, item in enumerate(data):
        qid = str(item.get("ID", idx))
        try:
            gold = []
            for ans in item.get("answers") or []:
                aliases = [a for a in ans.get("aliases") or [] if isinstance(a, str) and a.strip()]
                canonical = ans.get("answer") or (aliases[0] if aliases else None)
                if not canonical:
                    continue
                gold.append(
                    ReferenceAnswer(
                        canonical=str(canonical),
                        entity_id=ans.get("answer_id"),
                        aliases=aliases,
                    )
                )
            native = map_native_value("cwq", item.get("compositionality_type"))
            result.records.append(
                _build_record("cwq", qid, item["question"], gold, item.get("sparql"), native)
            )
        except (IngestError, TagError, KeyError, TypeError) as exc:
            result.skipped += 1
            result.errors.append(f"cwq:{qid}: {exc}")
    return result


def read_grailqa(path: Path) -> IngestResult:
    data = _load_json(path)
    if data is None:
        logger.warning("%s: empty source file", path)
        return IngestResult([])
    result = IngestResult([])
    for idx, item in enumerate(data):
        qid = str(item.get("qid", idx))
        try:
            gold = []
            for ans in item.get("answer") or []:
                canonical = ans.get("entity_name") or ans.get("answer_argument")
                if canonical:
                    entity_id = (
                        ans.get("answer_argument")
                        if ans.get("answer_type") == "Entity"
                        else None
                    )
                    gold.append(ReferenceAnswer(canonical=str(canonical), entity_id=entity_id))
            native = map_native_value("grailqa", item.get("function"))
            result.records.append(
                _build_record(
                    "grailqa", qid, item["question"], gold, item.get("sparql_query"), native
                )
            )
        except (IngestError, TagError, KeyError, TypeError) as exc:
            result.skipped += 1
            result.errors.append(f"grailqa:{qid}: {exc}")
    return result


def read_graphq(path: Path) -> IngestResult:
    data = _load_json(path)
    if data is None:
        logger.warning("%s: empty source file", path)
        return IngestResult([])
    items = data.get("questions", data) if isinstance(data, dict) else data
    result = IngestResult([])
    for idx, item in enumerate(items):
        qid = str(item.get("qid", idx))
        try:
            gold = [g for g in (_answer_from_any(a) for a in item.get("answer") or []) if g]
            native = map_native_value("graphq", item.get("function"))
            result.records.append(
                _build_record(
                    "graphq", qid, item["question"], gold, item.get("sparql_query"), native
                )
            )
        except (IngestError, TagError, KeyError, TypeError) as exc:
            result.skipped += 1
            result.errors.append(f"graphq:{qid}: {exc}")
    return result


def _qald_gold(answers: list) -> list[ReferenceAnswer]:
    gold: list[ReferenceAnswer] = []
    for block in answers or []:
        if "boolean" in block:
            gold.append(ReferenceAnswer(canonical="true" if block["boolean"] else "false"))
            continue
        bindings = (block.get("results") or {}).get("bindings") or []
        for row in bindings:
            for cell in row.values():
                value = cell.get("value")
                if value is None or not str(value).strip():
                    continue
                if cell.get("type") == "uri":
                    gold.append(
                        ReferenceAnswer(
                            canonical=_label_from_uri(value),
                            entity_id=_entity_id_from_uri(value),
                        )
                    )
                else:
                    gold.append(ReferenceAnswer(canonical=str(value)))
    return gold


def read_qald9(path: Path) -> IngestResult:
    data = _load_json(path)
    if data is None:
        logger.warning("%s: empty source file", path)
        return IngestResult([])
    questions = data.get("questions", []) if isinstance(data, dict) else data
    known = set(LANGUAGES)
    result = IngestResult([])
    for idx, item in enumerate(questions):
        qid = str(item.get("id", idx))
        try:
            gold = _qald_gold(item.get("answers"))
            sparql = (item.get("query") or {}).get("sparql")
            native = map_native_value("qald9", item.get("answertype"))
            made = 0
            for variant in item.get("question") or []:
                try:
                    lang = normalize_language(variant.get("language", ""))
                except TagError:
                    continue
                if lang not in known:
                    continue
                text = variant.get("string")
                if not text or not text.strip():
                    continue
                result.records.append(
                    _build_record(
                        "qald9", f"{qid}:{lang}", text.strip(), gold, sparql, native, lang=lang
                    )
                )
                made += 1
            if made == 0:
                raise IngestError("no usable language variant", f"qald9:{qid}")
        except (IngestError, TagError, KeyError, TypeError) as exc:
            result.skipped += 1
            result.errors.append(f"qald9:{qid}: {exc}")
    return result


def read_mkqa(path: Path) -> IngestResult:
    result = IngestResult([])
    known = set(LANGUAGES)
    saw_any = False
    for idx, item in enumerate(_iter_jsonl(path)):
        saw_any = True
        qid = str(item.get("example_id", idx))
        queries = item.get("queries") or {}
        answers = item.get("answers") or {}
        made = 0
        first_error: str | None = None
        for raw_lang, text in queries.items():
            try:
                lang = normalize_language(raw_lang)
            except TagError:
                continue
            if lang not in known or not text or not str(text).strip():
                continue
            lang_answers = answers.get(raw_lang) or answers.get(lang) or []
            try:
                native_value = lang_answers[0].get("type") if lang_answers else None
                native = map_native_value("mkqa", native_value)
                gold = []
                if native.answer_type != AnswerType.UNA:
                    for ans in lang_answers:
                        ref = _answer_from_any(ans)
                        if ref is not None:
                            gold.append(ref)
                result.records.append(
                    _build_record(
                        "mkqa", f"{qid}:{lang}", str(text).strip(), gold, None, native, lang=lang
                    )
                )
                made += 1
            except (IngestError, TagError, KeyError, TypeError) as exc:
                first_error = first_error or f"mkqa:{qid}:{lang}: {exc}"
        if made == 0:
            result.skipped += 1
            result.errors.append(first_error or f"mkqa:{qid}: no usable language variant")
    if not saw_any:
        logger.warning("%s: empty source file", path)
    return result


READERS: dict[str, Callable[[Path], IngestResult]] = {
    "kqapro": read_kqapro,
    "lcquad2": read_lcquad2,
    "wqsp": read_wqsp,
    "cwq": read_cwq,
    "grailqa": read_grailqa,
    "graphq": read_graphq,
    "qald9": read_qald9,
    "mkqa": read_mkqa,
}


def ingest_dataset(dataset_id: str, source_path: str | Path) -> IngestResult:
    """Read one source dump into unified records, counting skipped items."""
    if dataset_id not in READERS:
        raise IngestError(
            f"unknown dataset {dataset_id!r}; expected one of {', '.join(sorted(READERS))}"
        )
    path = Path(source_path)
    if not path.exists():
        raise IngestError(f"source file not found: {path}")
    try:
        result = READERS[dataset_id](path)
    except json.JSONDecodeError as exc:
        raise IngestError(f"{path} is not valid {dataset_id} source data: {exc}") from exc
    if result.errors and not result.records:
        raise IngestError(f"no record parsed; first failure: {result.errors[0]}")
    if result.skipped:
        logger.warning(
            "%s: skipped %d item(s); first failure: %s",
            dataset_id, result.skipped, result.errors[0],
        )
    logger.info("%s: ingested %d record(s) from %s", dataset_id, len(result.records), path)
    return result


def load_dataset(dataset_id: str, source_path: str | Path) -> list[QuestionRecord]:
    return ingest_dataset(dataset_id, source_path).records
