import json
from pathlib import Path

import pytest

from kbqa_eval.ingest import (
    IngestError,
    StoreError,
    ingest_dataset,
    load_dataset,
    read_store,
    render_record,
    validate_store,
    write_store,
)
from kbqa_eval.taxonomy import AnswerType, ReasoningType

SOURCES = Path(__file__).parent / "fixtures" / "sources"


def _load_all():
    out = {}
    for dataset, fname in [
        ("kqapro", "kqapro_sample.json"),
        ("lcquad2", "lcquad2_sample.json"),
        ("wqsp", "wqsp_sample.json"),
        ("cwq", "cwq_sample.json"),
        ("grailqa", "grailqa_sample.json"),
        ("graphq", "graphq_sample.json"),
        ("qald9", "qald9_sample.json"),
        ("mkqa", "mkqa_sample.jsonl"),
    ]:
        out[dataset] = load_dataset(dataset, SOURCES / fname)
    return out


ALL = _load_all()


def test_kqapro_reader():
    records = ALL["kqapro"]
    assert [r.id for r in records] == ["kqapro:0", "kqapro:1", "kqapro:2"]
    assert ReasoningType.COUNTING in records[0].tags.reasoning
    assert records[0].answer_type == AnswerType.NUM
    assert records[1].answer_type == AnswerType.BOOLEAN  # native Verify
    assert records[2].gold[0].canonical == "Canberra"
    assert records[2].answer_type == AnswerType.LOC


def test_lcquad2_reader():
    records = ALL["lcquad2"]
    assert len(records) == 3
    assert records[1].text == "Which river flows through Cairo?"  # paraphrase fallback
    assert records[1].gold[0].entity_id == "Q3392"
    assert records[2].answer_type == AnswerType.BOOLEAN
    assert ReasoningType.COUNTING in records[0].tags.reasoning


def test_wqsp_reader_skips_answerless():
    result = ingest_dataset("wqsp", SOURCES / "wqsp_sample.json")
    assert len(result.records) == 2
    assert result.skipped == 1
    first = result.records[0]
    assert first.gold[0].entity_id == "m.01428y"
    assert len(first.gold) == 2
    assert result.records[1].answer_type == AnswerType.DATE


def test_cwq_reader():
    records = ALL["cwq"]
    assert records[0].gold[0].canonical == "Germany"
    assert records[0].gold[0].aliases == ["Federal Republic of Germany"]
    assert ReasoningType.COMPARATIVE in records[0].tags.reasoning
    assert ReasoningType.STAR_SHAPE in records[0].tags.reasoning
    # null answer text falls back to the first alias
    assert records[1].gold[0].canonical == "E.T. the Extra-Terrestrial"
    assert ReasoningType.MULTI_HOP in records[1].tags.reasoning
    assert ReasoningType.STAR_SHAPE not in records[1].tags.reasoning


def test_grailqa_reader():
    records = ALL["grailqa"]
    assert records[0].answer_type == AnswerType.NUM
    assert ReasoningType.COUNTING in records[0].tags.reasoning
    assert records[1].gold[0].entity_id == "Q3257"
    assert ReasoningType.COMPARATIVE in records[1].tags.reasoning


def test_graphq_reader():
    records = ALL["graphq"]
    assert records[0].gold[0].canonical == "Mount Kilimanjaro"
    assert records[1].gold[0].canonical == "8"
    assert records[1].answer_type == AnswerType.NUM


def test_qald9_language_variants():
    records = ALL["qald9"]
    assert [r.id for r in records] == ["qald9:1:en", "qald9:1:de", "qald9:2:en"]
    assert records[0].language == "en"
    assert records[1].language == "de"
    assert records[1].gold[0].canonical == "Paris"  # URI local name
    assert records[2].answer_type == AnswerType.BOOLEAN
    assert records[2].gold[0].canonical == "true"


def test_mkqa_language_variants_and_una():
    records = ALL["mkqa"]
    by_id = {r.id: r for r in records}
    assert set(by_id) == {"mkqa:1:en", "mkqa:1:de", "mkqa:2:en", "mkqa:2:ru"}
    assert by_id["mkqa:1:en"].gold[0].entity_id == "Q692"
    assert by_id["mkqa:1:en"].gold[0].aliases == ["Shakespeare"]
    una = by_id["mkqa:2:en"]
    assert una.answer_type == AnswerType.UNA
    assert una.gold == []


def test_unknown_dataset_rejected():
    with pytest.raises(IngestError):
        load_dataset("webquestions", SOURCES / "wqsp_sample.json")


def test_empty_file_yields_zero_records(tmp_path, caplog):
    src = tmp_path / "empty.json"
    src.write_text("", encoding="utf-8")
    with caplog.at_level("WARNING"):
        records = load_dataset("kqapro", src)
    assert records == []
    assert any("empty source" in m for m in caplog.messages)


def test_schema_mismatch_names_first_offender(tmp_path):
    src = tmp_path / "bad.json"
    src.write_text(json.dumps([{"no_question_field": 1}]), encoding="utf-8")
    with pytest.raises(IngestError) as exc:
        load_dataset("kqapro", src)
    assert "kqapro:0" in str(exc.value)


def test_partial_file_skips_and_keeps_good(tmp_path, caplog):
    src = tmp_path / "partial.json"
    src.write_text(
        json.dumps(
            [
                {"bogus": True},
                {"question": "What is the capital of Japan?", "answer": "Tokyo"},
            ]
        ),
        encoding="utf-8",
    )
    with caplog.at_level("WARNING"):
        result = ingest_dataset("kqapro", src)
    assert len(result.records) == 1
    assert result.skipped == 1


def test_ingestion_idempotent(tmp_path):
    a = write_store(load_dataset("cwq", SOURCES / "cwq_sample.json"), tmp_path / "a.jsonl")
    b = write_store(load_dataset("cwq", SOURCES / "cwq_sample.json"), tmp_path / "b.jsonl")
    assert a.read_bytes() == b.read_bytes()


def test_store_roundtrip_identity(tmp_path):
    records = [r for recs in ALL.values() for r in recs]
    path = write_store(records, tmp_path / "store.jsonl")
    back = read_store(path)
    assert [r.id for r in back] == [r.id for r in records]
    assert [render_record(r) for r in back] == [render_record(r) for r in records]
    # byte-equal re-serialization
    again = write_store(back, tmp_path / "store2.jsonl")
    assert again.read_bytes() == path.read_bytes()


def test_store_validator_clean_on_fixtures():
    records = [r for recs in ALL.values() for r in recs]
    assert validate_store(records) == []


def test_store_validator_flags_duplicates():
    records = ALL["kqapro"]
    assert any("duplicate" in v for v in validate_store(records + records[:1]))


def test_malformed_line_names_line_number(tmp_path):
    records = [r for recs in ALL.values() for r in recs]
    path = write_store(records, tmp_path / "store.jsonl")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert len(lines) >= 17
    lines[16] = lines[16][: len(lines[16]) // 2]  # truncate line 17
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    with pytest.raises(StoreError) as exc:
        read_store(path)
    assert "line 17" in str(exc.value)
    assert exc.value.line_no == 17
