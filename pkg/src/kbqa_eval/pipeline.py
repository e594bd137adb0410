"""End-to-end orchestration: run batteries, evaluate outputs, report.

Everything written here is deterministic given the same store, config,
and cache: run rows keep battery/record/model order, verdict rows keep
run order, and report payloads sort their keys. Timestamps never enter
these files.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from .checklist import (
    FixtureParaphraser,
    TestCase,
    build_dir_cot_battery,
    build_dir_hint_battery,
    build_dir_swap_battery,
    build_inv_battery,
    check_swap_expectation,
    collect_stability,
    count_stability_classes,
    write_battery,
)
from .config import RunConfig, config_hash
from .gateway import Gateway
from .ingest import read_store
from .matching import MatchConfig, evaluate_answer
from .report import (
    aggregate_by,
    build_dataset_table,
    build_delta_table,
    build_expectation_table,
    build_stability_table,
    em_score,
    f1_parts,
    render_report,
)
from .taxonomy import OPERATION_TAGS

logger = logging.getLogger(__name__)

BATTERY_ORDER = ("base", "inv", "dir-swap", "dir-hint", "dir-cot", "mft")

_OPERATION_NAMES = frozenset(t.value for t in OPERATION_TAGS)


def _ordered_batteries(batteries) -> list[str]:
    requested = set(batteries)
    return [b for b in BATTERY_ORDER if b in requested]


def _dump_row(row: dict) -> str:
    return json.dumps(row, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def build_battery(records, battery: str, seed: int = 0,
                  paraphrase_file: str | Path | None = None,
                  noun_provider=None) -> list[TestCase] | None:
    """Cases for one battery; None when the battery runs the originals."""
    if battery in ("base", "mft"):
        return None
    if battery == "inv":
        provider = FixtureParaphraser(paraphrase_file) if paraphrase_file else None
        return build_inv_battery(records, seed=seed, provider=provider)
    if battery == "dir-swap":
        return build_dir_swap_battery(records)
    if battery == "dir-hint":
        return build_dir_hint_battery(records)
    if battery == "dir-cot":
        return build_dir_cot_battery(records, noun_provider)
    raise ValueError(f"unknown battery: {battery!r}")


def run_pipeline(config: RunConfig, noun_provider=None) -> dict:
    """Execute all configured batteries; write runs.jsonl and run_meta.json."""
    records = read_store(config.store_path)
    gateway = Gateway(
        config.cache_path,
        max_parallel=config.max_parallel,
        requests_per_second=config.requests_per_second,
    )
    config.out_dir.mkdir(parents=True, exist_ok=True)

    batteries = _ordered_batteries(config.batteries)
    run_base = "base" in batteries or "mft" in batteries
    rows: list[dict] = []

    if run_base:
        for spec in config.models:
            results = gateway.ask_many(spec, [[r.text] for r in records])
            for record, run in zip(records, results):
                rows.append({
                    "case_id": f"{record.id}::BASE",
                    "base_id": record.id,
                    "kind": "BASE",
                    "model_id": spec.model_id,
                    "cache_key": run.cache_key,
                    "output": run.output,
                })

    for battery in batteries:
        cases = build_battery(
            records, battery, seed=config.seed,
            paraphrase_file=config.paraphrase_file, noun_provider=noun_provider,
        )
        if cases is None:
            continue
        manifest = config.out_dir / "batteries" / f"{battery}.jsonl"
        write_battery(cases, manifest)
        for spec in config.models:
            results = gateway.ask_many(spec, [list(c.turns) for c in cases])
            for case, run in zip(cases, results):
                row = {
                    "case_id": case.case_id,
                    "base_id": case.base_id,
                    "kind": case.kind,
                    "model_id": spec.model_id,
                    "cache_key": run.cache_key,
                    "output": run.output,
                }
                if case.expectation is not None:
                    row["expectation"] = case.expectation
                rows.append(row)

    runs_path = config.out_dir / "runs.jsonl"
    with runs_path.open("w", encoding="utf-8", newline="\n") as fh:
        for row in rows:
            fh.write(_dump_row(row))
            fh.write("\n")

    meta = {
        "config_hash": config_hash(config),
        "seed": config.seed,
        "batteries": batteries,
        "models": [m.model_id for m in config.models],
        "records": len(records),
        "runs": len(rows),
        "network_calls": gateway.network_calls,
    }
    meta_path = config.out_dir / "run_meta.json"
    meta_path.write_text(
        json.dumps(meta, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )
    return meta


def _verdict_for_row(row: dict, record, match_config: MatchConfig) -> dict:
    verdict = {
        "id": row["case_id"],
        "base_id": row["base_id"],
        "kind": row["kind"],
        "model_id": row["model_id"],
        "dataset": record.dataset_id,
        "lang": record.language,
        "answer_type": record.answer_type.value,
        "reasoning": sorted(t.value for t in record.tags.reasoning),
    }
    if row["kind"] == "DIR_SWAP":
        flag = check_swap_expectation(row["output"], row.get("expectation") or {})
        verdict.update(correct=flag, method="expectation",
                       best_similarity=None, flags=[])
        return verdict
    result = evaluate_answer(record, row["output"], match_config)
    verdict.update(
        correct=result.correct,
        method=result.method,
        best_similarity=result.best_similarity,
        flags=sorted(result.flags),
    )
    if record.gold:
        groups = [[ref.canonical, *ref.aliases] for ref in record.gold]
        matched, gold_n, asserted = f1_parts(groups, row["output"])
        verdict.update(matched_gold=matched, gold_count=gold_n, asserted=asserted)
    return verdict


def evaluate_runs(store_path: str | Path, runs_path: str | Path,
                  tau: float, out_dir: str | Path | None = None) -> dict:
    """Score every run row; write verdicts.jsonl, stability.json, eval_meta.json."""
    runs_path = Path(runs_path)
    out_dir = Path(out_dir) if out_dir else runs_path.parent
    out_dir.mkdir(parents=True, exist_ok=True)
    records = {r.id: r for r in read_store(store_path)}
    match_config = MatchConfig(tau=tau)

    verdicts: list[dict] = []
    unknown = 0
    with runs_path.open("r", encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            row = json.loads(line)
            record = records.get(row["base_id"])
            if record is None:
                unknown += 1
                logger.warning("run row for unknown record %s", row["base_id"])
                continue
            verdicts.append(_verdict_for_row(row, record, match_config))

    verdicts_path = out_dir / "verdicts.jsonl"
    with verdicts_path.open("w", encoding="utf-8", newline="\n") as fh:
        for verdict in verdicts:
            fh.write(_dump_row(verdict))
            fh.write("\n")

    stability = _stability_counts(verdicts)
    if stability:
        (out_dir / "stability.json").write_text(
            json.dumps(stability, sort_keys=True, indent=1) + "\n", encoding="utf-8"
        )

    meta = {"tau": tau, "verdicts": len(verdicts), "unknown_rows": unknown}
    run_meta_path = runs_path.parent / "run_meta.json"
    if run_meta_path.exists():
        run_meta = json.loads(run_meta_path.read_text(encoding="utf-8"))
        meta["config_hash"] = run_meta.get("config_hash")
        meta["seed"] = run_meta.get("seed")
        meta["batteries"] = run_meta.get("batteries")
    (out_dir / "eval_meta.json").write_text(
        json.dumps(meta, sort_keys=True, indent=1) + "\n", encoding="utf-8"
    )
    return meta


def _stability_counts(verdicts: list[dict]) -> dict[str, dict[str, int]]:
    """Per-model stability class counts from base/typo/paraphrase verdicts."""
    by_model: dict[str, dict[str, dict[str, bool]]] = {}
    for verdict in verdicts:
        kind = verdict["kind"]
        if kind not in ("BASE", "INV_TYPO", "INV_PARA"):
            continue
        model = by_model.setdefault(verdict["model_id"], {})
        model.setdefault(kind, {})[verdict["base_id"]] = bool(verdict["correct"])
    counts = {}
    for model_id, kinds in sorted(by_model.items()):
        if not all(k in kinds for k in ("BASE", "INV_TYPO", "INV_PARA")):
            continue
        classes = collect_stability(
            kinds["BASE"], kinds["INV_TYPO"], kinds["INV_PARA"]
        )
        if classes:
            counts[model_id] = count_stability_classes(classes)
    return counts


def _build_overall_table(base_verdicts: list[dict]) -> dict:
    by_model: dict[str, list[dict]] = {}
    for verdict in base_verdicts:
        by_model.setdefault(verdict["model_id"], []).append(verdict)
    columns = sorted(by_model)
    cells = {}
    for model in columns:
        cell = em_score(by_model[model])
        cells[model] = {"value": cell.value, "n": cell.n}
    return {
        "title": "Overall EM",
        "key": "scope",
        "columns": columns,
        "rows": [{"label": "all", "cells": cells}],
        "metadata": {"metric": "EM_accuracy"},
    }


def _operation_count(verdict: dict) -> int:
    return len(_OPERATION_NAMES.intersection(verdict.get("reasoning") or []))


def build_report_payload(out_dir: str | Path) -> dict:
    """Assemble the report dict from an evaluation directory."""
    out_dir = Path(out_dir)
    verdicts_path = out_dir / "verdicts.jsonl"
    if not verdicts_path.exists():
        raise FileNotFoundError(f"no verdicts at {verdicts_path}")
    verdicts = []
    with verdicts_path.open("r", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                verdicts.append(json.loads(line))

    meta = {}
    meta_path = out_dir / "eval_meta.json"
    if meta_path.exists():
        meta = json.loads(meta_path.read_text(encoding="utf-8"))

    by_kind: dict[str, list[dict]] = {}
    for verdict in verdicts:
        by_kind.setdefault(verdict["kind"], []).append(verdict)
    base = by_kind.get("BASE", [])

    tables: dict[str, dict] = {}
    if base:
        tables["overall"] = _build_overall_table(base)
        tables["by_dataset"] = build_dataset_table(base)
        tables["by_answer_type"] = aggregate_by(base, "answer_type")
        tables["by_language"] = aggregate_by(base, "language")
        tables["by_reasoning"] = aggregate_by(base, "reasoning_type")

    if base and "mft" in (meta.get("batteries") or []):
        single = [v for v in base if _operation_count(v) <= 1]
        multiple = [v for v in base if _operation_count(v) > 1]
        if single:
            table = aggregate_by(single, "reasoning_type")
            table["title"] = "EM by reasoning_type (single operation)"
            tables["mft_single"] = table
        if multiple:
            table = aggregate_by(multiple, "reasoning_type")
            table["title"] = "EM by reasoning_type (multiple operations)"
            tables["mft_multiple"] = table

    stability_path = out_dir / "stability.json"
    if stability_path.exists():
        counts = json.loads(stability_path.read_text(encoding="utf-8"))
        tables["stability"] = build_stability_table(counts)

    if by_kind.get("DIR_SWAP"):
        tables["swap_expectation"] = build_expectation_table(by_kind["DIR_SWAP"])
    if base and by_kind.get("DIR_HINT"):
        tables["hint_delta_by_answer_type"] = build_delta_table(
            base, by_kind["DIR_HINT"], "answer_type"
        )
    if base and by_kind.get("DIR_COT"):
        tables["cot_delta_by_answer_type"] = build_delta_table(
            base, by_kind["DIR_COT"], "answer_type"
        )
        tables["cot_delta_by_reasoning"] = build_delta_table(
            base, by_kind["DIR_COT"], "reasoning_type"
        )

    return {
        "config_hash": meta.get("config_hash") or "unconfigured",
        "seed": meta.get("seed", 0),
        "tau": meta.get("tau"),
        "summary": {
            "verdicts": len(verdicts),
            "base_questions": len({v["base_id"] for v in base}),
            "models": sorted({v["model_id"] for v in verdicts}),
        },
        "tables": tables,
    }


def report_from_dir(out_dir: str | Path, fmt: str) -> list[Path]:
    payload = build_report_payload(out_dir)
    return render_report(payload, fmt, out_dir)
