"""Verdict aggregation into renderable tables.

A table is a plain dict: title, key, columns (model ids), rows with one
cell per model, and metadata. Cells hold value/n pairs; a None value
renders as "-" (unanswerable rows keep their count but no score).
"""

from __future__ import annotations

from ..taxonomy import LANGUAGES, AnswerType, ReasoningType
from .metrics import em_score, f1_score

F1_DATASETS = frozenset({"graphq", "qald9", "lcquad2"})

_KEY_FIELDS = {
    "answer_type": "answer_type",
    "language": "lang",
    "dataset": "dataset",
}

_ANSWER_TYPE_ORDER = [t.value for t in AnswerType]
_REASONING_ORDER = [t.value for t in ReasoningType]


def _row_order(key: str, labels) -> list[str]:
    labels = set(labels)
    if key == "answer_type":
        ordered = [v for v in _ANSWER_TYPE_ORDER if v in labels]
    elif key == "reasoning_type":
        ordered = [v for v in _REASONING_ORDER if v in labels]
    elif key == "language":
        ordered = [v for v in LANGUAGES if v in labels]
    else:
        ordered = sorted(labels)
    leftover = sorted(labels - set(ordered))
    return ordered + leftover


def _group_labels(verdict: dict, key: str) -> list[str]:
    if key == "reasoning_type":
        return list(verdict.get("reasoning") or [])
    return [verdict[_KEY_FIELDS[key]]]


def aggregate_by(verdicts: list[dict], key: str) -> dict:
    """Group verdicts by key and score each (group, model) cell with EM."""
    if key not in ("answer_type", "reasoning_type", "language", "dataset"):
        raise ValueError(f"unknown aggregation key: {key!r}")
    groups: dict[str, dict[str, list[dict]]] = {}
    models: set[str] = set()
    for verdict in verdicts:
        models.add(verdict["model_id"])
        for label in _group_labels(verdict, key):
            groups.setdefault(label, {}).setdefault(verdict["model_id"], []).append(verdict)

    columns = sorted(models)
    rows = []
    for label in _row_order(key, groups):
        cells = {}
        for model in columns:
            items = groups[label].get(model, [])
            if not items:
                cells[model] = None
            elif key == "answer_type" and label == AnswerType.UNA.value:
                # unanswerable questions carry a count but no score
                cells[model] = {"value": None, "n": len(items)}
            else:
                cell = em_score(items)
                cells[model] = {"value": cell.value, "n": cell.n}
        rows.append({"label": label, "cells": cells})
    return {
        "title": f"EM by {key}",
        "key": key,
        "columns": columns,
        "rows": rows,
        "metadata": {
            "metric": "EM_accuracy",
            "overlapping": key == "reasoning_type",
        },
    }


def build_dataset_table(verdicts: list[dict]) -> dict:
    """Per-dataset scores; enumeration-F1 datasets get the F1 metric.

    The F1 reading is harness-defined (asserted answers come from
    enumeration segments), so rows carry their metric explicitly.
    """
    groups: dict[str, dict[str, list[dict]]] = {}
    models: set[str] = set()
    for verdict in verdicts:
        models.add(verdict["model_id"])
        groups.setdefault(verdict["dataset"], {}).setdefault(
            verdict["model_id"], []
        ).append(verdict)

    columns = sorted(models)
    rows = []
    for dataset in sorted(groups):
        metric = "F1" if dataset in F1_DATASETS else "EM_accuracy"
        cells = {}
        for model in columns:
            items = groups[dataset].get(model, [])
            if not items:
                cells[model] = None
                continue
            if metric == "F1":
                triples = [
                    (v.get("matched_gold", 1 if v["correct"] else 0),
                     v.get("gold_count", 1),
                     v.get("asserted", 1))
                    for v in items
                ]
                cell = f1_score(triples)
            else:
                cell = em_score(items)
            cells[model] = {"value": cell.value, "n": cell.n}
        rows.append({"label": dataset, "cells": cells, "metric": metric})
    return {
        "title": "Scores by dataset",
        "key": "dataset",
        "columns": columns,
        "rows": rows,
        "metadata": {
            "metric": "mixed",
            "f1_datasets": sorted(F1_DATASETS),
            "f1_note": "F1 is harness-defined: asserted answers are enumeration segments",
        },
    }


def build_stability_table(counts_by_model: dict[str, dict[str, int]]) -> dict:
    """Class counts plus the stability rate, one row per model."""
    from ..checklist import STABILITY_CLASSES, stability_rate

    columns = list(STABILITY_CLASSES) + ["Stability Rate"]
    rows = []
    for model in sorted(counts_by_model):
        counts = counts_by_model[model]
        cells: dict[str, object] = {c: counts.get(c, 0) for c in STABILITY_CLASSES}
        cells["Stability Rate"] = stability_rate(counts)
        rows.append({"label": model, "cells": cells})
    return {
        "title": "Stability classes",
        "key": "model",
        "columns": columns,
        "rows": rows,
        "metadata": {"stable_classes": ["CCC", "WWW"]},
    }


def build_delta_table(before: list[dict], after: list[dict], key: str) -> dict:
    """Before/after EM with a signed delta per (group, model) cell."""
    from .metrics import DeltaCell

    before_table = aggregate_by(before, key)
    after_table = aggregate_by(after, key)
    after_rows = {r["label"]: r for r in after_table["rows"]}
    columns = sorted(set(before_table["columns"]) | set(after_table["columns"]))
    rows = []
    for row in before_table["rows"]:
        label = row["label"]
        after_row = after_rows.get(label)
        cells = {}
        for model in columns:
            b = row["cells"].get(model)
            a = (after_row or {"cells": {}})["cells"].get(model)
            if not b or not a or b["value"] is None or a["value"] is None:
                cells[model] = None
                continue
            delta = DeltaCell(before=b["value"], after=a["value"])
            cells[model] = {
                "before": b["value"],
                "after": a["value"],
                "delta": delta.delta,
                "rendered": delta.rendered(),
            }
        rows.append({"label": label, "cells": cells})
    return {
        "title": f"EM delta by {key}",
        "key": key,
        "columns": columns,
        "rows": rows,
        "metadata": {"metric": "EM_delta"},
    }


def build_expectation_table(swap_verdicts: list[dict]) -> dict:
    """Percent of outputs matching the swapped-operation expectation."""
    groups: dict[str, list[dict]] = {}
    for verdict in swap_verdicts:
        groups.setdefault(verdict["model_id"], []).append(verdict)
    rows = []
    for model in sorted(groups):
        items = groups[model]
        cell = em_score(items)
        rows.append({
            "label": model,
            "cells": {"expected": {"value": cell.value, "n": cell.n}},
        })
    return {
        "title": "Expected SPARQL shape after phrase swap",
        "key": "model",
        "columns": ["expected"],
        "rows": rows,
        "metadata": {"metric": "expectation_rate"},
    }
