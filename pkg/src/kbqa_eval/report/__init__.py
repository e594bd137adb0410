"""Aggregation of verdicts into tables and deterministic report files."""

from .metrics import (
    DeltaCell,
    ScoreCell,
    em_score,
    enumeration_segments,
    f1_parts,
    f1_score,
    question_f1,
)
from .render import FORMATS, render_markdown, render_report, render_table_csv, render_table_markdown
from .tables import (
    F1_DATASETS,
    aggregate_by,
    build_dataset_table,
    build_delta_table,
    build_expectation_table,
    build_stability_table,
)

__all__ = [
    "F1_DATASETS",
    "FORMATS",
    "DeltaCell",
    "ScoreCell",
    "aggregate_by",
    "build_dataset_table",
    "build_delta_table",
    "build_expectation_table",
    "build_stability_table",
    "em_score",
    "enumeration_segments",
    "f1_parts",
    "f1_score",
    "question_f1",
    "render_markdown",
    "render_report",
    "render_table_csv",
    "render_table_markdown",
]
