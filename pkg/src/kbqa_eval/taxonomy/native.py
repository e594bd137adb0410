"""Mapping of dataset-native annotations onto the unified tag vocabulary.

Each source dataset carries its own partial labeling (question type,
compositionality, function, ...). The value maps live in a versioned JSON
resource; values are compared case-insensitively. An unknown dataset is an
error, an unknown value within a known dataset is simply unmapped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

from .types import AnswerType, ReasoningType, TagError


class UnsupportedDatasetError(TagError):
    """Dataset id has no native tag map."""


@dataclass(frozen=True)
class NativeTags:
    answer_type: AnswerType | None = None
    reasoning: frozenset[ReasoningType] = field(default_factory=frozenset)


@lru_cache(maxsize=1)
def _maps() -> dict:
    ref = resources.files("kbqa_eval.resources").joinpath("native_tag_maps.json")
    return json.loads(ref.read_text(encoding="utf-8"))


def supported_datasets() -> tuple[str, ...]:
    return tuple(sorted(_maps()["datasets"]))


def map_native_value(dataset_id: str, value: str | None) -> NativeTags:
    """Translate one native annotation value for dataset_id into tags."""
    datasets = _maps()["datasets"]
    if dataset_id not in datasets:
        raise UnsupportedDatasetError(f"no native tag map for dataset {dataset_id!r}")
    if value is None:
        return NativeTags()
    table = datasets[dataset_id]
    key = value.strip().lower()
    at_raw = table["answer_type"].get(key)
    reasoning = frozenset(ReasoningType(t) for t in table["reasoning"].get(key, ()))
    return NativeTags(
        answer_type=AnswerType(at_raw) if at_raw is not None else None,
        reasoning=reasoning,
    )
