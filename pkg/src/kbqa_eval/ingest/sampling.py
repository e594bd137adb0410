"""Deterministic, optionally stratified sampling over record lists."""

from __future__ import annotations

import random
from typing import Callable

from .records import QuestionRecord

StratumKey = Callable[[QuestionRecord], object]


def by_answer_type(record: QuestionRecord) -> str:
    return record.answer_type.value


def by_language(record: QuestionRecord) -> str:
    return record.language


def sample_store(
    records: list[QuestionRecord],
    by: StratumKey | None,
    n: int,
    seed: int,
) -> list[QuestionRecord]:
    """Sample n records (per stratum when by is given), stable under seed.

    Records are keyed by id before sampling so the draw depends only on the
    store contents, not their order; strata larger than n are downsampled,
    smaller ones returned whole.
    """
    if n < 0:
        raise ValueError("sample size must be >= 0")
    if n == 0:
        return []
    ordered = sorted(records, key=lambda r: r.id)
    rng = random.Random(seed)
    if by is None:
        return sorted(rng.sample(ordered, min(n, len(ordered))), key=lambda r: r.id)
    strata: dict[str, list[QuestionRecord]] = {}
    for record in ordered:
        strata.setdefault(str(by(record)), []).append(record)
    picked: list[QuestionRecord] = []
    for key in sorted(strata):
        pool = strata[key]
        picked.extend(rng.sample(pool, min(n, len(pool))))
    return sorted(picked, key=lambda r: r.id)
