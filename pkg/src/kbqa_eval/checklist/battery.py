"""Battery assembly: which cases get generated for which records."""

from __future__ import annotations

import hashlib
import logging

from ..taxonomy import AnswerType
from .cases import STABILITY_CLASSES, TestCase, classify_stability
from .direction import SwapRuleError, gen_dir_cot, gen_dir_hint, gen_dir_swap
from .paraphrase import ParaphraseError, gen_paraphrase
from .typo import gen_typo

logger = logging.getLogger(__name__)


def mft_partition(records) -> tuple[list, list]:
    """Split records into single-operation and multi-operation groups."""
    single, multiple = [], []
    for record in records:
        (single if len(record.tags.operations) <= 1 else multiple).append(record)
    return single, multiple


def derive_seed(battery_seed: int, record_id: str) -> int:
    digest = hashlib.sha256(f"{battery_seed}:{record_id}".encode("utf-8")).hexdigest()
    return int(digest[:12], 16)


def build_inv_battery(records, seed: int, provider=None, rate: float = 0.1) -> list[TestCase]:
    """Typo and paraphrase variants per record, reproducible under seed."""
    cases: list[TestCase] = []
    for record in records:
        typo_seed = derive_seed(seed, record.id)
        cases.append(
            TestCase(
                base_id=record.id,
                kind="INV_TYPO",
                turns=(gen_typo(record.text, typo_seed, rate),),
                meta={"seed": typo_seed, "rate": rate},
            )
        )
        if provider is None:
            continue
        try:
            paraphrase = gen_paraphrase(record.text, provider)
        except ParaphraseError as exc:
            logger.warning("skip paraphrase for %s: %s", record.id, exc)
            continue
        cases.append(
            TestCase(
                base_id=record.id,
                kind="INV_PARA",
                turns=(paraphrase,),
                meta={"provider": getattr(provider, "provider_id", "unknown")},
            )
        )
    return cases


def build_dir_swap_battery(records) -> list[TestCase]:
    cases = []
    for record in records:
        try:
            cases.append(gen_dir_swap(record))
        except SwapRuleError as exc:
            logger.info("skip swap for %s: %s", record.id, exc)
    return cases


def build_dir_hint_battery(records) -> list[TestCase]:
    cases = []
    for record in records:
        if record.answer_type is AnswerType.UNA:
            logger.info("skip hint for %s: unanswerable", record.id)
            continue
        cases.append(gen_dir_hint(record))
    return cases


def build_dir_cot_battery(records, noun_provider=None) -> list[TestCase]:
    return [gen_dir_cot(record, noun_provider) for record in records]


def collect_stability(original, typo, paraphrase) -> dict[str, str]:
    """Class per base id present in all three verdict maps."""
    ids = set(original) & set(typo) & set(paraphrase)
    return {
        base_id: classify_stability(
            (original[base_id], typo[base_id], paraphrase[base_id])
        )
        for base_id in sorted(ids)
    }


def count_stability_classes(classes: dict[str, str]) -> dict[str, int]:
    counts = {name: 0 for name in STABILITY_CLASSES}
    for cls in classes.values():
        counts[cls] += 1
    return counts
