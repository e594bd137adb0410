"""Behavioral test batteries: invariance, direction, and stability scoring."""

from .battery import (
    build_dir_cot_battery,
    build_dir_hint_battery,
    build_dir_swap_battery,
    build_inv_battery,
    collect_stability,
    count_stability_classes,
    derive_seed,
    mft_partition,
)
from .cases import (
    CASE_KINDS,
    STABILITY_CLASSES,
    STABLE_CLASSES,
    CaseError,
    TestCase,
    case_from_dict,
    case_to_dict,
    classify_stability,
    read_battery,
    stability_rate,
    write_battery,
)
from .direction import (
    HintConfigError,
    SwapRuleError,
    check_sparql_expectation,
    check_swap_expectation,
    fallback_nouns,
    gen_dir_cot,
    gen_dir_hint,
    gen_dir_swap,
    load_hint_config,
    load_swap_rules,
)
from .paraphrase import (
    FixtureParaphraser,
    ModelParaphraser,
    ParaphraseError,
    gen_paraphrase,
)
from .typo import gen_typo

__all__ = [
    "CASE_KINDS",
    "STABILITY_CLASSES",
    "STABLE_CLASSES",
    "CaseError",
    "FixtureParaphraser",
    "HintConfigError",
    "ModelParaphraser",
    "ParaphraseError",
    "SwapRuleError",
    "TestCase",
    "build_dir_cot_battery",
    "build_dir_hint_battery",
    "build_dir_swap_battery",
    "build_inv_battery",
    "case_from_dict",
    "case_to_dict",
    "check_sparql_expectation",
    "check_swap_expectation",
    "classify_stability",
    "collect_stability",
    "count_stability_classes",
    "derive_seed",
    "fallback_nouns",
    "gen_dir_cot",
    "gen_dir_hint",
    "gen_dir_swap",
    "gen_paraphrase",
    "gen_typo",
    "load_hint_config",
    "load_swap_rules",
    "mft_partition",
    "read_battery",
    "stability_rate",
    "write_battery",
]
