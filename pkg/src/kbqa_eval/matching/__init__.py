"""Answer matching: candidate pools, alias expansion, verdicts, calibration."""

from .aliases import (
    AliasSourceError,
    OfflineAliasSource,
    WikidataAliasClient,
    expand_references,
)
from .candidates import (
    CandidatePool,
    ParseFormatError,
    ParseNode,
    detokenize,
    extract_candidates,
    parse_tree,
)
from .embedding import EmbedderUnavailable, TrigramEmbedder, similarity_matrix
from .matcher import (
    MatchConfig,
    MatchResult,
    evaluate_answer,
    exact_match,
    extract_numbers,
    fuzzy_match,
    parse_boolean,
    parse_date,
    parse_number,
    reference_strings,
)
from .normalize import normalize
from .sweep import (
    CurvePoint,
    SweepResult,
    SweepSample,
    sweep_threshold,
    threshold_grid,
    write_curve_csv,
)

__all__ = [
    "AliasSourceError",
    "CandidatePool",
    "CurvePoint",
    "EmbedderUnavailable",
    "MatchConfig",
    "MatchResult",
    "OfflineAliasSource",
    "ParseFormatError",
    "ParseNode",
    "SweepResult",
    "SweepSample",
    "TrigramEmbedder",
    "WikidataAliasClient",
    "detokenize",
    "evaluate_answer",
    "exact_match",
    "expand_references",
    "extract_candidates",
    "extract_numbers",
    "fuzzy_match",
    "normalize",
    "parse_boolean",
    "parse_date",
    "parse_number",
    "parse_tree",
    "reference_strings",
    "similarity_matrix",
    "sweep_threshold",
    "threshold_grid",
    "write_curve_csv",
]
