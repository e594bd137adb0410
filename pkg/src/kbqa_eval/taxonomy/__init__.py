from .answer_type import AnswerTypeDecision, classify_answer_type
from .native import NativeTags, UnsupportedDatasetError, map_native_value, supported_datasets
from .ner import RuleNer, label_entity
from .reasoning import ReasoningClassificationError, classify_reasoning
from .types import (
    LANGUAGES,
    OPERATION_TAGS,
    TOPOLOGY_TAGS,
    AnswerType,
    FeatureTags,
    ReasoningType,
    TagError,
    normalize_language,
    validate_language,
)

__all__ = [
    "AnswerType",
    "AnswerTypeDecision",
    "FeatureTags",
    "LANGUAGES",
    "NativeTags",
    "OPERATION_TAGS",
    "ReasoningClassificationError",
    "ReasoningType",
    "RuleNer",
    "TOPOLOGY_TAGS",
    "TagError",
    "UnsupportedDatasetError",
    "classify_answer_type",
    "classify_reasoning",
    "label_entity",
    "map_native_value",
    "normalize_language",
    "supported_datasets",
    "validate_language",
]
