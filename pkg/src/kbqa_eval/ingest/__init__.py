from .readers import READERS, IngestResult, ingest_dataset, load_dataset
from .records import IngestError, QuestionRecord, ReferenceAnswer, StoreError
from .sampling import by_answer_type, by_language, sample_store
from .store import (
    read_store,
    record_from_dict,
    record_to_dict,
    render_record,
    validate_store,
    write_store,
)

__all__ = [
    "IngestError",
    "IngestResult",
    "QuestionRecord",
    "READERS",
    "ReferenceAnswer",
    "StoreError",
    "by_answer_type",
    "by_language",
    "ingest_dataset",
    "load_dataset",
    "read_store",
    "record_from_dict",
    "record_to_dict",
    "render_record",
    "sample_store",
    "validate_store",
    "write_store",
]
