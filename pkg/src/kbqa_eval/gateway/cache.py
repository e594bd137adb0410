"""Append-only JSONL response cache keyed by cache_key.

Outputs are immutable once stored: on load the first record for a key wins,
and a hit never triggers a rewrite. A truncated final line (interrupted
writer) is tolerated and dropped so long runs can resume.
"""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path

from .models import RunRecord

logger = logging.getLogger(__name__)


class ResponseCache:
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._records: dict[str, RunRecord] = {}
        self._lock = threading.Lock()
        self._load()

    def _load(self) -> None:
        if not self.path.exists():
            return
        with self.path.open("r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                try:
                    record = RunRecord.from_dict(json.loads(line))
                except (json.JSONDecodeError, KeyError) as exc:
                    logger.warning("%s: dropping cache line %d (%s)", self.path, line_no, exc)
                    continue
                self._records.setdefault(record.cache_key, record)

    def __len__(self) -> int:
        return len(self._records)

    def get(self, cache_key: str) -> RunRecord | None:
        with self._lock:
            return self._records.get(cache_key)

    def put(self, record: RunRecord) -> RunRecord:
        """Store a record unless its key is already present (first wins)."""
        with self._lock:
            existing = self._records.get(record.cache_key)
            if existing is not None:
                return existing
            self._records[record.cache_key] = record
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with self.path.open("a", encoding="utf-8") as fh:
                fh.write(json.dumps(record.to_dict(), ensure_ascii=False))
                fh.write("\n")
            return record
