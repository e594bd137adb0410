"""Reference alias expansion backed by a knowledge-base label source.

Sources implement get(entity_id) -> {lang: [labels...]}. The remote client
talks to the Wikidata entity API and keeps an append-only JSONL cache of
{entity_id, lang, labels[]} rows; an offline source reads the same row
format from a local file. Expansion failures degrade to canonical-only and
set an "unexpanded" flag instead of failing the run.
"""

from __future__ import annotations

import json
import logging
import threading
from pathlib import Path

import requests

from ..ingest.records import ReferenceAnswer
from ..taxonomy import LANGUAGES

logger = logging.getLogger(__name__)

WIKIDATA_API = "https://www.wikidata.org/w/api.php"


class AliasSourceError(RuntimeError):
    """Alias source unreachable or returned an unusable response."""


def _wikidata_language(lang: str) -> str:
    # store tags use underscores; the KB API wants hyphenated BCP-47
    return lang.replace("_", "-")


class OfflineAliasSource:
    """Alias rows loaded from a local JSONL file."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._rows: dict[str, dict[str, list[str]]] = {}
        if not self.path.exists():
            raise AliasSourceError(f"alias file not found: {self.path}")
        with self.path.open("r", encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                row = json.loads(line)
                per_entity = self._rows.setdefault(row["entity_id"], {})
                per_entity[row["lang"]] = list(row["labels"])

    def get(self, entity_id: str) -> dict[str, list[str]]:
        return self._rows.get(entity_id, {})


class WikidataAliasClient:
    """Remote label/alias lookup with an on-disk JSONL cache.

    Reads are lock-free against the in-memory map; cache writes are
    serialized so concurrent evaluation never interleaves lines.
    """

    def __init__(
        self,
        cache_path: str | Path,
        languages: tuple[str, ...] = LANGUAGES,
        endpoint: str = WIKIDATA_API,
        session: requests.Session | None = None,
        timeout: float = 30.0,
    ):
        self.cache_path = Path(cache_path)
        self.languages = tuple(languages)
        self.endpoint = endpoint
        self.session = session or requests.Session()
        self.timeout = timeout
        self._cache: dict[str, dict[str, list[str]]] = {}
        self._write_lock = threading.Lock()
        self._load_cache()

    def _load_cache(self) -> None:
        if not self.cache_path.exists():
            return
        with self.cache_path.open("r", encoding="utf-8") as fh:
            for line in fh:
                if not line.strip():
                    continue
                try:
                    row = json.loads(line)
                    entity = self._cache.setdefault(row["entity_id"], {})
                    entity.setdefault(row["lang"], list(row["labels"]))
                except (json.JSONDecodeError, KeyError):
                    continue

    def _append_rows(self, entity_id: str, per_lang: dict[str, list[str]]) -> None:
        with self._write_lock:
            cached = self._cache.setdefault(entity_id, {})
            new_rows = {
                lang: labels for lang, labels in per_lang.items() if lang not in cached
            }
            if not new_rows:
                return
            cached.update(new_rows)
            self.cache_path.parent.mkdir(parents=True, exist_ok=True)
            with self.cache_path.open("a", encoding="utf-8") as fh:
                for lang in sorted(new_rows):
                    fh.write(
                        json.dumps(
                            {"entity_id": entity_id, "lang": lang, "labels": new_rows[lang]},
                            ensure_ascii=False,
                        )
                    )
                    fh.write("\n")

    def _fetch(self, entity_id: str) -> dict[str, list[str]]:
        params = {
            "action": "wbgetentities",
            "ids": entity_id,
            "props": "labels|aliases",
            "languages": "|".join(_wikidata_language(l) for l in self.languages),
            "format": "json",
        }
        try:
            response = self.session.get(self.endpoint, params=params, timeout=self.timeout)
            response.raise_for_status()
            payload = response.json()
        except (requests.RequestException, ValueError) as exc:
            raise AliasSourceError(f"alias lookup failed for {entity_id}: {exc}") from exc
        entity = (payload.get("entities") or {}).get(entity_id)
        if entity is None or "missing" in (entity or {}):
            return {lang: [] for lang in self.languages}
        labels = entity.get("labels") or {}
        aliases = entity.get("aliases") or {}
        per_lang: dict[str, list[str]] = {}
        for lang in self.languages:
            api_lang = _wikidata_language(lang)
            found: list[str] = []
            label = labels.get(api_lang)
            if label and label.get("value"):
                found.append(label["value"])
            for item in aliases.get(api_lang) or []:
                value = item.get("value")
                if value and value not in found:
                    found.append(value)
            per_lang[lang] = found
        return per_lang

    def get(self, entity_id: str) -> dict[str, list[str]]:
        cached = self._cache.get(entity_id)
        if cached is not None and all(lang in cached for lang in self.languages):
            return {lang: cached[lang] for lang in self.languages}
        fetched = self._fetch(entity_id)
        self._append_rows(entity_id, fetched)
        return {lang: self._cache[entity_id].get(lang, []) for lang in self.languages}


def expand_references(
    gold: list[ReferenceAnswer],
    alias_source,
    flags: list[str] | None = None,
) -> list[ReferenceAnswer]:
    """Add KB labels/aliases to entity-bearing references.

    The canonical string is always retained (and joins the alias list, so
    canonical membership holds after expansion). Entries without entity_id
    pass through unchanged. A failing source degrades to canonical-only and
    appends "unexpanded" to flags when a list is supplied.
    """
    expanded: list[ReferenceAnswer] = []
    failed = False
    for ref in gold:
        if not ref.entity_id:
            expanded.append(ref)
            continue
        aliases = [ref.canonical]
        for alias in ref.aliases:
            if alias not in aliases:
                aliases.append(alias)
        try:
            per_lang = alias_source.get(ref.entity_id)
        except AliasSourceError as exc:
            logger.warning("%s", exc)
            failed = True
            per_lang = {}
        for lang in sorted(per_lang):
            for label in per_lang[lang]:
                if label not in aliases:
                    aliases.append(label)
        expanded.append(
            ReferenceAnswer(canonical=ref.canonical, entity_id=ref.entity_id, aliases=aliases)
        )
    if failed and flags is not None and "unexpanded" not in flags:
        flags.append("unexpanded")
    return expanded
