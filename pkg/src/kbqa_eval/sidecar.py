"""Thin client for the optional NLP sidecar service.

The harness never requires the service. Embedding failures surface as
EmbedderUnavailable, which the fuzzy matcher already answers by dropping
to its built-in trigram fallback, and parse or entity lookups degrade to
None, which callers read as "no enrichment". Any object with requests
style post and get methods can stand in as the transport.
"""

from __future__ import annotations

import numpy as np

from .matching.candidates import ParseNode
from .matching.embedding import EmbedderUnavailable

_PHRASE_LABELS = ("NP", "VP")
_ENTITY_TYPES = ("PER", "LOC", "ORG", "MISC")
_MAX_BATCH = 256


class SidecarError(RuntimeError):
    """The service answered with something other than a usable payload."""


class SidecarClient:
    """JSON-over-HTTP adapter onto the harness's injection points.

    The instance itself satisfies the embedder protocol, so it can sit
    directly in MatchConfig(embedder=...). parse_tree feeds
    extract_candidates(parse=...) and entity_label mirrors the rule
    tagger's one-string contract.
    """

    name = "sidecar"

    def __init__(self, base_url: str, timeout: float = 10.0, session=None):
        if session is None:
            import requests

            session = requests.Session()
        self._session = session
        self._base = base_url.rstrip("/")
        self._timeout = timeout
        self.dim: int | None = None

    def _post(self, path: str, payload: dict) -> dict:
        try:
            resp = self._session.post(
                self._base + path, json=payload, timeout=self._timeout
            )
        except Exception as exc:
            raise SidecarError(f"sidecar unreachable: {exc}") from exc
        if resp.status_code != 200:
            raise SidecarError(f"sidecar {path} answered {resp.status_code}")
        try:
            return resp.json()
        except ValueError as exc:
            raise SidecarError(f"sidecar {path} returned invalid JSON") from exc

    def healthy(self) -> bool:
        try:
            resp = self._session.get(self._base + "/healthz", timeout=self._timeout)
        except Exception:
            return False
        if resp.status_code != 200:
            return False
        try:
            return resp.json().get("status") == "ready"
        except ValueError:
            return False

    def embed(self, texts: list[str]) -> np.ndarray:
        if isinstance(texts, str):
            raise TypeError("embed expects a list of strings, not a single string")
        texts = list(texts)
        # the service rejects empty strings; they embed to the zero row,
        # matching what the built-in fallback produces for them
        keep = [i for i, t in enumerate(texts) if t]
        rows: list[np.ndarray] = []
        for lo in range(0, len(keep), _MAX_BATCH):
            batch = [texts[i] for i in keep[lo : lo + _MAX_BATCH]]
            try:
                data = self._post("/embed", {"texts": batch})
            except SidecarError as exc:
                raise EmbedderUnavailable(str(exc)) from exc
            vectors = np.asarray(data.get("vectors", ()), dtype=np.float64)
            if vectors.ndim != 2 or vectors.shape[0] != len(batch):
                raise EmbedderUnavailable(
                    f"sidecar returned {vectors.shape} vectors for {len(batch)} texts"
                )
            rows.append(vectors)
        if not rows:
            if self.dim is None:
                # all inputs were empty; probe once so the zero rows get
                # the service's real width and stay stackable later
                try:
                    probe = self._post("/embed", {"texts": ["x"]})
                except SidecarError as exc:
                    raise EmbedderUnavailable(str(exc)) from exc
                self.dim = int(probe.get("dim") or len(probe["vectors"][0]))
            return np.zeros((len(texts), self.dim), dtype=np.float64)
        width = rows[0].shape[1]
        self.dim = int(width)
        out = np.zeros((len(texts), width), dtype=np.float64)
        filled = np.vstack(rows)
        for row, index in enumerate(keep):
            out[index] = filled[row]
        return out

    def parse_tree(self, text: str, lang: str = "en") -> ParseNode | None:
        """Shallow constituent tree for extract_candidates, None when unusable."""
        if not text or not text.strip():
            return None
        try:
            data = self._post("/parse", {"text": text, "lang": lang})
        except SidecarError:
            return None
        children = []
        for item in data.get("phrases", ()):
            if not isinstance(item, dict):
                continue
            label = item.get("label")
            words = str(item.get("text", "")).split()
            if label not in _PHRASE_LABELS or not words:
                continue
            leaves = tuple(ParseNode(label="TOK", token=w) for w in words)
            children.append(ParseNode(label=label, children=leaves))
        if not children:
            return None
        return ParseNode(label="TOP", children=tuple(children))

    def entity_label(self, text: str) -> str | None:
        """Type of the first served entity, None when nothing fires or the call fails."""
        if not text or not text.strip():
            return None
        try:
            data = self._post("/ner", {"text": text})
        except SidecarError:
            return None
        for entity in data.get("entities", ()):
            if isinstance(entity, dict) and entity.get("type") in _ENTITY_TYPES:
                return entity["type"]
        return None
