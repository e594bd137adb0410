"""Model specifications and run records."""

from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field


def default_auth_env(model_id: str) -> str:
    """Environment variable holding the API key for a model id."""
    return re.sub(r"[^A-Za-z0-9]+", "_", model_id).upper() + "_API_KEY"


@dataclass(frozen=True)
class ModelSpec:
    model_id: str
    endpoint: str
    auth_env: str | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.model_id:
            raise ValueError("model_id must be non-empty")

    @property
    def temperature(self) -> float:
        return float(self.params.get("temperature", 0.0))

    @property
    def is_mock(self) -> bool:
        return self.endpoint.startswith("mock://")

    def resolved_auth_env(self) -> str:
        return self.auth_env or default_auth_env(self.model_id)


def compute_cache_key(model_id: str, params: dict, turns: list[str]) -> str:
    payload = json.dumps(
        {"model_id": model_id, "params": params, "turns": list(turns)},
        sort_keys=True,
        ensure_ascii=False,
        separators=(",", ":"),
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class RunRecord:
    model_id: str
    turns: tuple[str, ...]
    output: str
    cache_key: str
    params: dict
    created_at: float

    @staticmethod
    def create(spec: ModelSpec, turns: list[str], output: str) -> "RunRecord":
        return RunRecord(
            model_id=spec.model_id,
            turns=tuple(turns),
            output=output,
            cache_key=compute_cache_key(spec.model_id, spec.params, list(turns)),
            params=dict(spec.params),
            created_at=time.time(),
        )

    def to_dict(self) -> dict:
        return {
            "cache_key": self.cache_key,
            "model_id": self.model_id,
            "turns": list(self.turns),
            "params": self.params,
            "output": self.output,
            "created_at": self.created_at,
        }

    @staticmethod
    def from_dict(data: dict) -> "RunRecord":
        return RunRecord(
            model_id=data["model_id"],
            turns=tuple(data["turns"]),
            output=data["output"],
            cache_key=data["cache_key"],
            params=dict(data.get("params", {})),
            created_at=float(data.get("created_at", 0.0)),
        )
