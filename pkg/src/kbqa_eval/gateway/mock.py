"""Deterministic in-process model for tests and offline runs.

The script and fallback live in ModelSpec.params, so they participate in
cache keys like any other decoding parameter. Resolution order for the last
turn: "echo: X" returns X, then the script mapping, then the fallback.
"""

from __future__ import annotations

from .models import ModelSpec

MOCK_ENDPOINT = "mock://local"
_ECHO_PREFIX = "echo: "


def mock_model(
    script: dict[str, str] | None = None,
    fallback: str = "I do not know.",
    model_id: str = "mock",
    latency: float = 0.0,
    **params,
) -> ModelSpec:
    """Build a fully deterministic ModelSpec; unknown prompts get fallback."""
    merged = {
        "temperature": 0.0,
        "script": dict(script or {}),
        "fallback": fallback,
        **params,
    }
    if latency:
        merged["latency"] = latency
    return ModelSpec(model_id=model_id, endpoint=MOCK_ENDPOINT, params=merged)


def run_mock(spec: ModelSpec, turns: list[str]) -> str:
    import time

    latency = float(spec.params.get("latency", 0.0))
    if latency:
        time.sleep(latency)
    prompt = turns[-1]
    if prompt.startswith(_ECHO_PREFIX):
        return prompt[len(_ECHO_PREFIX):]
    script = spec.params.get("script", {})
    if prompt in script:
        return script[prompt]
    return spec.params.get("fallback", "")
