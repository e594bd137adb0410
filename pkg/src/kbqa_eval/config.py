"""Run configuration: one TOML file, flag overrides, stable hash.

Paths inside the file resolve relative to the file's directory so a
config checked in next to its fixtures works from any cwd. The config
hash covers everything that affects outputs; it goes into run metadata
and reports so a result can be traced back to its exact setup.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib

from .gateway import ModelSpec

BATTERIES = ("base", "inv", "dir-swap", "dir-hint", "dir-cot", "mft")


class ConfigError(ValueError):
    """Config file missing, malformed, or referencing bad paths."""


@dataclass(frozen=True)
class RunConfig:
    models: tuple[ModelSpec, ...]
    store_path: Path
    cache_path: Path
    out_dir: Path
    tau: float = 0.78
    batteries: tuple[str, ...] = ("base",)
    max_parallel: int = 4
    seed: int = 0
    paraphrase_file: Path | None = None
    requests_per_second: float | None = None
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.models:
            raise ConfigError("config needs at least one model")
        if not 0.0 <= self.tau <= 1.0:
            raise ConfigError(f"tau must be within [0, 1], got {self.tau}")
        if self.max_parallel < 1:
            raise ConfigError("max_parallel must be at least 1")
        unknown = set(self.batteries) - set(BATTERIES)
        if unknown:
            raise ConfigError(f"unknown batteries: {sorted(unknown)}")


def _load_model(entry: dict, base_dir: Path) -> ModelSpec:
    try:
        model_id = entry["id"]
        endpoint = entry["endpoint"]
    except KeyError as exc:
        raise ConfigError(f"model entry needs {exc.args[0]!r}")
    params = dict(entry.get("params") or {})
    params.setdefault("temperature", 0.0)
    script_path = entry.get("script")
    if script_path:
        script_file = (base_dir / script_path).resolve()
        if not script_file.exists():
            raise ConfigError(f"mock script not found: {script_file}")
        with script_file.open(encoding="utf-8") as fh:
            params["script"] = json.load(fh)
    if "fallback" in entry:
        params["fallback"] = entry["fallback"]
    return ModelSpec(
        model_id=model_id,
        endpoint=endpoint,
        auth_env=entry.get("auth_env"),
        params=params,
    )


def load_config(path: str | Path) -> RunConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    with path.open("rb") as fh:
        try:
            raw = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"config parse error: {exc}")
    base_dir = path.parent

    def resolve(key, default=None, required=False):
        value = raw.get(key, default)
        if value is None:
            if required:
                raise ConfigError(f"config needs {key!r}")
            return None
        return (base_dir / value).resolve()

    store_path = resolve("store", required=True)
    if not store_path.exists():
        raise ConfigError(f"store not found: {store_path}")
    models = tuple(_load_model(m, base_dir) for m in raw.get("models") or [])
    config = RunConfig(
        models=models,
        store_path=store_path,
        cache_path=resolve("cache", default="cache/responses.jsonl"),
        out_dir=resolve("out_dir", default="out"),
        tau=float(raw.get("tau", 0.78)),
        batteries=tuple(raw.get("batteries") or ("base",)),
        max_parallel=int(raw.get("max_parallel", 4)),
        seed=int(raw.get("seed", 0)),
        paraphrase_file=resolve("paraphrases"),
        requests_per_second=(
            float(raw["requests_per_second"]) if "requests_per_second" in raw else None
        ),
    )
    if config.paraphrase_file and not config.paraphrase_file.exists():
        raise ConfigError(f"paraphrase file not found: {config.paraphrase_file}")
    return config


def apply_overrides(
    config: RunConfig,
    model_ids: list[str] | None = None,
    batteries: list[str] | None = None,
) -> RunConfig:
    """Narrow a config from the command line; flags win over the file."""
    updated = config
    if model_ids:
        known = {m.model_id: m for m in config.models}
        missing = [m for m in model_ids if m not in known]
        if missing:
            raise ConfigError(f"models not in config: {missing}")
        updated = replace(updated, models=tuple(known[m] for m in model_ids))
    if batteries:
        unknown = set(batteries) - set(BATTERIES)
        if unknown:
            raise ConfigError(f"unknown batteries: {sorted(unknown)}")
        updated = replace(updated, batteries=tuple(batteries))
    return updated


def config_hash(config: RunConfig) -> str:
    """Stable digest of everything that shapes run outputs."""
    payload = {
        "models": [
            {
                "model_id": m.model_id,
                "endpoint": m.endpoint,
                "auth_env": m.auth_env,
                "params": m.params,
            }
            for m in config.models
        ],
        "store": str(config.store_path),
        "tau": config.tau,
        "batteries": list(config.batteries),
        "seed": config.seed,
    }
    canonical = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
