"""Run configuration loading, overrides, and hashing."""

import json

import pytest

from kbqa_eval.config import (
    BATTERIES,
    ConfigError,
    RunConfig,
    apply_overrides,
    config_hash,
    load_config,
)
from kbqa_eval.gateway import ModelSpec


def write_config(tmp_path, body):
    path = tmp_path / "run.toml"
    path.write_text(body, encoding="utf-8")
    return path


def minimal_body(tmp_path, pre=""):
    # top-level keys must precede the [[models]] table in TOML
    store = tmp_path / "store.jsonl"
    store.write_text("", encoding="utf-8")
    return (
        f'store = "{store}"\n'
        + pre
        + '[[models]]\n'
        'id = "mock-a"\n'
        'endpoint = "mock://local"\n'
    )


def test_loads_minimal_config_with_defaults(tmp_path):
    path = write_config(tmp_path, minimal_body(tmp_path))
    config = load_config(path)
    assert config.tau == 0.78
    assert config.batteries == ("base",)
    assert config.max_parallel == 4
    assert config.seed == 0
    assert config.cache_path == (tmp_path / "cache" / "responses.jsonl").resolve()
    assert config.out_dir == (tmp_path / "out").resolve()
    assert config.models[0].model_id == "mock-a"
    assert config.models[0].params["temperature"] == 0.0


def test_relative_paths_resolve_against_config_dir(tmp_path):
    sub = tmp_path / "cfg"
    sub.mkdir()
    (sub / "store.jsonl").write_text("", encoding="utf-8")
    path = sub / "run.toml"
    path.write_text(
        'store = "store.jsonl"\nout_dir = "results"\n'
        '[[models]]\nid = "m"\nendpoint = "mock://local"\n',
        encoding="utf-8",
    )
    config = load_config(path)
    assert config.store_path == (sub / "store.jsonl").resolve()
    assert config.out_dir == (sub / "results").resolve()


def test_script_file_loads_into_params(tmp_path):
    script = tmp_path / "script.json"
    script.write_text(json.dumps({"Q?": "A."}), encoding="utf-8")
    body = minimal_body(tmp_path).replace(
        'endpoint = "mock://local"\n',
        f'endpoint = "mock://local"\nscript = "{script}"\nfallback = "pass"\n',
    )
    config = load_config(write_config(tmp_path, body))
    assert config.models[0].params["script"] == {"Q?": "A."}
    assert config.models[0].params["fallback"] == "pass"


def test_missing_script_file_is_an_error(tmp_path):
    body = minimal_body(tmp_path).replace(
        'endpoint = "mock://local"\n',
        'endpoint = "mock://local"\nscript = "nope.json"\n',
    )
    with pytest.raises(ConfigError, match="script"):
        load_config(write_config(tmp_path, body))


def test_missing_store_is_an_error(tmp_path):
    path = write_config(
        tmp_path,
        'store = "absent.jsonl"\n[[models]]\nid = "m"\nendpoint = "mock://x"\n',
    )
    with pytest.raises(ConfigError, match="store"):
        load_config(path)


def test_missing_config_file_is_an_error(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "absent.toml")


def test_malformed_toml_is_an_error(tmp_path):
    path = write_config(tmp_path, "store = [unterminated\n")
    with pytest.raises(ConfigError, match="parse"):
        load_config(path)


def test_model_entry_requires_id_and_endpoint(tmp_path):
    body = minimal_body(tmp_path).replace('id = "mock-a"\n', "")
    with pytest.raises(ConfigError, match="id"):
        load_config(write_config(tmp_path, body))


def test_no_models_is_an_error(tmp_path):
    store = tmp_path / "store.jsonl"
    store.write_text("", encoding="utf-8")
    with pytest.raises(ConfigError, match="model"):
        load_config(write_config(tmp_path, f'store = "{store}"\n'))


def test_unknown_battery_is_an_error(tmp_path):
    body = minimal_body(tmp_path, 'batteries = ["base", "nope"]\n')
    with pytest.raises(ConfigError, match="nope"):
        load_config(write_config(tmp_path, body))


def test_tau_out_of_range_is_an_error(tmp_path):
    body = minimal_body(tmp_path, "tau = 1.5\n")
    with pytest.raises(ConfigError, match="tau"):
        load_config(write_config(tmp_path, body))


def test_missing_paraphrase_file_is_an_error(tmp_path):
    body = minimal_body(tmp_path, 'paraphrases = "absent.json"\n')
    with pytest.raises(ConfigError, match="paraphrase"):
        load_config(write_config(tmp_path, body))


def _config(models=("a", "b"), **kwargs):
    specs = tuple(ModelSpec(model_id=m, endpoint="mock://x") for m in models)
    defaults = dict(
        models=specs,
        store_path="store.jsonl",
        cache_path="cache.jsonl",
        out_dir="out",
    )
    defaults.update(kwargs)
    return RunConfig(**defaults)


def test_override_narrows_and_reorders_models():
    config = apply_overrides(_config(), model_ids=["b", "a"])
    assert [m.model_id for m in config.models] == ["b", "a"]
    config = apply_overrides(_config(), model_ids=["b"])
    assert [m.model_id for m in config.models] == ["b"]


def test_override_unknown_model_is_an_error():
    with pytest.raises(ConfigError, match="zzz"):
        apply_overrides(_config(), model_ids=["zzz"])


def test_override_batteries():
    config = apply_overrides(_config(), batteries=["inv", "base"])
    assert config.batteries == ("inv", "base")
    with pytest.raises(ConfigError):
        apply_overrides(_config(), batteries=["nope"])


def test_override_none_keeps_config():
    config = _config()
    assert apply_overrides(config, None, None) is config


def test_battery_names_are_the_cli_vocabulary():
    assert BATTERIES == ("base", "inv", "dir-swap", "dir-hint", "dir-cot", "mft")


def test_hash_is_stable_and_sensitive():
    a = config_hash(_config())
    assert a == config_hash(_config())
    assert len(a) == 16
    assert a != config_hash(_config(tau=0.5))
    assert a != config_hash(_config(models=("a",)))
    assert a != config_hash(_config(seed=7))
    # output location does not change what the run computes
    assert a == config_hash(_config(out_dir="elsewhere"))
