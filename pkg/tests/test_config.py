import json

import pytest

from config import DEFAULT_CONFIG, ENV_OVERRIDES, RunConfig, load_run_config, with_overrides


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for variable in ENV_OVERRIDES:
        monkeypatch.delenv(variable, raising=False)


def test_defaults():
    config = RunConfig()
    assert config.band == DEFAULT_CONFIG["band"]
    assert config.tol("null_threshold") == 1e-8
    assert config.tol("gap_ratio") == 10.0
    assert config.format == "pretty"


@pytest.mark.parametrize("kwargs", [
    {"band": 0},
    {"grid_points": 0},
    {"seed": 2**64},
    {"format": "xml"},
    {"tolerances": {"exact": 0.0}},
])
def test_validation(kwargs):
    with pytest.raises(ValueError):
        RunConfig(**kwargs)


def test_dict_round_trip_fills_missing_tolerances():
    config = RunConfig.from_dict({"band": 8, "tolerances": {"numeric": 1e-6}})
    assert config.tol("numeric") == 1e-6
    assert config.tol("exact") == 1e-12
    assert RunConfig.from_dict(config.to_dict()) == config


def test_unknown_keys_are_rejected():
    with pytest.raises(ValueError, match="bandwidth"):
        RunConfig.from_dict({"bandwidth": 8})


def test_precedence(tmp_path, monkeypatch):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"band": 8, "seed": 3, "tolerances": {"membership": 1e-9}}))
    assert load_run_config(path).band == 8

    monkeypatch.setenv("PAIRED_N", "16")
    monkeypatch.setenv("PAIRED_FORMAT", "json")
    config = load_run_config(path)
    assert (config.band, config.seed, config.format) == (16, 3, "json")

    config = with_overrides(load_run_config(path), band=4, seed=None)
    assert config.band == 4 and config.seed == 3
    assert config.tol("membership") == 1e-9 and config.tol("exact") == 1e-12


def test_environment_can_be_ignored(monkeypatch):
    monkeypatch.setenv("PAIRED_SEED", "42")
    assert load_run_config().seed == 42
    assert load_run_config(use_environment=False).seed == DEFAULT_CONFIG["seed"]


def test_with_overrides_skips_none():
    config = with_overrides(RunConfig(), band=12, seed=None)
    assert config.band == 12 and config.seed == DEFAULT_CONFIG["seed"]


def test_save_writes_loadable_json(tmp_path):
    path = tmp_path / "saved.json"
    RunConfig(band=6, output="out.json").save(path)
    assert load_run_config(path, use_environment=False) == RunConfig(band=6, output="out.json")
