import json

import pytest

from signstream.config import ConfigError, EngineConfig, load_config
from signstream.landmarks import DEFAULT_LABELS


def test_defaults_match_engine_settings():
    cfg = load_config(env={})
    assert cfg == EngineConfig()
    assert cfg.labels == DEFAULT_LABELS
    assert cfg.landmark_count == 129
    assert cfg.window_capacity == 30
    assert cfg.time_threshold_s == 5.0
    assert cfg.min_count == 5


def test_file_overrides_defaults(tmp_path):
    p = tmp_path / "engine.json"
    p.write_text(json.dumps({"port": 9001, "time_threshold_s": 2.5}))
    cfg = load_config(p, env={})
    assert cfg.port == 9001
    assert cfg.time_threshold_s == 2.5
    assert cfg.host == "127.0.0.1"


def test_env_overrides_file(tmp_path):
    p = tmp_path / "engine.json"
    p.write_text(json.dumps({"port": 9001, "stride": 2}))
    env = {"SIGNSTREAM_PORT": "9002", "SIGNSTREAM_CONFIDENCE_FLOOR": "0.25"}
    cfg = load_config(p, env=env)
    assert cfg.port == 9002            # env wins over file
    assert cfg.stride == 2             # file value survives where env is silent
    assert cfg.confidence_floor == 0.25


def test_env_labels_parse_as_comma_list():
    env = {"SIGNSTREAM_LABELS": "rest, wave ,point", "SIGNSTREAM_IDLE_LABEL": "rest"}
    cfg = load_config(env=env)
    assert cfg.labels == ("rest", "wave", "point")
    assert cfg.vocabulary().idle_label == "rest"


def test_missing_file_is_an_error(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_config(tmp_path / "nope.json", env={})


def test_invalid_json_is_an_error(tmp_path):
    p = tmp_path / "engine.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError, match="not valid JSON"):
        load_config(p, env={})


def test_non_object_top_level_is_an_error(tmp_path):
    p = tmp_path / "engine.json"
    p.write_text("[1, 2]")
    with pytest.raises(ConfigError, match="top level"):
        load_config(p, env={})


def test_unknown_keys_are_named(tmp_path):
    p = tmp_path / "engine.json"
    p.write_text(json.dumps({"prot": 1, "window": 3}))
    with pytest.raises(ConfigError, match=r"\['prot', 'window'\]"):
        load_config(p, env={})


def test_bad_numeric_coercion_is_an_error():
    with pytest.raises(ConfigError, match="port"):
        load_config(env={"SIGNSTREAM_PORT": "eight"})


def test_bad_labels_type_is_an_error(tmp_path):
    p = tmp_path / "engine.json"
    p.write_text(json.dumps({"labels": [1, 2, 3]}))
    with pytest.raises(ConfigError, match="labels"):
        load_config(p, env={})


def test_semantic_validation_runs_on_the_merged_config():
    # labels that drop the idle label are rejected even though each value is
    # individually well formed
    env = {"SIGNSTREAM_LABELS": "wave,point"}
    with pytest.raises(ConfigError, match="not_signing"):
        load_config(env=env)


def test_session_config_carries_every_pipeline_field(tmp_path):
    p = tmp_path / "engine.json"
    p.write_text(json.dumps({"window_capacity": 7, "landmark_count": 3,
                             "stride": 2, "min_count": 9,
                             "time_threshold_s": 1.5,
                             "confidence_floor": 0.4}))
    sc = load_config(p, env={}).session_config()
    assert (sc.window_capacity, sc.landmark_count, sc.stride) == (7, 3, 2)
    assert sc.dim == 6
    assert (sc.segmentation.min_count, sc.segmentation.time_threshold_s,
            sc.segmentation.confidence_floor) == (9, 1.5, 0.4)
