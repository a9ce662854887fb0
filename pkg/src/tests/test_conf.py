import pytest
import yaml

from nilsoliton.utils.conf import (
    get_config,
    load_config,
    load_defaults,
    merge_config,
    parse_tolerance_env,
    set_config,
    tolerance,
)


def test_defaults_have_every_section():
    defaults = load_defaults()
    assert set(defaults) == {"tolerances", "flow", "eigenvalue_type"}
    assert set(defaults["tolerances"]) == {
        "rank", "structure", "minimality", "spectrum", "jacobi", "einstein",
    }
    assert defaults["flow"]["max_iter"] == 10000


def test_merge_config_overrides_single_keys():
    base = {"tolerances": {"rank": 1e-9, "jacobi": 1e-9}, "flow": {"step": 0.1}}
    merged = merge_config(base, {"tolerances": {"jacobi": 1e-6}})
    assert merged == {"tolerances": {"rank": 1e-9, "jacobi": 1e-6}, "flow": {"step": 0.1}}
    assert base["tolerances"]["jacobi"] == 1e-9


def test_merge_config_rejects_unknown_sections():
    with pytest.raises(ValueError):
        merge_config({"flow": {}}, {"flwo": {"step": 1.0}})


def test_load_config_from_file(tmp_path):
    path = tmp_path / "override.yaml"
    path.write_text(yaml.safe_dump({"flow": {"step": 0.05}, "tolerances": {"spectrum": 1e-6}}))
    config = load_config(str(path), environ={})
    assert config["flow"]["step"] == 0.05
    assert config["flow"]["shrink"] == 0.5
    assert config["tolerances"]["spectrum"] == 1e-6
    assert config["tolerances"]["rank"] == 1e-9


@pytest.mark.parametrize("raw,expected", [("", None), ("  ", None), ("1e-6", 1e-6), (" 0.001 ", 1e-3)])
def test_parse_tolerance_env(raw, expected):
    assert parse_tolerance_env({"NILSOLITON_TOL": raw}) == expected


def test_parse_tolerance_env_rejects_garbage():
    with pytest.raises(ValueError):
        parse_tolerance_env({"NILSOLITON_TOL": "tight"})


def test_environment_overrides_minimality_and_flow():
    config = load_config(environ={"NILSOLITON_TOL": "1e-5"})
    assert config["tolerances"]["minimality"] == 1e-5
    assert config["flow"]["tol"] == 1e-5
    assert config["tolerances"]["rank"] == 1e-9


def test_active_config(default_config, monkeypatch):
    assert get_config() is default_config
    assert tolerance("jacobi") == 1e-9

    set_config(None)
    monkeypatch.setenv("NILSOLITON_TOL", "1e-4")
    assert tolerance("minimality") == 1e-4
