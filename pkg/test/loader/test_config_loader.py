"""Test run configuration files."""

import json

import pytest

from mixedmag.exceptions import ConfigError
from mixedmag.loader import ConfigLoader, validate_config
from mixedmag.models import Formulation, RunConfig

from .. import MESHES_PATH, RESOURCES_PATH


def test_load_study_config():
    """Test typed values of the study fixture."""
    values = ConfigLoader.load(RESOURCES_PATH / "study.json")
    assert values == {
        "case": "manufactured_linear",
        "formulation": Formulation.MIXED,
        "order": 1,
        "levels": 2,
        "base_n": 2,
        "tol": 1e-10,
    }


def test_paths_are_relative_to_file(tmp_path):
    """Test path entries resolve against the configuration directory."""
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"mesh": "meshes/a.msh", "output": "out"}), encoding="utf-8")
    values = ConfigLoader.load(path)
    assert values == {"mesh": tmp_path / "meshes/a.msh", "output": tmp_path / "out"}


def test_merge():
    """Test loaded values replace RunConfig fields."""
    config = ConfigLoader.merge(RunConfig("study"), ConfigLoader.load(RESOURCES_PATH / "study.json"))
    assert config.subcommand == "study"
    assert config.formulation is Formulation.MIXED
    assert (config.levels, config.base_n, config.tol) == (2, 2, 1e-10)
    assert config.max_iterations is None


@pytest.mark.parametrize(
    ("document", "message"),
    [
        ([1, 2], "must be a JSON object"),
        ({"colour": "red"}, "unknown configuration key 'colour'"),
        ({"order": 1.5}, "invalid value 1.5 for 'order'"),
        ({"levels": True}, "invalid value True"),
        ({"formulation": "dual"}, "invalid value 'dual'"),
        ({"tol": "small"}, "'tol'"),
    ],
)
def test_invalid_documents(tmp_path, document, message):
    """Test malformed configurations raise ConfigError."""
    path = tmp_path / "run.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    with pytest.raises(ConfigError, match=message):
        ConfigLoader.load(path)


def test_missing_file(tmp_path):
    """Test an unreadable configuration."""
    with pytest.raises(ConfigError, match="cannot read configuration"):
        ConfigLoader.load(tmp_path / "missing.json")


@pytest.mark.parametrize(
    ("changes", "message"),
    [
        ({"order": 3}, "order must be 1 or 2"),
        ({"levels": 0}, "levels"),
        ({"base_n": 0}, "base_n"),
        ({"sigma": -1.0}, "sigma"),
        ({"tol": 0.0}, "tol"),
        ({"max_iterations": 0}, "max_iterations"),
        ({"mesh": MESHES_PATH / "missing.msh"}, "mesh file"),
    ],
)
def test_validate_config(changes, message):
    """Test range and path checks."""
    with pytest.raises(ConfigError, match=message):
        validate_config(RunConfig("solve", **changes))


def test_valid_config():
    """Test a valid configuration passes unchanged."""
    config = RunConfig("mesh-info", mesh=MESHES_PATH / "square.msh", order=2)
    assert validate_config(config) is config


def test_invalid_utf8(tmp_path):
    """Test an undecodable configuration is a configuration error."""
    path = tmp_path / "run.json"
    path.write_bytes(b'{"levels": 3, "case": "\xff"}')
    with pytest.raises(ConfigError, match="not valid UTF-8"):
        ConfigLoader.load(path)
