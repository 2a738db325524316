"""Layered configuration: defaults, YAML file, CLI overrides."""

from pathlib import Path

import pytest

from tropex.core.config import Config, get_config, set_config


def test_defaults_from_shipped_yaml():
    config = Config.load()
    assert config.max_workers == 4
    assert config.arrangement_budget == 10000
    assert config.dual_plane_grid == 2
    assert config.write_summary is True
    assert config.log_level == "WARNING"


def test_user_file_is_merged(tmp_path):
    path = tmp_path / "tropex.yaml"
    path.write_text("computation:\n  threads: 2\nlogging:\n  level: debug\n", encoding="utf-8")
    config = Config.load(path)
    assert config.max_workers == 2
    assert config.log_level == "DEBUG"
    assert config.closure_rounds == 8


def test_cli_overrides_win(tmp_path):
    path = tmp_path / "tropex.yaml"
    path.write_text("computation:\n  threads: 2\n", encoding="utf-8")
    config = Config.load(path, {"computation": {"threads": 6}, "logging": {"colors": False}})
    assert config.max_workers == 6
    assert config.log_colors is False


def test_invalid_values(tmp_path):
    with pytest.raises(ValueError):
        Config.load(cli_overrides={"computation": {"threads": 0}})
    with pytest.raises(ValueError):
        Config.load(tmp_path / "missing.yaml")
    bad = tmp_path / "bad.yaml"
    bad.write_text("- just\n- a list\n", encoding="utf-8")
    with pytest.raises(ValueError):
        Config.load(bad)


def test_global_config():
    config = Config(max_workers=3)
    set_config(config)
    assert get_config() is config


def test_data_files_ship_inside_the_package():
    import tropex
    from tropex.core.report import ReportGenerator

    package = Path(tropex.__file__).parent
    assert (package / "config" / "defaults.yaml").is_file()
    assert (package / "templates" / "summary.txt.j2").is_file()
    for name in ("report", "fan", "graph", "polynomial"):
        assert (package / "schemas" / f"{name}.schema.json").is_file()
    generator = ReportGenerator(Config.load())
    assert generator.schema is not None
    assert Path(generator.template_dir) == package / "templates"
