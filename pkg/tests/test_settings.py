import simplejson
import pytest

from modular_pi1.config.settings import Settings, default_config_dir
from modular_pi1.utils.flexible_logger import Logger


def test_config_dir_follows_environment(isolated_home):
    assert default_config_dir() == isolated_home
    assert Settings().config_file == isolated_home / "modular_pi1_config.json"


def test_defaults():
    settings = Settings()
    assert settings.get("run", "safety_limit") == 10000
    assert settings.get("run", "jobs") == 1
    assert settings.get("cache", "cache_dir") is None
    assert settings.get("logging", "level") == "WARNING"
    assert settings.get("nope", "missing") is None


def test_set_persists_and_reset_restores():
    settings = Settings()
    settings.set("run", "jobs", 4)
    assert Settings().get("run", "jobs") == 4
    settings.reset_to_defaults()
    assert Settings().get("run", "jobs") == 1


def test_set_unknown_key_raises():
    with pytest.raises(KeyError):
        Settings().set("run", "colour", "blue")


def test_user_file_is_merged_over_defaults(isolated_home):
    isolated_home.mkdir(parents=True)
    with open(isolated_home / "modular_pi1_config.json", "w", encoding="utf-8") as f:
        simplejson.dump({"cache": {"cache_dir": "/tmp/census"}}, f)
    settings = Settings()
    assert settings.get("cache", "cache_dir") == "/tmp/census"
    assert settings.get("cache", "format_version") == 1


def test_broken_user_file_falls_back_to_defaults(isolated_home, capsys):
    isolated_home.mkdir(parents=True)
    (isolated_home / "modular_pi1_config.json").write_text("{not json", encoding="utf-8")
    settings = Settings()
    assert settings.get_all()["run"]["format"] == "text"
    assert "Error loading config file" in capsys.readouterr().err


def test_logger_filters_by_level(capsys):
    logger = Logger(name="test", log_level="WARNING")
    logger.info("hidden")
    logger.warning("shown", 42)
    err = capsys.readouterr().err
    assert "hidden" not in err
    assert "[WARNING] shown 42" in err


def test_logger_writes_file(isolated_home, capsys):
    logger = Logger(name="sweep", console_output=False, file_output=True, log_level="DEBUG")
    logger.debug("census p=11")
    assert capsys.readouterr().err == ""
    log_file = isolated_home / "logs" / "sweep.log"
    assert "[DEBUG] census p=11" in log_file.read_text(encoding="utf-8")


def test_logger_takes_level_from_settings(isolated_home):
    Settings().set("logging", "level", "ERROR")
    logger = Logger(name="test")
    assert logger.log_level == "ERROR"
    assert not logger.is_enabled_for("WARNING")


def test_logger_rejects_unknown_level():
    with pytest.raises(ValueError):
        Logger(name="test", log_level="LOUD")
