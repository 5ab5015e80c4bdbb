import pytest
from pydantic import ValidationError

from banach.core.config import Settings


def test_defaults() -> None:
    config = Settings()
    assert config.default_workers == 1
    assert config.default_format == "json"
    assert config.max_modulus == 2**31
    assert config.chi_square_min_expected == 5.0


def test_log_level_is_normalized() -> None:
    assert Settings(log_level="debug").log_level == "DEBUG"
    with pytest.raises(ValidationError):
        Settings(log_level="chatty")


def test_environment_is_ignored(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("LOG_LEVEL", "DEBUG")
    monkeypatch.setenv("DEFAULT_WORKERS", "8")
    config = Settings()
    assert config.log_level == "INFO"
    assert config.default_workers == 1


def test_settings_are_frozen() -> None:
    with pytest.raises(ValidationError):
        Settings().default_workers = 4  # type: ignore[misc]
