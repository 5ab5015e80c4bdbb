"""Toolkit configuration settings.

This module defines the toolkit-wide defaults using Pydantic's BaseSettings.
Invocations must be reproducible from their flags alone, so the settings are
built from explicit init arguments only: environment variables and .env files
are not consulted. The CLI layers per-invocation overrides on top.
"""

from typing import Literal

from pydantic import Field
from pydantic import field_validator
from pydantic_settings import BaseSettings
from pydantic_settings import PydanticBaseSettingsSource
from pydantic_settings import SettingsConfigDict

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseSettings):
    """Holds the toolkit defaults.

    Attributes:
        default_workers: Worker processes used by the sweep when none are requested.
        default_format: Output format for data records.
        max_modulus: Exclusive upper bound on moduli handled by the modular kernels.
        max_sweep_bound: Largest p_max accepted by the sweep and composite scan.
        chi_square_min_expected: Expected-count threshold below which categories are pooled.
        simulation_chunk_bits: Coin flips materialized per simulation block.
        log_level: Level for the toolkit's loggers.
    """

    default_workers: int = Field(default=1, ge=1)
    default_format: Literal["json", "csv"] = Field(default="json")
    max_modulus: int = Field(default=2**31, gt=3)
    max_sweep_bound: int = Field(default=1_000_000, ge=3)
    chi_square_min_expected: float = Field(default=5.0, gt=0.0)
    simulation_chunk_bits: int = Field(default=1 << 22, ge=64)
    log_level: str = Field(default="INFO", description="Logging level name.")

    model_config = SettingsConfigDict(
        frozen=True,
        extra="ignore",
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Restricts configuration to explicit init arguments."""
        return (init_settings,)

    @field_validator("log_level", mode="before")
    @classmethod
    def normalize_log_level(cls, v: str) -> str:
        """Upper-cases the level name and rejects unknown levels."""
        level = str(v).strip().upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"log_level must be one of {', '.join(LOG_LEVELS)}")
        return level


settings = Settings()
