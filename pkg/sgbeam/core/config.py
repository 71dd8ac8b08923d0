"""App configuration settings."""

from __future__ import annotations

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application configuration sourced from environment variables.

    Values can be overridden via an .env file or process environment using the
    ``SGBEAM_`` prefix, e.g. ``SGBEAM_LOG_LEVEL=DEBUG``.
    """

    LOG_LEVEL: str = "INFO"  # e.g., DEBUG, INFO, WARNING, ERROR
    LOG_FORMAT: str = "json"  # json or console

    # Mining defaults used when a flag is omitted
    DEFAULT_DEPTH: int = 5
    DEFAULT_BEAM_WIDTH: int = 100
    DEFAULT_TOP_K: int = 10
    DEFAULT_BLOCK_SIZE: int = 64
    DEFAULT_ESTIMATOR: str = "sgrid"
    DEFAULT_BIN_RULE: str = "fd"

    MAX_BINS_PER_ATTRIBUTE: int = 4096
    # Rows per vectorised batch when scoring every record of a subspace
    SCORE_CHUNK_ROWS: int = 2048
    KDE_CHUNK_ROWS: int = 256

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="SGBEAM_", extra="ignore"
    )


settings = Settings()
