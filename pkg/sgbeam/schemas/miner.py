"""Schemas for mining configuration."""

import math
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator

from sgbeam.core.config import settings
from sgbeam.models.bitset import WORD_DTYPES


class Estimator(StrEnum):
    """Base density estimator behind the Z-score."""

    SGRID = "sgrid"
    GRID = "grid"
    KDE = "kde"


class BinRule(StrEnum):
    """Rule used to pick the equal bin width of each attribute."""

    FD = "fd"
    SCOTT = "scott"
    STURGES = "sturges"


class MinerConfig(BaseModel):
    """Search depth, beam width, output size and estimator choice."""

    model_config = ConfigDict(frozen=True)

    max_depth: int = Field(default=settings.DEFAULT_DEPTH, ge=2)
    beam_width: int = Field(default=settings.DEFAULT_BEAM_WIDTH, ge=1)
    top_k: int = Field(default=settings.DEFAULT_TOP_K, ge=1)
    estimator: Estimator = Estimator(settings.DEFAULT_ESTIMATOR)
    tau: float | None = None
    block_size: int = settings.DEFAULT_BLOCK_SIZE
    bin_rule: BinRule = BinRule(settings.DEFAULT_BIN_RULE)
    use_cache: bool = True

    @field_validator("block_size")
    @classmethod
    def supported_block_size(cls: type["MinerConfig"], v: int) -> int:
        """Validate that the block size maps onto a machine word."""
        if v not in WORD_DTYPES:
            msg = f"Block size must be one of {sorted(WORD_DTYPES)}."
            raise ValueError(msg)
        return v

    @field_validator("tau")
    @classmethod
    def finite_tau(cls: type["MinerConfig"], v: float | None) -> float | None:
        """Reject NaN thresholds, which would silently drop every result."""
        if v is not None and math.isnan(v):
            msg = "Threshold tau must be a number."
            raise ValueError(msg)
        return v
