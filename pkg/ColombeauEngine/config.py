"""
Configuration settings for ColombeauEngine
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import Field, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Engine settings"""

    # Epsilon grid
    grid_base: float = 2.0
    k_min: int = 4
    k_max: int = 48

    # Decision procedures
    m_max: int = 12
    v_cut: float = 12.0
    residual_threshold: float = 0.1
    magnitude_cap: float = 700.0
    infinitesimal_margin: float = 0.05

    # Sup-on-compact optimizer
    optimizer_grid_points: int = 64
    optimizer_scale_points: int = 33
    optimizer_scale_exponents: List[float] = Field(default_factory=lambda: [1.0, 2.0, 3.0])
    optimizer_starts: int = 5
    optimizer_iterations: int = 100
    optimizer_tolerance: float = 1e-3

    # Generalized smooth functions
    max_derivative_order: int = 6
    max_norm_order: int = 20
    support_budget: int = 24
    metric_truncation: int = 20

    # Runs
    seed: int = 7
    output_format: Literal["json", "text"] = "json"
    cache_dir: Optional[str] = None

    model_config = SettingsConfigDict(
        env_prefix="COLOMBEAU_",
        env_file=".env",
        case_sensitive=False,
        frozen=True,
        extra="ignore",
    )

    @field_validator("grid_base")
    @classmethod
    def _base_above_one(cls, value: float) -> float:
        if value <= 1.0:
            raise ValueError("grid_base must be > 1")
        return value

    @field_validator("m_max", "optimizer_grid_points", "optimizer_scale_points",
                     "optimizer_starts", "optimizer_iterations", "support_budget")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be a positive integer")
        return value

    @model_validator(mode="after")
    def _grid_range(self) -> "Settings":
        if self.k_min < 0:
            raise ValueError("k_min must be >= 0")
        if self.k_max - self.k_min + 1 < 8:
            raise ValueError("the epsilon grid needs at least 8 points")
        return self

    def with_overrides(self, **overrides: Any) -> "Settings":
        """Return a validated copy with some fields replaced"""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return Settings(**data)


def load_settings(config_path: Optional[Union[str, Path]] = None,
                  overrides: Optional[Dict[str, Any]] = None) -> Settings:
    """Build settings with precedence flags > environment > config file > defaults.

    Init kwargs beat environment variables in pydantic-settings, so values from
    the config file are only applied for fields the environment leaves unset.
    """
    base = Settings()
    data: Dict[str, Any] = {}
    if config_path is not None:
        file_values = json.loads(Path(config_path).read_text(encoding="utf-8"))
        env_set = {name for name in Settings.model_fields if name in base.model_fields_set}
        data.update({k: v for k, v in file_values.items() if k not in env_set})
    if overrides:
        data.update({k: v for k, v in overrides.items() if v is not None})
    if not data:
        return base
    merged = base.model_dump()
    merged.update(data)
    return Settings(**merged)


# Global settings instance
settings = Settings()
