"""Configuration module for quiver-tilt."""

import logging
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import BaseModel, Field

from quiver_tilt.scalars import ExactField


class FieldConfig(BaseModel):
    """Ground field used when a command does not name one."""
    name: str = "F101"

    def build(self) -> ExactField:
        return ExactField.parse(self.name)


class RandomConfig(BaseModel):
    """Seeds and search budgets for the randomized searches."""
    seed: int = 0
    iso_search_tries: int = 64
    split_search_tries: int = 64


class ResolutionConfig(BaseModel):
    """Projective resolution bounds."""
    # None means "dimension of the algebra"
    max_len: Optional[int] = None


class TiltingConfig(BaseModel):
    """Tilting verification settings."""
    l_margin: int = 1
    radical_method: str = "auto"
    search_depth: int = 2
    search_max_objects: int = 40


class ReproConfig(BaseModel):
    """Reproduction report settings."""
    fields: list[str] = Field(default_factory=lambda: ["F101", "Q"])
    hereditary_samples: int = 20
    finite_type_samples: int = 50
    euler_samples: int = 10


class LoggingConfig(BaseModel):
    """Logging configuration."""
    level: str = "INFO"
    format: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


class Config(BaseModel):
    """Main configuration for quiver-tilt."""
    field: FieldConfig = Field(default_factory=FieldConfig)
    random: RandomConfig = Field(default_factory=RandomConfig)
    resolution: ResolutionConfig = Field(default_factory=ResolutionConfig)
    tilting: TiltingConfig = Field(default_factory=TiltingConfig)
    repro: ReproConfig = Field(default_factory=ReproConfig)
    logging: LoggingConfig = Field(default_factory=LoggingConfig)

    @classmethod
    def from_yaml(cls, path: str | Path) -> "Config":
        """Load configuration from YAML file."""
        path = Path(path)
        if not path.exists():
            return cls()

        with open(path) as f:
            data = yaml.safe_load(f) or {}

        return cls(**data)

    @classmethod
    def from_default_locations(cls) -> "Config":
        """Load configuration from default locations."""
        default_paths = [
            Path("config.yaml"),
            Path("config.yml"),
            Path(__file__).parent.parent.parent / "config.yaml",
        ]

        for path in default_paths:
            if path.exists():
                return cls.from_yaml(path)

        return cls()

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot-notation key."""
        keys = key.split(".")
        value = self.model_dump()

        for k in keys:
            if isinstance(value, dict):
                value = value.get(k, default)
            else:
                return default

        return value


def configure_logging(config: LoggingConfig) -> None:
    """Apply level and format to the root logger; log records go to stderr."""
    logging.basicConfig(level=config.level.upper(), format=config.format, force=True)
