from __future__ import annotations

from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from ..graph.document import parse_text, validate_document
from ..minor.search import DEFAULT_BUDGET_SECS
from ..realizer.realizer import RealizerLimits

CONFIG_NAMES = [
    'colorjam.yaml',
    '.colorjam.yaml',
    'colorjam.yml',
    '.colorjam.yml',
    'colorjam.json',
    '.colorjam.json',
]


class MinorConfig(BaseModel):
    budget_secs: float = Field(default=DEFAULT_BUDGET_SECS, gt=0)


class RealizerConfig(BaseModel):
    """Limits for the exhaustive realizer search."""

    max_internal: int = Field(default=3, ge=0)
    max_edges: int | None = Field(default=None, ge=0)
    budget_secs: float = Field(default=300.0, gt=0)

    def limits(self) -> RealizerLimits:
        return RealizerLimits(
            max_internal=self.max_internal,
            max_edges=self.max_edges,
            budget_secs=self.budget_secs,
        )


class CacheConfig(BaseModel):
    enabled: bool = True
    dir: Path | None = None


class ColorJamConfig(BaseModel):
    """Defaults for every command; command-line flags take precedence."""

    minor: MinorConfig = Field(default_factory=MinorConfig)
    realizer: RealizerConfig = Field(default_factory=RealizerConfig)
    cache: CacheConfig = Field(default_factory=CacheConfig)
    jobs: int = Field(default=1, ge=1)

    model_config = ConfigDict(extra='ignore')


def find_config(directory: Path | None = None) -> Path | None:
    """The first config file present in `directory` (the working directory)."""
    directory = directory or Path.cwd()
    for name in CONFIG_NAMES:
        candidate = directory / name
        if candidate.exists():
            return candidate
    return None


def load_config(path: Path | None = None) -> ColorJamConfig:
    """Load an explicit config file, or the first one found, or the defaults.

    Raises:
        DocumentParseException: If the file does not parse.
        DocumentSchemaException: If a value is invalid.
    """
    path = path or find_config()
    if path is None:
        return ColorJamConfig()
    fmt = 'json' if path.suffix == '.json' else 'yaml'
    data = parse_text(path.read_text(encoding='utf-8'), source=path.as_posix(), fmt=fmt)
    return validate_document(data or {}, ColorJamConfig, source=path.as_posix())
