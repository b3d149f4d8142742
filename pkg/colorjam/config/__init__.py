from .config import (
    CacheConfig,
    ColorJamConfig,
    MinorConfig,
    RealizerConfig,
    find_config,
    load_config,
)

__all__ = [
    'CacheConfig',
    'ColorJamConfig',
    'MinorConfig',
    'RealizerConfig',
    'find_config',
    'load_config',
]
