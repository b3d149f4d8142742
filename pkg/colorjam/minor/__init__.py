from .search import (
    DEFAULT_BUDGET_SECS,
    MinorModel,
    RootConstraint,
    find_model,
    is_minor_free,
    verify_model,
)

__all__ = [
    'DEFAULT_BUDGET_SECS',
    'MinorModel',
    'RootConstraint',
    'find_model',
    'is_minor_free',
    'verify_model',
]
