from .engine import PartialColoring, extends, find_extension, is_proper
from .family import (
    Coloring,
    ColoringFamily,
    all_colorings,
    boundary_trace,
    close_under_permutations,
    deserialize_family,
    empty_family,
    enumerate_closed_families,
    family_from_data,
    family_from_predicate,
    family_payload,
    is_closed,
    orbit,
    orbits_of,
    read_family,
    require_closed,
    serialize_family,
)

__all__ = [
    'Coloring',
    'ColoringFamily',
    'PartialColoring',
    'all_colorings',
    'boundary_trace',
    'close_under_permutations',
    'deserialize_family',
    'empty_family',
    'enumerate_closed_families',
    'extends',
    'family_from_data',
    'family_from_predicate',
    'family_payload',
    'find_extension',
    'is_closed',
    'is_proper',
    'orbit',
    'orbits_of',
    'read_family',
    'require_closed',
    'serialize_family',
]
