from .boundary import CyclicBoundary, boundary
from .planarity import augment_with_boundary, is_planar, planar_with_boundary

__all__ = [
    'CyclicBoundary',
    'augment_with_boundary',
    'boundary',
    'is_planar',
    'planar_with_boundary',
]
