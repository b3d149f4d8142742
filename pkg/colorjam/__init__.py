from .coloring import ColoringFamily, PartialColoring
from .graph import Graph, Vertex
from .pipeline import AssembledInstance, InstanceSpec, assemble

__all__ = [
    'AssembledInstance',
    'ColoringFamily',
    'Graph',
    'InstanceSpec',
    'PartialColoring',
    'Vertex',
    'assemble',
]
