from .core import (
    ROLES,
    Edge,
    Graph,
    Role,
    Vertex,
    add_universal_vertices,
    build_graph,
    clique_on,
    complete_graph,
    delete_edges,
    edge_key,
    empty_graph,
    glue,
    relabeled,
    with_role,
)
from .document import (
    GraphDocument,
    deserialize,
    dump_document,
    load_document,
    read_document,
    read_graph,
    serialize,
    to_dot,
    write_graph,
)
from .trace import (
    AddCliqueEdges,
    AddUniversalVertices,
    BasePlanePiece,
    CliqueSumJoin,
    ConstructionTrace,
    DeleteEdges,
    TraceStep,
    deletion_step,
    replay,
    replay_difference,
    trace_from_data,
    trace_payload,
)

__all__ = [
    'ROLES',
    'AddCliqueEdges',
    'AddUniversalVertices',
    'BasePlanePiece',
    'CliqueSumJoin',
    'ConstructionTrace',
    'DeleteEdges',
    'Edge',
    'Graph',
    'GraphDocument',
    'Role',
    'TraceStep',
    'Vertex',
    'add_universal_vertices',
    'build_graph',
    'clique_on',
    'complete_graph',
    'delete_edges',
    'deletion_step',
    'deserialize',
    'dump_document',
    'edge_key',
    'empty_graph',
    'glue',
    'load_document',
    'read_document',
    'read_graph',
    'relabeled',
    'replay',
    'replay_difference',
    'serialize',
    'to_dot',
    'trace_from_data',
    'trace_payload',
    'with_role',
    'write_graph',
]
