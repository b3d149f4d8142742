from __future__ import annotations

from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field

from .. import exception as exc
from ..planar.boundary import CyclicBoundary
from .core import (
    Edge,
    Graph,
    Role,
    add_universal_vertices,
    clique_on,
    delete_edges,
    edge_key,
    empty_graph,
    glue,
)
from .document import graph_payload, validate_document


class _Step(BaseModel):
    label: str = ''

    model_config = ConfigDict(frozen=True)


class BasePlanePiece(_Step):
    """A plane graph with a cyclic boundary on its outer face."""

    kind: Literal['base'] = 'base'
    graph: Graph
    boundary: CyclicBoundary = Field(default_factory=CyclicBoundary)


class AddUniversalVertices(_Step):
    """New vertices, each adjacent to every target."""

    kind: Literal['universal'] = 'universal'
    ids: tuple[str, ...]
    targets: tuple[str, ...]
    role: Role = 'internal'


class AddCliqueEdges(_Step):
    kind: Literal['clique'] = 'clique'
    ids: tuple[str, ...]


class CliqueSumJoin(_Step):
    """Glue a summand onto the accumulated graph along a shared clique.

    `decomposition` optionally records how the summand itself was built, so its
    minor-freeness can be certified structurally.
    """

    kind: Literal['clique_sum'] = 'clique_sum'
    summand: Graph
    shared: tuple[str, ...]
    decomposition: ConstructionTrace | None = None


class DeleteEdges(_Step):
    """Pass to a spanning subgraph."""

    kind: Literal['delete'] = 'delete'
    edges: tuple[Edge, ...]


type TraceStep = Annotated[
    BasePlanePiece
    | AddUniversalVertices
    | AddCliqueEdges
    | CliqueSumJoin
    | DeleteEdges,
    Field(discriminator='kind'),
]


class ConstructionTrace(BaseModel):
    """A replayable record of how a graph was assembled."""

    steps: tuple[TraceStep, ...] = ()

    model_config = ConfigDict(frozen=True)

    def then(self, *steps: TraceStep) -> ConstructionTrace:
        return ConstructionTrace(steps=self.steps + steps)

    def extend(self, other: ConstructionTrace) -> ConstructionTrace:
        return ConstructionTrace(steps=self.steps + other.steps)


def apply_step(graph: Graph, step: TraceStep) -> Graph:
    """Apply one trace step to an accumulated graph."""
    match step:
        case BasePlanePiece():
            return glue(graph, step.graph)
        case AddUniversalVertices():
            return add_universal_vertices(graph, step.ids, step.targets, role=step.role)
        case AddCliqueEdges():
            return clique_on(graph, step.ids)
        case CliqueSumJoin():
            return glue(graph, step.summand)
        case DeleteEdges():
            return delete_edges(graph, step.edges)
    raise TypeError(f'Unknown trace step {step!r}')


def replay(trace: ConstructionTrace, *, name: str = '') -> Graph:
    """Replay every step in order, starting from the empty graph."""
    graph = empty_graph(name)
    for step in trace.steps:
        graph = apply_step(graph, step)
    return graph.renamed(name) if name else graph


def replay_difference(trace: ConstructionTrace, graph: Graph) -> tuple[int, int, str]:
    """Count what the replay is missing and what it has in excess of `graph`.

    Returns:
        tuple[int, int, str]: Missing items, extra items and a short description
        of the first difference ('' when the replay matches).
    """
    replayed = replay(trace)
    missing_v = set(graph.vertex_map) - set(replayed.vertex_map)
    extra_v = set(replayed.vertex_map) - set(graph.vertex_map)
    role_diff = [
        vid
        for vid in set(graph.vertex_map) & set(replayed.vertex_map)
        if graph.vertex_map[vid].role != replayed.vertex_map[vid].role
    ]
    missing_e = graph.edges - replayed.edges
    extra_e = replayed.edges - graph.edges
    missing = len(missing_v) + len(missing_e) + len(role_diff)
    extra = len(extra_v) + len(extra_e)
    detail = ''
    if missing_v or extra_v:
        detail = f'vertex {sorted(missing_v or extra_v)[0]}'
    elif role_diff:
        detail = f'role of {sorted(role_diff)[0]}'
    elif missing_e or extra_e:
        u, v = sorted(missing_e or extra_e)[0]
        detail = f'edge {u}-{v}'
    return missing, extra, detail


def deletion_step(supergraph: Graph, graph: Graph, label: str = '') -> DeleteEdges:
    """The step taking a spanning supergraph down to `graph`."""
    return DeleteEdges(
        label=label,
        edges=tuple(sorted(edge_key(*e) for e in supergraph.edges - graph.edges)),
    )


def _step_payload(step: TraceStep) -> dict[str, Any]:
    data: dict[str, Any] = {'kind': step.kind}
    if step.label:
        data['label'] = step.label
    match step:
        case BasePlanePiece():
            data['graph'] = graph_payload(step.graph)
            data['boundary'] = {'order': list(step.boundary.order)}
        case AddUniversalVertices():
            data['ids'] = list(step.ids)
            data['targets'] = sorted(step.targets)
            data['role'] = step.role
        case AddCliqueEdges():
            data['ids'] = list(step.ids)
        case CliqueSumJoin():
            data['summand'] = graph_payload(step.summand)
            data['shared'] = list(step.shared)
            if step.decomposition is not None:
                data['decomposition'] = trace_payload(step.decomposition)
        case DeleteEdges():
            data['edges'] = [list(e) for e in sorted(step.edges)]
    return data


def trace_payload(trace: ConstructionTrace) -> dict[str, Any]:
    """Plain data for a trace, with every graph in canonical order."""
    return {'steps': [_step_payload(step) for step in trace.steps]}


def trace_from_data(data: Any, *, source: str = '<document>') -> ConstructionTrace:
    try:
        return validate_document(data, ConstructionTrace, source=source)
    except exc.GraphException as e:
        raise exc.DocumentSchemaException(source=source, problems=[str(e)])


CliqueSumJoin.model_rebuild()
ConstructionTrace.model_rebuild()
