from __future__ import annotations

from collections.abc import Iterable, Mapping
from functools import cached_property
from itertools import combinations
from typing import Any, Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .. import exception as exc

type Role = Literal['X', 'Y', 'Z', 'internal']
type Edge = tuple[str, str]

ROLES: tuple[Role, ...] = ('X', 'Y', 'Z', 'internal')


def edge_key(u: str, v: str) -> Edge:
    """Return the canonical (sorted) form of the unordered pair uv."""
    return (u, v) if u <= v else (v, u)


class Vertex(BaseModel):
    """A vertex with its role and free-form tags."""

    id: str
    role: Role = 'internal'
    tags: tuple[str, ...] = ()

    model_config = ConfigDict(frozen=True)

    @field_validator('tags', mode='after')
    @classmethod
    def sort_tags(cls, tags: tuple[str, ...]) -> tuple[str, ...]:
        return tuple(sorted(set(tags)))

    @model_validator(mode='before')
    @classmethod
    def parse_descriptor(cls, data: Any) -> Any:
        if isinstance(data, str):
            return {'id': data}
        if isinstance(data, tuple | list):
            return dict(zip(('id', 'role', 'tags'), data, strict=False))
        return data


class Graph(BaseModel):
    """A finite simple undirected graph with role-tagged vertices.

    Graphs are immutable values. Two graphs are equal when they have the same
    vertex ids with the same roles and tags and the same edge set; the name and
    the order in which vertices were declared do not matter.
    """

    name: str = ''
    vertices: tuple[Vertex, ...] = ()
    edges: frozenset[Edge] = Field(default_factory=frozenset)

    model_config = ConfigDict(frozen=True)

    @field_validator('edges', mode='before')
    @classmethod
    def normalize_edges(cls, edges: Any) -> Any:
        if edges is None:
            return frozenset()
        normalized = set()
        for edge in edges:
            u, v = tuple(edge)
            if u == v:
                raise exc.LoopEdgeException(vertex_id=u)
            normalized.add(edge_key(u, v))
        return frozenset(normalized)

    @model_validator(mode='after')
    def check_invariants(self) -> Graph:
        seen: set[str] = set()
        for vertex in self.vertices:
            if vertex.id in seen:
                raise exc.DuplicateIdException(vertex_id=vertex.id)
            seen.add(vertex.id)
        for edge in sorted(self.edges):
            for end in edge:
                if end not in seen:
                    raise exc.UnknownEndpointException(edge=edge, vertex_id=end)
        return self

    @cached_property
    def vertex_map(self) -> dict[str, Vertex]:
        """Vertices keyed by id."""
        return {vertex.id: vertex for vertex in self.vertices}

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        """Neighbor sets keyed by vertex id."""
        nbrs: dict[str, set[str]] = {vertex.id: set() for vertex in self.vertices}
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return {vid: frozenset(ns) for vid, ns in nbrs.items()}

    @property
    def ids(self) -> list[str]:
        """Vertex ids in declaration order."""
        return [vertex.id for vertex in self.vertices]

    def __contains__(self, vertex_id: object) -> bool:
        return vertex_id in self.vertex_map

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertex_map == other.vertex_map and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((frozenset(self.vertex_map.items()), self.edges))

    def has_edge(self, u: str, v: str) -> bool:
        return edge_key(u, v) in self.edges

    def role_of(self, vertex_id: str) -> Role:
        return self.vertex_map[vertex_id].role

    def ids_with_role(self, role: Role) -> list[str]:
        return [vertex.id for vertex in self.vertices if vertex.role == role]

    def ids_with_tag(self, tag: str) -> list[str]:
        return [vertex.id for vertex in self.vertices if tag in vertex.tags]

    def require(self, vertex_ids: Iterable[str], context: str = 'graph') -> None:
        """Raise if any of the ids is not a vertex of this graph."""
        missing = {vid for vid in vertex_ids if vid not in self.vertex_map}
        if missing:
            raise exc.UnknownIdException(vertex_ids=missing, context=context)

    def is_clique(self, vertex_ids: Iterable[str]) -> bool:
        """Whether the ids are present and pairwise adjacent."""
        members = list(vertex_ids)
        if any(vid not in self.vertex_map for vid in members):
            return False
        return all(self.has_edge(u, v) for u, v in combinations(members, 2))

    def induced(self, vertex_ids: Iterable[str], name: str | None = None) -> Graph:
        """The subgraph induced by the given ids."""
        keep = set(vertex_ids)
        self.require(keep)
        return Graph(
            name=self.name if name is None else name,
            vertices=tuple(v for v in self.vertices if v.id in keep),
            edges=frozenset(e for e in self.edges if e[0] in keep and e[1] in keep),
        )

    def renamed(self, name: str) -> Graph:
        return Graph(name=name, vertices=self.vertices, edges=self.edges)

    def to_networkx(self) -> nx.Graph:
        """A networkx view with `role` and `tags` as node attributes."""
        nxg = nx.Graph(name=self.name)
        for vertex in self.vertices:
            nxg.add_node(vertex.id, role=vertex.role, tags=vertex.tags)
        nxg.add_edges_from(self.edges)
        return nxg


type VertexDescriptor = str | tuple | Vertex | Mapping[str, Any]


def build_graph(
    vertices: Iterable[VertexDescriptor],
    edges: Iterable[Iterable[str]] = (),
    *,
    name: str = '',
) -> Graph:
    """Build a graph from vertex descriptors and an edge list.

    Args:
        vertices (Iterable[VertexDescriptor]): Ids, `(id, role[, tags])` tuples,
            mappings or `Vertex` values.
        edges (Iterable[Iterable[str]]): Pairs of vertex ids; repeats collapse.
        name (str): The graph name.

    Returns:
        Graph: The graph with its edges deduplicated into a set.
    """
    parsed = tuple(
        v if isinstance(v, Vertex) else Vertex.model_validate(v) for v in vertices
    )
    return Graph(name=name, vertices=parsed, edges=[tuple(e) for e in edges])


def empty_graph(name: str = '') -> Graph:
    return Graph(name=name)


def complete_graph(vertex_ids: Iterable[str] | int, *, name: str = '') -> Graph:
    """The complete graph on the given ids (or on `k0..k{n-1}` for an int)."""
    if isinstance(vertex_ids, int):
        vertex_ids = [f'k{i}' for i in range(vertex_ids)]
    ids = list(vertex_ids)
    return build_graph(ids, combinations(ids, 2), name=name or f'K{len(ids)}')


def glue(g1: Graph, g2: Graph, *, name: str | None = None) -> Graph:
    """The union of two graphs, identifying vertices that share an id.

    Args:
        g1 (Graph): The first graph.
        g2 (Graph): The second graph.
        name (str | None): Name of the result; defaults to the first name.

    Returns:
        Graph: Vertex set is the union by id (tags merged), edge set the union.
    """
    merged: dict[str, Vertex] = dict(g1.vertex_map)
    order = list(g1.vertices)
    for vertex in g2.vertices:
        existing = merged.get(vertex.id)
        if existing is None:
            merged[vertex.id] = vertex
            order.append(vertex)
            continue
        if existing.role != vertex.role:
            raise exc.RoleConflictException(
                vertex_id=vertex.id, left=existing.role, right=vertex.role
            )
        if set(vertex.tags) - set(existing.tags):
            merged[vertex.id] = existing.model_copy(
                update={'tags': tuple(sorted(set(existing.tags) | set(vertex.tags)))}
            )
    return Graph(
        name=g1.name if name is None else name,
        vertices=tuple(merged[v.id] for v in order),
        edges=g1.edges | g2.edges,
    )


def add_universal_vertices(
    g: Graph,
    new_ids: Iterable[str],
    targets: Iterable[str],
    *,
    role: Role = 'internal',
    tags: tuple[str, ...] = (),
) -> Graph:
    """Add vertices adjacent to every target (and not to each other).

    Raises:
        IdCollisionException: If a new id is already a vertex.
        UnknownTargetException: If a target is not a vertex.
    """
    fresh = list(new_ids)
    target_set = set(targets)
    for vid in fresh:
        if vid in g:
            raise exc.IdCollisionException(vertex_id=vid)
    if len(set(fresh)) != len(fresh):
        dup = next(v for v in fresh if fresh.count(v) > 1)
        raise exc.IdCollisionException(vertex_id=dup)
    missing = {t for t in target_set if t not in g}
    if missing:
        raise exc.UnknownTargetException(vertex_ids=missing)
    added = tuple(Vertex(id=vid, role=role, tags=tags) for vid in fresh)
    new_edges = {edge_key(vid, t) for vid in fresh for t in target_set}
    return Graph(name=g.name, vertices=g.vertices + added, edges=g.edges | new_edges)


def clique_on(g: Graph, vertex_ids: Iterable[str]) -> Graph:
    """Add every missing edge among the given ids."""
    members = sorted(set(vertex_ids))
    if not members:
        raise exc.UnknownIdException(vertex_ids=[], context='empty clique')
    g.require(members, context='clique')
    clique = {edge_key(u, v) for u, v in combinations(members, 2)}
    return Graph(name=g.name, vertices=g.vertices, edges=g.edges | clique)


def delete_edges(g: Graph, edges: Iterable[Iterable[str]]) -> Graph:
    """Remove the given edges; edges that are absent are ignored."""
    drop = {edge_key(*tuple(e)) for e in edges}
    return Graph(name=g.name, vertices=g.vertices, edges=g.edges - drop)


def with_role(g: Graph, vertex_ids: Iterable[str], role: Role) -> Graph:
    """Reassign the role of some vertices."""
    change = set(vertex_ids)
    g.require(change)
    vertices = tuple(
        v.model_copy(update={'role': role}) if v.id in change else v
        for v in g.vertices
    )
    return Graph(name=g.name, vertices=vertices, edges=g.edges)


def relabeled(g: Graph, mapping: Mapping[str, str]) -> Graph:
    """Rename vertices; ids missing from `mapping` keep their name.

    Raises:
        IdCollisionException: If two vertices would end up with the same id.
    """
    rename = {vid: mapping.get(vid, vid) for vid in g.ids}
    seen: set[str] = set()
    for new in rename.values():
        if new in seen:
            raise exc.IdCollisionException(vertex_id=new)
        seen.add(new)
    return Graph(
        name=g.name,
        vertices=tuple(
            Vertex(id=rename[v.id], role=v.role, tags=v.tags) for v in g.vertices
        ),
        edges=frozenset(edge_key(rename[u], rename[v]) for u, v in g.edges),
    )
