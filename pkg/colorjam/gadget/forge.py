from __future__ import annotations

from collections.abc import Iterable, Mapping
from itertools import combinations
from typing import Literal

from pydantic import BaseModel, ConfigDict, model_validator

from .. import exception as exc
from ..graph.core import Graph, Role, Vertex, clique_on, edge_key, glue
from ..graph.trace import (
    AddCliqueEdges,
    AddUniversalVertices,
    BasePlanePiece,
    CliqueSumJoin,
    ConstructionTrace,
    deletion_step,
    replay,
)
from ..planar.boundary import CyclicBoundary

type GadgetKind = Literal['copy', 'enc', 'f1', 'fs', 'fr']


class GadgetInstance(BaseModel):
    """A constructed gadget together with its named terminals.

    `terminals` maps terminal names (`u`, `v`, `w`, `y4`, ...) to vertex ids.
    """

    kind: GadgetKind
    graph: Graph
    k: int
    s: int | None = None
    r: int | None = None
    terminals: dict[str, str]
    namespace: str

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_terminals(self) -> GadgetInstance:
        ids = list(self.terminals.values())
        if len(set(ids)) != len(ids):
            raise exc.GadgetParameterException(message='terminal ids must be distinct')
        self.graph.require(ids, context='gadget terminals')
        return self

    @property
    def terminal_ids(self) -> list[str]:
        return list(self.terminals.values())

    @property
    def internal_ids(self) -> list[str]:
        terminal = set(self.terminals.values())
        return [vid for vid in self.graph.ids if vid not in terminal]


def apex_names(k: int) -> list[str]:
    return [f'y{i}' for i in range(4, k + 1)]


def encoder_terminals(
    k: int,
    u: str = 'u',
    v: str = 'v',
    w: str = 'w',
    ys: Iterable[str] | None = None,
) -> dict[str, str]:
    """Terminal map for an encoder or piece: u, v, w and the apexes y4..yk."""
    ys = list(ys) if ys is not None else apex_names(k)
    if len(ys) != k - 3:
        raise exc.GadgetParameterException(
            message=f'expected {k - 3} apex ids for k={k}, got {len(ys)}'
        )
    return {'u': u, 'v': v, 'w': w} | dict(zip(apex_names(k), ys, strict=True))


def _check_k(k: int, least: int) -> None:
    if k < least:
        raise exc.GadgetParameterException(
            message=f'k must be at least {least}, got {k}'
        )


def _check_s(k: int, s: int) -> None:
    if not 4 <= s <= k:
        raise exc.GadgetParameterException(message=f's must lie in 4..{k}, got {s}')


def _check_encoder_terminals(k: int, terminals: Mapping[str, str]) -> None:
    expected = {'u', 'v', 'w', *apex_names(k)}
    if set(terminals) != expected:
        raise exc.GadgetParameterException(
            message=f'terminals must be exactly {sorted(expected)}'
        )


class _Builder:
    """Collects vertices and edges, namespacing local (non-terminal) names."""

    def __init__(
        self,
        prefix: str,
        terminals: Mapping[str, str],
        roles: Mapping[str, Role] | None,
        tag_terminals: bool,
    ) -> None:
        self.prefix = prefix
        self.terminals = dict(terminals)
        self.vertices: dict[str, Vertex] = {}
        self.edges: set[tuple[str, str]] = set()
        roles = roles or {}
        for name, vid in self.terminals.items():
            tags = (f'terminal={name}',) if tag_terminals else ()
            self.vertices[vid] = Vertex(
                id=vid, role=roles.get(vid, 'internal'), tags=tags
            )

    def id(self, local: str) -> str:
        if local in self.terminals:
            return self.terminals[local]
        vid = f'{self.prefix}/{local}'
        if vid not in self.vertices:
            self.vertices[vid] = Vertex(id=vid)
        return vid

    def edge(self, a: str, b: str) -> None:
        self.edges.add(edge_key(self.id(a), self.id(b)))

    def path(self, *locals_: str) -> None:
        for a, b in zip(locals_, locals_[1:], strict=False):
            self.edge(a, b)

    def apex(self, apexes: Iterable[str], targets: Iterable[str]) -> None:
        targets = list(targets)
        for y in apexes:
            for t in targets:
                self.edge(y, t)

    def drop(self, a: str, b: str) -> None:
        self.edges.discard(edge_key(self.id(a), self.id(b)))

    def graph(self, name: str) -> Graph:
        return Graph(
            name=name, vertices=tuple(self.vertices.values()), edges=self.edges
        )


def f_copy(
    k: int,
    u: str = 'u',
    v: str = 'v',
    namespace: str = 'copy',
    *,
    roles: Mapping[str, Role] | None = None,
    tag_terminals: bool = True,
) -> GadgetInstance:
    """The copy gadget: K_{k+1} minus the edge uv.

    A coloring of {u, v} extends exactly when u and v get the same color.
    """
    _check_k(k, 3)
    if u == v:
        raise exc.GadgetParameterException(message='u and v must be distinct')
    b = _Builder(namespace, {'u': u, 'v': v}, roles, tag_terminals)
    members = ['u', 'v'] + [f'c{i}' for i in range(1, k)]
    for a, c in combinations(members, 2):
        if {a, c} != {'u', 'v'}:
            b.edge(a, c)
    return GadgetInstance(
        kind='copy',
        graph=b.graph(f'F_copy({k})'),
        k=k,
        terminals=b.terminals,
        namespace=namespace,
    )


def f_copy_plus(
    k: int, u: str = 'u', v: str = 'v', namespace: str = 'copy', **kwargs
) -> Graph:
    """The copy gadget completed by uv, i.e. K_{k+1}."""
    inst = f_copy(k, u, v, namespace, **kwargs)
    return clique_on(inst.graph, inst.graph.ids).renamed(f'F_copy+({k})')


def _piece_builder(
    k: int,
    terminals: Mapping[str, str] | None,
    namespace: str,
    piece: str,
    roles: Mapping[str, Role] | None,
    tag_terminals: bool,
) -> tuple[_Builder, list[str]]:
    terminals = dict(terminals) if terminals is not None else encoder_terminals(k)
    _check_encoder_terminals(k, terminals)
    builder = _Builder(f'{namespace}/{piece}', terminals, roles, tag_terminals)
    return builder, apex_names(k)


def piece_f1(
    k: int,
    terminals: Mapping[str, str] | None = None,
    namespace: str = 'enc',
    *,
    roles: Mapping[str, Role] | None = None,
    tag_terminals: bool = True,
) -> GadgetInstance:
    """F_1: two K4-minus-an-edge paths from u to v and to w, apexed off u."""
    _check_k(k, 4)
    b, ys = _piece_builder(k, terminals, namespace, 'F1', roles, tag_terminals)
    for i in (1, 2):
        b.path('u', f'v{i}', 'v')
        b.path('u', f'w{i}', 'w')
    b.edge('v1', 'v2')
    b.edge('w1', 'w2')
    b.apex(ys, ['v', 'w', 'v1', 'v2', 'w1', 'w2'])
    return GadgetInstance(
        kind='f1',
        graph=b.graph(f'F1({k})'),
        k=k,
        terminals=b.terminals,
        namespace=namespace,
    )


def piece_fs(
    k: int,
    s: int,
    terminals: Mapping[str, str] | None = None,
    namespace: str = 'enc',
    *,
    roles: Mapping[str, Role] | None = None,
    tag_terminals: bool = True,
) -> GadgetInstance:
    """F_s: u hangs off u', which sees v and the w-diamond; the edge u'y_s is absent."""
    _check_k(k, 4)
    _check_s(k, s)
    b, ys = _piece_builder(k, terminals, namespace, f'F{s}', roles, tag_terminals)
    for i in (1, 2):
        b.path("u'", f'w{i}', 'w')
    b.edge('u', "u'")
    b.edge('w1', 'w2')
    b.edge("u'", 'v')
    b.apex(ys, ['v', 'w', "u'", 'w1', 'w2'])
    b.drop("u'", f'y{s}')
    return GadgetInstance(
        kind='fs',
        graph=b.graph(f'F{s}({k})'),
        k=k,
        s=s,
        terminals=b.terminals,
        namespace=namespace,
    )


def piece_fr(
    k: int,
    s: int,
    r: int,
    terminals: Mapping[str, str] | None = None,
    namespace: str = 'enc',
    *,
    roles: Mapping[str, Role] | None = None,
    tag_terminals: bool = True,
) -> GadgetInstance:
    """F_r: like F_1 but through u' instead of u; the edge u'y_r is absent."""
    _check_k(k, 5)
    _check_s(k, s)
    if not 4 <= r <= k or r == s:
        raise exc.GadgetParameterException(
            message=f'r must lie in 4..{k} and differ from s={s}, got {r}'
        )
    b, ys = _piece_builder(k, terminals, namespace, f'F{r}', roles, tag_terminals)
    for i in (1, 2):
        b.path("u'", f'v{i}', 'v')
        b.path("u'", f'w{i}', 'w')
    b.edge('u', "u'")
    b.edge('v1', 'v2')
    b.edge('w1', 'w2')
    b.apex(ys, ['v', 'w', "u'", 'v1', 'v2', 'w1', 'w2'])
    b.drop("u'", f'y{r}')
    return GadgetInstance(
        kind='fr',
        graph=b.graph(f'F{r}({k})'),
        k=k,
        s=s,
        r=r,
        terminals=b.terminals,
        namespace=namespace,
    )


def encoder_pieces(
    k: int,
    s: int,
    terminals: Mapping[str, str] | None = None,
    namespace: str = 'enc',
    **kwargs,
) -> list[GadgetInstance]:
    """F_1, F_s and F_r for every r in 4..k other than s, in that order."""
    pieces = [
        piece_f1(k, terminals, namespace, **kwargs),
        piece_fs(k, s, terminals, namespace, **kwargs),
    ]
    for r in range(4, k + 1):
        if r != s:
            pieces.append(piece_fr(k, s, r, terminals, namespace, **kwargs))
    return pieces


def f_enc(
    k: int,
    s: int,
    terminals: Mapping[str, str] | None = None,
    namespace: str = 'enc',
    *,
    roles: Mapping[str, Role] | None = None,
    tag_terminals: bool = True,
) -> GadgetInstance:
    """The encoder gadget: the pieces glued along A = {u, v, w, y4..yk}."""
    _check_k(k, 4)
    _check_s(k, s)
    pieces = encoder_pieces(
        k, s, terminals, namespace, roles=roles, tag_terminals=tag_terminals
    )
    graph = pieces[0].graph
    for piece in pieces[1:]:
        graph = glue(graph, piece.graph)
    return GadgetInstance(
        kind='enc',
        graph=graph.renamed(f'F_enc({s},{k})'),
        k=k,
        s=s,
        terminals=pieces[0].terminals,
        namespace=namespace,
    )


def f_enc_plus(
    k: int,
    s: int,
    terminals: Mapping[str, str] | None = None,
    namespace: str = 'enc',
    **kwargs,
) -> Graph:
    """The encoder gadget plus the clique on A."""
    inst = f_enc(k, s, terminals, namespace, **kwargs)
    return clique_on(inst.graph, inst.terminal_ids).renamed(f'F_enc+({s},{k})')


def f_enc_plus_trace(
    k: int,
    s: int,
    terminals: Mapping[str, str] | None = None,
    namespace: str = 'enc',
    **kwargs,
) -> tuple[Graph, ConstructionTrace]:
    """F_enc+ with its decomposition into plane pieces, apexes and a deletion.

    The plane pieces are F'_1 + uvw, F'_2 + uvw and the F'_3 + uvw copies; they
    are clique-summed on the triangle uvw, then y4..yk are added as universal
    vertices with their clique, and the edges u'y_s / u'y_r are deleted.
    """
    plus = f_enc_plus(k, s, terminals, namespace, **kwargs)
    pieces = encoder_pieces(k, s, terminals, namespace, **kwargs)
    t = pieces[0].terminals
    hub = (t['u'], t['v'], t['w'])
    ys = tuple(t[name] for name in apex_names(k))

    steps = []
    for i, piece in enumerate(pieces):
        planar_part = plus.induced(
            set(hub) | set(piece.internal_ids), name=f"{piece.graph.name}'+uvw"
        )
        if i == 0:
            steps.append(
                BasePlanePiece(
                    label=planar_part.name,
                    graph=planar_part,
                    boundary=CyclicBoundary(order=hub),
                )
            )
        else:
            steps.append(
                CliqueSumJoin(label=planar_part.name, summand=planar_part, shared=hub)
            )
    trace = ConstructionTrace(steps=tuple(steps))
    targets = tuple(replay(trace).ids)
    trace = trace.then(
        AddUniversalVertices(
            label='apexes', ids=ys, targets=targets, role=plus.role_of(ys[0])
        ),
        AddCliqueEdges(label='apex clique', ids=ys),
    )
    trace = trace.then(deletion_step(replay(trace), plus, label="drop u'y edges"))
    return plus, trace
