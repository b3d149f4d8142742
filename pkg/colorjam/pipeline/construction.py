"""Assembly of a graph realizing a permutation-closed family of k-colorings.

For k >= 4 the colors of each x_i are encoded, through copy and encoder
gadgets, into a 3-coloring of the chain z_i3..z_ik. A plane realizer of the
induced family of 3-colorings, apexed by y4..yk, then decides which colorings
of X extend.
"""

from __future__ import annotations

import logging
from itertools import product
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .. import exception as exc
from ..coloring.engine import PartialColoring
from ..coloring.family import (
    Coloring,
    ColoringFamily,
    family_payload,
    require_closed,
)
from ..gadget.forge import (
    encoder_terminals,
    f_copy,
    f_copy_plus,
    f_enc,
    f_enc_plus_trace,
)
from ..graph.core import (
    Graph,
    Role,
    Vertex,
    add_universal_vertices,
    build_graph,
    clique_on,
    glue,
    relabeled,
)
from ..graph.document import (
    GraphDocument,
    dump_document,
    graph_from_document,
    graph_payload,
    parse_text,
    validate_document,
)
from ..graph.trace import (
    AddCliqueEdges,
    AddUniversalVertices,
    BasePlanePiece,
    CliqueSumJoin,
    ConstructionTrace,
    deletion_step,
    replay,
    trace_from_data,
    trace_payload,
)
from ..planar.boundary import CyclicBoundary
from ..realizer import cache
from ..realizer.realizer import (
    RealizationProblem,
    RealizerCertificate,
    RealizerLimits,
    SearchExhausted,
    certificate_payload,
    load_realizer,
    search_realizer,
)

logger = logging.getLogger(__name__)

LOW_COLORS = (1, 2, 3)


def x_ids(m: int) -> list[str]:
    return [f'x{i}' for i in range(1, m + 1)]


def y_ids(k: int) -> list[str]:
    return [f'y{j}' for j in range(4, k + 1)]


def z_ids(m: int, k: int) -> list[str]:
    """z_i3..z_ik for i = 1..m, in boundary order."""
    return [f'z{i}_{j}' for i in range(1, m + 1) for j in range(3, k + 1)]


def xj_id(i: int, j: int) -> str:
    return f'x{i}_{j}'


def z_id(i: int, j: int) -> str:
    return f'z{i}_{j}'


class InstanceSpec(BaseModel):
    """A family C of k-colorings of X = x1..xm to be realized."""

    m: int = Field(ge=1)
    k: int = Field(ge=3)
    family: ColoringFamily

    model_config = ConfigDict(frozen=True, extra='forbid')

    @model_validator(mode='after')
    def check_family(self) -> InstanceSpec:
        if self.family.domain != tuple(x_ids(self.m)):
            raise exc.PipelineParameterException(
                message=f'family domain must be {x_ids(self.m)}, '
                f'got {list(self.family.domain)}'
            )
        if self.family.k != self.k:
            raise exc.PipelineParameterException(
                message=f'family palette k={self.family.k} differs from k={self.k}'
            )
        require_closed(self.family)
        return self

    @property
    def roots(self) -> list[str]:
        return x_ids(self.m)


def _check_k(k: int) -> None:
    if k < 4:
        raise exc.PipelineParameterException(message=f'k must be at least 4, got {k}')


def _chain_patterns(color: int, k: int) -> list[Coloring]:
    """Colorings of z_i3..z_ik allowed when x_i has the given color."""
    if color in LOW_COLORS:
        return [(color,) * (k - 2)]
    s = color
    return [
        (a,) * (s - 3) + (b,) * (k - s + 1)
        for a in LOW_COLORS
        for b in LOW_COLORS
        if a != b
    ]


def compute_cf(f: PartialColoring, m: int, k: int) -> ColoringFamily:
    """The 3-colorings of Z that encode the coloring f of X.

    Raises:
        PipelineParameterException: If k < 4 or f does not color all of X.
        ColorOutOfRangeException: If a color of f lies outside 1..k.
    """
    _check_k(k)
    xs = x_ids(m)
    missing = [x for x in xs if x not in f.assignment]
    if missing:
        raise exc.PipelineParameterException(
            message=f'coloring must be total on X, missing {missing}'
        )
    for x in xs:
        if not 1 <= f.assignment[x] <= k:
            raise exc.ColorOutOfRangeException(vertex_id=x, color=f.assignment[x], k=k)
    per_chain = [_chain_patterns(f.assignment[x], k) for x in xs]
    members = [sum(parts, ()) for parts in product(*per_chain)]
    return ColoringFamily(domain=tuple(z_ids(m, k)), k=3, members=tuple(members))


def compute_cprime(spec: InstanceSpec) -> ColoringFamily:
    """The union of the encodings of every member of the family."""
    _check_k(spec.k)
    members: set[Coloring] = set()
    for member in spec.family.members:
        f = spec.family.as_partial(member)
        members |= compute_cf(f, spec.m, spec.k).member_set
    return ColoringFamily(
        domain=tuple(z_ids(spec.m, spec.k)), k=3, members=tuple(sorted(members))
    )


def realization_problem(spec: InstanceSpec) -> RealizationProblem:
    """The problem G'_2 has to solve: C' over the z chain, or C itself for k = 3."""
    if spec.k == 3:
        return RealizationProblem.of(spec.family)
    return RealizationProblem.of(compute_cprime(spec))


def _roles(m: int, k: int) -> dict[str, Role]:
    roles: dict[str, Role] = {x: 'X' for x in x_ids(m)}
    roles |= {z: 'Z' for z in z_ids(m, k)}
    roles |= {y: 'Y' for y in y_ids(k)}
    return roles


def build_g1(
    m: int, k: int, namespace: str = ''
) -> tuple[Graph, ConstructionTrace]:
    """The encoding graph G_1 and the clique-sum joins attaching its gadgets.

    Each x_i is copied onto x_i4..x_ik, and x_is drives an encoder on
    (x_is, z_i(s-1), z_is; y4..yk). The joins carry the completed gadgets
    F_copy+ and F_enc+ (the latter with its own decomposition) and are meant
    to be replayed on top of the base plane piece.

    Gadget internals are prefixed with `namespace`. The x, y and z ids are
    shared with G_2 and the skeleton, so they are never prefixed.

    Raises:
        PipelineParameterException: If k < 4 or m < 1.
    """
    _check_k(k)
    if m < 1:
        raise exc.PipelineParameterException(message=f'm must be at least 1, got {m}')
    roles = _roles(m, k)
    ys = y_ids(k)
    g1 = build_graph(roles.items(), name=f'G1(m={m},k={k})')
    joins: list[CliqueSumJoin] = []
    for i in range(1, m + 1):
        x = f'x{i}'
        for j in range(4, k + 1):
            ns = f'{namespace}copy{i}_{j}'
            copy = f_copy(k, x, xj_id(i, j), ns, roles=roles, tag_terminals=False)
            g1 = glue(g1, copy.graph)
            joins.append(
                CliqueSumJoin(
                    label=f'F_copy+ {x} {xj_id(i, j)}',
                    summand=f_copy_plus(
                        k, x, xj_id(i, j), ns, roles=roles, tag_terminals=False
                    ),
                    shared=(x, xj_id(i, j)),
                )
            )
        for s in range(4, k + 1):
            ns = f'{namespace}enc{i}_{s}'
            terminals = encoder_terminals(
                k, xj_id(i, s), z_id(i, s - 1), z_id(i, s), ys
            )
            enc = f_enc(k, s, terminals, ns, roles=roles, tag_terminals=False)
            g1 = glue(g1, enc.graph)
            plus, decomposition = f_enc_plus_trace(
                k, s, terminals, ns, roles=roles, tag_terminals=False
            )
            joins.append(
                CliqueSumJoin(
                    label=f'F_enc+ s={s} at {xj_id(i, s)}',
                    summand=plus,
                    shared=tuple(terminals.values()),
                    decomposition=decomposition,
                )
            )
    return g1, ConstructionTrace(steps=tuple(joins))


def realizer_part(cert: RealizerCertificate, role: Role = 'Z') -> Graph:
    """The certificate graph with boundary ids given `role` and the internal
    vertices moved into the `g2/` namespace."""
    boundary = set(cert.boundary.order)
    g = relabeled(
        cert.graph, {vid: f'g2/{vid}' for vid in cert.graph.ids if vid not in boundary}
    )
    return Graph(
        name="G'2",
        vertices=tuple(
            Vertex(id=v.id, role=role if v.id in boundary else 'internal')
            for v in g.vertices
        ),
        edges=g.edges,
    )


def build_g2(cert: RealizerCertificate, k: int) -> tuple[Graph, ConstructionTrace]:
    """G'_2 with y4..yk made universal over it and joined into a clique.

    Returns:
        tuple[Graph, ConstructionTrace]: G_2 and a trace that replays to it.

    Raises:
        UnverifiedCertificateException: If the certificate was not verified.
        PipelineParameterException: If k < 4.
    """
    _check_k(k)
    if not cert.verified:
        raise exc.UnverifiedCertificateException()
    g2_prime = realizer_part(cert)
    ys = tuple(y_ids(k))
    g2 = add_universal_vertices(g2_prime, ys, g2_prime.ids, role='Y')
    g2 = clique_on(g2, ys).renamed(f'G2(k={k})')
    trace = ConstructionTrace(
        steps=(
            BasePlanePiece(label="G'2", graph=g2_prime, boundary=cert.boundary),
            AddUniversalVertices(
                label='Y', ids=ys, targets=tuple(g2_prime.ids), role='Y'
            ),
            AddCliqueEdges(label='Y clique', ids=ys),
        )
    )
    return g2, trace


def skeleton(m: int, k: int) -> Graph:
    """The triangles x_ij z_i(j-1) z_ij and the edges x_i x_ij, for j = 4..k."""
    vertices = [(x, 'X') for x in x_ids(m)]
    vertices += [
        (xj_id(i, j), 'internal')
        for i in range(1, m + 1)
        for j in range(4, k + 1)
    ]
    vertices += [(z, 'Z') for z in z_ids(m, k)]
    edges = []
    for i in range(1, m + 1):
        for j in range(4, k + 1):
            a, b, c = xj_id(i, j), z_id(i, j - 1), z_id(i, j)
            edges += [(a, b), (b, c), (a, c), (f'x{i}', a)]
    return build_graph(vertices, edges, name='skeleton')


def obtain_realizer(
    problem: RealizationProblem,
    *,
    limits: RealizerLimits | None = None,
    realizer_path: Path | None = None,
    use_cache: bool = False,
    cache_dir: Path | None = None,
) -> RealizerCertificate:
    """Load a realizer from a file, or find one in the cache or by search.

    Raises:
        RealizerUnavailableException: If the search is exhausted or times out.
        RealizerVerificationException: If a loaded realizer fails verification.
    """
    if realizer_path is not None:
        return load_realizer(realizer_path, problem)
    limits = limits or RealizerLimits()
    if use_cache:
        cert = cache.lookup(problem, limits, cache_dir)
        if cert is not None:
            return cert
    try:
        result = search_realizer(problem, limits)
    except exc.RealizerSearchTimeoutException as e:
        raise exc.RealizerUnavailableException(reason=str(e))
    if isinstance(result, SearchExhausted):
        raise exc.RealizerUnavailableException(
            reason=f'no realizer with at most {limits.max_internal} internal vertices '
            f'({result.candidates} candidates); supply one from a file'
        )
    if use_cache:
        cache.store(problem, limits, result, cache_dir)
    return result


class AssembledInstance(BaseModel):
    """The realizing graph G together with how it was built."""

    spec: InstanceSpec
    graph: Graph
    trace: ConstructionTrace
    certificate: RealizerCertificate

    model_config = ConfigDict(frozen=True)

    @property
    def roots(self) -> list[str]:
        return self.spec.roots


def assemble(
    spec: InstanceSpec,
    *,
    limits: RealizerLimits | None = None,
    realizer_path: Path | None = None,
    certificate: RealizerCertificate | None = None,
    use_cache: bool = False,
    cache_dir: Path | None = None,
) -> AssembledInstance:
    """Build G realizing `spec.family`, with a trace that replays to exactly G.

    For k = 3 the plane realizer of the family over X is G itself.

    Raises:
        RealizerUnavailableException: If no realizer could be obtained.
        UnverifiedCertificateException: If a supplied certificate is unverified.
    """
    problem = realization_problem(spec)
    if certificate is None:
        certificate = obtain_realizer(
            problem,
            limits=limits,
            realizer_path=realizer_path,
            use_cache=use_cache,
            cache_dir=cache_dir,
        )
    elif not certificate.verified:
        raise exc.UnverifiedCertificateException()
    m, k = spec.m, spec.k
    name = f'G(m={m},k={k})'
    xs = CyclicBoundary(order=tuple(x_ids(m)))

    if k == 3:
        graph = realizer_part(certificate, role='X').renamed(name)
        trace = ConstructionTrace(
            steps=(BasePlanePiece(label='realizer', graph=graph, boundary=xs),)
        )
        return AssembledInstance(
            spec=spec, graph=graph, trace=trace, certificate=certificate
        )

    g2, _ = build_g2(certificate, k)
    g1, joins = build_g1(m, k)
    graph = glue(g1, g2, name=name)

    g0 = glue(realizer_part(certificate), skeleton(m, k), name='G0')
    ys = tuple(y_ids(k))
    trace = ConstructionTrace(
        steps=(
            BasePlanePiece(label='G0', graph=g0, boundary=xs),
            AddUniversalVertices(label='Y', ids=ys, targets=tuple(g0.ids), role='Y'),
            AddCliqueEdges(label='Y clique', ids=ys),
        )
    ).extend(joins)
    trace = trace.then(deletion_step(replay(trace), graph, label='restrict to G'))
    logger.info(
        'assembled %s: %d vertices, %d edges, realizer with %d internal vertices',
        name,
        len(graph),
        len(graph.edges),
        certificate.internal_count,
    )
    return AssembledInstance(
        spec=spec, graph=graph, trace=trace, certificate=certificate
    )


def spec_payload(spec: InstanceSpec) -> dict[str, Any]:
    return {'m': spec.m, 'k': spec.k, 'family': family_payload(spec.family)}


def serialize_spec(spec: InstanceSpec) -> str:
    return dump_document(spec_payload(spec))


def spec_from_data(data: Any, *, source: str = '<document>') -> InstanceSpec:
    """Validate an instance spec document.

    Raises:
        DocumentSchemaException: If the document is malformed.
        FamilyNotClosedException: If the family is not permutation-closed.
    """
    try:
        return validate_document(data, InstanceSpec, source=source)
    except exc.FamilyNotClosedException:
        raise
    except (exc.ColoringException, exc.PipelineParameterException) as e:
        raise exc.DocumentSchemaException(source=source, problems=[str(e)])


def read_spec(path: Path) -> InstanceSpec:
    fmt = 'json' if path.suffix == '.json' else 'yaml'
    text = path.read_text(encoding='utf-8')
    return spec_from_data(
        parse_text(text, source=path.as_posix(), fmt=fmt), source=path.as_posix()
    )


def instance_payload(inst: AssembledInstance) -> dict[str, Any]:
    return {
        'spec': spec_payload(inst.spec),
        'graph': graph_payload(inst.graph),
        'trace': trace_payload(inst.trace),
        'certificate': certificate_payload(inst.certificate),
    }


def serialize_instance(inst: AssembledInstance, *, fmt: str = 'yaml') -> str:
    return dump_document(instance_payload(inst), fmt=fmt)


class InstanceDocument(BaseModel):
    spec: dict[str, Any]
    graph: GraphDocument
    trace: dict[str, Any]
    certificate: dict[str, Any]

    model_config = ConfigDict(extra='forbid')


def instance_from_data(data: Any, *, source: str = '<document>') -> AssembledInstance:
    """Rebuild an assembled instance; the realizer is verified again from scratch."""
    doc = validate_document(data, InstanceDocument, source=source)
    spec = spec_from_data(doc.spec, source=source)
    graph = graph_from_document(doc.graph, source=source)
    trace = trace_from_data(doc.trace, source=source)
    cert_graph = validate_document(
        doc.certificate.get('graph'), GraphDocument, source=source
    )
    certificate = load_realizer(cert_graph, realization_problem(spec))
    return AssembledInstance(
        spec=spec, graph=graph, trace=trace, certificate=certificate
    )


def read_instance(path: Path) -> AssembledInstance:
    fmt = 'json' if path.suffix == '.json' else 'yaml'
    text = path.read_text(encoding='utf-8')
    return instance_from_data(
        parse_text(text, source=path.as_posix(), fmt=fmt), source=path.as_posix()
    )
