from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from itertools import combinations
from pathlib import Path
from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .. import exception as exc
from ..coloring.engine import extends
from ..coloring.family import (
    Coloring,
    ColoringFamily,
    boundary_trace,
    family_payload,
    orbit_representatives,
    require_closed,
)
from ..graph.core import Edge, Graph, Vertex, edge_key
from ..graph.document import (
    GraphDocument,
    dump_document,
    graph_from_document,
    graph_payload,
    load_document,
    parse_text,
    read_document,
    validate_document,
)
from ..planar.boundary import CyclicBoundary
from ..planar.planarity import planar_with_boundary

logger = logging.getLogger(__name__)

K = 3


class RealizationProblem(BaseModel):
    """A permutation-closed family of 3-colorings of a cyclic boundary."""

    boundary: CyclicBoundary
    family: ColoringFamily

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_family(self) -> RealizationProblem:
        if self.family.k != K:
            raise ValueError(
                f'realizers are 3-colorings, family has k={self.family.k}'
            )
        if self.family.domain != self.boundary.order:
            raise ValueError('family domain must equal the boundary order')
        return self

    @classmethod
    def of(cls, family: ColoringFamily) -> RealizationProblem:
        """The problem whose boundary is the family's domain, in order."""
        return cls(boundary=CyclicBoundary(order=family.domain), family=family)


class RealizerLimits(BaseModel):
    max_internal: int = Field(default=3, ge=0)
    max_edges: int | None = Field(default=None, ge=0)
    budget_secs: float | None = Field(default=300.0, gt=0)

    model_config = ConfigDict(frozen=True)


class RealizerCertificate(BaseModel):
    """A plane graph shown to realize a problem.

    `verified` is only ever set by `verify_realizer`.
    """

    graph: Graph
    boundary: CyclicBoundary
    family: ColoringFamily
    verified: bool = False

    model_config = ConfigDict(frozen=True)

    @property
    def internal_count(self) -> int:
        return len(self.graph) - len(self.boundary)


class RealizerFailure(BaseModel):
    """Why a graph does not realize a problem.

    For trace failures `witness` is a boundary coloring on which the graph and
    the family disagree; `witness_extends` says which way.
    """

    condition: Literal['planarity', 'trace']
    detail: str
    witness: Coloring | None = None
    witness_extends: bool | None = None

    model_config = ConfigDict(frozen=True)

    def describe(self) -> str:
        if self.condition == 'planarity':
            return f'not planar with the boundary on the outer face: {self.detail}'
        if self.witness_extends:
            which = 'extends but is not'
        else:
            which = 'is but does not extend'
        return f'boundary coloring {self.witness} {which} in the family'


class SearchExhausted(BaseModel):
    """No graph within the limits realizes the problem."""

    limits: RealizerLimits
    candidates: int

    model_config = ConfigDict(frozen=True)


def _trace_mismatch(
    g: Graph, p: RealizationProblem
) -> tuple[Coloring, bool] | None:
    trace = boundary_trace(g, p.boundary.order, K)
    extra = sorted(trace.member_set - p.family.member_set)
    if extra:
        return extra[0], True
    missing = sorted(p.family.member_set - trace.member_set)
    if missing:
        return missing[0], False
    return None


def verify_realizer(
    g: Graph, p: RealizationProblem
) -> RealizerCertificate | RealizerFailure:
    """Check planarity with the boundary outside, then the exact boundary trace.

    Raises:
        UnknownIdException: If a boundary id is not a vertex of `g`.
    """
    g.require(p.boundary.order, context='boundary')
    if not planar_with_boundary(g, p.boundary):
        return RealizerFailure(
            condition='planarity',
            detail=f'boundary {list(p.boundary.order)}',
        )
    mismatch = _trace_mismatch(g, p)
    if mismatch is not None:
        witness, witness_extends = mismatch
        return RealizerFailure(
            condition='trace',
            detail='boundary trace differs from the family',
            witness=witness,
            witness_extends=witness_extends,
        )
    return RealizerCertificate(
        graph=g, boundary=p.boundary, family=p.family, verified=True
    )


class _Candidates:
    """Graphs on the boundary plus `n` internal vertices, smallest first.

    Boundary pairs that some member colors alike are never joined, and every
    internal vertex must have degree at least 3: a vertex of smaller degree
    always extends, so dropping it gives a smaller realizer found earlier.
    """

    def __init__(self, p: RealizationProblem, n: int, max_edges: int | None):
        self.boundary = list(p.boundary.order)
        self.internal = [f't{i}' for i in range(1, n + 1)]
        while set(self.internal) & set(self.boundary):
            self.internal = [f'_{vid}' for vid in self.internal]
        domain = p.family.domain
        position = {vid: i for i, vid in enumerate(domain)}
        forbidden = {
            edge_key(u, v)
            for u, v in combinations(self.boundary, 2)
            if any(m[position[u]] == m[position[v]] for m in p.family.members)
        }
        ids = self.boundary + self.internal
        self.pool: list[Edge] = [
            edge_key(u, v) for u, v in combinations(ids, 2)
            if edge_key(u, v) not in forbidden
        ]
        self.max_edges = len(self.pool) if max_edges is None else min(
            max_edges, len(self.pool)
        )
        self.vertices = tuple(Vertex(id=vid) for vid in ids)
        self.least = (3 * n + 1) // 2

    def __iter__(self) -> Iterator[Graph]:
        for size in range(self.least, self.max_edges + 1):
            for edges in combinations(self.pool, size):
                if self._degrees_ok(edges):
                    yield Graph(vertices=self.vertices, edges=frozenset(edges))

    def _degrees_ok(self, edges: tuple[Edge, ...]) -> bool:
        degree = dict.fromkeys(self.internal, 0)
        for u, v in edges:
            if u in degree:
                degree[u] += 1
            if v in degree:
                degree[v] += 1
        return all(d >= 3 for d in degree.values())


def search_realizer(
    p: RealizationProblem, limits: RealizerLimits | None = None
) -> RealizerCertificate | SearchExhausted:
    """Enumerate small plane graphs until one realizes `p`.

    Internal-vertex counts 0..max_internal are tried in turn; within a count,
    edge sets go by size and then lexicographically. A candidate is dropped
    at the first member that fails to extend, before the full trace.

    Raises:
        FamilyNotClosedException: If the family is not permutation-closed.
        RealizerSearchTimeoutException: If the budget runs out.
    """
    limits = limits or RealizerLimits()
    require_closed(p.family)
    start = time.monotonic()
    members = [
        p.family.as_partial(rep)
        for rep in orbit_representatives(len(p.family.domain), K)
        if rep in p.family.member_set
    ]
    checked = 0
    for n in range(limits.max_internal + 1):
        for g in _Candidates(p, n, limits.max_edges):
            checked += 1
            if limits.budget_secs is not None and checked % 256 == 0:
                if time.monotonic() - start > limits.budget_secs:
                    raise exc.RealizerSearchTimeoutException(
                        budget_secs=limits.budget_secs, candidates=checked
                    )
            if not planar_with_boundary(g, p.boundary):
                continue
            if not all(extends(g, m) for m in members):
                continue
            if _trace_mismatch(g, p) is not None:
                continue
            logger.info(
                'realizer with %d internal vertices and %d edges after %d candidates',
                n,
                len(g.edges),
                checked,
            )
            result = verify_realizer(g.renamed('realizer'), p)
            if isinstance(result, RealizerFailure):
                raise exc.RealizerVerificationException(reason=result.describe())
            return result
    logger.info('realizer search exhausted after %d candidates', checked)
    return SearchExhausted(limits=limits, candidates=checked)


class ProblemDocument(BaseModel):
    """On-disk form of a realization problem."""

    boundary: list[str]
    family: ColoringFamily

    model_config = ConfigDict(extra='forbid')


def problem_payload(p: RealizationProblem) -> dict[str, Any]:
    return {'boundary': list(p.boundary.order), 'family': family_payload(p.family)}


def serialize_problem(p: RealizationProblem) -> str:
    return dump_document(problem_payload(p))


def problem_from_data(data: Any, *, source: str = '<document>') -> RealizationProblem:
    try:
        doc = validate_document(data, ProblemDocument, source=source)
        return RealizationProblem(
            boundary=CyclicBoundary(order=tuple(doc.boundary)), family=doc.family
        )
    except (ValueError, exc.ColoringException) as e:
        raise exc.DocumentSchemaException(source=source, problems=[str(e)])


def deserialize_problem(text: str, *, source: str = '<document>') -> RealizationProblem:
    return problem_from_data(parse_text(text, source=source), source=source)


def read_problem(path: Path) -> RealizationProblem:
    fmt = 'json' if path.suffix == '.json' else 'yaml'
    data = parse_text(path.read_text(encoding='utf-8'), source=path.as_posix(), fmt=fmt)
    return problem_from_data(data, source=path.as_posix())


def certificate_payload(cert: RealizerCertificate) -> dict[str, Any]:
    return {
        'boundary': list(cert.boundary.order),
        'family': family_payload(cert.family),
        'graph': graph_payload(cert.graph),
    }


def load_realizer(
    document: str | Path | GraphDocument, p: RealizationProblem
) -> RealizerCertificate:
    """Read a candidate graph and verify it from scratch against `p`.

    Args:
        document (str | Path | GraphDocument): Graph document text, a path to
            one, or an already parsed document.
        p (RealizationProblem): The problem it should realize.

    Raises:
        DocumentParseException: If the document does not parse.
        DocumentSchemaException: If it is not a graph document.
        RealizerVerificationException: If the graph does not realize `p`.
    """
    if isinstance(document, Path):
        g = graph_from_document(
            read_document(document, GraphDocument), source=document.as_posix()
        )
    elif isinstance(document, GraphDocument):
        g = graph_from_document(document)
    else:
        g = graph_from_document(load_document(document, GraphDocument))
    try:
        result = verify_realizer(g, p)
    except exc.UnknownIdException as e:
        raise exc.RealizerVerificationException(reason=str(e))
    if isinstance(result, RealizerFailure):
        raise exc.RealizerVerificationException(reason=result.describe())
    return result
