from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Literal

import yaml
from jinja2 import Environment
from pydantic import BaseModel, ConfigDict, ValidationError

from .. import exception as exc
from .core import Graph, Role, build_graph


class VertexRecord(BaseModel):
    id: str
    role: Role = 'internal'
    tags: list[str] = []

    model_config = ConfigDict(extra='forbid')


class GraphDocument(BaseModel):
    """On-disk form of a graph; see `schema/graph.json`."""

    name: str = ''
    vertices: list[VertexRecord] = []
    edges: list[tuple[str, str]] = []

    model_config = ConfigDict(extra='forbid')


def parse_text(text: str, *, source: str = '<document>', fmt: str = 'yaml') -> Any:
    """Parse YAML (a superset of JSON) or strict JSON text.

    Raises:
        DocumentParseException: With the offending line when it is known.
    """
    try:
        if fmt == 'json':
            return json.loads(text)
        return yaml.safe_load(text)
    except json.JSONDecodeError as e:
        raise exc.DocumentParseException(source=source, message=e.msg, line=e.lineno)
    except yaml.YAMLError as e:
        mark = getattr(e, 'problem_mark', None)
        line = mark.line + 1 if mark is not None else None
        problem = getattr(e, 'problem', None) or str(e)
        raise exc.DocumentParseException(source=source, message=problem, line=line)


def validate_document[M: BaseModel](data: Any, model: type[M], *, source: str) -> M:
    """Validate parsed data against a document model.

    Raises:
        DocumentSchemaException: Listing every failing field path.
    """
    try:
        return model.model_validate(data)
    except ValidationError as e:
        problems = [
            f'{".".join(str(p) for p in err["loc"]) or "<root>"}: {err["msg"]}'
            for err in e.errors()
        ]
        raise exc.DocumentSchemaException(source=source, problems=problems)


def load_document[M: BaseModel](
    text: str, model: type[M], *, source: str = '<document>'
) -> M:
    return validate_document(parse_text(text, source=source), model, source=source)


def read_document[M: BaseModel](path: Path, model: type[M]) -> M:
    fmt = 'json' if path.suffix == '.json' else 'yaml'
    with path.open('r', encoding='utf-8') as f:
        data = parse_text(f.read(), source=path.as_posix(), fmt=fmt)
    return validate_document(data, model, source=path.as_posix())


def dump_document(data: Any, *, fmt: Literal['yaml', 'json'] = 'yaml') -> str:
    """Serialize plain data deterministically."""
    if isinstance(data, BaseModel):
        data = data.model_dump(mode='json', exclude_none=True)
    if fmt == 'json':
        return json.dumps(data, indent=2) + '\n'
    return yaml.safe_dump(
        data, sort_keys=False, default_flow_style=None, allow_unicode=True, width=88
    )


def graph_to_document(g: Graph) -> GraphDocument:
    """The canonical document: vertices and edges sorted lexicographically."""
    return GraphDocument(
        name=g.name,
        vertices=[
            VertexRecord(id=v.id, role=v.role, tags=list(v.tags))
            for v in sorted(g.vertices, key=lambda v: v.id)
        ],
        edges=sorted(g.edges),
    )


def graph_from_document(doc: GraphDocument, *, source: str = '<document>') -> Graph:
    try:
        return build_graph(
            [(v.id, v.role, tuple(v.tags)) for v in doc.vertices],
            doc.edges,
            name=doc.name,
        )
    except exc.GraphException as e:
        raise exc.DocumentSchemaException(source=source, problems=[str(e)])


def graph_payload(g: Graph) -> dict[str, Any]:
    """Plain data for embedding a graph in larger documents."""
    doc = graph_to_document(g).model_dump(mode='json')
    for record in doc['vertices']:
        if not record['tags']:
            del record['tags']
    doc['edges'] = [list(e) for e in doc['edges']]
    return doc


def serialize(g: Graph, *, fmt: Literal['yaml', 'json'] = 'yaml') -> str:
    """Canonical text of a graph; equal graphs give identical bytes."""
    return dump_document(graph_payload(g), fmt=fmt)


def deserialize(text: str, *, source: str = '<document>') -> Graph:
    doc = load_document(text, GraphDocument, source=source)
    return graph_from_document(doc, source=source)


def read_graph(path: Path) -> Graph:
    return graph_from_document(
        read_document(path, GraphDocument), source=path.as_posix()
    )


def write_graph(g: Graph, path: Path) -> None:
    fmt = 'json' if path.suffix == '.json' else 'yaml'
    path.write_text(serialize(g, fmt=fmt), encoding='utf-8')


_DOT_TEMPLATE = """\
graph {{ name | q }} {
{% for v in vertices %}
  {{ v.id | q }} [role={{ v.role | q }}, shape={{ shapes[v.role] }}\
{% if v.tags %}, tags={{ v.tags | join(',') | q }}{% endif %}];
{% endfor %}
{% for u, v in edges %}
  {{ u | q }} -- {{ v | q }};
{% endfor %}
}
"""

_SHAPES = {'X': 'box', 'Y': 'diamond', 'Z': 'doublecircle', 'internal': 'circle'}


def _quote(value: str) -> str:
    return '"' + value.replace('\\', '\\\\').replace('"', '\\"') + '"'


_env = Environment(trim_blocks=True, lstrip_blocks=True, keep_trailing_newline=True)
_env.filters['q'] = _quote
_dot = _env.from_string(_DOT_TEMPLATE)


def to_dot(g: Graph) -> str:
    """A DOT document with one node statement per vertex, in id order."""
    return _dot.render(
        name=g.name or 'G',
        vertices=sorted(g.vertices, key=lambda v: v.id),
        edges=sorted(g.edges),
        shapes=_SHAPES,
    )
