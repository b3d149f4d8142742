from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator
from concurrent.futures import ProcessPoolExecutor
from itertools import combinations, permutations, product
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .. import exception as exc
from ..graph.core import Graph
from ..graph.document import dump_document, parse_text, validate_document
from .engine import PartialColoring, extends

logger = logging.getLogger(__name__)

type Coloring = tuple[int, ...]


class ColoringFamily(BaseModel):
    """A set of total colorings of an ordered domain with palette 1..k.

    Members are color tuples aligned with `domain`, kept in lexicographic order.
    """

    domain: tuple[str, ...]
    k: int = Field(ge=1)
    members: tuple[Coloring, ...] = ()

    model_config = ConfigDict(frozen=True, extra='forbid')

    @field_validator('members', mode='after')
    @classmethod
    def canonical_order(cls, members: tuple[Coloring, ...]) -> tuple[Coloring, ...]:
        return tuple(sorted(set(members)))

    @model_validator(mode='after')
    def check_members(self) -> ColoringFamily:
        if len(set(self.domain)) != len(self.domain):
            dup = next(v for v in self.domain if self.domain.count(v) > 1)
            raise exc.DuplicateBoundaryIdException(vertex_id=dup)
        for member in self.members:
            if len(member) != len(self.domain):
                raise ValueError(
                    f'member {member} has length {len(member)}, '
                    f'domain has {len(self.domain)}'
                )
            for vid, color in zip(self.domain, member, strict=True):
                if not 1 <= color <= self.k:
                    raise exc.ColorOutOfRangeException(
                        vertex_id=vid, color=color, k=self.k
                    )
        return self

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, item: object) -> bool:
        if isinstance(item, PartialColoring):
            item = tuple(item.assignment.get(v, 0) for v in self.domain)
        return item in self.member_set

    @property
    def member_set(self) -> frozenset[Coloring]:
        return frozenset(self.members)

    def as_partial(self, member: Coloring) -> PartialColoring:
        return PartialColoring.from_tuple(self.k, self.domain, member)

    def with_members(self, members: Iterable[Coloring]) -> ColoringFamily:
        return ColoringFamily(domain=self.domain, k=self.k, members=tuple(members))

    def union(self, other: ColoringFamily) -> ColoringFamily:
        return self.with_members(self.member_set | other.member_set)


def all_colorings(domain: Iterable[str], k: int) -> ColoringFamily:
    domain = tuple(domain)
    return ColoringFamily(
        domain=domain, k=k, members=tuple(product(range(1, k + 1), repeat=len(domain)))
    )


def empty_family(domain: Iterable[str], k: int) -> ColoringFamily:
    return ColoringFamily(domain=tuple(domain), k=k)


def orbit(member: Coloring, k: int) -> set[Coloring]:
    """All images of a coloring under the k! color permutations."""
    used = sorted(set(member))
    images = set()
    for target in permutations(range(1, k + 1), len(used)):
        relabel = dict(zip(used, target, strict=True))
        images.add(tuple(relabel[c] for c in member))
    return images


def orbit_representatives(n: int, k: int) -> Iterator[Coloring]:
    """Restricted-growth tuples of length n using at most k colors, in lex order."""

    def grow(prefix: list[int], top: int) -> Iterator[Coloring]:
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for c in range(1, min(top + 1, k) + 1):
            prefix.append(c)
            yield from grow(prefix, max(top, c))
            prefix.pop()

    yield from grow([], 0)


def close_under_permutations(fam: ColoringFamily) -> ColoringFamily:
    """The smallest permutation-closed superset of `fam`."""
    closed: set[Coloring] = set()
    for member in fam.members:
        if member not in closed:
            closed |= orbit(member, fam.k)
    return fam.with_members(closed)


def first_missing_image(fam: ColoringFamily) -> Coloring | None:
    """A permuted image of a member that is not itself a member, if any."""
    present = fam.member_set
    for member in fam.members:
        for image in sorted(orbit(member, fam.k)):
            if image not in present:
                return image
    return None


def is_closed(fam: ColoringFamily) -> bool:
    return first_missing_image(fam) is None


def require_closed(fam: ColoringFamily) -> None:
    """Raise `FamilyNotClosedException` unless `fam` is permutation-closed."""
    missing = first_missing_image(fam)
    if missing is not None:
        raise exc.FamilyNotClosedException(missing=missing)


def _extends_task(args: tuple[Graph, PartialColoring]) -> bool:
    return extends(*args)


def boundary_trace(
    g: Graph, boundary: Iterable[str], k: int, *, jobs: int = 1
) -> ColoringFamily:
    """Exactly the colorings of `boundary` that extend to a k-coloring of `g`.

    One representative per color-permutation orbit is tested, which is exact
    because extendability is invariant under permuting colors.

    Raises:
        UnknownVertexException: If a boundary id is not a vertex of `g`.
        DuplicateBoundaryIdException: If the boundary repeats an id.
    """
    domain = tuple(boundary)
    seen: set[str] = set()
    for vid in domain:
        if vid in seen:
            raise exc.DuplicateBoundaryIdException(vertex_id=vid)
        seen.add(vid)
    missing = [vid for vid in domain if vid not in g]
    if missing:
        raise exc.UnknownVertexException(vertex_ids=missing)

    # equal colors on adjacent boundary vertices never extend
    adjacent = [
        (i, j) for i, j in combinations(range(len(domain)), 2)
        if g.has_edge(domain[i], domain[j])
    ]
    candidates = [
        rep for rep in orbit_representatives(len(domain), k)
        if all(rep[i] != rep[j] for i, j in adjacent)
    ]
    tasks = [(g, PartialColoring.from_tuple(k, domain, rep)) for rep in candidates]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            verdicts = list(pool.map(_extends_task, tasks))
    else:
        verdicts = [_extends_task(task) for task in tasks]

    members: set[Coloring] = set()
    for rep, ok in zip(candidates, verdicts, strict=True):
        if ok:
            members |= orbit(rep, k)
    logger.debug(
        'boundary trace of %s over %d ids: %d/%d orbits extend',
        g.name or '<graph>',
        len(domain),
        sum(verdicts),
        len(candidates),
    )
    return ColoringFamily(domain=domain, k=k, members=tuple(members))


def orbits_of(domain: Iterable[str], k: int) -> list[ColoringFamily]:
    """The permutation orbits of all k-colorings of a domain, as families."""
    domain = tuple(domain)
    return [
        ColoringFamily(domain=domain, k=k, members=tuple(orbit(rep, k)))
        for rep in orbit_representatives(len(domain), k)
    ]


def enumerate_closed_families(
    domain: Iterable[str], k: int
) -> Iterator[ColoringFamily]:
    """Every permutation-closed family over `domain`, as unions of orbits.

    There are 2^(number of orbits) of them; the empty family comes first.
    """
    domain = tuple(domain)
    orbits = orbits_of(domain, k)
    for mask in range(1 << len(orbits)):
        members: set[Coloring] = set()
        for i, orb in enumerate(orbits):
            if mask >> i & 1:
                members |= orb.member_set
        yield ColoringFamily(domain=domain, k=k, members=tuple(members))


def family_from_predicate(domain: Iterable[str], k: int, predicate) -> ColoringFamily:
    """All colorings of `domain` whose color tuple satisfies `predicate`."""
    domain = tuple(domain)
    return ColoringFamily(
        domain=domain,
        k=k,
        members=tuple(
            t for t in product(range(1, k + 1), repeat=len(domain)) if predicate(t)
        ),
    )


def family_payload(fam: ColoringFamily) -> dict:
    return {
        'domain': list(fam.domain),
        'k': fam.k,
        'members': [list(m) for m in fam.members],
    }


def serialize_family(fam: ColoringFamily) -> str:
    """Canonical YAML text of a family (members in lexicographic order)."""
    return dump_document(family_payload(fam))


def family_from_data(data: object, *, source: str = '<document>') -> ColoringFamily:
    try:
        return validate_document(data, ColoringFamily, source=source)
    except exc.ColoringException as e:
        raise exc.DocumentSchemaException(source=source, problems=[str(e)])


def deserialize_family(text: str, *, source: str = '<document>') -> ColoringFamily:
    return family_from_data(parse_text(text, source=source), source=source)


def read_family(path: Path) -> ColoringFamily:
    fmt = 'json' if path.suffix == '.json' else 'yaml'
    text = path.read_text(encoding='utf-8')
    return family_from_data(
        parse_text(text, source=path.as_posix(), fmt=fmt), source=path.as_posix()
    )
