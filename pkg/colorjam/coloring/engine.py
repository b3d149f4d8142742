from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .. import exception as exc
from ..graph.core import Graph

logger = logging.getLogger(__name__)


class PartialColoring(BaseModel):
    """A possibly partial assignment of colors 1..k to vertex ids."""

    k: int = Field(ge=1)
    assignment: dict[str, int] = Field(default_factory=dict)

    model_config = ConfigDict(frozen=True)

    @model_validator(mode='after')
    def check_colors(self) -> PartialColoring:
        for vid, color in self.assignment.items():
            if not 1 <= color <= self.k:
                raise exc.ColorOutOfRangeException(vertex_id=vid, color=color, k=self.k)
        return self

    @classmethod
    def of(cls, k: int, assignment: Mapping[str, int] | None = None, **colors: int):
        """Shorthand: `PartialColoring.of(4, u=1, v=1)`."""
        merged = dict(assignment or {})
        merged.update(colors)
        return cls(k=k, assignment=merged)

    @classmethod
    def from_tuple(cls, k: int, domain: Iterable[str], colors: Iterable[int]):
        return cls(k=k, assignment=dict(zip(domain, colors, strict=True)))

    def permuted(self, perm: Mapping[int, int]) -> PartialColoring:
        """The coloring `perm ∘ self`."""
        return PartialColoring(
            k=self.k, assignment={v: perm[c] for v, c in self.assignment.items()}
        )

    def restricted(self, vertex_ids: Iterable[str]) -> PartialColoring:
        keep = set(vertex_ids)
        return PartialColoring(
            k=self.k, assignment={v: c for v, c in self.assignment.items() if v in keep}
        )


class _Search:
    """Backtracking over uncolored vertices with color-set forward checking.

    Colors are bits 0..k-1 of an int mask; vertices are dense indices.
    """

    def __init__(self, g: Graph, k: int) -> None:
        self.k = k
        self.full = (1 << k) - 1
        self.ids = g.ids
        self.index = {vid: i for i, vid in enumerate(self.ids)}
        self.nbrs = [
            [self.index[n] for n in sorted(g.adjacency[vid])] for vid in self.ids
        ]
        self.nodes = 0

    def run(self, fixed: Mapping[str, int]) -> dict[str, int] | None:
        n = len(self.ids)
        colors = [0] * n  # 0 = uncolored, else 1-based color
        domains = [self.full] * n
        for vid, c in fixed.items():
            colors[self.index[vid]] = c
        for v in range(n):
            if colors[v]:
                bit = 1 << (colors[v] - 1)
                for w in self.nbrs[v]:
                    if colors[w] == colors[v]:
                        return None
                    domains[w] &= ~bit
        free = [v for v in range(n) if not colors[v]]
        if any(domains[v] == 0 for v in free):
            return None

        pin_first = not fixed
        for component in self._components(free, colors):
            if not self._solve(component, colors, domains, pin_first):
                return None
        return {self.ids[v]: colors[v] for v in range(n)}

    def _components(self, free: list[int], colors: list[int]) -> list[list[int]]:
        seen: set[int] = set()
        parts = []
        for start in free:
            if start in seen:
                continue
            seen.add(start)
            stack, part = [start], []
            while stack:
                v = stack.pop()
                part.append(v)
                for w in self.nbrs[v]:
                    if not colors[w] and w not in seen:
                        seen.add(w)
                        stack.append(w)
            parts.append(sorted(part))
        return parts

    def _solve(
        self, todo: list[int], colors: list[int], domains: list[int], pin: bool
    ) -> bool:
        remaining = set(todo)

        def pick() -> int:
            # most constrained first; ties by uncolored degree, then index
            return min(
                remaining,
                key=lambda v: (
                    domains[v].bit_count(),
                    -sum(1 for w in self.nbrs[v] if w in remaining),
                    v,
                ),
            )

        def backtrack(first: bool) -> bool:
            if not remaining:
                return True
            self.nodes += 1
            v = pick()
            remaining.discard(v)
            options = domains[v]
            if first:
                # colors are interchangeable while nothing is fixed
                options &= 1
            while options:
                bit = options & -options
                options ^= bit
                touched = []
                ok = True
                for w in self.nbrs[v]:
                    if w in remaining and domains[w] & bit:
                        domains[w] &= ~bit
                        touched.append(w)
                        if not domains[w]:
                            ok = False
                if ok:
                    colors[v] = bit.bit_length()
                    if backtrack(False):
                        return True
                    colors[v] = 0
                for w in touched:
                    domains[w] |= bit
            remaining.add(v)
            return False

        return backtrack(pin)


def _check_partial(g: Graph, partial: PartialColoring) -> None:
    missing = [vid for vid in partial.assignment if vid not in g]
    if missing:
        raise exc.UnknownVertexException(vertex_ids=missing)


def find_extension(g: Graph, partial: PartialColoring) -> dict[str, int] | None:
    """A proper k-coloring of `g` agreeing with `partial`, or None.

    Raises:
        UnknownVertexException: If a colored id is not a vertex of `g`.
    """
    _check_partial(g, partial)
    search = _Search(g, partial.k)
    result = search.run(partial.assignment)
    logger.debug(
        'extension search on %s (%d vertices, k=%d): %s after %d nodes',
        g.name or '<graph>',
        len(g),
        partial.k,
        'found' if result is not None else 'none',
        search.nodes,
    )
    return result


def extends(g: Graph, partial: PartialColoring) -> bool:
    """Whether `partial` extends to a proper k-coloring of all of `g`."""
    return find_extension(g, partial) is not None


def is_proper(g: Graph, coloring: Mapping[str, int]) -> bool:
    """Whether a total coloring is proper on `g`."""
    return all(coloring[u] != coloring[v] for u, v in g.edges) and all(
        vid in coloring for vid in g.vertex_map
    )
