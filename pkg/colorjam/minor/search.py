from __future__ import annotations

import logging
import time
from collections.abc import Iterable
from typing import Literal

import networkx as nx
from pydantic import BaseModel, ConfigDict, Field

from .. import exception as exc
from ..graph.core import Graph

logger = logging.getLogger(__name__)

DEFAULT_BUDGET_SECS = 120.0

# how often the clock is consulted, in search nodes
_CLOCK_EVERY = 1024


class RootConstraint(BaseModel):
    """Which host vertices count as roots, and whether every bag needs one."""

    roots: frozenset[str] = Field(default_factory=frozenset)
    mode: Literal['rooted', 'unrooted'] = 'unrooted'

    model_config = ConfigDict(frozen=True)

    @classmethod
    def unrooted(cls) -> RootConstraint:
        return cls()

    @classmethod
    def rooted(cls, roots: Iterable[str]) -> RootConstraint:
        return cls(roots=frozenset(roots), mode='rooted')

    @property
    def is_rooted(self) -> bool:
        return self.mode == 'rooted'


class MinorModel(BaseModel):
    """Branch sets of the host, one per pattern vertex."""

    pattern: Graph
    host: Graph
    branch_sets: dict[str, tuple[str, ...]]

    model_config = ConfigDict(frozen=True)

    def payload(self) -> dict:
        """Plain data: pattern and host names plus pattern id -> host ids."""
        return {
            'pattern': self.pattern.name,
            'host': self.host.name,
            'branch_sets': {
                p: list(ids) for p, ids in sorted(self.branch_sets.items())
            },
        }


def _is_complete(pattern: Graph) -> bool:
    n = len(pattern)
    return len(pattern.edges) == n * (n - 1) // 2


class _Reduced:
    """A host with low-degree vertices contracted away.

    Every vertex of the reduced host stands for the original vertices listed in
    `absorbed`.
    """

    def __init__(self, host: Graph, rc: RootConstraint, t: int, complete: bool):
        self.adj: dict[str, set[str]] = {v: set(ns) for v, ns in host.adjacency.items()}
        self.absorbed: dict[str, list[str]] = {v: [v] for v in host.ids}
        self.roots = set(rc.roots) if rc.is_rooted else set()
        if complete and t >= 4:
            self._contract()

    def _contract(self) -> None:
        # a vertex of degree <= 2 is never a singleton bag of K_t for t >= 4,
        # so it can be merged into a neighbor's bag; roots are kept intact
        queue = sorted(v for v, ns in self.adj.items() if len(ns) <= 2)
        while queue:
            v = queue.pop()
            if v not in self.adj or v in self.roots or len(self.adj[v]) > 2:
                continue
            nbrs = sorted(self.adj.pop(v))
            absorbed = self.absorbed.pop(v)
            for n in nbrs:
                self.adj[n].discard(v)
            if len(nbrs) == 2:
                a, b = nbrs
                self.absorbed[a].extend(absorbed)
                self.adj[a].add(b)
                self.adj[b].add(a)
            queue.extend(n for n in nbrs if len(self.adj[n]) <= 2)

    def components(self) -> list[list[str]]:
        nxg = nx.Graph()
        nxg.add_nodes_from(self.adj)
        nxg.add_edges_from((u, v) for u, ns in self.adj.items() for v in ns)
        return [sorted(c) for c in nx.connected_components(nxg)]

    def expand(self, bag: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(x for v in bag for x in self.absorbed[v]))


class _BranchSearch:
    """Backtracking that labels host vertices with a bag (or leaves them unused).

    Vertices are visited in breadth-first order. With `complete` set, bags are
    interchangeable: labels follow restricted growth, so bags are ordered by
    their first vertex, and every vertex must be used.
    """

    def __init__(
        self,
        order: list[str],
        adj: dict[str, set[str]],
        pattern_adj: list[int],
        roots: set[str],
        rooted: bool,
        complete: bool,
        deadline: float | None,
    ) -> None:
        self.order = order
        self.n = len(order)
        index = {v: i for i, v in enumerate(order)}
        self.nbr = [0] * self.n
        for v, i in index.items():
            for w in adj[v]:
                if w in index:
                    self.nbr[i] |= 1 << index[w]
        self.t = len(pattern_adj)
        self.pattern_adj = pattern_adj
        self.roots = sum(1 << index[r] for r in roots if r in index) if rooted else 0
        self.rooted = rooted
        self.complete = complete
        self.deadline = deadline
        self.nodes = 0

    def _neighborhood(self, mask: int) -> int:
        out = 0
        while mask:
            b = mask & -mask
            mask ^= b
            out |= self.nbr[b.bit_length() - 1]
        return out

    def _closure(self, seed: int, allowed: int) -> int:
        reached = seed
        frontier = seed
        while frontier:
            frontier = self._neighborhood(frontier) & allowed & ~reached
            reached |= frontier
        return reached

    def _connected(self, bag: int, allowed: int) -> bool:
        low = bag & -bag
        return self._closure(low, bag | allowed) & bag == bag

    def _tick(self) -> None:
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CLOCK_EVERY == 0:
            if time.monotonic() > self.deadline:
                raise _OutOfTime(self.nodes)

    def _feasible(self, bags: list[int], free: int) -> bool:
        empty = sum(1 for b in bags if not b)
        if free.bit_count() < empty:
            return False
        rootless = empty
        for j, bag in enumerate(bags):
            if not bag:
                continue
            open_ = self._neighborhood(bag) & free
            if not open_:
                # nothing can join this bag any more
                if not self._connected(bag, 0):
                    return False
                wanted = self.pattern_adj[j]
                for i in range(self.t):
                    if wanted >> i & 1 and not self._neighborhood(bag) & bags[i]:
                        return False
            elif not self._connected(bag, free):
                return False
            if self.rooted and not bag & self.roots:
                if not self._closure(bag, free) & free & self.roots:
                    return False
                rootless += 1
        if self.rooted and (free & self.roots).bit_count() < rootless:
            return False
        return True

    def run(self) -> list[int] | None:
        bags = [0] * self.t
        full = (1 << self.n) - 1

        def assign(i: int, free: int, top: int) -> list[int] | None:
            if i == self.n:
                return list(bags) if all(bags) else None
            self._tick()
            bit = 1 << i
            free &= ~bit
            if self.complete:
                labels = range(min(top + 1, self.t))
            else:
                labels = [*range(self.t), None]
            for label in labels:
                if label is not None:
                    bags[label] |= bit
                if self._feasible(bags, free):
                    found = assign(
                        i + 1, free, max(top, label + 1) if label is not None else top
                    )
                    if found is not None:
                        return found
                if label is not None:
                    bags[label] &= ~bit
            return None

        return assign(0, full, 0)

    def decode(self, masks: list[int]) -> list[list[str]]:
        return [[self.order[i] for i in range(self.n) if m >> i & 1] for m in masks]


class _OutOfTime(Exception):
    def __init__(self, nodes: int):
        self.nodes = nodes


def _bfs_order(vertices: list[str], adj: dict[str, set[str]]) -> list[str]:
    """Breadth-first from the highest-degree vertex, restarting per component."""
    members = set(vertices)
    remaining = sorted(vertices, key=lambda v: (-len(adj[v] & members), v))
    seen: set[str] = set()
    order: list[str] = []
    for start in remaining:
        if start in seen:
            continue
        seen.add(start)
        layer = [start]
        while layer:
            order.extend(layer)
            nxt = []
            for v in layer:
                for w in sorted(adj[v] & members, key=lambda x: (-len(adj[x]), x)):
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            layer = nxt
    return order


def find_model(
    host: Graph,
    pattern: Graph,
    rc: RootConstraint | None = None,
    *,
    budget_secs: float | None = DEFAULT_BUDGET_SECS,
) -> MinorModel | None:
    """Search exhaustively for a (rooted) model of `pattern` in `host`.

    Args:
        host (Graph): The graph searched for a minor.
        pattern (Graph): The minor H.
        rc (RootConstraint | None): Roots and mode; unrooted when omitted.
        budget_secs (float | None): Wall-clock budget; None for no limit.

    Returns:
        MinorModel | None: A model when one exists, None when none does.

    Raises:
        MinorSearchTimeoutException: If the budget ran out before an answer.
        UnknownIdException: If a root is not a host vertex.
    """
    rc = rc or RootConstraint.unrooted()
    if rc.is_rooted:
        host.require(rc.roots, context='roots')
    t = len(pattern)
    if t == 0:
        return MinorModel(pattern=pattern, host=host, branch_sets={})
    if t > len(host) or (rc.is_rooted and len(rc.roots) < t):
        return None
    if len(pattern.edges) > len(host.edges):
        return None
    if t == 1:
        pool = sorted(rc.roots) if rc.is_rooted else sorted(host.ids)
        return MinorModel(
            pattern=pattern, host=host, branch_sets={pattern.ids[0]: (pool[0],)}
        )

    complete = _is_complete(pattern)
    reduced = _Reduced(host, rc, t, complete)
    pids = pattern.ids
    pindex = {p: i for i, p in enumerate(pids)}
    pattern_adj = [0] * t
    for a, b in pattern.edges:
        pattern_adj[pindex[a]] |= 1 << pindex[b]
        pattern_adj[pindex[b]] |= 1 << pindex[a]

    if complete:
        # a connected pattern lives in one host component, which it may fill
        groups = [c for c in reduced.components() if len(c) >= t]
    else:
        groups = [sorted(reduced.adj)]

    deadline = time.monotonic() + budget_secs if budget_secs is not None else None
    nodes = 0
    for group in groups:
        if rc.is_rooted and len(reduced.roots & set(group)) < t:
            continue
        search = _BranchSearch(
            _bfs_order(group, reduced.adj),
            reduced.adj,
            pattern_adj,
            reduced.roots,
            rc.is_rooted,
            complete,
            deadline,
        )
        try:
            found = search.run()
        except _OutOfTime as e:
            raise exc.MinorSearchTimeoutException(
                budget_secs=budget_secs, nodes=nodes + e.nodes
            )
        nodes += search.nodes
        if found is not None:
            bags = search.decode(found)
            logger.debug(
                'minor %s found in %s after %d nodes',
                pattern.name or f'<{t} vertices>',
                host.name or '<host>',
                nodes,
            )
            return MinorModel(
                pattern=pattern,
                host=host,
                branch_sets={
                    p: reduced.expand(bag) for p, bag in zip(pids, bags, strict=True)
                },
            )
    logger.debug(
        'no %s minor in %s (%d nodes)',
        pattern.name or f'<{t} vertices>',
        host.name or '<host>',
        nodes,
    )
    return None


def is_minor_free(
    host: Graph,
    pattern: Graph,
    rc: RootConstraint | None = None,
    *,
    budget_secs: float | None = DEFAULT_BUDGET_SECS,
) -> bool:
    """Whether `host` has no (rooted) `pattern` minor. Timeouts propagate."""
    return find_model(host, pattern, rc, budget_secs=budget_secs) is None


def verify_model(m: MinorModel, rc: RootConstraint | None = None) -> bool:
    """Check a model directly against the definition of a (rooted) minor.

    Raises:
        UnknownIdException: If a branch set names a vertex the host lacks, or a
            key is not a pattern vertex.
    """
    rc = rc or RootConstraint.unrooted()
    m.pattern.require(m.branch_sets, context='pattern')
    for ids in m.branch_sets.values():
        m.host.require(ids, context='branch set')

    if set(m.branch_sets) != set(m.pattern.vertex_map):
        return False
    seen: set[str] = set()
    for ids in m.branch_sets.values():
        if not ids or seen & set(ids) or len(set(ids)) != len(ids):
            return False
        seen |= set(ids)
        if not nx.is_connected(m.host.to_networkx().subgraph(ids)):
            return False
        if rc.is_rooted and not set(ids) & rc.roots:
            return False
    for a, b in m.pattern.edges:
        if not any(
            m.host.has_edge(x, y) for x in m.branch_sets[a] for y in m.branch_sets[b]
        ):
            return False
    return True
