import networkx as nx

from ..graph.core import Graph
from .boundary import CyclicBoundary


def is_planar(g: Graph) -> bool:
    """Exact planarity test (left-right planarity via networkx)."""
    return _check(g.to_networkx())


def _check(nxg: nx.Graph) -> bool:
    planar, _ = nx.check_planarity(nxg)
    return planar


def _apex_name(nxg: nx.Graph) -> str:
    apex = '__outer_apex__'
    while apex in nxg:
        apex += '_'
    return apex


def augment_with_boundary(g: Graph, b: CyclicBoundary) -> nx.Graph:
    """The graph plus a cycle through `b` in order plus one apex on all of `b`."""
    nxg = g.to_networkx()
    if not b.order:
        return nxg
    apex = _apex_name(nxg)
    nxg.add_edges_from(b.cycle_edges())
    nxg.add_edges_from((apex, vid) for vid in b.order)
    return nxg


def planar_with_boundary(g: Graph, b: CyclicBoundary) -> bool:
    """Whether `g` embeds in the plane with `b` on the outer face in cyclic order.

    Either orientation of the cyclic order is accepted.

    Raises:
        UnknownIdException: If a boundary id is not a vertex of `g`.
    """
    g.require(b.order, context='boundary')
    if len(b.order) <= 3:
        # up to rotation and reflection there is one cyclic order of <= 3 ids,
        # so it is enough that they share the outer face
        nxg = g.to_networkx()
        apex = _apex_name(nxg)
        nxg.add_edges_from((apex, vid) for vid in b.order)
        return _check(nxg)
    return _check(augment_with_boundary(g, b))
