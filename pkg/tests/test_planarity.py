import networkx as nx
import pytest
from pydantic import ValidationError

from colorjam import exception as exc
from colorjam.graph import build_graph, complete_graph
from colorjam.planar import (
    CyclicBoundary,
    augment_with_boundary,
    boundary,
    is_planar,
    planar_with_boundary,
)

SQUARE = build_graph(
    ['a', 'b', 'c', 'd'], [('a', 'b'), ('b', 'c'), ('c', 'd'), ('d', 'a')]
)


def test_is_planar():
    assert is_planar(complete_graph(4))
    assert not is_planar(complete_graph(5))
    k33 = nx.complete_bipartite_graph(3, 3)
    g = build_graph(
        [str(v) for v in k33.nodes], [(str(u), str(v)) for u, v in k33.edges]
    )
    assert not is_planar(g)


def test_boundary_order_matters():
    assert planar_with_boundary(SQUARE, boundary('abcd'))
    # either orientation, any rotation
    assert planar_with_boundary(SQUARE, boundary('dcba'))
    assert planar_with_boundary(SQUARE, boundary('abcd').rotated(3))
    # a crossing order closes a K5 with the outer apex
    assert not planar_with_boundary(SQUARE, boundary('acbd'))


def test_all_of_k4_cannot_be_outer():
    k4 = complete_graph(['a', 'b', 'c', 'd'])
    assert not planar_with_boundary(k4, boundary('abcd'))
    assert planar_with_boundary(k4, boundary('abc'))


def test_empty_boundary_is_plain_planarity():
    assert planar_with_boundary(complete_graph(4), CyclicBoundary())
    assert not planar_with_boundary(complete_graph(5), CyclicBoundary())


def test_unknown_boundary_id():
    with pytest.raises(exc.UnknownIdException):
        planar_with_boundary(SQUARE, boundary(['a', 'zz']))


def test_cyclic_boundary():
    b = boundary('abc')
    assert b.rotated(1).order == ('b', 'c', 'a')
    assert b.reflected().order == ('c', 'b', 'a')
    assert b.cycle_edges() == [('a', 'b'), ('b', 'c'), ('c', 'a')]
    assert boundary('ab').cycle_edges() == [('a', 'b')]
    with pytest.raises(ValidationError):
        boundary('aba')


def test_augment_with_boundary_adds_one_apex():
    nxg = augment_with_boundary(SQUARE, boundary('abcd'))
    assert nxg.number_of_nodes() == 5
    assert nxg.number_of_edges() == 4 + 4
