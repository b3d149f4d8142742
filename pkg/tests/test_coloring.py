import random
from itertools import combinations, product

import pytest

from colorjam import exception as exc
from colorjam.coloring import (
    ColoringFamily,
    PartialColoring,
    all_colorings,
    boundary_trace,
    close_under_permutations,
    deserialize_family,
    empty_family,
    enumerate_closed_families,
    extends,
    find_extension,
    is_closed,
    is_proper,
    orbit,
    require_closed,
    serialize_family,
)
from colorjam.graph import Graph, build_graph, complete_graph


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    ids = [f'v{i}' for i in range(n)]
    edges = [e for e in combinations(ids, 2) if rng.random() < p]
    return build_graph(ids, edges, name=f'G({n},{p})')


def brute_force_extends(g: Graph, partial: PartialColoring) -> bool:
    free = [vid for vid in g.ids if vid not in partial.assignment]
    for colors in product(range(1, partial.k + 1), repeat=len(free)):
        total = dict(partial.assignment) | dict(zip(free, colors, strict=True))
        if is_proper(g, total):
            return True
    return False


def test_extends_agrees_with_brute_force():
    rng = random.Random(20240607)
    for _ in range(30):
        n = rng.randint(1, 8)
        g = random_graph(rng, n, rng.choice([0.3, 0.5, 0.7]))
        k = rng.randint(1, 4)
        fixed = rng.sample(g.ids, rng.randint(0, min(3, n)))
        partial = PartialColoring(
            k=k, assignment={vid: rng.randint(1, k) for vid in fixed}
        )
        assert extends(g, partial) == brute_force_extends(g, partial), (g, partial)


def test_find_extension_is_proper_and_agrees():
    g = complete_graph(['a', 'b', 'c'])
    coloring = find_extension(g, PartialColoring.of(3, a=2))
    assert coloring is not None and coloring['a'] == 2
    assert is_proper(g, coloring)


def test_extends_edge_cases():
    # the empty graph extends the empty coloring
    assert extends(build_graph([]), PartialColoring(k=1))
    # K4 is not 3-colorable whatever is fixed
    assert not extends(complete_graph(4), PartialColoring(k=3))
    # adjacent vertices with the same color never extend
    g = build_graph(['u', 'v'], [('u', 'v')])
    assert not extends(g, PartialColoring.of(3, u=1, v=1))


def test_extends_errors():
    with pytest.raises(exc.UnknownVertexException):
        extends(complete_graph(2), PartialColoring.of(3, nope=1))
    with pytest.raises(exc.ColorOutOfRangeException):
        PartialColoring.of(3, a=4)


def test_extends_is_invariant_under_color_permutations():
    rng = random.Random(7)
    for _ in range(10):
        g = random_graph(rng, 6, 0.5)
        partial = PartialColoring(
            k=3, assignment={vid: rng.randint(1, 3) for vid in g.ids[:3]}
        )
        swapped = partial.permuted({1: 2, 2: 3, 3: 1})
        assert extends(g, partial) == extends(g, swapped)


def test_boundary_trace_path():
    g = build_graph(['a', 'm', 'b'], [('a', 'm'), ('m', 'b')])
    fam = boundary_trace(g, ['a', 'b'], 2)
    # a 2-colored path of length two has equal ends
    assert fam.members == ((1, 1), (2, 2))


def test_boundary_trace_matches_direct_checks():
    rng = random.Random(11)
    g = random_graph(rng, 7, 0.4)
    domain = g.ids[:3]
    fam = boundary_trace(g, domain, 3)
    for member in product(range(1, 4), repeat=3):
        partial = PartialColoring.from_tuple(3, domain, member)
        assert (member in fam) == extends(g, partial)
    assert is_closed(fam)


def test_boundary_trace_errors():
    g = complete_graph(['a', 'b'])
    with pytest.raises(exc.DuplicateBoundaryIdException):
        boundary_trace(g, ['a', 'a'], 3)
    with pytest.raises(exc.UnknownVertexException):
        boundary_trace(g, ['a', 'c'], 3)


def test_close_under_permutations():
    fam = ColoringFamily(domain=('a', 'b'), k=3, members=((1, 1),))
    assert not is_closed(fam)
    closed = close_under_permutations(fam)
    assert closed.members == ((1, 1), (2, 2), (3, 3))
    assert close_under_permutations(closed) == closed
    assert len(orbit((1, 2), 3)) == 6


def test_require_closed_points_to_the_missing_image():
    fam = ColoringFamily(domain=('a',), k=2, members=((1,),))
    with pytest.raises(exc.FamilyNotClosedException) as info:
        require_closed(fam)
    assert info.value.missing == (2,)


def test_enumerate_closed_families_two_vertices():
    families = list(enumerate_closed_families(['x1', 'x2'], 4))
    # two orbits: equal pairs and unequal pairs
    assert len(families) == 4
    assert families[0] == empty_family(['x1', 'x2'], 4)
    assert all_colorings(['x1', 'x2'], 4) in families
    assert all(is_closed(f) for f in families)


def test_family_document_round_trip():
    fam = close_under_permutations(
        ColoringFamily(domain=('x1', 'x2'), k=3, members=((1, 2),))
    )
    assert deserialize_family(serialize_family(fam)) == fam


def test_family_document_errors():
    with pytest.raises(exc.DocumentSchemaException):
        deserialize_family('domain: [a]\nk: 2\nmembers: [[3]]\n')
    with pytest.raises(exc.DocumentSchemaException):
        deserialize_family('domain: [a, a]\nk: 2\nmembers: []\n')
