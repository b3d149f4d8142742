import pytest

from colorjam import exception as exc
from colorjam.coloring import (
    ColoringFamily,
    all_colorings,
    empty_family,
    family_from_predicate,
)
from colorjam.graph import build_graph, complete_graph, serialize
from colorjam.realizer import (
    RealizationProblem,
    RealizerCertificate,
    RealizerFailure,
    RealizerLimits,
    SearchExhausted,
    deserialize_problem,
    load_realizer,
    search_realizer,
    serialize_problem,
    verify_realizer,
)
from colorjam.realizer.cache import clear, lookup, store

PAIR = ('a', 'b')
EQUAL = family_from_predicate(PAIR, 3, lambda t: t[0] == t[1])
UNEQUAL = family_from_predicate(PAIR, 3, lambda t: t[0] != t[1])

# a and b joined through an edge t1-t2: any 3-coloring gives them one color
DIAMOND = build_graph(
    ['a', 'b', 't1', 't2'],
    [('a', 't1'), ('a', 't2'), ('t1', 't2'), ('b', 't1'), ('b', 't2')],
)


def test_verify_realizer_small_cases():
    free = verify_realizer(
        build_graph(PAIR), RealizationProblem.of(all_colorings(PAIR, 3))
    )
    assert isinstance(free, RealizerCertificate) and free.verified
    edge = verify_realizer(
        build_graph(PAIR, [PAIR]), RealizationProblem.of(UNEQUAL)
    )
    assert isinstance(edge, RealizerCertificate)
    assert edge.internal_count == 0
    diamond = verify_realizer(DIAMOND, RealizationProblem.of(EQUAL))
    assert isinstance(diamond, RealizerCertificate)


def test_verify_realizer_reports_a_witness():
    result = verify_realizer(
        build_graph(PAIR, [PAIR]), RealizationProblem.of(all_colorings(PAIR, 3))
    )
    assert isinstance(result, RealizerFailure)
    assert result.condition == 'trace'
    assert result.witness == (1, 1)
    assert result.witness_extends is False
    assert 'does not extend' in result.describe()

    result = verify_realizer(build_graph(PAIR), RealizationProblem.of(UNEQUAL))
    assert isinstance(result, RealizerFailure)
    assert result.witness == (1, 1) and result.witness_extends


def test_verify_realizer_planarity():
    ids = ('a', 'b', 'c', 'd')
    result = verify_realizer(
        complete_graph(list(ids)), RealizationProblem.of(empty_family(ids, 3))
    )
    assert isinstance(result, RealizerFailure)
    assert result.condition == 'planarity'


def test_problem_checks_family():
    with pytest.raises(ValueError):
        RealizationProblem.of(all_colorings(PAIR, 4))


def test_search_finds_smallest_realizers():
    cert = search_realizer(RealizationProblem.of(UNEQUAL))
    assert isinstance(cert, RealizerCertificate)
    assert cert.internal_count == 0 and len(cert.graph.edges) == 1

    cert = search_realizer(RealizationProblem.of(EQUAL))
    assert isinstance(cert, RealizerCertificate)
    assert cert.verified
    assert cert.internal_count == 2
    assert len(cert.graph.edges) == 5


def test_search_exhausted():
    result = search_realizer(
        RealizationProblem.of(EQUAL), RealizerLimits(max_internal=0)
    )
    assert isinstance(result, SearchExhausted)
    # the only candidate is the edgeless graph: a-b is never allowed
    assert result.candidates == 1


def test_search_rejects_open_family():
    fam = ColoringFamily(domain=PAIR, k=3, members=((1, 2),))
    with pytest.raises(exc.FamilyNotClosedException):
        search_realizer(RealizationProblem.of(fam))


def test_load_realizer(tmp_path):
    p = RealizationProblem.of(EQUAL)
    assert load_realizer(serialize(DIAMOND), p).verified
    path = tmp_path / 'diamond.yaml'
    path.write_text(serialize(DIAMOND), encoding='utf-8')
    assert load_realizer(path, p).graph == DIAMOND
    with pytest.raises(exc.RealizerVerificationException):
        load_realizer(serialize(build_graph(PAIR)), p)
    with pytest.raises(exc.RealizerVerificationException):
        load_realizer(serialize(build_graph(['a', 'c'])), p)
    with pytest.raises(exc.DocumentParseException):
        load_realizer('vertices: [a\n', p)


def test_cache_round_trip(tmp_path):
    p = RealizationProblem.of(EQUAL)
    limits = RealizerLimits()
    assert lookup(p, limits, tmp_path) is None
    cert = verify_realizer(DIAMOND, p)
    path = store(p, limits, cert, tmp_path)
    assert lookup(p, limits, tmp_path).graph == DIAMOND
    # a different limit set is a different entry
    assert lookup(p, RealizerLimits(max_internal=4), tmp_path) is None
    # entries that no longer verify are dropped
    path.write_text(serialize(build_graph(PAIR)), encoding='utf-8')
    assert lookup(p, limits, tmp_path) is None
    assert not path.exists()
    store(p, limits, cert, tmp_path)
    assert clear(tmp_path) == 1
    assert clear(tmp_path) == 0


def test_problem_document():
    p = RealizationProblem.of(UNEQUAL)
    assert deserialize_problem(serialize_problem(p)) == p
    with pytest.raises(exc.DocumentSchemaException):
        deserialize_problem(
            'boundary: [b, a]\nfamily: {domain: [a, b], k: 3, members: []}\n'
        )
    with pytest.raises(exc.DocumentSchemaException):
        deserialize_problem(
            'boundary: [a]\nfamily: {domain: [a], k: 4, members: []}\n'
        )
