import pytest

from colorjam import exception as exc
from colorjam.coloring import PartialColoring, extends
from colorjam.gadget import (
    check_conformance,
    copy_spec,
    enc_spec,
    encoder_terminals,
    f1_spec,
    f_copy,
    f_copy_plus,
    f_enc,
    f_enc_plus,
    f_enc_plus_trace,
    fr_spec,
    fs_spec,
    piece_f1,
    piece_fr,
    piece_fs,
)
from colorjam.graph import complete_graph, replay, replay_difference
from colorjam.minor import is_minor_free


def rainbow(k: int, u: int, v: int, w: int) -> dict[str, int]:
    return {'u': u, 'v': v, 'w': w} | {f'y{i}': i for i in range(4, k + 1)}


@pytest.mark.parametrize('k', [3, 4, 5, 6])
def test_copy_gadget_conformance(k):
    inst = f_copy(k)
    assert len(inst.graph) == k + 1
    assert not inst.graph.has_edge('u', 'v')
    assert check_conformance(inst) == []


def test_copy_gadget_namespacing():
    inst = f_copy(4, 'x1', 'x1_4', 'copy1_4')
    assert sorted(inst.internal_ids) == ['copy1_4/c1', 'copy1_4/c2', 'copy1_4/c3']
    assert inst.graph.ids_with_tag('terminal=u') == ['x1']
    plus = f_copy_plus(4, 'x1', 'x1_4', 'copy1_4')
    assert plus.edges == complete_graph(plus.ids).edges


def test_copy_spec():
    assert copy_spec(4, {'u': 2, 'v': 2})
    assert not copy_spec(4, {'u': 2, 'v': 3})
    with pytest.raises(exc.MissingTerminalException):
        copy_spec(4, {'u': 1})


def test_enc_spec_bullets():
    k, s = 5, 4
    assert enc_spec(k, s, rainbow(k, 2, 2, 2))
    assert not enc_spec(k, s, rainbow(k, 2, 2, 3))
    assert enc_spec(k, s, rainbow(k, 4, 1, 3))
    assert not enc_spec(k, s, rainbow(k, 4, 2, 2))
    assert enc_spec(k, s, rainbow(k, 5, 3, 3))
    assert not enc_spec(k, s, rainbow(k, 5, 1, 2))
    # high colors never reach v or w
    assert not enc_spec(k, s, rainbow(k, 5, 4, 4))


def test_piece_specs():
    k = 5
    assert f1_spec(k, rainbow(k, 5, 1, 2))
    assert not f1_spec(k, rainbow(k, 1, 1, 2))
    assert fs_spec(k, 4, rainbow(k, 5, 2, 2))
    assert not fs_spec(k, 4, rainbow(k, 4, 2, 2))
    assert fr_spec(k, 5, rainbow(k, 4, 1, 2))
    assert not fr_spec(k, 5, rainbow(k, 5, 1, 2))


def test_oracles_reject_non_rainbow():
    f = rainbow(5, 1, 1, 1) | {'y5': 4}
    with pytest.raises(exc.NotRainbowException):
        enc_spec(5, 4, f)
    with pytest.raises(exc.MissingTerminalException):
        f1_spec(4, {'u': 1, 'v': 1, 'w': 1})


@pytest.mark.parametrize(('k', 's'), [(4, 4), (5, 4), (5, 5)])
def test_encoder_conformance(k, s):
    assert check_conformance(f_enc(k, s)) == []


@pytest.mark.parametrize('k', [4, 5])
def test_piece_conformance(k):
    assert check_conformance(piece_f1(k)) == []
    for s in range(4, k + 1):
        assert check_conformance(piece_fs(k, s)) == []
        for r in range(4, k + 1):
            if r != s:
                assert check_conformance(piece_fr(k, s, r)) == []


def test_encoder_sizes():
    inst = f_enc(4, 4)
    assert set(inst.terminals) == {'u', 'v', 'w', 'y4'}
    assert len(inst.internal_ids) == 7
    assert len(f_enc_plus(4, 4)) == 11


def test_encoder_with_custom_terminals():
    terminals = encoder_terminals(4, 'x1_4', 'z1_3', 'z1_4', ['y4'])
    inst = f_enc(4, 4, terminals, 'enc1_4')
    assert all(vid.startswith('enc1_4/') for vid in inst.internal_ids)
    f = PartialColoring.of(4, x1_4=4, z1_3=1, z1_4=2, y4=4)
    assert extends(inst.graph, f)


def test_encoder_parameter_errors():
    with pytest.raises(exc.GadgetParameterException):
        f_enc(4, 7)
    with pytest.raises(exc.GadgetParameterException):
        f_copy(1)
    with pytest.raises(exc.GadgetParameterException):
        encoder_terminals(5, ys=['y4'])


@pytest.mark.parametrize(('k', 's'), [(4, 4), (5, 4), (5, 5)])
def test_encoder_plus_decomposition_replays(k, s):
    plus, trace = f_enc_plus_trace(k, s)
    # apex tags are not replayed, so compare vertices, roles and edges
    assert replay_difference(trace, plus) == (0, 0, '')
    assert replay(trace).edges == plus.edges
    assert plus == f_enc_plus(k, s)


def test_copy_plus_is_minor_free():
    assert is_minor_free(f_copy_plus(4, 'u', 'v', 'copy'), complete_graph(6))


@pytest.mark.slow
def test_encoder_plus_is_minor_free():
    assert is_minor_free(f_enc_plus(4, 4), complete_graph(6), budget_secs=120)
