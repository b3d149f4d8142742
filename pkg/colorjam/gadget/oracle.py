"""Closed-form descriptions of which terminal colorings each gadget admits.

The oracles take terminal colors keyed by terminal name (`u`, `v`, `w`,
`y4`, ...) and never look at a graph. Encoder and piece oracles are only
defined when every apex y_i has color i; other queries are rejected.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Mapping
from itertools import product

from pydantic import BaseModel, ConfigDict

from .. import exception as exc
from ..coloring.engine import PartialColoring, extends
from .forge import GadgetInstance, apex_names

LOW = frozenset({1, 2, 3})


def _require(f: Mapping[str, int], names) -> None:
    for name in names:
        if name not in f:
            raise exc.MissingTerminalException(terminal=name)


def _rainbow(k: int, f: Mapping[str, int]) -> tuple[int, int, int]:
    """Check the apex colors and return (f(u), f(v), f(w))."""
    _require(f, ('u', 'v', 'w', *apex_names(k)))
    for i, name in enumerate(apex_names(k), start=4):
        if f[name] != i:
            raise exc.NotRainbowException(vertex_id=name, color=f[name], expected=i)
    return f['u'], f['v'], f['w']


def copy_spec(k: int, f: Mapping[str, int]) -> bool:
    """The copy gadget admits exactly the colorings with f(u) = f(v)."""
    _require(f, ('u', 'v'))
    return f['u'] == f['v']


def f1_spec(k: int, f: Mapping[str, int]) -> bool:
    """F_1: f(u) >= 4 with f(v), f(w) in {1,2,3}, or f(u) = f(v) = f(w) in {1,2,3}."""
    u, v, w = _rainbow(k, f)
    if u in LOW:
        return u == v == w
    return v in LOW and w in LOW


def fs_spec(k: int, s: int, f: Mapping[str, int]) -> bool:
    """F_s: f(v), f(w) in {1,2,3}, and f(v) != f(w) when f(u) = s."""
    u, v, w = _rainbow(k, f)
    if v not in LOW or w not in LOW:
        return False
    return u != s or v != w


def fr_spec(k: int, r: int, f: Mapping[str, int]) -> bool:
    """F_r: f(v), f(w) in {1,2,3}, and f(v) = f(w) when f(u) = r."""
    u, v, w = _rainbow(k, f)
    if v not in LOW or w not in LOW:
        return False
    return u != r or v == w


def enc_spec(k: int, s: int, f: Mapping[str, int]) -> bool:
    """Whether the encoder admits f, given f(y_i) = i for every apex.

    Exactly one of these must hold:

    - f(u) is in {1,2,3} and f(u) = f(v) = f(w);
    - f(u) = s, f(v) and f(w) are in {1,2,3} and differ;
    - f(u) is in {4..k} other than s and f(v) = f(w) is in {1,2,3}.

    Raises:
        NotRainbowException: If some apex y_i is not colored i.
        MissingTerminalException: If a terminal color is absent.
    """
    u, v, w = _rainbow(k, f)
    if u in LOW:
        return u == v == w
    if v not in LOW or w not in LOW:
        return False
    if u == s:
        return v != w
    return v == w


class ConformanceMismatch(BaseModel):
    """A terminal coloring on which a gadget disagrees with its oracle."""

    coloring: dict[str, int]
    expected: bool
    actual: bool

    model_config = ConfigDict(frozen=True)


def oracle_for(inst: GadgetInstance) -> Callable[[Mapping[str, int]], bool]:
    """The closed-form predicate matching a gadget instance."""
    match inst.kind:
        case 'copy':
            return lambda f: copy_spec(inst.k, f)
        case 'enc':
            return lambda f: enc_spec(inst.k, inst.s, f)
        case 'f1':
            return lambda f: f1_spec(inst.k, f)
        case 'fs':
            return lambda f: fs_spec(inst.k, inst.s, f)
        case 'fr':
            return lambda f: fr_spec(inst.k, inst.r, f)
    raise exc.GadgetParameterException(message=f'unknown gadget kind {inst.kind!r}')


def terminal_colorings(inst: GadgetInstance) -> Iterator[dict[str, int]]:
    """Every terminal coloring the oracle is defined on.

    The copy gadget is checked on all k^2 colorings of {u, v}; the others on
    the k^3 colorings of u, v, w with y_i colored i.
    """
    k = inst.k
    if inst.kind == 'copy':
        for cu, cv in product(range(1, k + 1), repeat=2):
            yield {'u': cu, 'v': cv}
        return
    apexes = {name: i for i, name in enumerate(apex_names(k), start=4)}
    for cu, cv, cw in product(range(1, k + 1), repeat=3):
        yield {'u': cu, 'v': cv, 'w': cw} | apexes


def check_conformance(inst: GadgetInstance) -> list[ConformanceMismatch]:
    """Compare exhaustive extension checks against the oracle.

    Returns:
        list[ConformanceMismatch]: Empty when the gadget matches its oracle.
    """
    oracle = oracle_for(inst)
    mismatches = []
    for f in terminal_colorings(inst):
        partial = PartialColoring(
            k=inst.k, assignment={inst.terminals[name]: c for name, c in f.items()}
        )
        actual = extends(inst.graph, partial)
        expected = oracle(f)
        if actual != expected:
            mismatches.append(
                ConformanceMismatch(coloring=f, expected=expected, actual=actual)
            )
    return mismatches
