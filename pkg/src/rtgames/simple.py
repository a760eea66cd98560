"""Simple value functions on region closures and their transfer along simple timed actions.

A simple function is a constant ``e``, a clock term ``e - s(c)``, or the
absorbing ``Infinite``.  Step counts live in ``NatInf`` (ints plus
``math.inf``), so ordinary ``+`` and ``<`` already behave the right way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .automaton import Configuration
from .regions import Region, closure_contains

INF = math.inf
NatInf = Union[int, float]


@dataclass(frozen=True)
class Const:
    e: int


@dataclass(frozen=True)
class MinusClock:
    e: int
    clock: int


@dataclass(frozen=True)
class Infinite:
    pass


INFINITE = Infinite()
SimpleFunction = Union[Const, MinusClock, Infinite]


@dataclass(frozen=True)
class Boundary:
    """Wait until clock ``clock`` reaches ``b`` (or not at all if already past), then fire."""

    action: int
    b: int
    clock: int


@dataclass(frozen=True)
class Immediate:
    action: int


SimpleTimedAction = Union[Boundary, Immediate]


def wait_time(s: Configuration, alpha: SimpleTimedAction) -> Fraction:
    if isinstance(alpha, Immediate):
        return Fraction(0)
    v = s.valuation[alpha.clock]
    return alpha.b - v if v <= alpha.b else Fraction(0)


def evaluate(f: SimpleFunction, s: Configuration, region: Region = None):
    """Value of ``f`` at ``s``; with ``region`` given, ``s`` must lie in its closure."""
    if region is not None:
        assert closure_contains(region, s), "evaluation point outside the region closure"
    if isinstance(f, Const):
        return Fraction(f.e)
    if isinstance(f, MinusClock):
        return f.e - s.valuation[f.clock]
    return INF


def canonical(f: SimpleFunction, region: Region) -> SimpleFunction:
    """Unique representative of ``f`` restricted to the closure of ``region``.

    A clock with zero fractional part is constant on the closure, and clocks
    sharing a fractional block differ by a constant, so every clock term is
    rewritten onto the lowest clock of its block.  Two simple functions agree
    on a region iff their canonical forms are identical.
    """
    if not isinstance(f, MinusClock):
        return f
    cr = region.clock_region
    j = cr.rank[f.clock]
    if j == 0:
        return Const(f.e - cr.ints[f.clock])
    head = cr.blocks[j][0]
    if head == f.clock:
        return f
    return MinusClock(f.e - cr.ints[f.clock] + cr.ints[head], head)


def transfer(f: SimpleFunction, alpha: SimpleTimedAction, resets, region: Region) -> SimpleFunction:
    """``s -> t(s, alpha) + f(Succ(s, alpha))`` as a simple function on ``region``."""
    if isinstance(f, Infinite):
        return INFINITE
    if isinstance(f, MinusClock) and f.clock not in resets:
        # e - (s(c') + t) + t: the waiting cancels out
        return canonical(f, region)
    e = f.e  # the target value does not depend on s: a constant or a reset clock
    if isinstance(alpha, Immediate) or _past_boundary(alpha, region):
        return Const(e)
    return canonical(MinusClock(alpha.b + e, alpha.clock), region)


def _past_boundary(alpha: Boundary, region: Region) -> bool:
    # s(c) > b holds uniformly on a region; test it at the representative
    values, scale = region.clock_region.scaled_representative()
    return values[alpha.clock] > alpha.b * scale


def bump(d: NatInf) -> NatInf:
    return d + 1


def scaled_value(f: SimpleFunction, region: Region):
    """``f`` at the representative of ``region``, times the region scale (int or inf)."""
    if isinstance(f, Infinite):
        return INF
    values, scale = region.clock_region.scaled_representative()
    if isinstance(f, Const):
        return f.e * scale
    return f.e * scale - values[f.clock]


def compare_on_region(f: SimpleFunction, g: SimpleFunction, region: Region) -> int:
    """-1, 0 or 1 for the pointwise order of f and g on the open region."""
    a, b = scaled_value(f, region), scaled_value(g, region)
    return (a > b) - (a < b)


def lex_compare(p: tuple, q: tuple, region: Region) -> int:
    c = compare_on_region(p[0], q[0], region)
    if c:
        return c
    return (p[1] > q[1]) - (p[1] < q[1])


def format_simple(f: SimpleFunction, clocks) -> str:
    if isinstance(f, Infinite):
        return "inf"
    if isinstance(f, Const):
        return f"const {f.e}"
    return f"{f.e} - {clocks[f.clock]}"


def parse_simple(text: str, clocks) -> SimpleFunction:
    text = text.strip()
    if text == "inf":
        return INFINITE
    if text.startswith("const "):
        return Const(int(text[6:]))
    e, sep, name = text.partition(" - ")
    if not sep:
        raise ValueError(f"malformed simple function {text!r}")
    return MinusClock(int(e), list(clocks).index(name.strip()))


def format_natinf(d: NatInf) -> str:
    return "inf" if d == INF else str(d)


def parse_natinf(text: str) -> NatInf:
    text = text.strip()
    return INF if text == "inf" else int(text)
