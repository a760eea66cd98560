import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_names, graph
from strategies import clock_region_points, clock_regions_st
from rtgames.automaton import Configuration, succ_unguarded
from rtgames.play import legal_choices
from rtgames.regions import ClockRegion, Region, sample_point
from rtgames.simple import (
    INF,
    INFINITE,
    Boundary,
    Const,
    Immediate,
    MinusClock,
    bump,
    canonical,
    compare_on_region,
    evaluate,
    format_simple,
    lex_compare,
    parse_simple,
    transfer,
    wait_time,
)


def at(*vals):
    return Configuration(0, tuple(F(v) for v in vals))


def region(ints, *blocks):
    return Region(0, ClockRegion(tuple(ints), tuple(tuple(b) for b in blocks)))


OPEN_X = region((0,), [], [0])


class TestWaitTime:
    def test_before_boundary(self):
        assert wait_time(at(F(2, 5)), Boundary(0, 1, 0)) == F(3, 5)

    def test_clamped(self):
        assert wait_time(at(F(2, 5)), Boundary(0, 0, 0)) == 0

    def test_immediate(self):
        assert wait_time(at(F(2, 5)), Immediate(0)) == 0


class TestEvaluate:
    def test_minus_clock(self):
        assert evaluate(MinusClock(1, 0), at(F(1, 4))) == F(3, 4)

    def test_const(self):
        assert evaluate(Const(2), at(F(7, 8))) == 2

    def test_infinite(self):
        assert evaluate(INFINITE, at(0)) == INF

    def test_closure_is_checked(self):
        with pytest.raises(AssertionError):
            evaluate(Const(0), at(F(3, 2)), OPEN_X)


class TestTransfer:
    def test_constant_through_boundary(self):
        # (b + e) - s(c)
        assert transfer(Const(2), Boundary(0, 1, 0), frozenset(), OPEN_X) == MinusClock(3, 0)

    def test_clock_term_not_reset(self):
        assert transfer(MinusClock(5, 0), Boundary(0, 1, 0), frozenset(), OPEN_X) == MinusClock(5, 0)

    def test_reset_clock_immediate(self):
        assert transfer(MinusClock(4, 0), Immediate(0), frozenset({0}), OPEN_X) == Const(4)

    def test_infinite(self):
        assert transfer(INFINITE, Boundary(0, 1, 0), frozenset(), OPEN_X) is INFINITE

    def test_past_boundary_is_constant(self):
        # s(x) > 0 throughout the open interval, so waiting for x = 0 costs nothing
        assert transfer(Const(2), Boundary(0, 0, 0), frozenset(), OPEN_X) == Const(2)


class TestBump:
    def test_values(self):
        assert (bump(0), bump(7), bump(INF)) == (1, 8, INF)


class TestCompare:
    def test_constant_above_clock_term(self):
        assert compare_on_region(Const(1), MinusClock(1, 0), OPEN_X) == 1

    def test_ordered_fractions(self):
        r = region((0, 0), [], [0], [1])
        assert compare_on_region(MinusClock(2, 0), MinusClock(1, 1), r) == 1

    def test_same_block(self):
        r = region((0, 0), [], [0, 1])
        assert compare_on_region(MinusClock(1, 0), MinusClock(1, 1), r) == 0
        rng = random.Random(0)
        for _ in range(100):
            s = sample_point(r, rng)
            assert evaluate(MinusClock(1, 0), s) == evaluate(MinusClock(1, 1), s)

    def test_infinite_on_top(self):
        assert compare_on_region(INFINITE, Const(10 ** 6), OPEN_X) == 1
        assert compare_on_region(INFINITE, INFINITE, OPEN_X) == 0


class TestLex:
    def test_second_component(self):
        assert lex_compare((Const(1), 3), (Const(1), 5), OPEN_X) == -1

    def test_first_component_wins(self):
        assert lex_compare((Const(0), 9), (Const(1), 0), OPEN_X) == -1

    def test_infinite_top(self):
        assert lex_compare((INFINITE, INF), (Const(10 ** 6), 1), OPEN_X) == 1


@pytest.mark.parametrize("f", [Const(3), MinusClock(2, 1), INFINITE])
def test_format_roundtrip(f):
    assert parse_simple(format_simple(f, ["x", "y"]), ["x", "y"]) == f


def test_format_text():
    assert [format_simple(f, ["x"]) for f in (INFINITE, Const(0), MinusClock(1, 0))] == \
        ["inf", "const 0", "1 - x"]


# properties


@st.composite
def simple_functions(draw, n_clocks, k):
    kind = draw(st.sampled_from(["const", "clock", "inf"]))
    if kind == "inf":
        return INFINITE
    e = draw(st.integers(0, 3 * k))
    if kind == "const":
        return Const(e)
    return MinusClock(e, draw(st.integers(0, n_clocks - 1)))


def _all_moves():
    out = []
    for name in corpus_names():
        g = graph(name)
        out.extend((name, m) for ms in g.moves for m in ms)
    return out


ALL_MOVES = _all_moves()


@given(st.sampled_from(ALL_MOVES), st.data())
def test_transfer_sound(named_move, data):
    name, m = named_move
    g = graph(name)
    aut = g.aut
    f = data.draw(simple_functions(aut.n_clocks, aut.k))
    src = g.regions[m.source]
    s = Configuration(src.location, data.draw(clock_region_points(src.clock_region)))
    t = wait_time(s, m.alpha)
    want = t + evaluate(f, succ_unguarded(s, m.alpha.action, t, aut))
    assert evaluate(transfer(f, m.alpha, g.resets(m), src), s) == want


@given(st.data())
def test_comparison_sound(data):
    k, c = data.draw(clock_regions_st())
    n = len(c.ints)
    r = Region(0, c)
    f = data.draw(simple_functions(n, k))
    h = data.draw(simple_functions(n, k))
    order = compare_on_region(f, h, r)
    for _ in range(10):
        s = Configuration(0, data.draw(clock_region_points(c)))
        a, b = evaluate(f, s), evaluate(h, s)
        assert ((a > b) - (a < b)) == order
    # representative equality is pointwise equality, which is what canonical forms encode
    assert (order == 0) == (canonical(f, r) == canonical(h, r))


@pytest.mark.parametrize("name", corpus_names())
def test_canonical_agrees_on_closure(name):
    g = graph(name)
    rng = random.Random(2)
    for r in g.regions:
        for f in (MinusClock(3, c) for c in range(g.aut.n_clocks)):
            cf = canonical(f, r)
            for _ in range(5):
                s = sample_point(r, rng)
                assert evaluate(cf, s) == evaluate(f, s)


def _legal(name):
    g = graph(name)
    return [(name, i) for i in range(len(g)) if not g.final[i]]


LEGAL_STARTS = [x for name in corpus_names() for x in _legal(name)]


@given(st.sampled_from(LEGAL_STARTS), st.data())
def test_time_profile_monotone(start, data):
    name, i = start
    g = graph(name)
    aut = g.aut
    src = g.regions[i]
    s = Configuration(src.location, data.draw(clock_region_points(src.clock_region)))
    segments = [c for c in legal_choices(s, aut) if c[1] < c[2]]
    if not segments:
        return
    a, lo, hi = data.draw(st.sampled_from(segments))
    f = data.draw(simple_functions(aut.n_clocks, aut.k))
    ts = [lo + (hi - lo) * F(j, 11) for j in range(1, 11)]
    profile = [t + evaluate(f, succ_unguarded(s, a, t, aut)) for t in ts]
    assert profile == sorted(profile)
