import random
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_names, graph, load
from oracles import cc_signature
from strategies import clock_region_points, clock_regions_st, region_point, sized_valuations, valuations
from rtgames.automaton import (
    Atom,
    Configuration,
    Constraint,
    TimedAutomatonGame,
    Undefined,
    delay,
    discrete_succ,
)
from rtgames.regions import (
    ClockRegion,
    Region,
    boundary_target,
    clock_region_of,
    clock_regions,
    closure_contains,
    enumerate_regions,
    format_region,
    future_chain,
    is_thin,
    parse_region,
    raw_time_successor,
    region_discrete_succ,
    region_of,
    representative,
    sample_point,
    segment_template,
    time_segments,
    time_successor,
)


def cr(ints, *blocks):
    return ClockRegion(tuple(ints), tuple(tuple(b) for b in blocks))


def free(n_clocks, k, inv=Constraint()):
    """One location, no actions, the given invariant."""
    names = ["x", "y", "z"][:n_clocks]
    return TimedAutomatonGame.from_edges(names, k, [("l", "min", inv)], [], {})


class TestRegionOf:
    def test_integral_and_fractional(self):
        assert clock_region_of((F(0), F(1, 2))) == cr((0, 0), [0], [1])

    def test_equal_fractions_share_a_block(self):
        assert clock_region_of((F(1, 3), F(1, 3))) == cr((0, 0), [], [0, 1])

    def test_at_k(self):
        assert clock_region_of((F(1),)) == cr((1,), [0])


class TestEnumerate:
    def test_one_clock(self):
        assert len(enumerate_regions(free(1, 1))) == 3

    def test_two_clocks(self):
        assert len(enumerate_regions(free(2, 1))) == 11

    @pytest.mark.parametrize("n,k,count", [
        # frozen from the brute-force classifier in oracles.py
        (1, 2, 5), (1, 3, 7), (2, 2, 33), (2, 3, 67), (3, 1, 51), (3, 2, 293), (3, 3, 883),
    ])
    def test_counts(self, n, k, count):
        assert len(clock_regions(n, k)) == count

    def test_state_zone_filters(self):
        aut = free(2, 2, Constraint((Atom(0, "=", 0),)))
        regions = enumerate_regions(aut)
        assert regions and all(r.ints[0] == 0 and 0 in r.blocks[0] for r in regions)

    def test_single_point_zone(self):
        aut = free(1, 2, Constraint((Atom(0, "=", 0),)))
        assert enumerate_regions(aut) == [Region(0, cr((0,), [0]))]

    def test_canonical_order(self):
        aut = load("two_players_two_clocks")
        regions = enumerate_regions(aut)
        assert regions == sorted(regions, key=Region.sort_key)


class TestThin:
    def test_integral_clock(self):
        assert is_thin(Region(0, cr((0,), [0])))

    def test_open_interval(self):
        assert not is_thin(Region(0, cr((0,), [], [0])))

    def test_at_k(self):
        assert is_thin(Region(0, clock_region_of((F(3),))))

    @given(st.data())
    def test_matches_definition(self, data):
        # thin iff every positive delay leaves the region
        k, c = data.draw(clock_regions_st())
        p = data.draw(clock_region_points(c))
        eps = F(1, 10 ** 6)
        assert c.is_thin == (clock_region_of(tuple(v + eps for v in p)) != c)


class TestTimeSuccessor:
    def test_one_clock_chain(self):
        aut = free(1, 1)
        chain = future_chain(Region(0, cr((0,), [0])), aut)
        assert [r.clock_region for r in chain] == [cr((0,), [0]), cr((0,), [], [0]), cr((1,), [0])]
        assert time_successor(chain[-1], aut) is None

    def test_highest_block_wraps(self):
        aut = free(2, 1)
        r = Region(0, cr((0, 0), [], [0], [1]))
        assert time_successor(r, aut) == Region(0, cr((0, 1), [1], [0]))

    def test_leaves_state_zone(self):
        aut = free(1, 1, Constraint((Atom(0, "=", 0),)))
        assert time_successor(Region(0, cr((0,), [0])), aut) is None


class TestBoundaryTarget:
    def test_forced(self):
        aut = free(1, 1)
        assert boundary_target(Region(0, cr((0,), [], [0])), Region(0, cr((1,), [0])), aut) == (1, 0)

    def test_reflexive(self):
        aut = free(1, 1)
        r = Region(0, cr((0,), [0]))
        assert boundary_target(r, r, aut) == (0, 0)

    def test_not_in_future(self):
        aut = free(1, 1)
        assert boundary_target(Region(0, cr((1,), [0])), Region(0, cr((0,), [0])), aut) is None


class TestDiscreteSucc:
    def test_reset_joins_zero_block(self):
        aut = TimedAutomatonGame.from_edges(
            ["x", "y"], 1, [("l", "min", Constraint())], [("l", "a", Constraint(), ["x"], "l")], {})
        r = Region(0, cr((0, 0), [], [0, 1]))
        assert region_discrete_succ(r, 0, aut) == Region(0, cr((0, 0), [0], [1]))

    def test_guard_fails(self):
        aut = TimedAutomatonGame.from_edges(
            ["x"], 1, [("l", "min", Constraint())],
            [("l", "a", Constraint((Atom(0, "=", 1),)), [], "l")], {})
        assert region_discrete_succ(Region(0, cr((0,), [], [0])), 0, aut) is None

    def test_a0(self, a0):
        assert region_discrete_succ(Region(0, cr((0,), [], [0])), 0, a0) == Region(1, cr((0,), [], [0]))


class TestRepresentative:
    def test_thin(self):
        assert representative(Region(0, cr((0, 0), [0], [1]))).valuation == (0, F(1, 2))

    def test_two_blocks(self):
        assert representative(Region(0, cr((0, 0), [], [0], [1]))).valuation == (F(1, 3), F(2, 3))

    @pytest.mark.parametrize("name", corpus_names())
    def test_roundtrip(self, name):
        for r in graph(name).regions:
            assert region_of(representative(r)) == r


class TestClosure:
    def test_interval(self):
        r = Region(0, cr((0,), [], [0]))
        for v in (F(0), F(1), F(1, 2)):
            assert closure_contains(r, Configuration(0, (v,)))
        assert not closure_contains(r, Configuration(0, (F(5, 4),)))

    def test_diagonal_boundary(self):
        # the region 0 < x < y < 1 has the diagonal x = y in its closure
        r = Region(0, cr((0, 0), [], [0], [1]))
        rng = random.Random(3)
        for _ in range(100):
            v = F(rng.randint(0, 100), 100)
            assert closure_contains(r, Configuration(0, (v, v)))
        assert not closure_contains(r, Configuration(0, (F(2, 3), F(1, 3))))

    def test_other_location(self):
        assert not closure_contains(Region(0, cr((0,), [0])), Configuration(1, (F(0),)))


# properties


@given(sized_valuations(), st.data())
def test_equivalence_matches_cc_classes(nkv, data):
    n, k, v = nkv
    w = data.draw(valuations(n, k))
    same_region = clock_region_of(v) == clock_region_of(w)
    assert same_region == (cc_signature(v, k) == cc_signature(w, k))


@given(st.data())
def test_successor_is_first_region_change(data):
    k, c = data.draw(clock_regions_st())
    p = data.draw(clock_region_points(c))
    fr = [v - int(v) for v in p]
    gap = 1 - max(fr)
    # from a thin region any delay short of the next integer works; from a thick
    # region the first change happens exactly when the largest fraction hits 1
    t = gap / 2 if c.is_thin else gap
    nxt = raw_time_successor(c, k)
    if nxt is None:
        assert any(v == k for v in p)
    else:
        assert clock_region_of(tuple(v + t for v in p)) == nxt


@given(st.data())
def test_thin_thick_alternate(data):
    k, c = data.draw(clock_regions_st())
    chain = future_chain(Region(0, c), free(len(c.ints), k))
    for a, b in zip(chain, chain[1:]):
        assert is_thin(a) != is_thin(b)


@given(st.data())
def test_boundary_target_lands_exactly(data):
    k, c = data.draw(clock_regions_st())
    aut = free(len(c.ints), k)
    r = Region(0, c)
    s = data.draw(region_point(r))
    for target in future_chain(r, aut):
        if not is_thin(target):
            continue
        b, clock = boundary_target(r, target, aut)
        assert region_of(delay(s, b - s.valuation[clock], aut)) == target


@pytest.mark.parametrize("name", corpus_names())
def test_discrete_successor_independent_of_state(name):
    aut = load(name)
    rng = random.Random(11)
    for r in graph(name).regions:
        for a in aut.actions_at(r.location):
            expect = region_discrete_succ(r, a, aut)
            for _ in range(20):
                s = sample_point(r, rng)
                try:
                    got = region_of(discrete_succ(s, a, aut))
                except Undefined:
                    got = None
                assert got == expect


@pytest.mark.parametrize("name", corpus_names())
def test_template_matches_concrete_segments(name):
    aut = load(name)
    rng = random.Random(5)
    for r in graph(name).regions:
        template = segment_template(r, aut)
        for _ in range(3):
            s = sample_point(r, rng)
            concrete = list(time_segments(s, aut))
            assert [x[0] for x in concrete] == [x[0] for x in template]
            for (_, lo, hi), (_, start, end) in zip(concrete, template):
                assert lo == (0 if start is None else start[0] - s.valuation[start[1]])
                assert hi == (lo if end is start else end[0] - s.valuation[end[1]])


@given(st.data())
def test_sample_point_is_inside(data):
    k, c = data.draw(clock_regions_st())
    s = sample_point(Region(0, c), random.Random(data.draw(st.integers(0, 10 ** 6))))
    assert clock_region_of(s.valuation) == c


@pytest.mark.parametrize("name", ["a0", "three_clock_diag", "reset_chain3"])
def test_format_parse_roundtrip(name):
    aut = load(name)
    for r in enumerate_regions(aut):
        assert parse_region(format_region(r, aut), aut) == r


def test_format_is_canonical(a0):
    assert format_region(Region(0, cr((0,), [], [0])), a0) == "loc=l; int=[x:0]; frac=[{},{x}]"
