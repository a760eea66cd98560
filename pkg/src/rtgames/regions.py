"""Clock regions with diagonal constraints, time successors and discrete successors.

A clock region is described by the integer part of every clock plus an
ordered partition of the clocks by fractional part: ``blocks[0]`` holds the
clocks with fractional part zero (possibly none), ``blocks[1:]`` the other
clocks grouped by equal fractional part in strictly increasing order.

Integer-part vector plus this ordering decides every constraint
``c ~ i`` and ``c - c' ~ i`` with ``i <= k`` and vice versa, so the
descriptor is exactly the diagonal-refined equivalence class.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .automaton import Configuration, TimedAutomatonGame


@dataclass(frozen=True)
class ClockRegion:
    ints: tuple
    blocks: tuple  # blocks[0] may be empty, the rest are nonempty; each sorted
    rank: tuple = field(default=(), compare=False, repr=False, hash=False)

    def __post_init__(self):
        rank = [0] * len(self.ints)
        for j, block in enumerate(self.blocks):
            for c in block:
                rank[c] = j
        object.__setattr__(self, "rank", tuple(rank))

    @property
    def scale(self) -> int:
        return len(self.blocks)

    @property
    def is_thin(self) -> bool:
        return bool(self.blocks[0])

    def scaled_representative(self) -> tuple:
        """Representative point multiplied by ``scale``, as integers."""
        m1 = len(self.blocks)
        return tuple(i * m1 + j for i, j in zip(self.ints, self.rank)), m1

    def representative(self) -> tuple:
        values, m1 = self.scaled_representative()
        return tuple(Fraction(v, m1) for v in values)

    def sort_key(self):
        return (self.ints, self.blocks)


@dataclass(frozen=True)
class Region:
    location: int
    clock_region: ClockRegion

    @property
    def ints(self) -> tuple:
        return self.clock_region.ints

    @property
    def blocks(self) -> tuple:
        return self.clock_region.blocks

    def sort_key(self):
        return (self.location, self.clock_region.ints, self.clock_region.blocks)


def _ordered_partitions(items: tuple) -> Iterator[tuple]:
    if not items:
        yield ()
        return
    for size in range(1, len(items) + 1):
        for first in itertools.combinations(items, size):
            rest = tuple(x for x in items if x not in first)
            for tail in _ordered_partitions(rest):
                yield (first,) + tail


@functools.lru_cache(maxsize=None)
def clock_regions(n_clocks: int, k: int) -> tuple:
    """All clock regions of ``[0, k]^n`` in canonical order."""
    clocks = tuple(range(n_clocks))
    out = []
    for size in range(n_clocks + 1):
        for zero in itertools.combinations(clocks, size):
            rest = tuple(c for c in clocks if c not in zero)
            for parts in _ordered_partitions(rest):
                blocks = (zero,) + parts
                ranges = [range(k + 1) if c in zero else range(k) for c in clocks]
                for ints in itertools.product(*ranges):
                    out.append(ClockRegion(tuple(ints), blocks))
    out.sort(key=ClockRegion.sort_key)
    return tuple(out)


def clock_region_of(valuation) -> ClockRegion:
    ints = []
    fracs = {}
    for c, v in enumerate(valuation):
        v = Fraction(v)
        i = v.numerator // v.denominator
        ints.append(i)
        fracs.setdefault(v - i, []).append(c)
    zero = tuple(fracs.pop(Fraction(0), ()))
    blocks = (zero,) + tuple(tuple(fracs[f]) for f in sorted(fracs))
    return ClockRegion(tuple(ints), blocks)


def region_of(s: Configuration) -> Region:
    return Region(s.location, clock_region_of(s.valuation))


def zone_contains_region(zone, region: Region) -> bool:
    values, scale = region.clock_region.scaled_representative()
    return zone.contains(region.location, values, scale)


def in_states(region: Region, aut: TimedAutomatonGame) -> bool:
    return zone_contains_region(aut.states, region)


def is_final(region: Region, aut: TimedAutomatonGame) -> bool:
    return zone_contains_region(aut.final, region)


def enumerate_regions(aut: TimedAutomatonGame) -> list:
    """All regions inside S, ordered by location then clock region."""
    out = []
    for loc in range(len(aut.locations)):
        if aut.states.at(loc) is None:
            continue
        for cr in clock_regions(aut.n_clocks, aut.k):
            r = Region(loc, cr)
            if in_states(r, aut):
                out.append(r)
    return out


def is_thin(region: Region) -> bool:
    return region.clock_region.is_thin


def raw_time_successor(cr: ClockRegion, k: int) -> Optional[ClockRegion]:
    """Time successor inside V, ignoring S; None once some clock sits at k."""
    if any(i == k for i in cr.ints):
        return None
    if cr.is_thin:
        return ClockRegion(cr.ints, ((),) + cr.blocks)
    if len(cr.blocks) == 1:
        return None
    top = cr.blocks[-1]
    ints = tuple(i + 1 if c in top else i for c, i in enumerate(cr.ints))
    return ClockRegion(ints, (top,) + cr.blocks[1:-1])


def time_successor(region: Region, aut: TimedAutomatonGame) -> Optional[Region]:
    nxt = raw_time_successor(region.clock_region, aut.k)
    if nxt is None:
        return None
    r = Region(region.location, nxt)
    return r if in_states(r, aut) else None


def future_chain(region: Region, aut: TimedAutomatonGame) -> list:
    """``region`` followed by its iterated time successors within S."""
    chain = [region]
    while True:
        nxt = time_successor(chain[-1], aut)
        if nxt is None:
            return chain
        chain.append(nxt)


def boundary_of(thin: ClockRegion) -> tuple:
    """The ``(b, c)`` pair that pins a thin clock region: clock c sits at integer b."""
    c = thin.blocks[0][0]
    return thin.ints[c], c


def boundary_target(region: Region, target: Region, aut: TimedAutomatonGame):
    if not is_thin(target) or target not in future_chain(region, aut):
        return None
    return boundary_of(target.clock_region)


def region_discrete_succ(region: Region, a: int, aut: TimedAutomatonGame) -> Optional[Region]:
    action = aut.actions[a]
    if not zone_contains_region(action.enabled, region):
        return None
    cr = region.clock_region
    resets = action.resets
    ints = tuple(0 if c in resets else i for c, i in enumerate(cr.ints))
    zero = tuple(sorted(set(cr.blocks[0]) | resets))
    rest = tuple(b for b in (tuple(c for c in blk if c not in resets) for blk in cr.blocks[1:]) if b)
    succ = Region(action.target[region.location], ClockRegion(ints, (zero,) + rest))
    return succ if in_states(succ, aut) else None


def representative(region: Region) -> Configuration:
    return Configuration(region.location, region.clock_region.representative())


def closure_contains(region: Region, s: Configuration) -> bool:
    if s.location != region.location:
        return False
    cr = region.clock_region
    fr = []
    for c, v in enumerate(s.valuation):
        f = v - cr.ints[c]
        if f < 0 or f > 1 or (cr.rank[c] == 0 and f != 0):
            return False
        fr.append(f)
    for blk in cr.blocks:
        if any(fr[c] != fr[blk[0]] for c in blk):
            return False
    heads = [fr[blk[0]] for blk in cr.blocks if blk]
    return all(x <= y for x, y in zip(heads, heads[1:]))


def sample_point(region: Region, rng: random.Random, denominator: int = 997) -> Configuration:
    """A uniformly drawn point of the open region on a rational grid."""
    cr = region.clock_region
    m = len(cr.blocks) - 1
    fracs = sorted(rng.sample(range(1, denominator), m))
    vals = [Fraction(0)] * len(cr.ints)
    for j, blk in enumerate(cr.blocks):
        f = Fraction(fracs[j - 1], denominator) if j else Fraction(0)
        for c in blk:
            vals[c] = cr.ints[c] + f
    return Configuration(region.location, tuple(vals))


def time_segments(s: Configuration, aut: TimedAutomatonGame) -> Iterator[tuple]:
    """Regions visited by letting time pass from ``s`` while staying in S.

    Yields ``(region, lo, hi)``; ``lo == hi`` for a thin region (a single
    instant), otherwise the delays ``t`` with ``lo < t < hi`` (``lo <= t`` on
    the first segment) stay inside ``region``.
    """
    t = Fraction(0)
    while True:
        cur = tuple(v + t for v in s.valuation)
        cr = clock_region_of(cur)
        gap = 1 - max(v - i for v, i in zip(cur, cr.ints))
        if cr.is_thin:
            r = Region(s.location, cr)
            if not in_states(r, aut):
                return
            yield r, t, t
            if any(v == aut.k for v in cur):
                return
            r = Region(s.location, clock_region_of(tuple(v + gap / 2 for v in cur)))
        else:
            r = Region(s.location, cr)
        if not in_states(r, aut):
            return
        yield r, t, t + gap
        t += gap


def segment_template(region: Region, aut: TimedAutomatonGame) -> list:
    """Symbolic form of :func:`time_segments` for every state of ``region``.

    Returns ``(region', start, end)`` per element of the future chain, where
    ``start``/``end`` are ``(b, c)`` pairs meaning "the delay ``b - s(c)``"
    and ``None`` means delay 0.  Thin elements have ``start == end``.
    """
    chain = future_chain(region, aut)
    out = []
    prev = None
    for j, r in enumerate(chain):
        cr = r.clock_region
        if cr.is_thin:
            prev = boundary_of(cr)
            out.append((r, prev, prev))
            continue
        nxt = chain[j + 1].clock_region if j + 1 < len(chain) else raw_time_successor(cr, aut.k)
        out.append((r, prev, boundary_of(nxt)))
    return out


def format_region(region: Region, aut: TimedAutomatonGame) -> str:
    cr = region.clock_region
    ints = ",".join(f"{aut.clocks[c]}:{i}" for c, i in enumerate(cr.ints))
    blocks = ",".join("{" + ",".join(aut.clocks[c] for c in blk) + "}" for blk in cr.blocks)
    return f"loc={aut.locations[region.location]}; int=[{ints}]; frac=[{blocks}]"


def parse_region(text: str, aut: TimedAutomatonGame) -> Region:
    parts = [p.strip() for p in text.strip().split(";")]
    if len(parts) != 3 or not parts[0].startswith("loc=") or not parts[1].startswith("int=[") \
            or not parts[2].startswith("frac=["):
        raise ValueError(f"malformed region: {text!r}")
    loc = aut.location_index(parts[0][4:])
    ints = [0] * aut.n_clocks
    body = parts[1][5:-1]
    for item in filter(None, body.split(",")):
        name, val = item.split(":")
        ints[aut.clock_index(name)] = int(val)
    blocks = []
    body = parts[2][6:-1]
    for chunk in body.split("}"):
        chunk = chunk.strip().lstrip(",").strip()
        if not chunk:
            continue
        if not chunk.startswith("{"):
            raise ValueError(f"malformed block list: {text!r}")
        names = [n for n in chunk[1:].split(",") if n]
        blocks.append(tuple(sorted(aut.clock_index(n) for n in names)))
    return Region(loc, ClockRegion(tuple(ints), tuple(blocks)))
