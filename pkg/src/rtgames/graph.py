"""The timed region graph: regions as vertices, boundary-optimal timed actions as moves."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .automaton import Player, TimedAutomatonGame
from .regions import (
    Region,
    boundary_of,
    enumerate_regions,
    format_region,
    future_chain,
    is_final,
    raw_time_successor,
    region_discrete_succ,
)
from .simple import Boundary, Immediate, SimpleTimedAction


class MoveKind(str, enum.Enum):
    THIN_HIT = "ThinHit"
    MIN_AFTER_BOUNDARY = "MinAfterBoundary"
    MAX_BEFORE_BOUNDARY = "MaxBeforeBoundary"
    IMMEDIATE = "ImmediateInterior"


@dataclass(frozen=True)
class Move:
    source: int
    alpha: SimpleTimedAction
    target: int
    kind: MoveKind = field(compare=False)

    def choose_key(self) -> tuple:
        a = self.alpha
        if isinstance(a, Immediate):
            return (a.action, 0, 0, 0, self.target)
        return (a.action, 1, a.b, a.clock, self.target)


class GraphClass(str, enum.Enum):
    ZERO_PLAYER = "ZeroPlayer"
    ONE_PLAYER_MAX = "OnePlayerMax"
    ONE_PLAYER_MIN = "OnePlayerMin"
    TWO_PLAYER = "TwoPlayer"


class MissingChoice(Exception):
    pass


@dataclass
class TimedRegionGraph:
    aut: TimedAutomatonGame
    regions: list
    index: dict
    moves: list  # moves[i] is a tuple of Move, sorted by choose_key
    final: list
    owner: list

    def __len__(self) -> int:
        return len(self.regions)

    def owned(self, side: Player) -> list:
        """Non-final regions owned by ``side``."""
        return [i for i in range(len(self.regions)) if self.owner[i] is side and not self.final[i]]

    def resets(self, move: Move) -> frozenset:
        return self.aut.actions[move.alpha.action].resets

    def n_moves(self) -> int:
        return sum(len(m) for m in self.moves)

    def predecessors(self) -> list:
        preds = [set() for _ in self.regions]
        for ms in self.moves:
            for m in ms:
                preds[m.target].add(m.source)
        return [sorted(p) for p in preds]


def _wait_key(alpha: SimpleTimedAction, region: Region) -> tuple:
    # the wait time b - s(c) as a function on the region, canonicalised
    if isinstance(alpha, Immediate):
        return ("const", 0)
    cr = region.clock_region
    j = cr.rank[alpha.clock]
    if j == 0:
        return ("const", alpha.b - cr.ints[alpha.clock])
    head = cr.blocks[j][0]
    return ("clock", alpha.b - cr.ints[alpha.clock] + cr.ints[head], head)


def build(aut: TimedAutomatonGame) -> TimedRegionGraph:
    regions = enumerate_regions(aut)
    index = {r: i for i, r in enumerate(regions)}
    final = [is_final(r, aut) for r in regions]
    owner = [aut.owner(r.location) for r in regions]
    all_moves = []
    for i, r in enumerate(regions):
        chain = future_chain(r, aut)
        exact, limit = [], []
        for pos, mid in enumerate(chain):
            acts = aut.actions_at(mid.location)
            if mid.clock_region.is_thin:
                b, c = boundary_of(mid.clock_region)
                for a in acts:
                    tgt = region_discrete_succ(mid, a, aut)
                    if tgt is not None:
                        exact.append((Boundary(a, b, c), tgt, MoveKind.THIN_HIT))
                if owner[i] is Player.MIN and pos + 1 < len(chain):
                    after = chain[pos + 1]
                    for a in acts:
                        tgt = region_discrete_succ(after, a, aut)
                        if tgt is not None:
                            limit.append((Boundary(a, b, c), tgt, MoveKind.MIN_AFTER_BOUNDARY))
                continue
            if pos == 0:
                for a in acts:
                    tgt = region_discrete_succ(mid, a, aut)
                    if tgt is not None:
                        exact.append((Immediate(a), tgt, MoveKind.IMMEDIATE))
            if owner[i] is Player.MAX:
                # the closing boundary may lie outside S (strict upper invariant);
                # the supremum of waiting in `mid` is still approached there
                edge = raw_time_successor(mid.clock_region, aut.k)
                if edge is None:
                    continue
                b, c = boundary_of(edge)
                for a in acts:
                    tgt = region_discrete_succ(mid, a, aut)
                    if tgt is not None:
                        limit.append((Boundary(a, b, c), tgt, MoveKind.MAX_BEFORE_BOUNDARY))
        seen = set()
        moves = []
        for alpha, tgt, kind in exact + limit:
            key = (alpha.action, _wait_key(alpha, r), tgt)
            if key in seen:
                continue
            seen.add(key)
            moves.append(Move(i, alpha, index[tgt], kind))
        moves.sort(key=Move.choose_key)
        all_moves.append(tuple(moves))
    return TimedRegionGraph(aut, regions, index, all_moves, final, owner)


def restrict(g: TimedRegionGraph, strategy: dict, side: Player) -> TimedRegionGraph:
    """Keep only the strategy's move at every non-final region owned by ``side``."""
    moves = list(g.moves)
    for i in g.owned(side):
        if i not in strategy:
            raise MissingChoice(format_region(g.regions[i], g.aut))
        m = strategy[i]
        if m not in g.moves[i]:
            raise ValueError(f"strategy move {m} is not a move of region {i}")
        moves[i] = (m,)
    return TimedRegionGraph(g.aut, g.regions, g.index, moves, g.final, g.owner)


def classify(g: TimedRegionGraph) -> GraphClass:
    def choiceless(side):
        return all(len(g.moves[i]) == 1 for i in g.owned(side))

    lo, hi = choiceless(Player.MIN), choiceless(Player.MAX)
    if lo and hi:
        return GraphClass.ZERO_PLAYER
    if lo:
        return GraphClass.ONE_PLAYER_MAX
    if hi:
        return GraphClass.ONE_PLAYER_MIN
    return GraphClass.TWO_PLAYER


def format_alpha(alpha: SimpleTimedAction, aut: TimedAutomatonGame) -> str:
    name = aut.actions[alpha.action].name
    if isinstance(alpha, Immediate):
        return f"{name},now"
    return f"{name},b={alpha.b},c={aut.clocks[alpha.clock]}"


def format_move(m: Move, g: TimedRegionGraph, with_source: bool = True) -> str:
    tail = f"--({format_alpha(m.alpha, g.aut)})--> {format_region(g.regions[m.target], g.aut)}"
    if with_source:
        return f"{format_region(g.regions[m.source], g.aut)} {tail}"
    return tail


def dump(g: TimedRegionGraph) -> str:
    return "".join(format_move(m, g) + "\n" for ms in g.moves for m in ms)
