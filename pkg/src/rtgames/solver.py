"""Optimality equations on the timed region graph: strategy improvement, verification, oracle.

Values are regional: ``T[i]`` is a simple function on the closure of region
``i`` and ``D[i]`` a step count.  Moves are scored lexicographically by
``(T(target) transferred back along the move, D(target) + 1)``; all order
tests are exact and taken at region representatives, which is enough because
two simple functions never cross inside an open region.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Optional

from .automaton import Player, Violation, succ_unguarded
from .graph import GraphClass, Move, TimedRegionGraph, classify, restrict
from .regions import closure_contains, representative, sample_point
from .simple import (
    INF,
    INFINITE,
    Const,
    Infinite,
    canonical,
    evaluate,
    scaled_value,
    transfer,
    wait_time,
)

log = logging.getLogger(__name__)

ZERO = Const(0)


class NonTermination(RuntimeError):
    """Strategy improvement exceeded its iteration bound (an implementation bug)."""


class NoFixpoint(RuntimeError):
    """Value iteration did not stabilise within its sweep bound (an implementation bug)."""


@dataclass
class RegionalValue:
    T: list
    D: list

    def __len__(self) -> int:
        return len(self.T)

    def at(self, i: int) -> tuple:
        return self.T[i], self.D[i]

    def copy(self) -> "RegionalValue":
        return RegionalValue(list(self.T), list(self.D))


@dataclass
class Solution:
    value: RegionalValue
    min_strategy: dict
    max_strategy: dict
    outer_iterations: int
    inner_iterations: list
    # per outer iteration: the inner value trajectory, only kept when tracing
    trace: Optional[list] = None
    outer_values: Optional[list] = None


def move_score(g: TimedRegionGraph, v: RegionalValue, m: Move) -> tuple:
    src = g.regions[m.source]
    return transfer(v.T[m.target], m.alpha, g.resets(m), src), v.D[m.target] + 1


def _key(score: tuple, region) -> tuple:
    return scaled_value(score[0], region), score[1]


def solve_zero_player(g: TimedRegionGraph) -> RegionalValue:
    """Follow the unique move out of each region; cycles without a final region are infinite."""
    n = len(g)
    T: list = [None] * n
    D: list = [None] * n
    on_path = [False] * n
    for start in range(n):
        path = []
        r = start
        while T[r] is None and not on_path[r]:
            if g.final[r]:
                T[r], D[r] = ZERO, 0
                break
            if len(g.moves[r]) != 1:
                raise ValueError(f"region {r} is not choiceless")
            on_path[r] = True
            path.append(r)
            r = g.moves[r][0].target
        cyclic = T[r] is None
        for p in reversed(path):
            on_path[p] = False
            if cyclic:
                T[p], D[p] = INFINITE, INF
            else:
                m = g.moves[p][0]
                T[p] = transfer(T[m.target], m.alpha, g.resets(m), g.regions[p])
                D[p] = D[m.target] + 1
    return RegionalValue(T, D)


def initial_strategy(g: TimedRegionGraph, side: Player) -> dict:
    return {i: g.moves[i][0] for i in g.owned(side)}


def _improve(strategy: dict, v: RegionalValue, g: TimedRegionGraph, side: Player) -> dict:
    pick = max if side is Player.MAX else min
    out = {}
    for i in g.owned(side):
        region = g.regions[i]
        keyed = [(_key(move_score(g, v, m), region), m) for m in g.moves[i]]
        best = pick(k for k, _ in keyed)
        optimal = [m for k, m in keyed if k == best]
        cur = strategy[i]
        # moves are kept in Choose order, so optimal[0] is Choose(M*)
        out[i] = cur if cur in optimal else optimal[0]
    return out


def improve_max(chi: dict, v: RegionalValue, g: TimedRegionGraph) -> dict:
    return _improve(chi, v, g, Player.MAX)


def improve_min(mu: dict, v: RegionalValue, g: TimedRegionGraph) -> dict:
    return _improve(mu, v, g, Player.MIN)


def solve_one_player_max(g: TimedRegionGraph, trace: Optional[list] = None):
    """Strategy improvement for Max on a graph whose Min regions are choiceless.

    Returns ``(value, chi, iterations)``.  When ``trace`` is a list, every
    intermediate value is appended to it.
    """
    if any(len(g.moves[i]) != 1 for i in g.owned(Player.MIN)):
        raise ValueError("Min regions must be choiceless")
    chi = initial_strategy(g, Player.MAX)
    bound = len(g) + 2
    for it in range(1, bound + 1):
        v = solve_zero_player(restrict(g, chi, Player.MAX))
        if trace is not None:
            trace.append(v)
        nxt = improve_max(chi, v, g)
        if nxt == chi:
            return v, chi, it
        chi = nxt
    raise NonTermination(f"Max improvement did not stabilise in {bound} iterations")


def solve_minmax(g: TimedRegionGraph, trace: bool = False) -> Solution:
    """Nested strategy improvement: Min outside, one-player Max inside."""
    mu = initial_strategy(g, Player.MIN)
    inner_counts = []
    traces = [] if trace else None
    outer_values = [] if trace else None
    bound = len(g) + 2
    for it in range(1, bound + 1):
        inner_trace = [] if trace else None
        v, chi, inner = solve_one_player_max(restrict(g, mu, Player.MIN), inner_trace)
        inner_counts.append(inner)
        if trace:
            traces.append(inner_trace)
            outer_values.append(v)
        log.debug("outer iteration %d: inner loop took %d iterations", it, inner)
        nxt = improve_min(mu, v, g)
        if nxt == mu:
            return Solution(v, mu, chi, it, inner_counts, traces, outer_values)
        mu = nxt
    raise NonTermination(f"Min improvement did not stabilise in {bound} iterations")


MODES = ("MinMax", "Max", "Min", "ZeroPlayer", "Geq", "Leq")


def verify_opt(v: RegionalValue, g: TimedRegionGraph, mode: str = "MinMax",
               extra_points: int = 5, seed: int = 0) -> list:
    """Check the optimality equations region by region on concrete states.

    Every move is re-scored from scratch: the successor state is computed by
    the automaton semantics, the target's value is evaluated there and the
    waiting time is added.  Scores are compared at the representative and at
    ``extra_points`` random points of each region.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    rng = random.Random(seed)
    aut = g.aut
    out = []
    if mode == "ZeroPlayer" and classify(g) is not GraphClass.ZERO_PLAYER:
        out.append(Violation("NotChoiceless", "graph is not 0-player"))
    for i, region in enumerate(g.regions):
        t, d = v.T[i], v.D[i]
        name = f"region {i}"
        if (d == INF) != isinstance(t, Infinite):
            out.append(Violation("InfConsistency", name))
            continue
        if g.final[i]:
            # (0, 0) on final regions; the relaxations only ask for an inequality
            if mode in ("Geq", "Leq"):
                key = (scaled_value(t, region), d)
                bad = key < (0, 0) if mode == "Geq" else key > (0, 0)
            else:
                bad = canonical(t, region) != ZERO or d != 0
            if bad:
                out.append(Violation("FinalViolation", name))
            continue
        if mode == "MinMax":
            want = "min" if g.owner[i] is Player.MIN else "max"
        elif mode in ("Max", "Geq"):
            want = "max"
        else:
            # Min, Leq, and ZeroPlayer (where min and max coincide)
            want = "min"
        points = [representative(region)] + [sample_point(region, rng) for _ in range(extra_points)]
        for s in points:
            scores = []
            for m in g.moves[i]:
                tau = wait_time(s, m.alpha)
                s2 = succ_unguarded(s, m.alpha.action, tau, aut)
                if not closure_contains(g.regions[m.target], s2):
                    out.append(Violation("SuccessorOutsideClosure", f"{name}: {m}"))
                    continue
                val = evaluate(v.T[m.target], s2)
                scores.append((tau + val, v.D[m.target] + 1))
            if not scores:
                out.append(Violation("DeadlockRegion", name))
                break
            best = min(scores) if want == "min" else max(scores)
            mine = (evaluate(t, s, region), d)
            if mode == "Geq":
                ok = mine >= best
            elif mode == "Leq":
                ok = mine <= best
            else:
                ok = mine == best
            if not ok:
                kind = "TViolation" if mine[0] != best[0] else "DViolation"
                out.append(Violation(kind, f"{name}: have {_fmt(mine)}, equations give {_fmt(best)}"))
                break
    return out


def _fmt(p: tuple) -> str:
    return f"({p[0]}, {p[1]})"


def value_iteration_oracle(g: TimedRegionGraph) -> RegionalValue:
    """Synchronous Bellman iteration from (Infinite, inf) for at most |R|+1 sweeps.

    Only regions with a successor that changed in the previous sweep are
    recomputed; the others would reproduce their old value exactly, so the
    result equals that of full sweeps.
    """
    n = len(g)
    T = [ZERO if g.final[i] else INFINITE for i in range(n)]
    D = [0 if g.final[i] else INF for i in range(n)]
    v = RegionalValue(T, D)
    preds = g.predecessors()
    dirty = [i for i in range(n) if not g.final[i]]
    for sweep in range(1, n + 2):
        updates = {}
        for i in dirty:
            region = g.regions[i]
            pick = min if g.owner[i] is Player.MIN else max
            best = pick(((_key(s, region), s) for s in (move_score(g, v, m) for m in g.moves[i])),
                        key=lambda x: x[0])[1]
            if best[1] != D[i] or canonical(best[0], region) != canonical(T[i], region):
                updates[i] = best
        if not updates:
            log.debug("value iteration stable after %d sweeps", sweep)
            return v
        for i, (t, d) in updates.items():
            T[i], D[i] = t, d
        dirty = sorted({p for i in updates for p in preds[i] if not g.final[p]})
    raise NoFixpoint(f"no fixpoint after {n + 1} sweeps")


def same_values(a: RegionalValue, b: RegionalValue, g: TimedRegionGraph) -> list:
    """Indices of regions where the two values differ as functions (or in D)."""
    return [i for i, r in enumerate(g.regions)
            if a.D[i] != b.D[i] or canonical(a.T[i], r) != canonical(b.T[i], r)]
