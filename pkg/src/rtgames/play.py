"""Concrete epsilon-optimal strategies, random adversaries and exact plays.

A solved regional value gives each owned region one move.  Moves that hit a
thin region exactly, or act immediately, are played as they are.  Moves that
only approach a boundary (Min acting just after it, Max just before it) are
played with a small offset ``delta(s)``: at most the per-state budget and at
most half of the time spent in the thick region, so the play stays strictly
inside that region.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .automaton import (
    Configuration,
    Player,
    TimedAction,
    TimedAutomatonGame,
    Undefined,
    Violation,
    timed_succ,
)
from .graph import MoveKind, TimedRegionGraph
from .regions import (
    clock_region_of,
    region_discrete_succ,
    region_of,
    sample_point,
    segment_template,
)
from .simple import INF, evaluate, wait_time
from .solver import RegionalValue


class BExceeded(ValueError):
    """A finite step count exceeds the bound of a uniform budget schedule."""


class StuckState(RuntimeError):
    """No legal timed action exists in a non-final state (a bug on validated automata)."""


def geometric_budget(epsilon, value: RegionalValue, g: TimedRegionGraph) -> Callable:
    """``s -> epsilon * 2^-D(s)``."""
    epsilon = Fraction(epsilon)

    def budget(s: Configuration) -> Fraction:
        d = value.D[g.index[region_of(s)]]
        return epsilon / 2 ** d if d != INF else epsilon

    return budget


def bounded_epsilon_schedule(value: RegionalValue, B: int, epsilon=Fraction(1, 100)) -> Callable:
    """Uniform budget ``epsilon / B``, valid when every finite D is at most B."""
    worst = max((d for d in value.D if d != INF), default=0)
    if worst > B:
        raise BExceeded(f"finite step count {worst} exceeds B={B}")
    share = Fraction(epsilon) / B
    return lambda s: share


def thick_gap_after(p: tuple) -> Fraction:
    """Length of the open time interval following the instant ``p`` before a region change."""
    cr = clock_region_of(p)
    return 1 - max(v - i for v, i in zip(p, cr.ints))


def thick_gap_before(p: tuple) -> Fraction:
    """Length of the open time interval ending at ``p`` that lies in one region."""
    return min((v - int(v) if v != int(v) else Fraction(1) for v in p), default=Fraction(1))


@dataclass
class ConcreteStrategy:
    """Positional strategy on concrete states derived from a region strategy."""

    g: TimedRegionGraph
    moves: dict  # region index -> Move
    budget: Callable

    def act(self, s: Configuration) -> TimedAction:
        m = self.moves[self.g.index[region_of(s)]]
        w = wait_time(s, m.alpha)
        if m.kind is MoveKind.MIN_AFTER_BOUNDARY:
            landing = tuple(v + w for v in s.valuation)
            w += min(self.budget(s), thick_gap_after(landing) / 2)
        elif m.kind is MoveKind.MAX_BEFORE_BOUNDARY:
            landing = tuple(v + w for v in s.valuation)
            w -= min(self.budget(s), min(w, thick_gap_before(landing)) / 2)
        return TimedAction(m.alpha.action, w)


def concretize(g: TimedRegionGraph, value: RegionalValue, strategy: dict, epsilon,
               budget: Optional[Callable] = None) -> ConcreteStrategy:
    """epsilon-optimal concrete strategy; the default budget is ``epsilon * 2^-D(s)``."""
    if budget is None:
        budget = geometric_budget(epsilon, value, g)
    return ConcreteStrategy(g, strategy, budget)


def legal_choices(s: Configuration, aut: TimedAutomatonGame, cache: Optional[dict] = None) -> list:
    """All ``(action, lo, hi)`` such that delays in the segment followed by the action are legal.

    ``lo == hi`` marks a single instant; otherwise any ``lo < t < hi`` works
    (and ``t = lo`` too on the first segment).  ``cache`` keeps the
    per-region symbolic part between calls on the same automaton.
    """
    region = region_of(s)
    entry = None if cache is None else cache.get(region)
    if entry is None:
        entry = [(lo, hi, [a for a in aut.actions_at(r.location)
                           if region_discrete_succ(r, a, aut) is not None])
                 for r, lo, hi in segment_template(region, aut)]
        if cache is not None:
            cache[region] = entry
    val = s.valuation
    out = []
    for lo, hi, acts in entry:
        t_lo = Fraction(0) if lo is None else lo[0] - val[lo[1]]
        t_hi = t_lo if hi is lo else hi[0] - val[hi[1]]
        out.extend((a, t_lo, t_hi) for a in acts)
    return out


def random_timed_action(s: Configuration, aut: TimedAutomatonGame, rng: random.Random,
                        resolution: int = 1000, choices: Optional[list] = None) -> TimedAction:
    """Uniform over legal (segment, action) pairs, uniform grid offset inside the segment."""
    if choices is None:
        choices = legal_choices(s, aut)
    if not choices:
        raise StuckState(f"no legal timed action from {s}")
    a, lo, hi = rng.choice(choices)
    t = lo if lo == hi else lo + (hi - lo) * Fraction(rng.randint(1, resolution - 1), resolution)
    return TimedAction(a, t)


@dataclass
class RandomStrategy:
    """Random adversary: :func:`random_timed_action` at every state."""

    aut: TimedAutomatonGame
    rng: random.Random = field(default_factory=random.Random)
    cache: dict = field(default_factory=dict, repr=False)

    def act(self, s: Configuration) -> TimedAction:
        return random_timed_action(s, self.aut, self.rng, choices=legal_choices(s, self.aut, self.cache))


@dataclass
class Run:
    states: list
    actions: list
    stop: Optional[int]
    # set when a deterministic strategy mapped a state to itself: the run repeats forever
    looped: bool = False

    @property
    def elapsed(self) -> Fraction:
        return sum((a.delay for a in self.actions), Fraction(0))

    @property
    def rt(self):
        if self.stop is None:
            return INF
        return sum((a.delay for a in self.actions[:self.stop]), Fraction(0))

    def __len__(self) -> int:
        return len(self.actions)


def simulate(s0: Configuration, aut: TimedAutomatonGame, min_strategy, max_strategy,
             max_steps: int, horizon=None) -> Run:
    """Play from ``s0`` until a final state or ``max_steps`` timed actions.

    A concrete strategy is positional and deterministic, so if it maps a
    non-final state to itself the run repeats that step forever; such runs
    end early with ``looped`` set and no stop index.  With ``horizon`` set,
    the run is also cut (no stop index) once the elapsed time reaches it.
    """
    if not aut.in_states(s0):
        raise ValueError("start configuration is not a state")
    states, actions = [s0], []
    s = s0
    elapsed = Fraction(0)
    while not aut.in_final(s):
        if len(actions) >= max_steps or (horizon is not None and elapsed >= horizon):
            return Run(states, actions, None)
        side = min_strategy if aut.owner(s.location) is Player.MIN else max_strategy
        tau = side.act(s)
        try:
            nxt = timed_succ(s, tau, aut)
        except Undefined as e:
            raise StuckState(f"illegal action {tau} from {s}: {e}") from None
        actions.append(tau)
        states.append(nxt)
        elapsed += tau.delay
        if nxt == s and isinstance(side, ConcreteStrategy):
            return Run(states, actions, None, looped=True)
        s = nxt
    return Run(states, actions, len(actions))


def value_at(value: RegionalValue, g: TimedRegionGraph, s: Configuration) -> tuple:
    i = g.index[region_of(s)]
    return evaluate(value.T[i], s), value.D[i]


def random_finite_state(value: RegionalValue, g: TimedRegionGraph, rng: random.Random,
                        include_final: bool = False) -> Optional[Configuration]:
    """A random point of a random region with finite D (None if there is none)."""
    pool = [i for i, d in enumerate(value.D) if d != INF and (include_final or not g.final[i])]
    if not pool:
        return None
    return sample_point(g.regions[rng.choice(pool)], rng)


def bellman_residual(value: RegionalValue, g: TimedRegionGraph, n_states: int = 100,
                     n_actions: int = 100, seed: int = 0) -> list:
    """Check the value against the concrete game at random states with finite value.

    At each state the value must equal the owner's best move score, and no
    random legal timed action may beat it: Min never gets ``t + T(s') <
    T(s)``, Max never gets ``t + T(s') > T(s)``.
    """
    from .automaton import succ_unguarded

    rng = random.Random(seed)
    aut = g.aut
    out = []
    for _ in range(n_states):
        s = random_finite_state(value, g, rng)
        if s is None:
            break
        i = g.index[region_of(s)]
        here = evaluate(value.T[i], s)
        scores = []
        for m in g.moves[i]:
            tau = wait_time(s, m.alpha)
            s2 = succ_unguarded(s, m.alpha.action, tau, aut)
            scores.append(tau + evaluate(value.T[m.target], s2))
        is_min = g.owner[i] is Player.MIN
        best = min(scores) if is_min else max(scores)
        if best != here:
            out.append(Violation("MoveScoreMismatch", f"{s}: value {here}, best move {best}"))
        choices = legal_choices(s, aut)
        for _ in range(n_actions):
            tau = random_timed_action(s, aut, rng, choices=choices)
            s2 = timed_succ(s, tau, aut)
            total = tau.delay + value_at(value, g, s2)[0]
            if (is_min and total < here) or (not is_min and total > here):
                out.append(Violation("ConcreteActionBeatsValue",
                                     f"{s}: {tau} gives {total}, value {here}"))
                break
    return out
