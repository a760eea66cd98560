"""Timed-automaton games and their exact concrete semantics.

An automaton is stored in global-action form: every action carries its own
enabledness zone, a total location map and a reset set.  Per-location edges
(the form used by model files) are compiled into that form by
:meth:`TimedAutomatonGame.from_edges`.

All clock values are :class:`fractions.Fraction`; nothing in this module
touches floating point.
"""

from __future__ import annotations

import enum
import operator
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence

Valuation = tuple  # tuple[Fraction, ...], one entry per clock


class Player(str, enum.Enum):
    MIN = "min"
    MAX = "max"

    @property
    def opponent(self) -> "Player":
        return Player.MAX if self is Player.MIN else Player.MIN


_OPS = {
    "<": operator.lt,
    "<=": operator.le,
    "=": operator.eq,
    ">=": operator.ge,
    ">": operator.gt,
}
OPERATORS = tuple(_OPS)


@dataclass(frozen=True)
class Atom:
    """A simple clock constraint ``clock - other OP const`` (``other`` may be None)."""

    clock: int
    op: str
    const: int
    other: Optional[int] = None

    def __post_init__(self):
        if self.op not in _OPS:
            raise ValueError(f"unknown comparison operator {self.op!r}")

    def holds(self, values: Sequence, scale: int = 1) -> bool:
        lhs = values[self.clock]
        if self.other is not None:
            lhs = lhs - values[self.other]
        return _OPS[self.op](lhs, self.const * scale)


@dataclass(frozen=True)
class Constraint:
    """Conjunction of atoms; the empty conjunction is ``true``."""

    atoms: tuple = ()

    def holds(self, values: Sequence, scale: int = 1) -> bool:
        # `scale` lets callers pass integer-scaled valuations (value * scale)
        return all(a.holds(values, scale) for a in self.atoms)

    def constants(self) -> Iterable[int]:
        return (a.const for a in self.atoms)

    def clocks(self) -> Iterable[int]:
        for a in self.atoms:
            yield a.clock
            if a.other is not None:
                yield a.other


TRUE = Constraint()


@dataclass(frozen=True)
class Zone:
    """Per-location clock constraint; ``None`` excludes the location entirely."""

    per_location: tuple

    def at(self, location: int) -> Optional[Constraint]:
        return self.per_location[location]

    def contains(self, location: int, values: Sequence, scale: int = 1) -> bool:
        c = self.per_location[location]
        return c is not None and c.holds(values, scale)

    def locations(self) -> list:
        return [i for i, c in enumerate(self.per_location) if c is not None]

    @classmethod
    def from_map(cls, n_locations: int, mapping: dict) -> "Zone":
        return cls(tuple(mapping.get(i) for i in range(n_locations)))


@dataclass(frozen=True)
class Action:
    name: str
    enabled: Zone
    target: tuple  # target[l] = delta(l, a); total over locations
    resets: frozenset = frozenset()


class Configuration(NamedTuple):
    location: int
    valuation: tuple


class TimedAction(NamedTuple):
    action: int
    delay: Fraction


class Undefined(Exception):
    """A semantic step is not defined for the given configuration."""


class ExceedsBound(Undefined):
    pass


class LeavesStateZone(Undefined):
    pass


class NotEnabled(Undefined):
    pass


class SuccessorNotInS(Undefined):
    pass


class SourceNotInS(Undefined):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"kind": self.kind, "detail": self.detail}


@dataclass(frozen=True)
class TimedAutomatonGame:
    clocks: tuple
    k: int
    locations: tuple
    owners: tuple
    states: Zone
    final: Zone
    actions: tuple
    # per-location list of action indices whose enabledness zone mentions it
    _enabled_at: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        enabled_at = tuple(
            tuple(i for i, a in enumerate(self.actions) if a.enabled.at(loc) is not None)
            for loc in range(len(self.locations))
        )
        object.__setattr__(self, "_enabled_at", enabled_at)

    @property
    def n_clocks(self) -> int:
        return len(self.clocks)

    def clock_index(self, name: str) -> int:
        return self.clocks.index(name)

    def location_index(self, name: str) -> int:
        return self.locations.index(name)

    def actions_at(self, location: int) -> tuple:
        return self._enabled_at[location]

    def owner(self, location: int) -> Player:
        return self.owners[location]

    def in_states(self, s: Configuration) -> bool:
        return self.states.contains(s.location, s.valuation)

    def in_final(self, s: Configuration) -> bool:
        return self.final.contains(s.location, s.valuation)

    @classmethod
    def from_edges(cls, clocks, k, locations, edges, final) -> "TimedAutomatonGame":
        """Compile per-location edges into global actions.

        ``locations`` is a sequence of ``(name, owner, invariant)``; ``edges``
        of ``(source, label, guard, resets, target)`` with location and clock
        names; ``final`` maps location names to constraints.  Each edge
        becomes a fresh action enabled only at its source; at every other
        location its target is the location itself, which is unreachable
        because the action is never enabled there.
        """
        clocks = tuple(clocks)
        names = tuple(name for name, _, _ in locations)
        n = len(names)
        loc_idx = {name: i for i, name in enumerate(names)}
        clk_idx = {name: i for i, name in enumerate(clocks)}
        owners = tuple(Player(owner) for _, owner, _ in locations)
        states = Zone(tuple(inv for _, _, inv in locations))
        fin = Zone.from_map(n, {loc_idx[name]: c for name, c in final.items()})
        actions = []
        for src, label, guard, resets, tgt in edges:
            s, t = loc_idx[src], loc_idx[tgt]
            target = tuple(t if l == s else l for l in range(n))
            enabled = Zone.from_map(n, {s: guard})
            actions.append(Action(label, enabled, target, frozenset(clk_idx[c] for c in resets)))
        return cls(clocks, k, names, owners, states, fin, tuple(actions))


def reset(valuation: Sequence, clocks: Iterable[int]) -> tuple:
    clocks = set(clocks)
    return tuple(Fraction(0) if c in clocks else v for c, v in enumerate(valuation))


def delay(s: Configuration, t, aut: TimedAutomatonGame) -> Configuration:
    """Let ``t`` time units pass in ``s``, staying inside V and S throughout."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("negative delay")
    moved = tuple(v + t for v in s.valuation)
    if any(v > aut.k for v in moved):
        raise ExceedsBound(f"delay {t} takes a clock above k={aut.k}")
    # S is a convex zone, so both endpoints inside means the whole segment is
    if not aut.in_states(s) or not aut.states.contains(s.location, moved):
        raise LeavesStateZone(f"delay {t} leaves the state zone")
    return Configuration(s.location, moved)


def discrete_succ(s: Configuration, a: int, aut: TimedAutomatonGame) -> Configuration:
    if not aut.in_states(s):
        raise SourceNotInS("source configuration is not a state")
    action = aut.actions[a]
    if not action.enabled.contains(s.location, s.valuation):
        raise NotEnabled(f"action {action.name} is not enabled")
    succ = Configuration(action.target[s.location], reset(s.valuation, action.resets))
    if not aut.in_states(succ):
        raise SuccessorNotInS(f"action {action.name} leads outside the state zone")
    return succ


def timed_succ(s: Configuration, tau: TimedAction, aut: TimedAutomatonGame) -> Configuration:
    return discrete_succ(delay(s, tau.delay, aut), tau.action, aut)


def succ_unguarded(s: Configuration, a: int, t, aut: TimedAutomatonGame) -> Configuration:
    """``Succ(s, (a, t))`` without any membership checks."""
    action = aut.actions[a]
    moved = tuple(v + t for v in s.valuation)
    return Configuration(action.target[s.location], reset(moved, action.resets))


def validate(aut: TimedAutomatonGame) -> list:
    """Return every violated well-formedness assumption; never raises."""
    from . import regions  # regions depends on this module

    out = []
    n_loc = len(aut.locations)
    if aut.n_clocks == 0:
        out.append(Violation("NoClocks", "at least one clock is required"))
    if len(set(aut.clocks)) != aut.n_clocks:
        out.append(Violation("DuplicateClock"))
    if len(set(aut.locations)) != n_loc:
        out.append(Violation("DuplicateLocation"))
    if len(aut.owners) != n_loc or any(not isinstance(o, Player) for o in aut.owners):
        out.append(Violation("MissingOwner", "every location needs an owner"))
    zones = [("states", aut.states), ("final", aut.final)]
    zones += [(f"enabled({a.name})", a.enabled) for a in aut.actions]
    for what, zone in zones:
        for loc, c in enumerate(zone.per_location):
            if c is None:
                continue
            for const in c.constants():
                if not 0 <= const <= aut.k:
                    out.append(Violation("ConstantExceedsBound",
                                         f"{what} at {aut.locations[loc]}: {const} > k={aut.k}"))
            if any(not 0 <= ck < aut.n_clocks for ck in c.clocks()):
                out.append(Violation("UnknownClock", f"{what} at {aut.locations[loc]}"))
    for a in aut.actions:
        if any(not 0 <= c < aut.n_clocks for c in a.resets):
            out.append(Violation("UnknownClock", f"reset of {a.name}"))
        if len(a.target) != n_loc or any(not 0 <= t < n_loc for t in a.target):
            out.append(Violation("BadTarget", a.name))
    if out:
        return out

    for loc in range(n_loc):
        if aut.final.at(loc) is None:
            continue
        for cr in regions.clock_regions(aut.n_clocks, aut.k):
            rep, scale = cr.scaled_representative()
            if aut.final.contains(loc, rep, scale) and not aut.states.contains(loc, rep, scale):
                out.append(Violation("FinalOutsideState", regions.format_region(
                    regions.Region(loc, cr), aut)))
                break

    for r in regions.enumerate_regions(aut):
        if regions.is_final(r, aut):
            continue
        if not any(regions.region_discrete_succ(r2, a, aut) is not None
                   for r2 in regions.future_chain(r, aut) for a in aut.actions_at(r2.location)):
            out.append(Violation("DeadlockRegion", regions.format_region(r, aut)))
    return out
