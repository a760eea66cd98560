"""Countdown games, their exact solution, and the two-clock timed-automaton reduction.

Player 1 repeatedly picks a weight ``p <= B`` available at the current node,
player 2 picks a move of that weight, and the budget drops by ``p``; player 1
wins on hitting exactly 0 and loses when stuck with budget left.

In the reduced automaton clock ``b`` is never reset and measures elapsed
time, while ``c`` times the chosen weight.  Player 1 is Min and player 2 is
Max, so player 1 wins iff the reachability-time value at ``(n0, b=0, c=0)``
is finite.
"""

from __future__ import annotations

import functools
import random
from dataclasses import dataclass

from .automaton import Atom, Constraint, TimedAutomatonGame


@dataclass(frozen=True)
class CountdownGame:
    n_nodes: int
    moves: tuple  # (src, dst, weight), sorted, one weight per (src, dst)
    n0: int
    b0: int

    def __post_init__(self):
        if self.b0 <= 0:
            raise ValueError("initial budget must be positive")
        if not 0 <= self.n0 < self.n_nodes:
            raise ValueError("initial node out of range")
        pairs = set()
        for src, dst, w in self.moves:
            if w <= 0:
                raise ValueError("weights must be positive")
            if not (0 <= src < self.n_nodes and 0 <= dst < self.n_nodes):
                raise ValueError(f"move ({src}, {dst}) has an unknown node")
            if (src, dst) in pairs:
                raise ValueError(f"move ({src}, {dst}) listed twice")
            pairs.add((src, dst))

    def weights_at(self, n: int) -> list:
        return sorted({w for src, _, w in self.moves if src == n})

    def successors(self, n: int, p: int) -> list:
        return [dst for src, dst, w in self.moves if src == n and w == p]


def solve_countdown(g: CountdownGame) -> dict:
    """Winner table: ``(n, B) -> True`` iff player 1 wins from there, for all B <= b0."""

    @functools.lru_cache(maxsize=None)
    def wins(n: int, budget: int) -> bool:
        if budget == 0:
            return True
        return any(all(wins(m, budget - p) for m in g.successors(n, p))
                   for p in g.weights_at(n) if p <= budget)

    return {(n, b): wins(n, b) for n in range(g.n_nodes) for b in range(g.b0 + 1)}


def player1_wins(g: CountdownGame) -> bool:
    return solve_countdown(g)[(g.n0, g.b0)]


def _c(*atoms) -> Constraint:
    return Constraint(tuple(Atom(*a) for a in atoms))


def reduce_to_ta(g: CountdownGame, literal: bool = False) -> TimedAutomatonGame:
    """Two-clock reachability-time game equivalent to ``g``.

    With ``literal=True`` the automaton is built verbatim from the hardness
    construction: no invariants, no guards beyond the listed ones.  That
    version lets player 1 idle at a node until ``b = b0`` and can leave
    player 2 stuck, so by default three repairs are applied:

    * nodes carry the invariant ``c = 0`` (player 1 must pick immediately);
    * weight ``p`` is only enabled when ``b <= b0 - p``, i.e. ``p <= B``;
    * a non-final sink ``lose`` lets a stuck player 1 concede.

    Intermediate locations ``n/p`` get the invariant ``c <= p && b - c <= b0 - p``
    (``b - c`` is the time at which ``p`` was picked), which keeps every
    state of the zone able to complete its move, and ``done`` is restricted
    to ``c = 0`` so that the final zone lies inside the state zone.
    """
    B = g.b0
    b, c = 0, 1
    nodes = [f"n{i}" for i in range(g.n_nodes)]
    pairs = sorted({(src, w) for src, _, w in g.moves if literal or w <= B})
    mids = {(n, p): f"n{n}/{p}" for n, p in pairs}
    at_zero = _c((c, "=", 0))

    locations = [("done", "max", Constraint() if literal else at_zero)]
    locations += [(name, "min", Constraint() if literal else at_zero) for name in nodes]
    locations += [(mids[n, p], "max", Constraint() if literal else _c((c, "<=", p), (b, "<=", B - p, c)))
                  for n, p in pairs]
    if not literal:
        locations.append(("lose", "max", at_zero))

    edges = []
    for i, name in enumerate(nodes):
        edges.append((name, "*", _c((b, "=", B)), ["c"], "done"))
        for p in g.weights_at(i):
            if p > B and not literal:
                continue  # can never be chosen, and b <= b0 - p would need a negative constant
            guard = _c((c, "=", 0)) if literal else _c((c, "=", 0), (b, "<=", B - p))
            edges.append((name, f"p{p}", guard, ["c"], mids[i, p]))
        if not literal:
            edges.append((name, "concede", Constraint(), ["c"], "lose"))
    for src, dst, w in g.moves:
        if (src, w) not in mids:
            continue
        edges.append((mids[src, w], f"m{src}_{dst}", _c((c, "=", w)), ["c"], nodes[dst]))
    if not literal:
        edges.append(("lose", "stay", Constraint(), ["c"], "lose"))
    final = {"done": Constraint() if literal else at_zero}
    return TimedAutomatonGame.from_edges(["b", "c"], B, locations, edges, final)


def gen_random(seed: int, n_nodes: int = None, b0: int = None, max_weight: int = 4) -> CountdownGame:
    """Seeded random game with at most 5 nodes, budget at most 16, weights at most ``max_weight``.

    Unspecified sizes are drawn from the seed.  Every node gets one or two
    outgoing moves.
    """
    rng = random.Random(seed)
    if n_nodes is None:
        n_nodes = rng.randint(1, 5)
    if b0 is None:
        b0 = rng.randint(1, 16)
    if not (1 <= n_nodes <= 5 and 1 <= b0 <= 16 and 1 <= max_weight <= 4):
        raise ValueError("sizes out of range")
    moves = []
    for src in range(n_nodes):
        targets = rng.sample(range(n_nodes), min(n_nodes, rng.randint(1, 2)))
        for dst in sorted(targets):
            moves.append((src, dst, rng.randint(1, max_weight)))
    return CountdownGame(n_nodes, tuple(moves), rng.randrange(n_nodes), b0)


def serialize_countdown(g: CountdownGame) -> str:
    lines = [f"countdown {g.n_nodes} {g.b0} {g.n0}"]
    lines += [f"move {s} {d} {w}" for s, d, w in g.moves]
    return "\n".join(lines) + "\n"


def parse_countdown(text: str) -> CountdownGame:
    header = None
    moves = []
    for no, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split("#", 1)[0].split()
        if not fields:
            continue
        try:
            if header is None:
                if fields[0] != "countdown" or len(fields) != 4:
                    raise ValueError("expected 'countdown <|N|> <B0> <n0>'")
                header = tuple(int(x) for x in fields[1:])
            elif fields[0] == "move" and len(fields) == 4:
                moves.append(tuple(int(x) for x in fields[1:]))
            else:
                raise ValueError(f"unexpected line {raw.strip()!r}")
        except ValueError as e:
            raise ValueError(f"line {no}: {e}") from None
    if header is None:
        raise ValueError("empty countdown file")
    n, b0, n0 = header
    return CountdownGame(n, tuple(moves), n0, b0)
