"""Corpus loading and the end-to-end checks run over it.

Each ``check_*`` function takes one solved instance and returns a list of
human-readable failure strings (empty means the check passed).  The
acceptance tests and ``scripts/run_acceptance.py`` share these.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .automaton import Configuration, TimedAutomatonGame, validate
from .countdown import CountdownGame, gen_random, player1_wins, reduce_to_ta
from .graph import TimedRegionGraph, build
from .modelfile import parse_model
from .play import (
    RandomStrategy,
    bellman_residual,
    concretize,
    random_finite_state,
    simulate,
    value_at,
)
from .regions import region_of, representative
from .simple import INF, scaled_value
from .solver import Solution, same_values, solve_minmax, value_iteration_oracle, verify_opt


@dataclass
class AcceptanceConfig:
    corpus_dir: Path = Path(__file__).resolve().parents[2] / "corpus"
    countdown_seeds: tuple = tuple(range(50))
    oracle_region_limit: int = 2000
    residual_states: int = 100
    residual_actions: int = 100
    epsilon: Fraction = Fraction(1, 100)
    playout_starts: int = 200
    playout_adversaries: int = 20
    # cap for runs against a random Min, which may wander forever
    playout_steps: int = 500
    seed: int = 0


@dataclass
class Instance:
    name: str
    aut: TimedAutomatonGame
    countdown: Optional[CountdownGame] = None
    _graph: Optional[TimedRegionGraph] = field(default=None, repr=False)
    _solution: Optional[Solution] = field(default=None, repr=False)
    playout_inconclusive: int = 0

    @property
    def graph(self) -> TimedRegionGraph:
        if self._graph is None:
            self._graph = build(self.aut)
        return self._graph

    def solution(self) -> Solution:
        """Solved once with tracing on, then cached."""
        if self._solution is None:
            self._solution = solve_minmax(self.graph, trace=True)
        return self._solution


def hand_corpus(cfg: AcceptanceConfig = AcceptanceConfig()) -> list:
    out = []
    for path in sorted(cfg.corpus_dir.glob("*.rtg")):
        out.append(Instance(path.stem, parse_model(path.read_text())))
    return out


def countdown_corpus(cfg: AcceptanceConfig = AcceptanceConfig()) -> list:
    out = []
    for seed in cfg.countdown_seeds:
        g = gen_random(seed)
        out.append(Instance(f"countdown_{seed:02d}", reduce_to_ta(g), countdown=g))
    return out


def full_corpus(cfg: AcceptanceConfig = AcceptanceConfig()) -> list:
    return hand_corpus(cfg) + countdown_corpus(cfg)


def check_wellformed(inst: Instance) -> list:
    return [f"{v.kind}: {v.detail}" for v in validate(inst.aut)]


def check_fixpoint(inst: Instance) -> list:
    sol = inst.solution()
    return [f"{v.kind}: {v.detail}" for v in verify_opt(sol.value, inst.graph, "MinMax")]


def check_oracle(inst: Instance) -> list:
    g = inst.graph
    diff = same_values(inst.solution().value, value_iteration_oracle(g), g)
    return [f"oracle differs at region {i}" for i in diff]


def check_iteration_bounds(inst: Instance) -> list:
    sol = inst.solution()
    bound = len(inst.graph) + 1
    out = []
    if sol.outer_iterations > bound:
        out.append(f"outer loop took {sol.outer_iterations} > {bound}")
    for j, n in enumerate(sol.inner_iterations):
        if n > bound:
            out.append(f"inner loop {j} took {n} > {bound}")
    return out


def _keys(g: TimedRegionGraph, v) -> list:
    return [(scaled_value(v.T[i], r), v.D[i]) for i, r in enumerate(g.regions)]


def _monotone(seq: list, g: TimedRegionGraph, increasing: bool, what: str) -> list:
    out = []
    for j in range(len(seq) - 1):
        a, b = _keys(g, seq[j]), _keys(g, seq[j + 1])
        bad = [i for i in range(len(a)) if (b[i] < a[i] if increasing else b[i] > a[i])]
        if bad:
            out.append(f"{what} step {j}: not monotone at regions {bad[:5]}")
        elif j + 1 < len(seq) - 1 and a == b:
            # every step but the last one followed a strategy change
            out.append(f"{what} step {j}: strategy changed but value did not")
    return out


def check_monotonicity(inst: Instance) -> list:
    """Inner values rise, outer values fall, and each strategy switch moves the value."""
    sol = inst.solution()
    g = inst.graph
    out = []
    for j, inner in enumerate(sol.trace):
        out += _monotone(inner, g, True, f"inner loop {j}")
    out += _monotone(sol.outer_values, g, False, "outer loop")
    return out


def check_residual(inst: Instance, cfg: AcceptanceConfig = AcceptanceConfig()) -> list:
    v = inst.solution().value
    problems = bellman_residual(v, inst.graph, cfg.residual_states, cfg.residual_actions, cfg.seed)
    return [f"{p.kind}: {p.detail}" for p in problems]


def check_playouts(inst: Instance, cfg: AcceptanceConfig = AcceptanceConfig()) -> list:
    """epsilon-optimal strategies keep their guarantee against the optimum and random opponents.

    Min's side: ``RT <= T(s) + epsilon``, and against the optimal Max the
    run stops within ``D(s)`` steps.  Max's side: ``RT >= T(s) - epsilon``;
    a run is cut as soon as that much time has passed, since its RT can
    then only be larger.  Runs against a random Min that hit the step cap
    before that are inconclusive and counted separately.
    """
    g, sol = inst.graph, inst.solution()
    v, eps, aut = sol.value, cfg.epsilon, inst.aut
    mu = concretize(g, v, sol.min_strategy, eps)
    chi = concretize(g, v, sol.max_strategy, eps)
    rng = random.Random(cfg.seed)
    cache: dict = {}
    out = []
    inconclusive = 0
    for _ in range(cfg.playout_starts):
        s = random_finite_state(v, g, rng)
        if s is None:
            break
        t, d = value_at(v, g, s)
        for k in range(cfg.playout_adversaries + 1):
            who = "optimal" if k == 0 else "random"
            opp = chi if k == 0 else RandomStrategy(aut, random.Random(rng.random()), cache)
            run = simulate(s, aut, mu, opp, d if k == 0 else cfg.playout_steps)
            if run.stop is None or run.rt > t + eps:
                out.append(f"min side from {s} vs {who}: RT={run.rt} after {len(run)} steps, "
                           f"value {t}, D={d}")
            opp = mu if k == 0 else RandomStrategy(aut, random.Random(rng.random()), cache)
            run = simulate(s, aut, opp, chi, cfg.playout_steps, horizon=t - eps)
            if run.stop is not None:
                if run.rt < t - eps:
                    out.append(f"max side from {s} vs {who}: RT={run.rt}, value {t}")
            elif not run.looped and run.elapsed < t - eps:
                inconclusive += 1
        if len(out) > 10:
            break
    inst.playout_inconclusive = inconclusive
    return out


def countdown_agrees(inst: Instance) -> bool:
    """Player 1 wins the countdown game iff the reduced game has finite value at the start."""
    cd = inst.countdown
    s0 = Configuration(inst.aut.location_index(f"n{cd.n0}"), (Fraction(0), Fraction(0)))
    finite = inst.solution().value.D[inst.graph.index[region_of(s0)]] != INF
    return finite == player1_wins(cd)


def value_at_representatives(inst: Instance) -> list:
    """``(T, D)`` at every region representative, for reporting."""
    v = inst.solution().value
    return [value_at(v, inst.graph, representative(r)) for r in inst.graph.regions]

