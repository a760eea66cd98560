"""Reachability-time games on timed automata, solved exactly on the timed region graph."""

from .automaton import (
    Action,
    Atom,
    Configuration,
    Constraint,
    Player,
    TimedAction,
    TimedAutomatonGame,
    Zone,
    delay,
    discrete_succ,
    timed_succ,
    validate,
)
from .graph import build, classify, restrict
from .regions import Region, enumerate_regions, region_of
from .solver import solve_minmax, value_iteration_oracle, verify_opt

__version__ = "0.1.0"
