"""Command-line interface: ``rtgames <command> ...``.

Every command exits 0 iff it found no violations; violations are printed as
one JSON document on stdout.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .automaton import Player, validate
from .countdown import gen_random, reduce_to_ta, serialize_countdown
from .graph import build, dump
from .modelfile import (
    ModelSyntaxError,
    format_configuration,
    format_rational,
    format_solution,
    parse_configuration,
    parse_model,
    parse_rational,
    parse_solution,
    serialize_model,
)
from .play import RandomStrategy, concretize, simulate
from .regions import format_region
from .solver import MODES, same_values, solve_minmax, value_iteration_oracle, verify_opt


def _report(violations) -> int:
    if not violations:
        return 0
    print(json.dumps({"violations": [v.as_dict() for v in violations]}, indent=2))
    return 1


def _load(path: str):
    with open(path) as f:
        aut = parse_model(f.read())
    return aut, validate(aut)


def cmd_solve(args) -> int:
    aut, problems = _load(args.model)
    if problems:
        return _report(problems)
    g = build(aut)
    sol = solve_minmax(g)
    sys.stdout.write(format_solution(g, sol.value, sol.min_strategy, sol.max_strategy))
    if args.stats:
        print(f"regions={len(g)} moves={g.n_moves()} outer={sol.outer_iterations} "
              f"inner={','.join(map(str, sol.inner_iterations))}", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    aut, problems = _load(args.model)
    if problems:
        return _report(problems)
    g = build(aut)
    with open(args.solution) as f:
        value = parse_solution(f.read(), g)
    problems = verify_opt(value, g, args.mode)
    if not problems:
        print("OK")
    return _report(problems)


def cmd_oracle(args) -> int:
    aut, problems = _load(args.model)
    if problems:
        return _report(problems)
    g = build(aut)
    solved = solve_minmax(g).value
    oracle = value_iteration_oracle(g)
    diff = same_values(solved, oracle, g)
    if not diff:
        print("IDENTICAL")
        return 0
    print("DIFFERENT")
    for i in diff:
        print(format_region(g.regions[i], aut))
    return 1


def cmd_simulate(args) -> int:
    aut, problems = _load(args.model)
    if problems:
        return _report(problems)
    g = build(aut)
    sol = solve_minmax(g)
    eps = parse_rational(args.epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    sides = {
        Player.MIN: concretize(g, sol.value, sol.min_strategy, eps),
        Player.MAX: concretize(g, sol.value, sol.max_strategy, eps),
    }
    if args.adversary == "random":
        sides[Player(args.adversary_side)] = RandomStrategy(aut, random.Random(args.seed))
    s0 = parse_configuration(args.start, aut)
    run = simulate(s0, aut, sides[Player.MIN], sides[Player.MAX], args.steps)
    for i, (tau, s) in enumerate(zip(run.actions, run.states[1:]), start=1):
        owner = aut.owner(run.states[i - 1].location).value
        print(f"{i} | {owner} | {aut.actions[tau.action].name} | t={format_rational(tau.delay)} "
              f"| state={format_configuration(s, aut)}")
    rt = "inf" if run.stop is None else format_rational(run.rt)
    print(f"RT={rt} stop={'none' if run.stop is None else run.stop}")
    return 0


def cmd_regions(args) -> int:
    aut, problems = _load(args.model)
    if problems and not args.force:
        return _report(problems)
    from .regions import enumerate_regions

    regions = enumerate_regions(aut)
    if args.list:
        for r in regions:
            print(format_region(r, aut))
    else:
        print(f"{len(regions)} regions")
    return 0


def cmd_graph(args) -> int:
    aut, problems = _load(args.model)
    if problems:
        return _report(problems)
    sys.stdout.write(dump(build(aut)))
    return 0


def cmd_gen_countdown(args) -> int:
    g = gen_random(args.seed, args.nodes, args.b0, args.max_weight)
    if args.reduce:
        sys.stdout.write(serialize_model(reduce_to_ta(g)))
    else:
        sys.stdout.write(serialize_countdown(g))
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rtgames", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve by strategy improvement and dump the regional value")
    s.add_argument("model")
    s.add_argument("--stats", action="store_true", help="print sizes and iteration counts to stderr")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("verify", help="re-check a solution dump against the optimality equations")
    s.add_argument("model")
    s.add_argument("solution")
    s.add_argument("--mode", choices=MODES, default="MinMax")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="compare strategy improvement with value iteration")
    s.add_argument("model")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("simulate", help="play epsilon-optimal strategies from a start state")
    s.add_argument("model")
    s.add_argument("--start", required=True, help="loc,v1,v2,... (rationals p or p/q)")
    s.add_argument("--epsilon", default="1/100")
    s.add_argument("--adversary", choices=("optimal", "random"), default="optimal")
    s.add_argument("--adversary-side", choices=("min", "max"), default="max")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--steps", type=int, default=1000, help="step bound")
    s.set_defaults(func=cmd_simulate)

    s = sub.add_parser("regions", help="count or list the regions of the state zone")
    s.add_argument("model")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--count", action="store_true", help="(default)")
    g.add_argument("--list", action="store_true")
    s.add_argument("--force", action="store_true", help="skip well-formedness checks")
    s.set_defaults(func=cmd_regions)

    s = sub.add_parser("graph", help="dump the timed region graph, one move per line")
    s.add_argument("model")
    s.set_defaults(func=cmd_graph)

    s = sub.add_parser("gen-countdown", help="generate a random countdown game")
    s.add_argument("--nodes", type=int)
    s.add_argument("--b0", type=int)
    s.add_argument("--max-weight", type=int, default=4)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--reduce", action="store_true", help="emit the reduced automaton instead")
    s.set_defaults(func=cmd_gen_countdown)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ModelSyntaxError, ValueError, OSError) as e:
        print(json.dumps({"error": str(e)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
