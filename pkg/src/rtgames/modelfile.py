"""Text formats: automaton model files, solution dumps and rationals.

Model files look like this::

    rtg-ta 1
    clocks x y
    k 2
    location l min inv x <= 2
    location g min
    edge l a g when x = 1 && y - x < 1 reset y
    final g

Blank lines and ``#`` comments are ignored.  ``inv``/``when`` take a
constraint: ``true`` or atoms ``c OP n`` / ``c - c' OP n`` joined by ``&&``.
A location without ``inv`` is unconstrained; ``final <loc>`` without
``when`` makes the whole location final.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .automaton import Atom, Configuration, Constraint, TimedAutomatonGame

HEADER = "rtg-ta 1"
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.'/]*$")
_ATOM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_.']*)\s*(?:-\s*([A-Za-z_][A-Za-z0-9_.']*)\s*)?"
                   r"(<=|>=|<|>|=)\s*(\d+)\s*$")


class ModelSyntaxError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if not re.fullmatch(r"\d+(/\d+)?", text):
        raise ValueError(f"not a non-negative rational: {text!r}")
    return Fraction(text)


def parse_constraint(text: str, clocks: dict, line: int = 0) -> Constraint:
    text = text.strip()
    if text == "true":
        return Constraint()
    atoms = []
    for part in text.split("&&"):
        m = _ATOM.match(part)
        if not m:
            raise ModelSyntaxError(line, f"malformed constraint atom {part.strip()!r}")
        c, other, op, n = m.groups()
        for name in (c, other):
            if name is not None and name not in clocks:
                raise ModelSyntaxError(line, f"unknown clock {name!r}")
        atoms.append(Atom(clocks[c], op, int(n), None if other is None else clocks[other]))
    return Constraint(tuple(atoms))


def format_constraint(c: Constraint, clocks) -> str:
    if not c.atoms:
        return "true"
    parts = []
    for a in c.atoms:
        lhs = clocks[a.clock] if a.other is None else f"{clocks[a.clock]} - {clocks[a.other]}"
        parts.append(f"{lhs} {a.op} {a.const}")
    return " && ".join(parts)


def _split_keyword(rest: str, keyword: str) -> tuple:
    """Split ``rest`` at the standalone word ``keyword``."""
    m = re.search(rf"(^|\s){keyword}(\s|$)", rest)
    if not m:
        return rest, None
    return rest[:m.start()], rest[m.end():]


def parse_model(text: str) -> TimedAutomatonGame:
    """Parse a model file; semantic checks are left to :func:`validate`."""
    clocks = None
    k = None
    locations = []
    loc_names = set()
    edges = []
    final = {}
    seen_header = False
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not seen_header:
            if line != HEADER:
                raise ModelSyntaxError(no, f"expected header {HEADER!r}")
            seen_header = True
            continue
        word, _, rest = line.partition(" ")
        rest = rest.strip()
        if word == "clocks":
            if clocks is not None:
                raise ModelSyntaxError(no, "clocks declared twice")
            names = rest.split()
            for n in names:
                if not _NAME.match(n):
                    raise ModelSyntaxError(no, f"bad clock name {n!r}")
            if len(set(names)) != len(names):
                raise ModelSyntaxError(no, "duplicate clock name")
            clocks = {n: i for i, n in enumerate(names)}
        elif word == "k":
            if k is not None:
                raise ModelSyntaxError(no, "k declared twice")
            if not rest.isdigit():
                raise ModelSyntaxError(no, f"k must be a natural number, got {rest!r}")
            k = int(rest)
        elif word in ("location", "edge", "final"):
            if clocks is None:
                raise ModelSyntaxError(no, f"{word} before clocks")
            if word == "location":
                head, inv = _split_keyword(rest, "inv")
                fields = head.split()
                if len(fields) != 2 or fields[1] not in ("min", "max") or not _NAME.match(fields[0]):
                    raise ModelSyntaxError(no, "expected: location <name> <min|max> [inv <constraint>]")
                if fields[0] in loc_names:
                    raise ModelSyntaxError(no, f"duplicate location {fields[0]!r}")
                loc_names.add(fields[0])
                c = Constraint() if inv is None else parse_constraint(inv, clocks, no)
                locations.append((fields[0], fields[1], c))
            elif word == "edge":
                head, tail = _split_keyword(rest, "reset")
                resets = [] if tail is None else tail.split()
                for r in resets:
                    if r not in clocks:
                        raise ModelSyntaxError(no, f"unknown clock {r!r} in reset")
                head, guard = _split_keyword(head, "when")
                fields = head.split()
                if len(fields) != 3:
                    raise ModelSyntaxError(no, "expected: edge <src> <label> <tgt> [when <c>] [reset <clocks>]")
                for loc in (fields[0], fields[2]):
                    if loc not in loc_names:
                        raise ModelSyntaxError(no, f"unknown location {loc!r}")
                g = Constraint() if guard is None else parse_constraint(guard, clocks, no)
                edges.append((fields[0], fields[1], g, resets, fields[2]))
            else:
                head, cond = _split_keyword(rest, "when")
                name = head.strip()
                if name not in loc_names:
                    raise ModelSyntaxError(no, f"unknown location {name!r}")
                if name in final:
                    raise ModelSyntaxError(no, f"final declared twice for {name!r}")
                final[name] = Constraint() if cond is None else parse_constraint(cond, clocks, no)
        else:
            raise ModelSyntaxError(no, f"unknown keyword {word!r}")
    if not seen_header:
        raise ModelSyntaxError(1, "empty model")
    if clocks is None or k is None:
        raise ModelSyntaxError(no, "missing clocks or k")
    return TimedAutomatonGame.from_edges(list(clocks), k, locations, edges, final)


def serialize_model(aut: TimedAutomatonGame) -> str:
    """Canonical text for an automaton in edge form (each action enabled at one location)."""
    cl = aut.clocks
    lines = [HEADER, "clocks " + " ".join(cl), f"k {aut.k}"]
    for i, name in enumerate(aut.locations):
        inv = aut.states.at(i)
        line = f"location {name} {aut.owner(i).value}"
        if inv is None:
            raise ValueError(f"location {name} has no state zone; not expressible in edge form")
        if inv.atoms:
            line += " inv " + format_constraint(inv, cl)
        lines.append(line)
    for a in aut.actions:
        srcs = a.enabled.locations()
        if len(srcs) != 1:
            raise ValueError(f"action {a.name} is enabled at {len(srcs)} locations")
        src = srcs[0]
        line = f"edge {aut.locations[src]} {a.name} {aut.locations[a.target[src]]}"
        guard = a.enabled.at(src)
        if guard.atoms:
            line += " when " + format_constraint(guard, cl)
        if a.resets:
            line += " reset " + " ".join(cl[c] for c in sorted(a.resets))
        lines.append(line)
    for i in aut.final.locations():
        c = aut.final.at(i)
        line = f"final {aut.locations[i]}"
        if c.atoms:
            line += " when " + format_constraint(c, cl)
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_configuration(text: str, aut: TimedAutomatonGame) -> Configuration:
    """``loc,v1,v2,...`` with one rational per clock in declaration order."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != aut.n_clocks + 1:
        raise ValueError(f"expected a location and {aut.n_clocks} clock values")
    return Configuration(aut.location_index(parts[0]), tuple(parse_rational(p) for p in parts[1:]))


def format_configuration(s: Configuration, aut: TimedAutomatonGame) -> str:
    vals = ",".join(format_rational(v) for v in s.valuation)
    return f"{aut.locations[s.location]},({vals})"


def _format_choice(g, strategy: dict, i: int) -> str:
    from .graph import format_move

    m = strategy.get(i)
    return "-" if m is None else format_move(m, g, with_source=False)


def format_solution(g, value, min_strategy: dict = None, max_strategy: dict = None) -> str:
    """One line per region: ``<region> | T=.. | D=.. | min=<move|-> | max=<move|->``."""
    from .regions import format_region
    from .simple import format_natinf, format_simple

    lines = []
    for i, r in enumerate(g.regions):
        lines.append(" | ".join([
            format_region(r, g.aut),
            "T=" + format_simple(value.T[i], g.aut.clocks),
            "D=" + format_natinf(value.D[i]),
            "min=" + _format_choice(g, min_strategy or {}, i),
            "max=" + _format_choice(g, max_strategy or {}, i),
        ]))
    return "\n".join(lines) + "\n"


def parse_solution(text: str, g):
    """Read T and D back from a solution dump; the strategy columns are ignored."""
    from .regions import parse_region
    from .simple import parse_natinf, parse_simple
    from .solver import RegionalValue

    n = len(g)
    T, D = [None] * n, [None] * n
    for no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        cols = [c.strip() for c in line.split(" | ")]
        if len(cols) != 5 or not cols[1].startswith("T=") or not cols[2].startswith("D="):
            raise ModelSyntaxError(no, "expected '<region> | T=.. | D=.. | min=.. | max=..'")
        try:
            r = parse_region(cols[0], g.aut)
            i = g.index[r]
            T[i] = parse_simple(cols[1][2:], g.aut.clocks)
            D[i] = parse_natinf(cols[2][2:])
        except (KeyError, ValueError) as e:
            raise ModelSyntaxError(no, str(e)) from None
    missing = [i for i in range(n) if T[i] is None]
    if missing:
        raise ModelSyntaxError(0, f"{len(missing)} regions have no value")
    return RegionalValue(T, D)
