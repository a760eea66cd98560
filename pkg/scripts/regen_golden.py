"""Regenerate corpus/golden/<name>.solve and <name>.graph from the current code.

Run after an intentional change to the solver or the output formats, then
review the diff before committing.
"""

from pathlib import Path

from rtgames.graph import build, dump
from rtgames.modelfile import format_solution, parse_model
from rtgames.solver import solve_minmax

CORPUS = Path(__file__).resolve().parents[1] / "corpus"


def main():
    out = CORPUS / "golden"
    out.mkdir(exist_ok=True)
    for path in sorted(CORPUS.glob("*.rtg")):
        g = build(parse_model(path.read_text()))
        sol = solve_minmax(g)
        (out / f"{path.stem}.solve").write_text(
            format_solution(g, sol.value, sol.min_strategy, sol.max_strategy))
        (out / f"{path.stem}.graph").write_text(dump(g))
        print(f"{path.stem}: {len(g)} regions")


if __name__ == "__main__":
    main()
