"""Compare the countdown solver with the reduced timed game on seeded random games."""

import argparse

from rtgames.countdown import player1_wins, serialize_countdown
from rtgames.experiments import AcceptanceConfig, countdown_agrees, countdown_corpus


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--seeds", type=int, default=50)
    p.add_argument("--show", action="store_true", help="print each game")
    args = p.parse_args()
    cfg = AcceptanceConfig(countdown_seeds=tuple(range(args.seeds)))
    bad = 0
    for inst in countdown_corpus(cfg):
        ok = countdown_agrees(inst)
        bad += not ok
        winner = "player 1" if player1_wins(inst.countdown) else "player 2"
        print(f"{inst.name}: {len(inst.graph)} regions, {winner} wins, {'agree' if ok else 'DISAGREE'}")
        if args.show:
            print(serialize_countdown(inst.countdown))
    print(f"{args.seeds - bad}/{args.seeds} agree")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
