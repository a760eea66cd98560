"""Play epsilon-optimal strategies against optimal and random opponents on the corpus."""

import argparse
from fractions import Fraction

from rtgames.experiments import AcceptanceConfig, check_playouts, full_corpus, hand_corpus


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--epsilon", type=Fraction, default=Fraction(1, 100))
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--adversaries", type=int, default=20)
    p.add_argument("--hand-only", action="store_true")
    args = p.parse_args()
    cfg = AcceptanceConfig(epsilon=args.epsilon, playout_starts=args.starts,
                           playout_adversaries=args.adversaries)
    corpus = hand_corpus(cfg) if args.hand_only else full_corpus(cfg)
    failed = 0
    for inst in corpus:
        problems = check_playouts(inst, cfg)
        failed += bool(problems)
        print(f"{inst.name}: {'ok' if not problems else 'FAIL'} "
              f"({inst.playout_inconclusive} inconclusive)")
        for line in problems[:3]:
            print("   ", line)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
