"""Solve every corpus model and print sizes, iteration counts and timings."""

import argparse
import time

from rtgames.experiments import AcceptanceConfig, full_corpus, hand_corpus


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--hand-only", action="store_true", help="skip the reduced countdown games")
    args = p.parse_args()
    cfg = AcceptanceConfig()
    corpus = hand_corpus(cfg) if args.hand_only else full_corpus(cfg)
    print(f"{'instance':<26} {'clocks':>6} {'k':>2} {'regions':>7} {'moves':>6} "
          f"{'outer':>5} {'inner max':>9} {'seconds':>8}")
    for inst in corpus:
        start = time.perf_counter()
        sol = inst.solution()
        elapsed = time.perf_counter() - start
        g = inst.graph
        print(f"{inst.name:<26} {inst.aut.n_clocks:>6} {inst.aut.k:>2} {len(g):>7} {g.n_moves():>6} "
              f"{sol.outer_iterations:>5} {max(sol.inner_iterations):>9} {elapsed:>8.3f}")


if __name__ == "__main__":
    main()
