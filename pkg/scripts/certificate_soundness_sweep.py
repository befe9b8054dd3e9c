"""Cross-check certify_ndm and the backtracking solver against brute force.

Draws seeded random graphs, asks certify_ndm for a certificate and checks
every certificate against the exhaustive oracle. Also compares the
backtracking verdict with the oracle on every graph.
"""

import argparse
import random
import sys
import time
from collections import Counter

from magicchains.graph_core import from_edge_list
from magicchains.magic_solver import certify_ndm, check_certificate, solve, solve_exhaustive


def random_graph(n: int, p: float, rng: random.Random):
    return from_edge_list(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--n-min", type=int, default=4)
    ap.add_argument("--n-max", type=int, default=9)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--oracle-cap", type=int, default=0, help="oracle cap handed to certify_ndm (0 keeps it structural)")
    args = ap.parse_args(argv)
    if not 1 <= args.n_min <= args.n_max <= 10:
        ap.error("need 1 <= n-min <= n-max <= 10 for the oracle")

    rng = random.Random(args.seed)
    kinds: Counter = Counter()
    magic = 0
    problems = []
    t0 = time.perf_counter()
    for idx in range(args.count):
        n = rng.randint(args.n_min, args.n_max)
        g = random_graph(n, rng.uniform(0.2, 0.8), rng)
        truth = solve_exhaustive(g)
        magic += truth.magic
        if solve(g).magic != truth.magic:
            problems.append((idx, "solver disagrees with oracle", g.edges()))
        cert = certify_ndm(g, oracle_cap=args.oracle_cap)
        kinds[type(cert).__name__ if cert else "none"] += 1
        if cert is not None and (truth.magic or not check_certificate(g, cert, oracle_cap=args.oracle_cap)):
            problems.append((idx, f"unsound {type(cert).__name__}", g.edges()))

    print(f"graphs: {args.count}  magic: {magic}  time: {time.perf_counter() - t0:.1f}s")
    for kind, c in sorted(kinds.items()):
        print(f"  {kind:14s} {c}")
    for p in problems:
        print("PROBLEM", *p)
    print("no counterexamples" if not problems else f"{len(problems)} counterexamples")
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main())
