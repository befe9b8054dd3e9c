"""Carry an even T1 chain through graph compositions and certify the results.

The chain-bearing factor is a cylinder P_k x C_n with its first diagonal
chain (even k only). Each composition attaches at vertices outside the
chain's neighbourhood graph, so the transported chain must still verify.
"""

import argparse
import sys

from magicchains.chain_structures import ChainRejected, verify_t1
from magicchains.graph_core import (
    TwoTerminalGraph,
    add_vertex,
    amalgamation,
    cycle_graph,
    cylindrical_grid,
    disjoint_union,
    parallel_composition,
    path_graph,
    rooted_product,
    series_composition,
)
from magicchains.grid_constructions import construct_t2
from magicchains.io import export_dot
from magicchains.magic_solver import certify_ndm
from magicchains.nbh_sequences import nsg


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("k", type=int, nargs="?", default=2, help="rows of the factor (even)")
    ap.add_argument("n", type=int, nargs="?", default=5, help="columns of the factor")
    ap.add_argument("--dot", metavar="DIR", help="write one highlighted DOT file per composite")
    args = ap.parse_args(argv)
    if args.k % 2:
        ap.error("k must be even so the diagonal chain has even length")

    f = cylindrical_grid(args.k, args.n)
    centers = construct_t2(args.k, args.n)[0].centers
    outside = sorted(set(range(f.n)) - nsg(f, centers).vertices)
    if len(outside) < 2:
        ap.error("the factor needs two vertices outside the chain's neighbourhood graph")
    a, b = outside[:2]
    ident = tuple(range(f.n))
    tt = TwoTerminalGraph(f, a, b)
    p3 = TwoTerminalGraph(path_graph(3), 0, 2)

    cases = [("union", disjoint_union(f, cycle_graph(5)), ident)]
    comp = amalgamation([(f, a), (cycle_graph(4), 0)])
    cases.append(("amalgamation", comp.graph, comp.maps[0]))
    cases.append(("supergraph", add_vertex(f, [a, b]), ident))
    comp = series_composition(tt, p3)
    cases.append(("series", comp.graph, comp.maps[0]))
    comp = parallel_composition(tt, p3)
    cases.append(("parallel", comp.graph, comp.maps[0]))
    comp = rooted_product(path_graph(3), f, a)
    cases.append(("rooted", comp.graph, comp.maps[1]))

    print(f"factor P{args.k} x C{args.n}, chain centers {list(centers)}, attach at {a}, {b}")
    failed = 0
    for name, g, m in cases:
        moved = [m[v] for v in centers]
        try:
            verify_t1(g, moved)
            status = "chain ok"
        except ChainRejected as e:
            status = f"chain rejected ({e.reason})"
            failed += 1
        cert = certify_ndm(g, oracle_cap=0)
        print(f"{name:13s} n={g.n:3d}  {status:24s} certificate: {type(cert).__name__ if cert else 'none'}")
        if args.dot:
            with open(f"{args.dot}/{name}.dot", "w") as fh:
                fh.write(export_dot(g, [moved], name=name))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
