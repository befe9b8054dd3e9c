"""Command-line front end.

Exit codes: 0 conclusive, 2 inconclusive (budget ran out or no certificate),
1 error or rejected witness.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from . import io
from .chain_structures import ChainRejected, ChainT1, find_even_t1, find_t1, find_t2, verify_t1, verify_t2
from .graph_core import (
    Graph,
    GraphError,
    GridCoord,
    complete_graph,
    cycle_graph,
    cylindrical_grid,
    empty_graph,
    grid_graph,
    path_graph,
    star_graph,
)
from .grid_constructions import construct_t2
from .magic_solver import DEFAULT_BUDGET, DEFAULT_ORACLE_CAP, MagicResult, certify_ndm, solve, solve_exhaustive
from .nbh_sequences import SequenceError, classify, family_from_centers, is_connected_sequence, nsg

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2

GENERATORS = {
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "complete": (complete_graph, 1),
    "empty": (empty_graph, 1),
    "star": (star_graph, 1),
    "cyl-grid": (cylindrical_grid, 2),
    "grid": (grid_graph, 2),
}


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _ids(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="node expansions for searches")
    common.add_argument("--oracle-cap", type=_nonneg, default=DEFAULT_ORACLE_CAP, help="max order for exhaustive search")
    common.add_argument("--deterministic", action=argparse.BooleanOptionalAction, default=True)
    common.add_argument("--format", choices=("json", "text", "dot"), default="json")
    common.add_argument("--out", default="-", help="output path (default stdout)")
    common.add_argument("--input", default="-", help="input graph/family path (default stdin)")

    p = _Parser(prog="magicchains", description="Neighbourhood chains and distance magic labelings.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", parents=[common], help="generate a named graph")
    s.add_argument("name", choices=sorted(GENERATORS))
    s.add_argument("params", type=int, nargs="+")

    s = sub.add_parser("classify", parents=[common], help="classify a neighbourhood sequence")
    s.add_argument("--centers", type=_ids, help="read a graph and use these centers' neighbourhoods")

    s = sub.add_parser("nsg", parents=[common], help="neighbourhood sequence graph of given centers")
    s.add_argument("--centers", type=_ids, required=True)

    s = sub.add_parser("find-t1", parents=[common], help="search Type-1 chains")
    s.add_argument("--length", type=int, help="chain length (default: first even length found)")

    s = sub.add_parser("verify-t1", parents=[common], help="verify a Type-1 chain")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--centers", type=_ids)
    g.add_argument("--witness", help="JSON file containing a chain witness")

    s = sub.add_parser("find-t2", parents=[common], help="search a Type-2 pair")
    s.add_argument("--length", type=int, required=True)

    s = sub.add_parser("verify-t2", parents=[common], help="verify a Type-2 pair")
    s.add_argument("--first", type=_ids)
    s.add_argument("--second", type=_ids)
    s.add_argument("--witness", help="JSON file containing a pair witness")

    s = sub.add_parser("grid-t2", parents=[common], help="Type-2 pair in a cylindrical grid")
    s.add_argument("dims", type=int, nargs="*", metavar="K N", help="grid size (default: read grid from input)")
    s.add_argument("--verify", action="store_true", help="re-verify the pair on the grid")

    s = sub.add_parser("solve", parents=[common], help="decide distance magicness")
    s.add_argument("--method", choices=("backtrack", "exhaustive"), default="backtrack")

    sub.add_parser("certify", parents=[common], help="certificate of non-magicness")

    s = sub.add_parser("export", parents=[common], help="export a graph as DOT or JSON")
    s.add_argument("--highlight", type=_ids, action="append", default=[], help="centers to highlight (repeatable)")
    return p


# ----------------------------------------------------------------- helpers


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _graph(args) -> Graph:
    return io.read_graph(_read_input(args.input))


def _named_chain(g: Graph, c: ChainT1) -> dict:
    d = c.to_dict()
    d["names"] = {
        "centers": [g.label(v) for v in c.centers],
        "v_first": g.label(c.v_first),
        "v_last": g.label(c.v_last),
    }
    return d


def _named_t2(g: Graph, pair) -> dict:
    d = pair.to_dict()
    d["first"] = _named_chain(g, pair.first)
    d["second"] = _named_chain(g, pair.second)
    w = d["witnesses"]
    d["names"] = {
        "start": [g.label(v) for v in w["start"]],
        "end": [g.label(v) for v in w["end"]],
        "interior": [[g.label(v) for v in s] for s in w["interior"]],
    }
    return d


def _find_key(obj: Any, keys: Sequence[str]):
    """Depth-first search for the first dict holding all ``keys``."""
    if isinstance(obj, dict):
        if all(k in obj for k in keys):
            return obj
        for v in obj.values():
            hit = _find_key(v, keys)
            if hit is not None:
                return hit
    elif isinstance(obj, list):
        for v in obj:
            hit = _find_key(v, keys)
            if hit is not None:
                return hit
    return None


def _load_witness(path: str, keys: Sequence[str]) -> dict:
    try:
        obj = json.loads(_read_input(path))
    except json.JSONDecodeError as e:
        raise io.ParseError(f"{path}: line {e.lineno}: invalid JSON ({e.msg})") from None
    hit = _find_key(obj, keys)
    if hit is None:
        raise io.ParseError(f"{path}: no object with field(s) {', '.join(keys)}")
    return hit


def _text(obj: Any, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(f"{pad}- {_scalar(x)}" if not isinstance(x, dict) else _text(x, indent) for x in obj)
    return pad + _scalar(obj)


def _scalar(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(v[k])}" for k in sorted(v)) + "}"
    if v is None:
        return "-"
    return str(v).lower() if isinstance(v, bool) else str(v)


def _emit(args, payload: Any, dot: str | None = None) -> None:
    if args.format == "dot":
        if dot is None:
            raise CliError(f"--format dot is not supported by '{args.command}'")
        text = dot
    elif args.format == "text":
        text = _text(payload) + "\n"
    else:
        text = io.dumps(payload)
    _write(args, text)


def _write(args, text: str) -> None:
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _workers() -> int:
    raw = os.environ.get("MAGICCHAINS_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise CliError(f"MAGICCHAINS_THREADS must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------- commands


def cmd_gen(args) -> int:
    fn, arity = GENERATORS[args.name]
    if len(args.params) != arity:
        raise CliError(f"'{args.name}' takes {arity} parameter(s), got {len(args.params)}")
    g = fn(*args.params)
    if args.format == "text":
        lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
        _write(args, "\n".join(lines) + "\n")
        return EXIT_OK
    _emit(args, io.graph_to_json(g), io.export_dot(g))
    return EXIT_OK


def cmd_classify(args) -> int:
    raw = _read_input(args.input)
    if args.centers is not None:
        g = io.read_graph(raw)
        fam = family_from_centers(g, args.centers)
    else:
        try:
            fam = io.family_from_json(json.loads(raw))
        except json.JSONDecodeError as e:
            raise io.ParseError(f"line {e.lineno}: invalid JSON ({e.msg})") from None
    cls = classify(fam)
    conn = is_connected_sequence(fam)
    witness = dict(cls.witness)
    witness["pair"] = list(witness["pair"])
    out = {
        "kind": cls.name,
        "walk": cls.kind >= 1,
        "trail": cls.kind >= 2,
        "chain": cls.kind >= 3,
        "cycle": cls.kind >= 4,
        "witness": witness,
        "connected": conn.connected,
    }
    if conn.connected:
        out["path"] = list(conn.path)
    else:
        out["bipartition"] = [list(p) for p in conn.bipartition]
    _emit(args, out)
    return EXIT_OK


def cmd_nsg(args) -> int:
    g = _graph(args)
    h = nsg(g, args.centers)
    out = {
        "centers": list(h.centers),
        "vertices": sorted(h.vertices),
        "edges": sorted(list(e) for e in h.edges),
        "connected": h.is_connected(),
    }
    _emit(args, out, io.export_dot(g, [args.centers]))
    return EXIT_OK


def cmd_find_t1(args) -> int:
    g = _graph(args)
    if args.length is None:
        res = find_even_t1(g, args.budget)
    else:
        res = find_t1(g, args.length, args.budget)
    out = {
        "complete": res.complete,
        "expansions": res.expansions,
        "chains": [_named_chain(g, c) for c in res.chains],
    }
    _emit(args, out, io.export_dot(g, [res.chain.centers]) if res.chain else io.export_dot(g))
    if not res.complete:
        print("search budget exhausted; result is partial", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _rejected(args, e: ChainRejected) -> int:
    _emit(args, {"valid": False, "reason": e.reason, "witness": json.loads(json.dumps(e.witness, default=list))})
    return EXIT_ERROR


def cmd_verify_t1(args) -> int:
    g = _graph(args)
    centers = args.centers if args.centers is not None else _load_witness(args.witness, ["centers"])["centers"]
    try:
        c = verify_t1(g, centers)
    except ChainRejected as e:
        return _rejected(args, e)
    out = {"valid": True, "chain": _named_chain(g, c), "equal_nesting": list(c.equal_nesting)}
    _emit(args, out, io.export_dot(g, [c.centers]))
    return EXIT_OK


def cmd_find_t2(args) -> int:
    g = _graph(args)
    pair, complete = find_t2(g, args.length, args.budget)
    if pair is None:
        _emit(args, {"found": False, "complete": complete})
        return EXIT_OK if complete else EXIT_INCONCLUSIVE
    _emit(args, {"found": True, "complete": complete, "pair": _named_t2(g, pair)},
          io.export_dot(g, [pair.first.centers, pair.second.centers]))
    return EXIT_OK


def cmd_verify_t2(args) -> int:
    g = _graph(args)
    if args.witness:
        w = _load_witness(args.witness, ["first", "second"])
        c1, c2 = w["first"]["centers"], w["second"]["centers"]
    elif args.first is not None and args.second is not None:
        c1, c2 = args.first, args.second
    else:
        raise CliError("give --first and --second, or --witness")
    try:
        pair = verify_t2(g, c1, c2)
    except ChainRejected as e:
        return _rejected(args, e)
    _emit(args, {"valid": True, "pair": _named_t2(g, pair)}, io.export_dot(g, [pair.first.centers, pair.second.centers]))
    return EXIT_OK


def _grid_dims(g: Graph) -> tuple[int, int]:
    if not g.labels or not all(isinstance(x, GridCoord) for x in g.labels):
        raise CliError("input graph carries no u_i^(j) grid labels; pass K N explicitly")
    k = max(x.i for x in g.labels)
    n = max(x.j for x in g.labels)
    if g != cylindrical_grid(k, n):
        raise CliError(f"input graph is not the cylindrical grid P_{k} x C_{n}")
    return k, n


def cmd_grid_t2(args) -> int:
    if args.dims:
        if len(args.dims) != 2:
            raise CliError("grid-t2 takes K N or no dimensions")
        k, n = args.dims
        g = cylindrical_grid(k, n)
    else:
        g = _graph(args)
        k, n = _grid_dims(g)
    a, b = construct_t2(k, n)
    out: dict[str, Any] = {"k": k, "n": n, "first": {"centers": list(a.centers)}, "second": {"centers": list(b.centers)}}
    if args.verify:
        try:
            pair = verify_t2(g, a.centers, b.centers)
        except ChainRejected as e:
            return _rejected(args, e)
        out.update(_named_t2(g, pair))
        out["valid"] = True
    else:
        out["first"]["names"] = {"centers": [str(c) for c in a.coords]}
        out["second"]["names"] = {"centers": [str(c) for c in b.coords]}
    _emit(args, out, io.export_dot(g, [a.centers, b.centers]))
    return EXIT_OK


def cmd_solve(args) -> int:
    g = _graph(args)
    if args.method == "exhaustive":
        if g.n > args.oracle_cap:
            raise CliError(f"graph order {g.n} exceeds --oracle-cap {args.oracle_cap}")
        res: MagicResult = solve_exhaustive(g, args.oracle_cap)
    else:
        res = solve(g, deterministic=args.deterministic, workers=_workers())
    _emit(args, io.result_to_json(res))
    return EXIT_OK


def cmd_certify(args) -> int:
    g = _graph(args)
    stats: dict = {}
    cert = certify_ndm(g, args.budget, args.oracle_cap, stats)
    if cert is not None:
        out = {"verdict": "not_magic", "certificate": cert.to_dict(), "stats": stats}
        if "chain" in out["certificate"]:
            out["certificate"]["chain"] = _named_chain(g, cert.chain)
        _emit(args, out)
        return EXIT_OK
    if stats.get("magic"):
        _emit(args, {"verdict": "magic", "stats": stats})
        return EXIT_OK
    _emit(args, {"verdict": "inconclusive", "stats": stats})
    print("no certificate found; this is not a claim that the graph is distance magic", file=sys.stderr)
    return EXIT_INCONCLUSIVE


def cmd_export(args) -> int:
    g = _graph(args)
    if args.format == "json":
        _emit(args, io.graph_to_json(g))
    else:
        args.format = "dot"
        _emit(args, None, io.export_dot(g, args.highlight))
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "classify": cmd_classify,
    "nsg": cmd_nsg,
    "find-t1": cmd_find_t1,
    "verify-t1": cmd_verify_t1,
    "find-t2": cmd_find_t2,
    "verify-t2": cmd_verify_t2,
    "grid-t2": cmd_grid_t2,
    "solve": cmd_solve,
    "certify": cmd_certify,
    "export": cmd_export,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CliError, io.ParseError, GraphError, SequenceError, OSError, ValueError) as e:
        print(f"magicchains {args.command}: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
