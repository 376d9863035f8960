"""Command-line front end: ``degpart <command> ...``.

Exit codes: 0 success, 1 negative answer, 2 usage or input error,
3 oracle budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from .brooks import PreconditionError, degenerate_partition, find_eligible_pair
from .counter import OpCounter
from .degeneracy import (PartitionError, PartitionSpec, degeneracy_ordering, parse_partition,
                         serialize_partition, validate_partition)
from .gadgets import GadgetError, GadgetMap, build_instance, decode_partition, extend_assignment
from .graph import (GraphError, block_cut_tree, named_graph, parse_graph, random_regular,
                    serialize_graph)
from .oracle import BudgetExceeded, SearchBudget, find_partition_bruteforce
from .sat import (CnfError, RSatInstance, parse_assignment, parse_cnf, reduce_to_rsat,
                  serialize_assignment, serialize_cnf)

OK, NEGATIVE, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _spec(text: str) -> PartitionSpec:
    try:
        return PartitionSpec.parse(text)
    except (ValueError, PartitionError) as exc:
        raise UsageError(f"bad spec {text!r}: {exc}") from None


def _rsat(path: str) -> RSatInstance:
    f = parse_cnf(_read(path))
    return RSatInstance(f.num_vars, f.clauses)


# ---------------------------------------------------------------------------
# commands


def cmd_partition(args) -> int:
    g = parse_graph(_read(args.graph))
    counter = OpCounter()
    part = degenerate_partition(g, _spec(args.spec), counter)
    text = serialize_partition(part)
    if args.counters:
        text += f"c ops {counter.total}\n"
    _emit(text, args.out)
    return OK


def cmd_validate(args) -> int:
    g = parse_graph(_read(args.graph))
    part = parse_partition(_read(args.partition), g.n)
    report = validate_partition(g, part)
    if report.ok:
        print("valid")
        return OK
    for c, core in sorted(report.failing.items()):
        print(f"class {c + 1} core " + " ".join(str(v + 1) for v in sorted(core)))
    return NEGATIVE


def cmd_degeneracy(args) -> int:
    g = parse_graph(_read(args.graph))
    order, d = degeneracy_ordering(g)
    print(f"degeneracy {d}")
    print("order " + " ".join(str(v + 1) for v in order))
    return OK


def cmd_blocks(args) -> int:
    g = parse_graph(_read(args.graph))
    dec = block_cut_tree(g)
    print("cut " + " ".join(str(v + 1) for v in sorted(dec.cut_vertices)))
    for block in dec.blocks:
        print("b " + " ".join(str(v + 1) for v in sorted(block)))
    return OK


def cmd_eligible_pair(args) -> int:
    g = parse_graph(_read(args.graph))
    pair = find_eligible_pair(g)
    print(f"{pair.x + 1} {pair.y + 1}")
    return OK


def cmd_reduce(args) -> int:
    inst, origin = reduce_to_rsat(parse_cnf(_read(args.cnf)))
    notes = [f"origin {y} " + " ".join(map(str, copies)) for y, copies in origin.items()]
    _emit(serialize_cnf(inst, notes), args.out)
    return OK


def cmd_gadget(args) -> int:
    g, gmap = build_instance(_rsat(args.cnf), args.k, args.target)
    Path(args.out + ".col").write_text(serialize_graph(g), encoding="utf-8")
    Path(args.out + ".map").write_text(gmap.to_text(), encoding="utf-8")
    print(f"n {g.n} m {g.m}")
    return OK


def cmd_extend(args) -> int:
    part = extend_assignment(_rsat(args.cnf), parse_assignment(_read(args.assignment)),
                             args.k, args.case, args.p)
    _emit(serialize_partition(part), args.out)
    return OK


def cmd_decode(args) -> int:
    gmap = GadgetMap.from_text(_read(args.map))
    part = parse_partition(_read(args.partition), len(gmap.labels))
    _emit(serialize_assignment(decode_partition(gmap, part, args.case)), None)
    return OK


def cmd_oracle(args) -> int:
    g = parse_graph(_read(args.graph))
    budget = SearchBudget(node_limit=args.budget, time_limit=args.time_limit)
    result = find_partition_bruteforce(g, _spec(args.spec), budget)
    if isinstance(result, BudgetExceeded):
        print(f"unknown: budget exhausted after {result.nodes} nodes", file=sys.stderr)
        return BUDGET
    if result is None:
        print("no partition exists")
        return NEGATIVE
    _emit(serialize_partition(result), args.out)
    return OK


def cmd_gen(args) -> int:
    if args.name:
        g = named_graph(args.name)
    elif args.n is not None and args.k is not None:
        g = random_regular(args.n, args.k, args.seed)
    else:
        raise UsageError("gen needs --name or both --n and --k")
    _emit(serialize_graph(g), args.out)
    return OK


def cmd_bench(args) -> int:
    if args.family != "regular3":
        raise UsageError(f"unknown family {args.family!r}")
    try:
        sizes = [int(t) for t in args.sizes.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad sizes {args.sizes!r}") from None
    if not sizes:
        raise UsageError("no sizes given")
    if sizes != sorted(sizes):
        raise UsageError("sizes must be ascending")
    print("n,m,ops,wall_ms")
    for n in sizes:
        g = random_regular(n, 3, args.seed)
        counter = OpCounter()
        t0 = time.perf_counter()
        degenerate_partition(g, (1, 0), counter)
        wall = (time.perf_counter() - t0) * 1000
        print(f"{g.n},{g.m},{counter.total},{wall:.1f}", flush=True)
    return OK


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="degpart", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="partition a graph for a 0/1 (or non-regular) spec")
    p.add_argument("--graph", required=True)
    p.add_argument("--spec", required=True, help='comma-separated bounds, e.g. "1,0"')
    p.add_argument("--out")
    p.add_argument("--counters", action="store_true", help='append a "c ops <total>" line')
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("validate", help="check a partition file against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.set_defaults(func=cmd_validate)

    for name, func, text in (("degeneracy", cmd_degeneracy, "degeneracy and a degenerate ordering"),
                             ("blocks", cmd_blocks, "blocks and cut vertices"),
                             ("eligible-pair", cmd_eligible_pair, "an eligible pair (1-based)")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--graph", required=True)
        p.set_defaults(func=func)

    p = sub.add_parser("reduce", help="4-CNF to RSAT")
    p.add_argument("--cnf", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("gadget", help="build G or H; writes PREFIX.col and PREFIX.map")
    p.add_argument("--cnf", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--target", choices=("G", "H"), required=True)
    p.add_argument("--out", required=True, metavar="PREFIX")
    p.set_defaults(func=cmd_gadget)

    p = sub.add_parser("extend", help="satisfying assignment to a partition of the case's graph")
    p.add_argument("--cnf", required=True)
    p.add_argument("--assignment", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--case", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--p", type=int, help="colour p for case 3 (default 2)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("decode", help="partition of a gadget instance back to an assignment")
    p.add_argument("--map", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--case", type=int, choices=(1, 2, 3), required=True)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("oracle", help="exhaustive partition search (small graphs)")
    p.add_argument("--graph", required=True)
    p.add_argument("--spec", required=True)
    p.add_argument("--budget", type=int, default=20_000_000, help="node limit")
    p.add_argument("--time-limit", type=float, default=600.0, help="seconds")
    p.add_argument("--out")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="random regular or named graph")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--name")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="ops counter over growing random 3-regular graphs")
    p.add_argument("--family", default="regular3")
    p.add_argument("--sizes", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, GraphError, PartitionError, PreconditionError, CnfError, GadgetError,
            OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
