"""Command-line front end.

Results go to stdout, timings and errors to stderr.  Exit status is 0 on
success, 1 on bad input and 2 on usage errors.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import Sequence

from .enumeration import END, QueryEnumeration
from .errors import TwinfoError
from .families import FAMILIES, make_family
from .graph import Graph, format_graph, parse_graph
from .logic import parse_formula
from .modelcheck import ModelChecker
from .query import QueryEngine
from .sequence import (ContractionSequence, format_contraction_sequence,
                       parse_contraction_sequence, validate)
from .calculus import TypeCalculus
from .vcdensity import stone_space, vc_density_report

BENCH_HELP = """bench CSV columns:
  n                  number of vertices
  build_seconds      query engine plus enumeration index build time
  query_seconds      mean time of one answer() call
  steps_per_output   enumeration steps over one full cycle divided by its length
"""


def _load(args) -> tuple[Graph, ContractionSequence]:
    g = parse_graph(Path(args.graph).read_text())
    cs = parse_contraction_sequence(Path(args.cs).read_text(), g)
    return g, cs


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _tuple(text: str, variables: Sequence[str]):
    """'x=3,y=7' as an assignment, or bare values in variable order."""
    if "=" in text:
        out = {}
        for item in text.replace(",", " ").split():
            name, _, val = item.partition("=")
            out[name] = int(val)
        return out
    return tuple(_ints(text))


def _show(variables: Sequence[str], w: Sequence[int]) -> str:
    return " ".join(f"{x}={v}" for x, v in zip(variables, w))


def cmd_validate(args) -> int:
    g, cs = _load(args)
    print(f"width {validate(g, cs)}")
    return 0


def cmd_check(args) -> int:
    g, cs = _load(args)
    phi = parse_formula(args.formula)
    t0 = time.perf_counter()
    result = ModelChecker(g, cs, phi.rank()).check(phi)
    print("true" if result else "false")
    print(f"time {time.perf_counter() - t0:.4f}s", file=sys.stderr)
    return 0


def cmd_query(args) -> int:
    g, cs = _load(args)
    engine = QueryEngine(g, cs, parse_formula(args.formula), with_regions=False)
    if args.tuples_file:
        for line in Path(args.tuples_file).read_text().splitlines():
            if line.strip() and not line.lstrip().startswith("#"):
                print(1 if engine.answer(_tuple(line, engine.variables)) else 0)
    else:
        print("true" if engine.answer(_tuple(args.tuple, engine.variables)) else "false")
    return 0


def cmd_enumerate(args) -> int:
    g, cs = _load(args)
    engine = QueryEngine(g, cs, parse_formula(args.formula), with_regions=False)
    e = QueryEnumeration(engine).enumerator
    count = 0
    while args.limit is None or count < args.limit:
        w = e.next()
        if w is END:
            break
        print(_show(engine.variables, w))
        count += 1
    return 0


def cmd_stone(args) -> int:
    g, cs = _load(args)
    validate(g, cs)
    xvars = args.x.split(",") if args.x else None
    space = stone_space(g, _ints(args.A), parse_formula(args.formula), xvars)
    print(f"size {len(space)}")
    for trace, b in sorted(space.traces.items(), key=lambda kv: kv[1]):
        members = " ".join(",".join(map(str, a)) for a in sorted(trace))
        print(f"{_show(space.yvars, b)}: {{{members}}}")
    return 0


def cmd_vcdensity(args) -> int:
    phi = parse_formula(args.formula)
    xvars = args.x.split(",") if args.x else None
    report = vc_density_report(lambda n: make_family(args.family, n, args.seed)[0],
                               args.fraction, phi, _ints(args.sizes), xvars)
    print(report.csv())
    return 0


def cmd_types(args) -> int:
    g, cs = _load(args)
    validate(g, cs)
    calc = TypeCalculus(g, cs, args.rank)
    print("part,time,rank,size")
    for k, hist in enumerate(calc.universes):
        for part in sorted(hist.times):
            if args.part is not None and part != args.part:
                continue
            for t, uni in zip(hist.times[part], hist.values[part]):
                print(f"{part},{t},{k},{len(uni)}")
    return 0


def cmd_gen(args) -> int:
    g, cs = make_family(args.family, args.n, args.seed)
    Path(args.out_graph).write_text(format_graph(g))
    Path(args.out_cs).write_text(format_contraction_sequence(cs))
    print(f"width {validate(g, cs)}", file=sys.stderr)
    return 0


def cmd_bench(args) -> int:
    phi = parse_formula(args.formula)
    print("n,build_seconds,query_seconds,steps_per_output")
    for n in _ints(args.sizes):
        g, cs = make_family(args.family, n, args.seed)
        t0 = time.perf_counter()
        engine = QueryEngine(g, cs, phi, with_regions=False)
        enum = QueryEnumeration(engine)
        build = time.perf_counter() - t0
        probes = [tuple((i * 7919 + j * 104729) % n + 1 for j in range(engine.m))
                  for i in range(args.queries)]
        t0 = time.perf_counter()
        for w in probes:
            engine.answer(w)
        per_query = (time.perf_counter() - t0) / max(1, len(probes))
        before = enum.counter.steps
        outputs = sum(1 for _ in iter(enum.enumerator.next, END))
        steps = (enum.counter.steps - before) / max(1, outputs)
        print(f"{n},{build:.6f},{per_query:.8f},{steps:.4f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twinfo", description="First-order queries over contraction sequences.")
    sub = p.add_subparsers(dest="command", required=True)

    def io(sp):
        sp.add_argument("--graph", required=True, help="graph file (.gr)")
        sp.add_argument("--cs", required=True, help="contraction sequence file (.cs)")

    sp = sub.add_parser("validate", help="replay a sequence and print its width")
    io(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("check", help="decide a sentence")
    io(sp)
    sp.add_argument("--formula", required=True)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("query", help="answer phi(w) for given tuples")
    io(sp)
    sp.add_argument("--formula", required=True)
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--tuple", help="x=3,y=7")
    grp.add_argument("--tuples-file", help="one tuple per line; prints 0/1 lines")
    sp.set_defaults(func=cmd_query)

    sp = sub.add_parser("enumerate", help="list phi(G), one tuple per line")
    io(sp)
    sp.add_argument("--formula", required=True)
    sp.add_argument("--limit", type=int)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("stone", help="print the traces of phi on A")
    io(sp)
    sp.add_argument("--formula", required=True)
    sp.add_argument("--A", required=True, help="comma-separated vertices")
    sp.add_argument("--x", help="comma-separated variables ranging over A (default: the first free one)")
    sp.set_defaults(func=cmd_stone)

    sp = sub.add_parser("vcdensity", help="stone space sizes as CSV with a fitted exponent")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    sp.add_argument("--formula", required=True)
    sp.add_argument("--fraction", type=float, default=0.5, help="A is the first ceil(fraction*n) vertices")
    sp.add_argument("--x", help="comma-separated variables ranging over A")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_vcdensity)

    sp = sub.add_parser("types", help="universe sizes per part, time and rank as CSV")
    io(sp)
    sp.add_argument("--rank", type=int, default=1)
    sp.add_argument("--part", type=int)
    sp.set_defaults(func=cmd_types)

    sp = sub.add_parser("gen", help="write a family member and its sequence")
    sp.add_argument("--family", choices=FAMILIES, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out-graph", required=True)
    sp.add_argument("--out-cs", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("bench", help="timing CSV", epilog=BENCH_HELP,
                        formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("--family", choices=FAMILIES, default="path")
    sp.add_argument("--sizes", required=True)
    sp.add_argument("--formula", default="E x y")
    sp.add_argument("--queries", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_bench)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (TwinfoError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
