"""Command-line front end.

Exit codes: 0 success or yes, 1 no / invalid / mismatch, 2 usage or parse
error, 3 state budget or time limit exhausted.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from .decomposition import validate, width
from .dp import BudgetExceeded, SolveConfig, SolveStats, decide, treewidth
from .fvs import min_fvs
from .generate import fvn_planted, gnp
from .graph import Graph, members
from .oracle import OracleCapError, oracle_cap, oracle_treewidth
from .pace import ParseError, emit_gr, emit_td, parse_gr, parse_td

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path) as handle:
            return handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> Graph:
    try:
        return parse_gr(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _print_stats(stats: SolveStats, extra: dict) -> None:
    values = {
        "states": stats.states,
        "options": stats.options,
        "ltw_calls": stats.ltw_calls,
        "decide_calls": stats.decide_calls,
        "fvn": stats.fvn,
        "time": f"{stats.seconds:.3f}",
    }
    values.update(extra)
    for key, value in values.items():
        print(f"{key}={value}", file=sys.stderr)


def cmd_solve(args) -> int:
    g = _load_graph(args.file)
    stats = SolveStats()
    start = time.perf_counter()
    try:
        if args.k is None:
            cfg = SolveConfig(state_budget=args.budget, time_limit=args.time_limit)
            w, td = treewidth(g, cfg, stats)
            sys.stdout.write(emit_td(td, g))
            extra = {"width": w}
            code = EXIT_OK
        else:
            fvs = min_fvs(g).set
            stats.fvn = fvs.bit_count()
            deadline = None if args.time_limit is None else start + args.time_limit
            ok, td = decide(g, fvs, args.k, args.budget, stats, deadline)
            stats.seconds = time.perf_counter() - start
            if ok:
                sys.stdout.write("YES\n" + emit_td(td, g))
                code = EXIT_OK
            else:
                sys.stdout.write("NO\n")
                code = EXIT_NO
            extra = {"k": args.k}
    except BudgetExceeded as exc:
        print(f"limit reached: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    if args.stats:
        _print_stats(stats, extra)
    return code


def cmd_validate(args) -> int:
    g = _load_graph(args.graph)
    try:
        td, n = parse_td(_read(args.td))
    except ParseError as exc:
        raise UsageError(f"{args.td}: {exc}") from None
    problems = []
    if n != g.n:
        problems.append(f"header violation: decomposition is for {n} vertices, graph has {g.n}")
    problems.extend(validate(td, g).messages(base=1))
    if problems:
        for line in problems:
            print(line)
        return EXIT_NO
    print(f"valid width={width(td)}")
    return EXIT_OK


def cmd_fvs(args) -> int:
    g = _load_graph(args.file)
    result = min_fvs(g)
    print(result.size)
    print(" ".join(str(v + 1) for v in members(result.set)))
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = _load_graph(args.file)
    try:
        w, td = oracle_treewidth(g)
    except OracleCapError as exc:
        raise UsageError(str(exc)) from None
    print(f"c width {w}")
    sys.stdout.write(emit_td(td, g))
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.model == "gnp":
        if args.p is None:
            raise UsageError("gen --model gnp needs --p")
        g = gnp(args.n, args.p, args.seed)
    else:
        if args.fvn is None:
            raise UsageError("gen --model fvn-planted needs --fvn")
        try:
            g = fvn_planted(args.n, args.fvn, args.seed, args.p)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    sys.stdout.write(emit_gr(g))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.max_n > oracle_cap():
        raise UsageError(f"--max-n {args.max_n} exceeds the oracle cap {oracle_cap()}")
    mismatches = 0
    start = time.perf_counter()
    for trial in range(args.trials):
        rng = random.Random(args.seed + trial)
        n = rng.randint(1, args.max_n)
        g = gnp(n, rng.uniform(0.1, 0.8), rng.randrange(2**32))
        w, td = treewidth(g)
        expected, _ = oracle_treewidth(g)
        if w != expected or width(td) != w or not validate(td, g).ok:
            mismatches += 1
            print(f"mismatch trial={trial} n={n} solver={w} oracle={expected}")
            sys.stdout.write(emit_gr(g))
    print(f"trials={args.trials} mismatches={mismatches} seconds={time.perf_counter() - start:.2f}")
    return EXIT_NO if mismatches else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fvstw", description="Exact treewidth via feedback vertex sets.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="exact treewidth, or decide tw <= k with --k")
    p.add_argument("file")
    p.add_argument("--k", type=int)
    p.add_argument("--seed", type=int, default=0, help="accepted for interface symmetry; the solver is deterministic")
    p.add_argument("--budget", type=int, help="maximum number of memoized states per decision")
    p.add_argument("--time-limit", type=float, help="wall-clock limit in seconds")
    p.add_argument("--stats", action="store_true", help="print key=value statistics to stderr")
    p.set_defaults(run=cmd_solve)

    p = sub.add_parser("validate", help="check a .td file against a .gr file")
    p.add_argument("graph")
    p.add_argument("td")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("fvs", help="minimum feedback vertex set")
    p.add_argument("file")
    p.set_defaults(run=cmd_fvs)

    p = sub.add_parser("oracle", help="brute-force treewidth (small graphs only)")
    p.add_argument("file")
    p.set_defaults(run=cmd_oracle)

    p = sub.add_parser("gen", help="write a random .gr instance to stdout")
    p.add_argument("--model", choices=["gnp", "fvn-planted"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float)
    p.add_argument("--fvn", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("bench", help="differential run of the solver against the oracle")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.run(args)
    except UsageError as exc:
        print(f"fvstw: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
