"""Command-line frontend.

Subcommands:
  compute  one parameter point: invariants plus (C1)/(C2) verdicts
  sweep    grids of points, deterministic machine-readable reports
  bounds   run the bound-lemma registry
  group    query the group engine on a spec expression

Exit codes for compute/sweep: 0 all Verified, 2 some Inconclusive but none
Violated, 1 any Violated or internal error.  The brute-force cap is taken
from --cap, else the BLOCKINV_CAP environment variable, else 200000.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import ledger
from ._backend import default_cap
from .blocks import BlockParams
from .bounds import Verdict
from .groups import (
    GroupSpecError,
    GroupSpecSyntaxError,
    class_count,
    derived_class_count,
    derived_order,
    group_order,
    parse_group_spec,
    realize,
)
from .verify import SweepGrid, check_conjecture, default_grids, emit_report, exit_code, sweep


def _parse_values(text: str) -> list[int]:
    """`2..6` -> [2,...,6]; `3,6,9` -> [3,6,9]; `4` -> [4]."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(v) for v in text.split(",") if v]


def _parse_grid_block(text: str) -> SweepGrid:
    fields: dict = {}
    for token in text.replace(";", " ").split():
        if "=" not in token:
            raise ValueError(f"grid token {token!r} is not key=value")
        key, raw = token.split("=", 1)
        key = key.strip()
        if key in ("mode", "case"):
            fields[key] = raw.strip()
        elif key == "ell":
            fields[key] = int(raw)
        elif key in ("a", "atilde", "d", "w"):
            fields[key] = tuple(_parse_values(raw))
        else:
            raise ValueError(f"unknown grid key {key!r}")
    return SweepGrid(**fields)


def _load_grids(arg: str | None) -> list[SweepGrid]:
    if arg is None:
        return default_grids()
    if os.path.exists(arg):
        grids = []
        with open(arg, encoding="utf-8") as fh:
            for line in fh:
                line = line.split("#", 1)[0].strip()
                if line:
                    grids.append(_parse_grid_block(line))
        if not grids:
            raise ValueError(f"grid file {arg!r} contains no grid lines")
        return grids
    return [_parse_grid_block(arg)]


def _parse_lemma_grid(arg: str | None) -> dict | None:
    if arg is None:
        return None
    grid = {}
    for token in arg.replace(";", " ").replace(",", " ").split():
        if "=" not in token:
            raise ValueError(f"grid token {token!r} is not key=value")
        key, raw = token.split("=", 1)
        grid[key.strip()] = _parse_values(raw)
    return grid


def _cmd_compute(args) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    if args.mode == "sl":
        if args.ell not in (None, 3):
            raise ValueError("special linear mode requires ell = 3")
        if args.a is None or args.w is None:
            raise ValueError("compute --mode sl requires --a and --w")
        report = check_conjecture((args.a, args.w), mode="sl", cap=cap)
    else:
        if args.ell is None or args.w is None:
            raise ValueError("compute requires --ell and --w")
        if args.ell == 3:
            if args.a is None:
                raise ValueError("ell = 3 requires --a")
            params = BlockParams.gl3(args.a, args.d, args.w)
        elif args.case == "1mod4":
            if args.a is None:
                raise ValueError("the 1mod4 case requires --a")
            params = BlockParams.gl2_1mod4(args.a, args.w)
        elif args.case == "3mod4":
            if args.atilde is None:
                raise ValueError("the 3mod4 case requires --atilde")
            params = BlockParams.gl2_3mod4(args.atilde, args.w)
        else:
            raise ValueError("ell = 2 requires --case {1mod4|3mod4}")
        report = check_conjecture(params, mode="gl", cap=cap)
    sys.stdout.buffer.write(emit_report([report], args.format))
    return exit_code([report])


def _cmd_sweep(args) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    grids = _load_grids(args.grid)
    reports = sweep(grids, workers=args.workers, cap=cap)
    sys.stdout.buffer.write(emit_report(reports, args.format))
    return exit_code(reports)


def _cmd_bounds(args) -> int:
    grid = _parse_lemma_grid(args.grid)
    if args.lemma == "all":
        reports = ledger.check_all(grid)
    else:
        reports = ledger.check_lemma(args.lemma, grid)
    unexpected = 0
    undecided = 0
    for r in reports:
        if args.verbose or r.verdict is not Verdict.HOLDS:
            note = f"  [{r.margin_note}]" if r.margin_note else ""
            print(f"{r.lemma_id}  ({r.instance_str()})  {r.verdict.value}: "
                  f"{r.lhs} vs {r.rhs}{note}")
        if r.verdict is not Verdict.HOLDS and not ledger.is_expected_failure(r):
            if r.verdict is Verdict.UNDECIDED:
                undecided += 1
            else:
                unexpected += 1
    holds = sum(1 for r in reports if r.verdict is Verdict.HOLDS)
    expected = sum(1 for r in reports if ledger.is_expected_failure(r))
    print(f"checked {len(reports)} instances: {holds} hold, "
          f"{expected} documented exceptions, {unexpected} unexpected failures, "
          f"{undecided} undecided")
    if unexpected:
        return 1
    if undecided:
        return 2
    return 0


def _cmd_group(args) -> int:
    cap = args.cap if args.cap is not None else default_cap()
    spec = parse_group_spec(args.spec)
    if args.op == "order":
        print(group_order(spec))
        return 0
    if args.op == "classes":
        if args.brute:
            print(realize(spec, order_cap=cap).class_count())
        else:
            print(class_count(spec))
        return 0
    # derived-classes: exact via the engine when the derived subgroup fits
    # the cap (the parent group itself is never enumerated)
    value, exact = derived_class_count(spec, cap)
    if not exact:
        print(
            f"derived subgroup order {derived_order(spec)} exceeds cap {cap}; "
            f"certified lower bound: {value}",
            file=sys.stderr,
        )
        print(value)
        return 2
    print(value)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockinv",
        description="Exact block invariants and certified inequality verification",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="invariants and verdicts for one parameter point")
    p.add_argument("--mode", choices=("gl", "sl"), default="gl")
    p.add_argument("--ell", type=int, choices=(2, 3))
    p.add_argument("--case", choices=("1mod4", "3mod4"))
    p.add_argument("--a", type=int)
    p.add_argument("--atilde", type=int)
    p.add_argument("--d", type=int, choices=(1, 2), default=1)
    p.add_argument("--w", type=int)
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("sweep", help="verify grids of parameter points")
    p.add_argument("--grid", help="grid file or inline key=value ranges (one grid per line/;)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cap", type=int)
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("bounds", help="run the bound-lemma registry")
    p.add_argument("--lemma", default="all", help="lemma id or 'all'")
    p.add_argument("--grid", help="parameter overrides, e.g. 'w=1..20 a=2..3'")
    p.add_argument("--verbose", action="store_true", help="print every instance")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("group", help="query the group engine")
    p.add_argument("--spec", required=True, help="e.g. 'wr(c(3),3)' or 'prod(sd(16)^2,c(2))'")
    p.add_argument("--op", choices=("order", "classes", "derived-classes"), required=True)
    p.add_argument("--brute", action="store_true", help="force brute-force enumeration")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=_cmd_group)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, GroupSpecError, GroupSpecSyntaxError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
