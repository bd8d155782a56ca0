#!/usr/bin/env python3
"""Benchmark the permutation-engine backends (numba @njit vs pure numpy).

Times group closure, conjugacy-class counting and derived-subgroup
enumeration on the standard suite of defect-group shapes, checks that both
backends agree, and prints a comparison table.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

import argparse
import time

from blockinv._backend import get_backend
from blockinv.groups import generator_rows, group_order, parse_group_spec
from blockinv.permgroup import PermGroup

SUITE = [
    "wr(c(3),3)",
    "wr(c(9),3)",
    "wr(c(27),3)",
    "wr(c(8),2)",
    "wr(wr(c(4),2),2)",
    "sd(64)",
    "wr(sd(16),2)",
    "wr(sd(32),2)",
    "wr(sd(128),2)",
]


def run_once(spec_text, backend):
    spec = parse_group_spec(spec_text)
    deg, rows = generator_rows(spec)
    group = PermGroup(rows, degree=deg, backend=backend)
    t0 = time.perf_counter()
    order = group.order()
    t_closure = time.perf_counter() - t0
    t0 = time.perf_counter()
    classes = group.class_count()
    t_classes = time.perf_counter() - t0
    t0 = time.perf_counter()
    derived_classes = group.derived_subgroup().class_count()
    t_derived = time.perf_counter() - t0
    return order, classes, derived_classes, t_closure, t_classes, t_derived


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = {name: get_backend(name) for name in ("numpy", "numba")}

    # warm up the JIT so compilation does not pollute the timings
    run_once("wr(c(3),3)", backends["numba"])

    header = (
        f"{'spec':24} {'order':>8} {'classes':>8} "
        f"{'numpy[s]':>10} {'numba[s]':>10} {'speedup':>8}"
    )
    print(header)
    print("-" * len(header))
    for text in SUITE:
        results = {}
        times = {}
        for name, backend in backends.items():
            best = None
            for _ in range(args.repeat):
                out = run_once(text, backend)
                total = sum(out[3:])
                best = total if best is None else min(best, total)
                results[name] = out[:3]
            times[name] = best
        if results["numpy"] != results["numba"]:
            raise SystemExit(f"backend disagreement on {text}: {results}")
        order, classes, _ = results["numba"]
        speedup = times["numpy"] / times["numba"] if times["numba"] else float("inf")
        print(
            f"{text:24} {order:>8} {classes:>8} "
            f"{times['numpy']:>10.4f} {times['numba']:>10.4f} {speedup:>7.1f}x"
        )
    print(f"\nmax group order in suite: {max(group_order(parse_group_spec(t)) for t in SUITE)}")
    print("backends agree on all counts")


if __name__ == "__main__":
    main()
