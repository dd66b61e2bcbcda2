#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the hot kernels on representative workloads (submodule enumeration,
lattice construction, modularity, delta evaluation, table validation)
and prints one row per workload with the timings and the speedup.

Usage: python benchmarks/bench_backends.py [--quick]
"""

import argparse
import time

from torsionlab import _core_py
from torsionlab.modules import power_module, regular_module
from torsionlab.ringspec import parse_ring_spec

try:
    from torsionlab import _core
except ImportError:
    _core = None


def timeit(fn, repeats=3):
    best = None
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, result


def workloads(quick):
    ring_spec = "UT2(2)" if quick else "prod(Z(2),UT2(2))"
    ring = parse_ring_spec(ring_spec)
    square = power_module(ring, 2)
    reg = regular_module(parse_ring_spec("M2(2)"))

    def enum(impl):
        return lambda: impl.enumerate_submodules(
            square.order, ring.order, list(square.add_flat),
            list(square.act_flat), square.zero)

    members = _core_py.enumerate_submodules(
        square.order, ring.order, list(square.add_flat),
        list(square.act_flat), square.zero)

    def tables(impl):
        return lambda: impl.closure_tables(members)

    meet, join = _core_py.closure_tables(members)

    def modular(impl):
        return lambda: impl.modularity_witness(len(members), list(meet), list(join))

    def validate(impl):
        return lambda: impl.assoc_witness(square.order, list(square.add_flat))

    dl_mod = reg if not quick else regular_module(ring)
    rows, a = 2, [dl_mod.ring.one, dl_mod.ring.zero]
    b = [dl_mod.ring.neg[x] for x in a]
    c = [dl_mod.ring.one, dl_mod.ring.one]
    d = [dl_mod.ring.neg[x] for x in c]

    def delta(impl):
        return lambda: impl.delta_cond2_witness(
            dl_mod.order, rows, 1, 0, list(dl_mod.add_flat), list(dl_mod.act_flat),
            a, b, c, d, [], dl_mod.zero)

    return [
        (f"enumerate_submodules({ring_spec}^2, order {square.order})", enum),
        (f"closure_tables ({len(members)} members)", tables),
        (f"modularity_witness ({len(members)}^3)", modular),
        (f"assoc_witness (order {square.order})", validate),
        (f"delta_cond2 (order {dl_mod.order}, u_arity 1)", delta),
    ]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true", help="smaller workloads")
    args = parser.parse_args()

    if _core is None:
        print("compiled backend not available; timing the pure backend only")
    header = f"{'workload':<52} {'pure':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, make in workloads(args.quick):
        t_pure, r_pure = timeit(make(_core_py))
        if _core is not None:
            t_c, r_c = timeit(make(_core))
            if r_pure != r_c:
                raise SystemExit(f"backend mismatch on {name}: {r_pure!r} != {r_c!r}")
            print(f"{name:<52} {t_pure * 1e3:>8.1f}ms {t_c * 1e3:>8.1f}ms "
                  f"{t_pure / t_c:>7.1f}x")
        else:
            print(f"{name:<52} {t_pure * 1e3:>8.1f}ms {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
