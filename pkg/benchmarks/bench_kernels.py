"""Compare the compiled and pure-Python truth-table kernels.

    python benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each workload is run under both backends; results are checked to agree
before any timing is reported.
"""

from __future__ import annotations

import argparse
import json
import random
import statistics
import sys
import time

from resolvere import kernels
from resolvere.induction import InductionSchema, check_expansion_equiv
from resolvere.terms import Fn, Var


def random_program(rng: random.Random, n_atoms: int, size: int) -> list[int]:
    prog, depth = [], 0
    for _ in range(size):
        r = rng.random()
        if depth >= 2 and r < 0.45:
            prog.append(rng.choice((kernels.OP_AND, kernels.OP_OR, kernels.OP_XOR)))
            depth -= 1
        elif depth >= 1 and r < 0.6:
            prog.append(kernels.OP_NOT)
        else:
            prog.append(rng.randrange(n_atoms))
            depth += 1
    while depth > 1:
        prog.append(kernels.OP_OR)
        depth -= 1
    return prog


def unsat_chain(n_atoms: int) -> list[int]:
    # x0 & x1 & ... & ~x0: every row must be visited
    prog = [0]
    for i in range(1, n_atoms):
        prog += [i, kernels.OP_AND]
    return prog + [0, kernels.OP_NOT, kernels.OP_AND]


def workloads(seed: int):
    rng = random.Random(seed)
    small = [random_program(rng, 6, 24) for _ in range(2000)]
    yield "2000 random programs, 6 atoms", lambda f: [f(p, 6) for p in small]
    mid = [random_program(rng, 14, 60) for _ in range(50)]
    yield "50 random programs, 14 atoms", lambda f: [f(p, 14) for p in mid]
    for n in (16, 20, 22):
        prog = unsat_chain(n)
        yield f"unsatisfiable chain, {n} atoms", lambda f, prog=prog, n=n: f(prog, n)

    std = InductionSchema("p", Fn("0"), Fn("s", (Var("X"),)))

    def induction(f):
        saved = kernels.find_true_row
        kernels.find_true_row = f
        try:
            return [check_expansion_equiv(std, d) for d in range(21)]
        finally:
            kernels.find_true_row = saved

    yield "induction unfolding, depths 0-20", induction


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--json", metavar="PATH")
    args = ap.parse_args(argv)

    impls = kernels.IMPLEMENTATIONS
    if "cython" not in impls:
        print("compiled kernel not built; only the Python fallback is available", file=sys.stderr)
    rows = []
    for name, work in workloads(args.seed):
        answers = {k: work(f) for k, f in impls.items()}
        if len(set(map(repr, answers.values()))) != 1:
            print(f"backends disagree on {name}", file=sys.stderr)
            return 1
        timing = {k: best_of(lambda f=f: work(f), args.repeat) for k, f in impls.items()}
        rows.append({"workload": name, **{f"{k}_s": v for k, v in timing.items()}})

    width = max(len(r["workload"]) for r in rows)
    header = f"{'workload':<{width}}  {'python [s]':>11}" + ("  {:>11}  {:>8}".format("cython [s]", "speedup") if "cython" in impls else "")
    print(header)
    for r in rows:
        line = f"{r['workload']:<{width}}  {r['python_s']:>11.5f}"
        if "cython_s" in r:
            line += f"  {r['cython_s']:>11.5f}  {r['python_s'] / r['cython_s']:>7.1f}x"
        print(line)
    if "cython" in impls:
        print(f"geometric mean speedup: {statistics.geometric_mean(r['python_s'] / r['cython_s'] for r in rows):.1f}x")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(rows, fh, indent=2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
