"""Timing comparisons.

    python benchmarks/bench.py            # both parts
    python benchmarks/bench.py sweep      # compiled vs pure-Python valuation sweep
    python benchmarks/bench.py pairs      # pair procedure on phi_exp(n)
"""

import sys
import time

from modalsat import sweep
from modalsat.corpus import exhaustive_formulas
from modalsat.formula import POOR_MANS, parse, size
from modalsat.oracle import SERIAL, brute_force_sat
from modalsat.procedures import poorman_sat_kd_pairs, sat_kd_tableau
from modalsat.reductions import phi_exp


def _time(fn, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def bench_sweep():
    print(f"sweep backends available: {', '.join(sweep.BACKENDS)}")
    cases = [
        ("3 vars, 8-world tree", parse("[](p | q) & [](~p | ~q) & <>(r & <>(p & ~r)) & [][]~p"),
         8, [[1, 2, 3], [4, 5], [6], [7], [], [], [], []]),
        ("2 vars, 12-world chain", parse("<>[]<>(p & ~p) | q & ~q"), 12,
         [[i + 1] for i in range(11)] + [[]]),
    ]
    for label, f, n, succ in cases:
        prog = sweep.Program(f)
        row = [label]
        for name in sweep.BACKENDS:
            t = _time(lambda: sweep.first_model(prog, n, succ, 0, backend=name), repeat=1)
            row.append(f"{name} {t * 1e3:9.1f} ms")
        print("  " + " | ".join(row))

    corpus = exhaustive_formulas(POOR_MANS, 1, 2, 3)
    for name in sweep.BACKENDS:
        t = time.perf_counter()
        for f in corpus:
            brute_force_sat(f, SERIAL, 6, backend=name)
        print(f"  serial oracle over {len(corpus)} formulas, {name}: "
              f"{time.perf_counter() - t:.2f} s")


def bench_pairs():
    print("  n  size  pairs (ms)  tableau (ms)")
    for n in range(2, 13):
        f = phi_exp(n)
        tp = _time(lambda: poorman_sat_kd_pairs(f))
        tt = _time(lambda: sat_kd_tableau(f), repeat=1) if n <= 10 else float("nan")
        print(f"  {n:2d} {size(f):5d} {tp * 1e3:10.2f} {tt * 1e3:12.2f}")


if __name__ == "__main__":
    which = sys.argv[1:] or ["sweep", "pairs"]
    if "sweep" in which:
        bench_sweep()
    if "pairs" in which:
        bench_pairs()
