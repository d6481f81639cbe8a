"""Benchmark the compiled quadrature kernel against the numpy fallback.

Usage: python -m ghyper.bench [--repeat 3]

Times a representative matrix of tensor-sum workloads (n = 1, 2, 3 at the
grid sizes the verifier actually reaches) on every available kernel and
reports the speedup plus the worst relative deviation between the two
implementations (they use different summation orders, so agreement is to
rounding, not bit-exact).
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from .kernel import available_kernels
from .monomials import enumerate_monomials
from .quadrature import _axis_rule, QuadratureConfig
from .verify import anchor_coefficients

CASES = (
    # (n, d, level): level picks the node count nodes_per_axis * 2**level
    (1, 4, 6),
    (2, 2, 5),
    (2, 4, 5),
    (3, 2, 3),
)


def _workload(n, d, level):
    basis = enumerate_monomials(n, d)
    config = QuadratureConfig()
    xs, ws = _axis_rule(config, level)
    exps = np.asarray(basis.monomials, dtype=np.int64)
    avals = anchor_coefficients(basis) + 0.05j
    moms = np.vstack([np.zeros((1, n), dtype=np.int64), exps])
    return xs, ws, exps, avals, moms


def run(repeat: int = 3) -> list[dict]:
    kernels = available_kernels()
    rows = []
    for n, d, level in CASES:
        xs, ws, exps, avals, moms = _workload(n, d, level)
        row = {"case": f"n={n} d={d} nodes={xs.size}", "timings": {}}
        values = {}
        for name, mod in sorted(kernels.items()):
            best = float("inf")
            for _ in range(repeat):
                start = time.perf_counter()
                vals, _ = mod.tensor_sums(xs, ws, exps, avals, moms)
                best = min(best, time.perf_counter() - start)
            row["timings"][name] = best
            values[name] = vals
        if len(values) == 2:
            ref = values["python"]
            dev = np.max(np.abs(values["compiled"] - ref)
                         / np.maximum(np.abs(ref), 1e-300))
            row["max_rel_deviation"] = float(dev)
            row["speedup"] = row["timings"]["python"] / \
                row["timings"]["compiled"]
        rows.append(row)
    return rows


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)
    rows = run(args.repeat)
    names = sorted({k for row in rows for k in row["timings"]})
    header = f"{'case':28s}" + "".join(f"{k:>12s}" for k in names)
    if len(names) == 2:
        header += f"{'speedup':>10s}{'deviation':>12s}"
    print(header)
    for row in rows:
        line = f"{row['case']:28s}"
        for k in names:
            line += f"{row['timings'][k] * 1e3:10.2f}ms"
        if "speedup" in row:
            line += f"{row['speedup']:9.1f}x{row['max_rel_deviation']:12.2e}"
        print(line)
    if len(names) < 2:
        print("(compiled kernel not available; showing fallback only)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
