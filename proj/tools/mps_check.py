#!/usr/bin/env python3
"""Solve an exported MPS model with SciPy's HiGHS and compare the objective.

usage: mps_check.py MODEL.mps [EXPECTED] [--tol 1e-6] [--time-limit S] [--verbose]

Exit 0 on agreement (or when no expectation is given), 1 on mismatch, 77
when SciPy is unavailable (ctest treats it as skipped).
"""

import argparse
import sys


def read_mps(path):
    rows, obj_row = {}, None
    order = []
    cols, col_index, integer = {}, [], set()
    rhs, ranges, bounds = {}, {}, {}
    section, in_int = None, False
    with open(path) as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("*"):
                continue
            if not line[0].isspace():
                section = line.split()[0]
                continue
            f = line.split()
            if section == "ROWS":
                kind, name = f
                if kind == "N":
                    obj_row = obj_row or name
                else:
                    rows[name] = kind
                    order.append(name)
            elif section == "COLUMNS":
                if len(f) >= 3 and f[1] == "'MARKER'":
                    in_int = f[2] == "'INTORG'"
                    continue
                col = f[0]
                if col not in cols:
                    cols[col] = {}
                    col_index.append(col)
                if in_int:
                    integer.add(col)
                for k in range(1, len(f) - 1, 2):
                    cols[col][f[k]] = float(f[k + 1])
            elif section == "RHS":
                for k in range(1, len(f) - 1, 2):
                    rhs[f[k]] = float(f[k + 1])
            elif section == "RANGES":
                for k in range(1, len(f) - 1, 2):
                    ranges[f[k]] = float(f[k + 1])
            elif section == "BOUNDS":
                kind, col = f[0], f[2]
                val = float(f[3]) if len(f) > 3 else None
                lo, hi = bounds.get(col, (0.0, float("inf")))
                if kind == "UP":
                    hi = val
                elif kind == "LO":
                    lo = val
                elif kind == "FX":
                    lo = hi = val
                elif kind == "BV":
                    lo, hi = 0.0, 1.0
                    integer.add(col)
                elif kind in ("LI", "UI"):
                    integer.add(col)
                    lo, hi = (val, hi) if kind == "LI" else (lo, val)
                elif kind == "MI":
                    lo = float("-inf")
                elif kind == "PL":
                    hi = float("inf")
                elif kind == "FR":
                    lo, hi = float("-inf"), float("inf")
                bounds[col] = (lo, hi)
    return rows, obj_row, order, cols, col_index, integer, rhs, ranges, bounds


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("model")
    ap.add_argument("expected", nargs="?", type=float)
    ap.add_argument("--tol", type=float, default=1e-6)
    ap.add_argument("--time-limit", type=float, default=600.0)
    ap.add_argument("--verbose", action="store_true", help="print the HiGHS log")
    args = ap.parse_args()
    try:
        import numpy as np
        from scipy.optimize import Bounds, LinearConstraint, milp
        from scipy.sparse import lil_matrix
    except ImportError:
        print("scipy not available", file=sys.stderr)
        return 77

    rows, obj_row, order, cols, col_index, integer, rhs, ranges, bounds = read_mps(args.model)
    n, m = len(col_index), len(order)
    rid = {name: i for i, name in enumerate(order)}
    c = np.zeros(n)
    A = lil_matrix((m, n))
    for j, col in enumerate(col_index):
        for r, v in cols[col].items():
            if r == obj_row:
                c[j] = v
            elif r in rid:
                A[rid[r], j] = v
    lo = np.full(m, -np.inf)
    hi = np.full(m, np.inf)
    for name, i in rid.items():
        b = rhs.get(name, 0.0)
        kind = rows[name]
        if kind == "E":
            lo[i] = hi[i] = b
        elif kind == "L":
            hi[i] = b
        else:
            lo[i] = b
        if name in ranges:
            r = ranges[name]
            if kind == "L":
                lo[i] = b - abs(r)
            elif kind == "G":
                hi[i] = b + abs(r)
            else:
                lo[i], hi[i] = (b, b + r) if r > 0 else (b + r, b)
    lb = np.array([bounds.get(col, (0.0, np.inf))[0] for col in col_index])
    ub = np.array([bounds.get(col, (0.0, np.inf))[1] for col in col_index])
    integrality = np.array([1 if col in integer else 0 for col in col_index])
    res = milp(c, constraints=LinearConstraint(A.tocsr(), lo, hi), bounds=Bounds(lb, ub),
               integrality=integrality, options={"time_limit": args.time_limit, "disp": args.verbose})
    if res.x is None:
        print(f"status {res.status}: {res.message}")
        return 1 if args.expected is not None else 0
    print(f"objective {res.fun:.10g} ({n} columns, {m} rows, status {res.status})")
    if args.expected is None:
        return 0
    ok = abs(res.fun - args.expected) <= args.tol * max(1.0, abs(args.expected))
    print("agrees" if ok else f"differs from expected {args.expected}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
