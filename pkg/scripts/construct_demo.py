#!/usr/bin/env python3
"""Build an order-n entire function with prescribed ray asymptotics and
trace how fast f approaches each target along its ray.

Example:
    python scripts/construct_demo.py --n 2 --radii 2:5:0.5 --out residuals.csv
"""

import argparse
import cmath
import csv
import sys

from asymlab.construct import ConstructedF, c_constant, d_constant, residual_lc
from asymlab.specs import Polynomial


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=2, help="order of the construction")
    ap.add_argument("--radii", default="2:5:0.5", help="a:b:step or comma list")
    ap.add_argument("--out", default="-", help="CSV output path, - for stdout")
    args = ap.parse_args(argv)

    if ":" in args.radii:
        a, b, step = (float(x) for x in args.radii.split(":"))
        radii, r = [], a
        while r <= b + 1e-12:
            radii.append(r)
            r += step
    else:
        radii = [float(x) for x in args.radii.split(",")]

    # targets: constant 1 on ray 1, identity on ray 2, higher powers after
    targets = tuple(
        Polynomial([1]) if j == 0 else Polynomial([0] * j + [1])
        for j in range(args.n)
    )
    cf = ConstructedF(args.n, targets)
    print("n = %d   c_n = %.12f   d_n = %.12f" % (args.n, c_constant(args.n), d_constant(args.n)))

    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        w = csv.writer(out)
        w.writerow(["ray_index", "r", "log10_abs_residual"])
        for j in range(1, args.n + 1):
            theta = cf.ray_angle(j)
            for r in radii:
                res = residual_lc(r * cmath.exp(1j * theta), j, cf)
                w.writerow([j, "%.17g" % r, "%.17g" % res.abs_log10()])
    finally:
        if out is not sys.stdout:
            out.close()
            print("wrote", args.out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
