#!/usr/bin/env python3
"""Curvature blow-up along the incoming vertical null geodesic.

Samples the sectional curvature of the plane spanned by (d_u + d_v, d_x)
at (u, 0, 0) as u -> 0+ and writes a CSV of u, |K|, and the local decade
ratio; on the b/u^2 chart the curvature grows exactly like 1/u^2, which is
the obstruction to extending the space through the boundary.
"""

import argparse
import csv
import sys

import numpy as np

from lorentz3.geometry import PowerLaw, sectional_curvature


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", type=float, default=2.0)
    ap.add_argument("--decades", type=int, default=6)
    ap.add_argument("--per-decade", type=int, default=4)
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    chart = PowerLaw(args.b)
    plane = [(1.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
    us = np.logspace(0, -args.decades, args.decades * args.per_decade + 1)
    ks = [abs(sectional_curvature(chart, (float(u), 0.0, 0.0), plane)) for u in us]

    writer = csv.writer(open(args.out, "w", newline="") if args.out else sys.stdout)
    writer.writerow(["u", "abs_K", "growth_vs_prev"])
    prev = None
    for u, k in zip(us, ks):
        writer.writerow([f"{u:.6g}", f"{k:.8g}", "" if prev is None else f"{k / prev:.4f}"])
        prev = k
    return 0


if __name__ == "__main__":
    sys.exit(main())
