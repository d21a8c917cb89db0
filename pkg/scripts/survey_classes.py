#!/usr/bin/env python3
"""Sweep the b invariant across its thresholds and tabulate class + flags,
together with the curvature scale |R(1,0,0)| of each Brinkmann chart."""

import argparse
import csv
import sys
from fractions import Fraction

import numpy as np

from lorentz3.classifier import class_from_b, report_from_class
from lorentz3.geometry import riemann_tensor


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", default="-1", help="lower end of the b range (rational)")
    ap.add_argument("--hi", default="3", help="upper end of the b range (rational)")
    ap.add_argument("--count", type=int, default=17)
    ap.add_argument("--out", default=None, help="CSV path (default: stdout)")
    args = ap.parse_args()

    lo, hi = Fraction(args.lo), Fraction(args.hi)
    step = (hi - lo) / (args.count - 1) if args.count > 1 else Fraction(0)
    values = [lo + k * step for k in range(args.count)]
    # always include the threshold values themselves
    for special in (Fraction(0), Fraction(-1, 4), Fraction(2)):
        if lo <= special <= hi and special not in values:
            values.append(special)
    values.sort()

    rows = []
    for b in values:
        rep = report_from_class(class_from_b(b))
        max_r = float(np.max(np.abs(riemann_tensor(rep.brinkmann_chart, (1.0, 0.0, 0.0)))))
        rows.append(
            [
                str(b),
                rep.space_class.tag,
                rep.flat,
                rep.locally_symmetric,
                rep.complete,
                rep.compact_model,
                rep.transverse_3d_group,
                f"{max_r:.6g}",
            ]
        )

    writer = csv.writer(open(args.out, "w", newline="") if args.out else sys.stdout)
    writer.writerow(
        ["b", "class", "flat", "locally_symmetric", "complete", "compact_model",
         "transverse_3d_group", "max_abs_R_at_u1"]
    )
    writer.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
