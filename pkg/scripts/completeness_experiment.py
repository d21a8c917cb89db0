#!/usr/bin/env python3
"""Completeness evidence across the chart families.

Integrates seeded geodesic families on the curved non-unimodular chart
(b = 2), the flat half space (b = 0), and both symmetric models, and writes
one verdict JSON per chart.
"""

import argparse
import json
import sys
from pathlib import Path

from lorentz3 import geodesics as geo
from lorentz3.geometry import Constant, PowerLaw


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=12345)
    ap.add_argument("--outdir", default="completeness_reports")
    args = ap.parse_args()

    charts = {
        "powerlaw_b2": PowerLaw(2.0),
        "powerlaw_b0": PowerLaw(0.0),
        "constant_plus1": Constant(1.0),
        "constant_minus1": Constant(-1.0),
    }
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for label, chart in charts.items():
        report = geo.completeness_report(chart, count=args.count, seed=args.seed)
        path = outdir / f"{label}.json"
        path.write_text(json.dumps(report.to_json(), indent=2, sort_keys=True))
        verdicts = {k: v.verdict for k, v in report.verdicts.items()}
        print(f"{label}: {verdicts} -> {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
