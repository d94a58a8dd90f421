#!/usr/bin/env python3
"""Sharpness experiments: tent-family quotient sweep and the tangent-ratio grid.

Writes two CSVs next to this script (or into --out) and prints the summary
numbers: the quotient should increase monotonically toward 1 along the
sweep, and the ratio grid should stay below 1 everywhere.
"""

import argparse
from pathlib import Path

import numpy as np

from schwarzlab.lemmas import psi_sweep, r_ratio


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-max", type=int, default=1000)
    parser.add_argument("--k-max", type=float, default=20.0)
    parser.add_argument("--grid-n", type=int, default=200)
    parser.add_argument("--out", default=Path(__file__).resolve().parent)
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    records = psi_sweep(args.n_max)
    with open(out / "psi_sweep.csv", "w") as fh:
        fh.write("n,s,u,ratio\n")
        for rec in records:
            p = rec.parameters
            fh.write(f"{p['n']:.0f},{p['s']:.17g},{p['u']:.17g},{rec.ratio:.17g}\n")
    ratios = np.array([r.ratio for r in records])
    print(f"quotient sweep: n=2..{args.n_max}, "
          f"monotone={bool(np.all(np.diff(ratios) > 0))}, "
          f"final={ratios[-1]:.6f}, sup={ratios.max():.12f}")

    ks = np.linspace(args.k_max / args.grid_n, args.k_max, args.grid_n)
    xs = np.linspace(0.0, 0.999, args.grid_n)
    vals = r_ratio(ks[:, None], xs[None, :])
    with open(out / "r_ratio_sweep.csv", "w") as fh:
        fh.write("k,x,r_ratio\n")
        for i, k in enumerate(ks):
            for j, x in enumerate(xs):
                fh.write(f"{k:.17g},{x:.17g},{vals[i, j]:.17g}\n")
    print(f"tangent-ratio grid: max={np.max(vals):.12f} (must be <= 1)")


if __name__ == "__main__":
    main()
