#!/usr/bin/env python3
"""Polarization-angle study: distance versus the polarization axis angle
for all four models at fixed error probability."""

import argparse
import contextlib
import math
import pathlib

from stabapprox import cli


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results", type=pathlib.Path)
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--p", type=float, default=0.1)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    out = args.out_dir / "pol_sweep_avg.csv"
    print(f"-> {out}")
    with open(out, "w", encoding="utf-8") as fh, contextlib.redirect_stdout(fh):
        code = cli.main(
            ["sweep", "--target", "pol", "--min", "0", "--max", str(math.pi / 2),
             "--steps", str(args.steps), "--p", str(args.p),
             "--model", "pc,pmc,cc,cmc"]
        )
    if code != 0:
        raise SystemExit(code)


if __name__ == "__main__":
    main()
