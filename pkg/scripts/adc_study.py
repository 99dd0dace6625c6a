#!/usr/bin/env python3
"""Amplitude-damping study: distance curves for all four models plus
Bloch-ball cross-sections at gamma = 0.25 under both constraints."""

import argparse
import contextlib
import pathlib

from stabapprox import cli


def run_to_file(path: pathlib.Path, argv: list[str]) -> None:
    print(f"-> {path}")
    with open(path, "w", encoding="utf-8") as fh, contextlib.redirect_stdout(fh):
        code = cli.main(argv)
    if code != 0:
        raise SystemExit(code)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results", type=pathlib.Path)
    ap.add_argument("--steps", type=int, default=200)
    ap.add_argument("--worst-steps", type=int, default=25)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    run_to_file(
        args.out_dir / "adc_sweep_avg.csv",
        ["sweep", "--target", "adc", "--min", "0", "--max", "1",
         "--steps", str(args.steps), "--model", "pc,pmc,cc,cmc"],
    )
    run_to_file(
        args.out_dir / "adc_sweep_worst.csv",
        ["sweep", "--target", "adc", "--min", "0", "--max", "0.96",
         "--steps", str(args.worst_steps), "--model", "pc,pmc",
         "--constraint", "worst"],
    )
    for model in ("pc", "pmc"):
        for constraint in ("avg", "worst"):
            run_to_file(
                args.out_dir / f"adc_bloch_{model}_{constraint}.csv",
                ["bloch-section", "--target", "adc", "--gamma", "0.25",
                 "--model", model, "--constraint", constraint, "--points", "72"],
            )


if __name__ == "__main__":
    main()
