#!/usr/bin/env python3
"""Random-channel study: best approximation of many random CPTP process
matrices by each model, with summary statistics."""

import argparse
import contextlib
import io
import pathlib
import sys

from stabapprox import cli


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="results", type=pathlib.Path)
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=20260810)
    args = ap.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    csv_path = args.out_dir / "random_channels.csv"
    summary_path = args.out_dir / "random_summary.json"
    print(f"-> {csv_path}")
    print(f"-> {summary_path}")
    summary_buf = io.StringIO()
    with open(csv_path, "w", encoding="utf-8") as fh:
        with contextlib.redirect_stdout(fh), contextlib.redirect_stderr(summary_buf):
            code = cli.main(
                ["random", "--count", str(args.count), "--seed", str(args.seed)]
            )
    if code != 0:
        sys.stderr.write(summary_buf.getvalue())
        raise SystemExit(code)
    summary_path.write_text(summary_buf.getvalue(), encoding="utf-8")


if __name__ == "__main__":
    main()
