"""Command-line front end.

Subcommands
    approx         one approximation query, record on stdout
    sweep          distance curves over a parameter grid, CSV on stdout
    random         random-channel batch study, CSV on stdout + JSON summary
    bloch-section  y=0 cross-section of the Bloch ball through target/model
    validate       CPTP constraint report for a process-matrix JSON file

All run records share one CSV schema (columns in fixed order):
    target_kind, param_gamma, param_phi, param_p, model, constraint,
    distance, f_target, f_model, support, converged, restarts_used, seed,
    channel_index
Fields that do not apply are left empty.  Floats are serialized with
repr so that parsing and re-serializing a stream is byte identical.

A process-matrix JSON file holds 16 entries in row-major (I, X, Y, Z)
order; each entry is either a number or a two-element [re, im] array.
Generator labels in `support` strings follow the canonical order
documented in stabapprox.catalog ("X", "S+z", "H(x,y)+", "F(+,-,+)",
"T|0>", ...).

Exit codes: 0 success, 2 flag/input error, 3 solver failure, 4 random
generation failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .approximate import ApproximationProblem, ApproximationResult, SolverError, solve
from .catalog import MODELS, MixtureParams, build_mixture
from .channels import ChiMatrix, bloch_image, chi_to_kraus, identity_chi, validate_cptp
from .metrics import hs_distance
from .targets import AdcSpec, GenerationError, PolSpec, adc, pol_xy, random_chi

CSV_COLUMNS = (
    "target_kind",
    "param_gamma",
    "param_phi",
    "param_p",
    "model",
    "constraint",
    "distance",
    "f_target",
    "f_model",
    "support",
    "converged",
    "restarts_used",
    "seed",
    "channel_index",
)

BLOCH_COLUMNS = ("theta", "x_in", "z_in", "x_target", "z_target", "x_model", "z_model")


def _fmt(x: float) -> str:
    return repr(float(x))


def _fmt12(x: float) -> float:
    """Round to 12 significant digits for JSON summaries."""
    if not math.isfinite(x):
        return x
    return float(f"{x:.12g}")


@dataclass(frozen=True)
class RunRecord:
    target_kind: str
    param_gamma: float | None
    param_phi: float | None
    param_p: float | None
    model: str
    constraint: str
    distance: float
    f_target: float
    f_model: float
    support: str
    converged: bool
    restarts_used: int
    seed: int | None
    channel_index: int | None

    def to_csv_row(self) -> list[str]:
        def opt(x):
            return "" if x is None else _fmt(x)

        return [
            self.target_kind,
            opt(self.param_gamma),
            opt(self.param_phi),
            opt(self.param_p),
            self.model,
            self.constraint,
            _fmt(self.distance),
            _fmt(self.f_target),
            _fmt(self.f_model),
            self.support,
            "true" if self.converged else "false",
            str(self.restarts_used),
            "" if self.seed is None else str(self.seed),
            "" if self.channel_index is None else str(self.channel_index),
        ]

    def to_json_obj(self) -> dict:
        return {
            "target_kind": self.target_kind,
            "param_gamma": self.param_gamma,
            "param_phi": self.param_phi,
            "param_p": self.param_p,
            "model": self.model,
            "constraint": self.constraint,
            "distance": self.distance,
            "f_target": self.f_target,
            "f_model": self.f_model,
            "support": self.support,
            "converged": self.converged,
            "restarts_used": self.restarts_used,
            "seed": self.seed,
            "channel_index": self.channel_index,
        }


def parse_csv_row(row: list[str]) -> RunRecord:
    def f_opt(s):
        return None if s == "" else float(s)

    def i_opt(s):
        return None if s == "" else int(s)

    return RunRecord(
        target_kind=row[0],
        param_gamma=f_opt(row[1]),
        param_phi=f_opt(row[2]),
        param_p=f_opt(row[3]),
        model=row[4],
        constraint=row[5],
        distance=float(row[6]),
        f_target=float(row[7]),
        f_model=float(row[8]),
        support=row[9],
        converged=row[10] == "true",
        restarts_used=int(row[11]),
        seed=i_opt(row[12]),
        channel_index=i_opt(row[13]),
    )


def _support_string(result: ApproximationResult) -> str:
    return ";".join(f"{label}={p:.12g}" for label, p in result.support)


def _record_from_result(
    result: ApproximationResult,
    target_kind: str,
    *,
    gamma: float | None = None,
    phi: float | None = None,
    p: float | None = None,
    seed: int | None = None,
    channel_index: int | None = None,
) -> RunRecord:
    return RunRecord(
        target_kind=target_kind,
        param_gamma=gamma,
        param_phi=phi,
        param_p=p,
        model=result.model,
        constraint=result.constraint,
        distance=result.distance,
        f_target=result.f_target,
        f_model=result.f_model,
        support=_support_string(result),
        converged=result.converged,
        restarts_used=result.restarts_used,
        seed=seed,
        channel_index=channel_index,
    )


def _csv_writer(stream):
    return csv.writer(stream, lineterminator="\n")


def load_chi_file(path: str) -> ChiMatrix:
    """Read a 4x4 process matrix from a JSON file of 16 row-major entries."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict) and "chi" in data:
        data = data["chi"]
    if not isinstance(data, list) or len(data) != 16:
        raise ValueError("process-matrix file must hold 16 row-major entries")
    entries = []
    for item in data:
        if isinstance(item, (int, float)):
            entries.append(complex(item))
        elif isinstance(item, list) and len(item) == 2:
            entries.append(complex(item[0], item[1]))
        else:
            raise ValueError(f"bad matrix entry {item!r}; use a number or [re, im]")
    return ChiMatrix(np.array(entries, dtype=complex).reshape(4, 4))


def save_chi_file(chi: ChiMatrix, path: str) -> None:
    entries = [[z.real, z.imag] for z in chi.matrix.ravel()]
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(entries, fh)
        fh.write("\n")


def _build_target(args) -> tuple[str, ChiMatrix, object | None, dict]:
    """Returns (kind, chi, kraus_or_None, parameter dict) for --target."""
    from .channels import kraus_to_chi

    if args.target == "adc":
        if args.gamma is None:
            raise ValueError("--target adc needs --gamma")
        ch = adc(AdcSpec(args.gamma))
        return "adc", kraus_to_chi(ch), ch, {"gamma": args.gamma}
    if args.target == "pol":
        if args.phi is None or args.p is None:
            raise ValueError("--target pol needs --phi and --p")
        phi = math.radians(args.phi) if args.degrees else args.phi
        ch = pol_xy(PolSpec(phi, args.p))
        return "pol", kraus_to_chi(ch), ch, {"phi": phi, "p": args.p}
    if args.target == "file":
        if args.file is None:
            raise ValueError("--target file needs --file")
        chi = load_chi_file(args.file)
        kraus = chi_to_kraus(chi) if args.constraint == "worst" else None
        return "file", chi, kraus, {}
    raise ValueError(f"unknown target {args.target!r}")


def _models_arg(value: str) -> list[str]:
    models = [m.strip() for m in value.split(",") if m.strip()]
    for m in models:
        if m not in MODELS:
            raise argparse.ArgumentTypeError(f"unknown model {m!r}")
    if not models:
        raise argparse.ArgumentTypeError("empty model list")
    return models


def cmd_approx(args) -> int:
    kind, chi, kraus, params = _build_target(args)
    problem = ApproximationProblem(chi, args.model, args.constraint, kraus)
    result = solve(problem)
    record = _record_from_result(
        result,
        kind,
        gamma=params.get("gamma"),
        phi=params.get("phi"),
        p=params.get("p"),
    )
    if args.out == "json":
        json.dump(record.to_json_obj(), sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        writer = _csv_writer(sys.stdout)
        writer.writerow(CSV_COLUMNS)
        writer.writerow(record.to_csv_row())
    return 0


def cmd_sweep(args) -> int:
    from .channels import kraus_to_chi

    lo, hi = args.min, args.max
    if args.target == "pol" and args.degrees:
        lo, hi = math.radians(lo), math.radians(hi)
    grid = np.linspace(lo, hi, args.steps)
    writer = _csv_writer(sys.stdout)
    writer.writerow(CSV_COLUMNS)
    for value in grid:
        if args.target == "adc":
            ch = adc(AdcSpec(value))
            params = {"gamma": float(value)}
        else:
            ch = pol_xy(PolSpec(value, args.p))
            params = {"phi": float(value), "p": args.p}
        chi = kraus_to_chi(ch)
        for model in args.model:
            result = solve(ApproximationProblem(chi, model, args.constraint, ch))
            record = _record_from_result(result, args.target, **params)
            writer.writerow(record.to_csv_row())
    return 0


def _summary(distances: dict[str, list[float]]) -> dict:
    out = {}
    for model, values in distances.items():
        arr = np.array(values)
        out[model] = {
            "mean": _fmt12(float(arr.mean())),
            "median": _fmt12(float(np.median(arr))),
            "variance": _fmt12(float(arr.var())),
            "frac_below_1e-3": _fmt12(float((arr < 1e-3).mean())),
            "count": int(arr.size),
        }
    return out


def cmd_random(args) -> int:
    identity = identity_chi()
    rows: list[RunRecord] = []
    distances: dict[str, list[float]] = {m: [] for m in ("identity",) + MODELS}
    for index in range(args.count):
        rng = np.random.default_rng(args.seed + index)
        chi = random_chi(rng)
        kraus = chi_to_kraus(chi) if args.constraint == "worst" else None
        f_target = float(chi.matrix[0, 0].real) / 2.0
        d_identity = hs_distance(chi, identity)
        rows.append(
            RunRecord(
                target_kind="random",
                param_gamma=None,
                param_phi=None,
                param_p=None,
                model="identity",
                constraint=args.constraint,
                distance=d_identity,
                f_target=f_target,
                f_model=1.0,
                support="",
                converged=True,
                restarts_used=0,
                seed=args.seed,
                channel_index=index,
            )
        )
        distances["identity"].append(d_identity)
        for model in MODELS:
            result = solve(ApproximationProblem(chi, model, args.constraint, kraus))
            rows.append(
                _record_from_result(
                    result, "random", seed=args.seed, channel_index=index
                )
            )
            distances[model].append(result.distance)
    summary = _summary(distances)
    if args.out == "json":
        json.dump(
            {"records": [r.to_json_obj() for r in rows], "summary": summary},
            sys.stdout,
            indent=2,
        )
        sys.stdout.write("\n")
    else:
        writer = _csv_writer(sys.stdout)
        writer.writerow(CSV_COLUMNS)
        for record in rows:
            writer.writerow(record.to_csv_row())
        json.dump(summary, sys.stderr, indent=2)
        sys.stderr.write("\n")
    return 0


def cmd_bloch_section(args) -> int:
    kind, chi, kraus, _params = _build_target(args)
    if kraus is None:
        kraus = chi_to_kraus(chi)
    problem = ApproximationProblem(chi, args.model, args.constraint, kraus)
    result = solve(problem)
    model_channel = build_mixture(MixtureParams(args.model, result.params.probs))
    writer = _csv_writer(sys.stdout)
    writer.writerow(BLOCH_COLUMNS)
    for k in range(args.points):
        theta = 2.0 * np.pi * k / args.points
        r_in = np.array([np.sin(theta), 0.0, np.cos(theta)])
        r_target = bloch_image(kraus, r_in)
        r_model = bloch_image(model_channel, r_in)
        writer.writerow(
            [
                _fmt(theta),
                _fmt(r_in[0]),
                _fmt(r_in[2]),
                _fmt(r_target[0]),
                _fmt(r_target[2]),
                _fmt(r_model[0]),
                _fmt(r_model[2]),
            ]
        )
    return 0


def cmd_validate(args) -> int:
    chi = load_chi_file(args.file)
    report = [
        {"constraint": v.constraint, "magnitude": _fmt12(v.magnitude)}
        for v in validate_cptp(chi)
    ]
    json.dump({"valid": not report, "violations": report}, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


def _add_target_flags(p: argparse.ArgumentParser, kinds=("adc", "pol", "file")) -> None:
    p.add_argument("--target", choices=kinds, required=True)
    p.add_argument("--gamma", type=float, help="damping strength for adc")
    p.add_argument("--phi", type=float, help="polarization angle for pol")
    p.add_argument("--p", type=float, help="error probability for pol")
    p.add_argument("--file", help="process-matrix JSON file for --target file")
    p.add_argument("--degrees", action="store_true", help="interpret angles in degrees")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stabapprox",
        description="Honest stabilizer-channel approximations of one-qubit errors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("approx", help="approximate one target channel")
    _add_target_flags(p)
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--constraint", choices=("avg", "worst"), default="avg")
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("sweep", help="distance curves over a parameter grid")
    p.add_argument("--target", choices=("adc", "pol"), required=True)
    p.add_argument("--min", type=float, required=True)
    p.add_argument("--max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--p", type=float, default=0.1, help="error probability for pol")
    p.add_argument("--model", type=_models_arg, default=list(MODELS))
    p.add_argument("--constraint", choices=("avg", "worst"), default="avg")
    p.add_argument("--degrees", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("random", help="random-channel batch study")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--constraint", choices=("avg", "worst"), default="avg")
    p.add_argument("--out", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("bloch-section", help="y=0 Bloch cross-section data")
    _add_target_flags(p)
    p.add_argument("--model", choices=MODELS, required=True)
    p.add_argument("--constraint", choices=("avg", "worst"), default="avg")
    p.add_argument("--points", type=int, default=72)
    p.set_defaults(func=cmd_bloch_section)

    p = sub.add_parser("validate", help="CPTP report for a process-matrix file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "sweep":
        if args.steps < 2:
            parser.error("--steps must be >= 2")
        if not args.min < args.max:
            parser.error("--min must be < --max")
    if args.command == "random" and args.count < 1:
        parser.error("--count must be >= 1")
    if args.command == "bloch-section" and args.points < 8:
        parser.error("--points must be >= 8")
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return 3
    except GenerationError as exc:
        print(f"generation failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
