"""Command-line surface.

Subcommands: ``gen`` (emit an operator as a Matrix Market file),
``analyze`` (spectral family summary), ``split`` (splitting summary),
``reconstruct`` (quadrature error table), and ``verify`` (the full check
battery).  Exit codes: 0 all checks pass, 1 at least one check failed,
2 usage or I/O error.
"""

import argparse
import io
import json
import sys

from .mmio import write_matrix_market
from .operators import KINDS, MODES, OperatorSpec, generate
from .report import (
    VerifyConfig,
    family_summary,
    quadrature_table,
    run_verify,
    split_summary,
)

__all__ = ["main"]


def _add_operator_args(p):
    p.add_argument("--kind", choices=KINDS, default="random", help="operator generator")
    p.add_argument("--dim", type=int, default=8, help="matrix dimension")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--mode", choices=MODES, default="real", help="scalar field")
    p.add_argument("--spectrum", default="", help="comma-separated diagonal entries")
    p.add_argument("--input", default="", help="Matrix Market file (implies --kind file)")
    p.add_argument("--out", default="", help="output path (default: stdout)")
    p.add_argument("--k-max", type=int, default=64, help="largest refinement")
    p.add_argument("--tol-scale", type=float, default=1.0,
                   help="global multiplier on the documented tolerances")


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="specfam",
        description="spectral families, operator splitting, and Stieltjes "
        "reconstruction for self-adjoint matrices",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("gen", "generate an operator and write it as a Matrix Market file"),
        ("analyze", "build the spectral family and summarize it"),
        ("split", "split the operator into nonpositive and nonnegative parts"),
        ("reconstruct", "emit the quadrature error table"),
        ("verify", "run the full verification battery"),
    ):
        p = sub.add_parser(name, help=text)
        _add_operator_args(p)
        if name == "analyze":
            p.add_argument("--dense", action="store_true",
                           help="include dense increment entries")
    return parser


def _spec_from_args(args):
    spectrum = tuple(float(v) for v in args.spectrum.split(",") if v.strip())
    kind = "file" if args.input else args.kind
    if kind == "diagonal" and not spectrum:
        raise ValueError("--kind diagonal needs --spectrum")
    return OperatorSpec(
        kind=kind,
        dim=args.dim,
        seed=args.seed,
        spectrum=spectrum,
        path=args.input,
        mode=args.mode,
    )


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _run(args):
    spec = _spec_from_args(args)
    if args.command == "gen":
        a = generate(spec)
        if args.out:
            write_matrix_market(args.out, a)
        else:
            buf = io.BytesIO()
            write_matrix_market(buf, a)
            sys.stdout.write(buf.getvalue().decode("latin1"))
        return 0
    if args.command == "analyze":
        from .family import build_general

        a = generate(spec)
        doc = {
            "input": spec.to_dict(),
            "family": family_summary(build_general(a, "shift"), include_dense=args.dense),
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
        return 0
    if args.command == "split":
        doc = {"input": spec.to_dict(), "split": split_summary(generate(spec))}
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
        return 0
    if args.command == "reconstruct":
        doc = {
            "input": spec.to_dict(),
            "quadrature": quadrature_table(generate(spec), k_max=args.k_max, seed=spec.seed),
        }
        _emit(json.dumps(doc, indent=2, sort_keys=True), args.out)
        return 0
    if args.command == "verify":
        config = VerifyConfig(k_max=args.k_max, tol_scale=args.tol_scale)
        report = run_verify(spec, config)
        if report.status != "pass":
            report.checks.sort(key=lambda c: c.passed)  # failing records first
        _emit(report.to_json(), args.out)
        return 0 if report.status == "pass" else 1
    raise ValueError(f"unknown command {args.command!r}")  # pragma: no cover


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (OSError, ValueError) as exc:
        print(f"specfam: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
