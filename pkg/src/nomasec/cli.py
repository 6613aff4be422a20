"""Command-line front end.

Usage::

    nomasec run SPEC.json [--seed N] [--runs N] [--out PATH]
    nomasec validate SPEC.json

Exit codes: 0 success, 2 configuration error, 3 scheme precondition error,
4 I/O error. Without ``--out`` or ``output_path`` the CSV goes to
``$NOMASEC_OUTPUT_DIR/<preset>.csv`` (current directory if unset). A
manifest ``<csv stem>.manifest.json`` is written next to the CSV.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from .exceptions import ConfigError, TooFewRelays
from .experiment import load_spec, manifest_dict, run_experiment, validate_file

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3
EXIT_IO = 4
OUTPUT_DIR_ENV = "NOMASEC_OUTPUT_DIR"

log = logging.getLogger("nomasec")


def _u64(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text}")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="nomasec", description="Secrecy rate regions of relay-assisted NOMA.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run an experiment and write CSV + manifest")
    run.add_argument("spec", type=Path)
    run.add_argument("--seed", type=_u64, help="override scenario.seed")
    run.add_argument("--runs", type=_positive, help="override scenario.mc_runs")
    run.add_argument("--out", type=Path, help="CSV output path")
    val = sub.add_parser("validate", help="list every problem in a spec file")
    val.add_argument("spec", type=Path)
    return parser


def resolve_output(spec, out):
    if out is not None:
        return Path(out)
    if spec.output_path:
        return Path(spec.output_path)
    return Path(os.environ.get(OUTPUT_DIR_ENV, ".")) / f"{spec.preset.value}.csv"


def manifest_path(csv_path):
    return csv_path.with_name(csv_path.stem + ".manifest.json")


def cmd_validate(args):
    try:
        diags = validate_file(args.spec)
    except OSError as exc:
        print(f"error: cannot read {args.spec}: {exc}", file=sys.stderr)
        return EXIT_IO
    for d in diags:
        print(f"{args.spec}: {d}")
    if diags:
        return EXIT_CONFIG
    print(f"{args.spec}: ok")
    return EXIT_OK


def cmd_run(args):
    try:
        spec = load_spec(args.spec, {"seed": args.seed, "mc_runs": args.runs})
    except OSError as exc:
        print(f"error: cannot read {args.spec}: {exc}", file=sys.stderr)
        return EXIT_IO
    except ConfigError as exc:
        for d in exc.diagnostics:
            print(f"{args.spec}: {d}", file=sys.stderr)
        return EXIT_CONFIG
    csv_path = resolve_output(spec, args.out)
    spec = replace(spec, output_path=str(csv_path))
    log.info("running %s with %d realizations", spec.preset.value, spec.scenario.mc_runs)
    try:
        rows, text = run_experiment(spec)
    except TooFewRelays as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    for row in rows:
        if getattr(row, "error", ""):
            print(f"warning: {row.scheme.value} at {row.sweep_value}: {row.error}", file=sys.stderr)
    try:
        csv_path.parent.mkdir(parents=True, exist_ok=True)
        with open(csv_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        with open(manifest_path(csv_path), "w", encoding="utf-8") as fh:
            json.dump(manifest_dict(spec, text), fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    print(csv_path)
    return EXIT_OK


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.command == "run":
        return cmd_run(args)
    return cmd_validate(args)


if __name__ == "__main__":
    sys.exit(main())
