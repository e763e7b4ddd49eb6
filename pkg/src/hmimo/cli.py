"""Benchmark command line.

Three subcommands mirror the three experiments: ``sweep-distance``,
``sweep-elements`` and ``point``.  Each accepts an optional JSON config
file plus flag overrides and exits with 0 on success, 2 on config
validation failure, 3 on degenerate geometry and 4 on I/O failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from .errors import ConfigError, DegenerateGeometryError
from .green import MODEL_VARIANTS
from .sweep import (
    SweepSpec,
    default_spec,
    load_spec,
    run_distance_sweep,
    run_element_sweep,
    run_single_point,
    validate_spec,
    write_rows,
)

_EXPERIMENT_OF = {
    "sweep-distance": "distance",
    "sweep-elements": "tx-elements",
    "point": "single-point",
}

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3
EXIT_IO = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hmimo-bench",
        description="Line-of-sight holographic MIMO channel-model benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--config", metavar="PATH", help="JSON sweep config file")
        p.add_argument("--output", metavar="PATH", help="output file (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="output format")
        p.add_argument(
            "--variants",
            metavar="LIST",
            help=f"comma-separated subset of {','.join(MODEL_VARIANTS)}",
        )
        p.add_argument("--snr-db", type=float, metavar="F", help="transmit SNR in dB")

    sweep_d = sub.add_parser("sweep-distance", help="NMSE/capacity over a d0 grid")
    add_common(sweep_d)
    sweep_d.add_argument("--workers", type=int, default=1, metavar="N",
                         help="concurrent sweep-point workers (default 1)")

    sweep_n = sub.add_parser("sweep-elements", help="NMSE/capacity over TX element counts")
    add_common(sweep_n)
    sweep_n.add_argument("--workers", type=int, default=1, metavar="N",
                         help="concurrent sweep-point workers (default 1)")

    point = sub.add_parser("point", help="single (geometry, d0) evaluation")
    add_common(point)
    point.add_argument("--dump-singular-values", type=int, default=0, metavar="K",
                       help="also emit the top K singular values per variant")
    return parser


def _spec_from_args(args) -> SweepSpec:
    experiment = _EXPERIMENT_OF[args.command]
    if args.config:
        spec = load_spec(args.config, experiment=experiment)
        if spec.experiment != experiment:
            raise ConfigError(
                [f"config experiment {spec.experiment!r} does not match subcommand "
                 f"{args.command!r}"]
            )
    else:
        spec = default_spec(experiment)
    overrides = {}
    if args.output is not None:
        overrides["output_path"] = args.output
    if args.format is not None:
        overrides["output_format"] = args.format
    if args.snr_db is not None:
        overrides["snr_db"] = args.snr_db
    if args.variants is not None:
        overrides["variants"] = tuple(v.strip() for v in args.variants.split(",") if v.strip())
    if overrides:
        spec = replace(spec, **overrides)
    violations = validate_spec(spec)
    if violations:
        raise ConfigError(violations)
    return spec


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        spec = _spec_from_args(args)
        if args.command == "sweep-distance":
            rows = run_distance_sweep(spec, workers=max(1, args.workers))
        elif args.command == "sweep-elements":
            rows = run_element_sweep(spec, workers=max(1, args.workers))
        else:
            rows = [run_single_point(spec, dump_singular_values=args.dump_singular_values)]
        write_rows(rows, spec)
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateGeometryError as exc:
        print(f"degenerate geometry: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
