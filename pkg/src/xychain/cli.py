"""Command-line interface.

Four subcommands: `sweep` streams the full correlation CSV, `snapshot`
prints every configured pair at one instant, `verify` runs the oracle
cross-checks, `reproduce` regenerates the benchmark figure data and
scalar table.  Command-line flags override config-file values,
which override the defaults.
"""
from __future__ import annotations

import argparse
import sys

from .oracle import MAX_ORACLE_SITES
from .reproduce import FIGURE_IDS, reproduce
from .sweep import (CSV_HEADER, RunConfig, config_from_mapping, format_value,
                    load_config, run_sweep, snapshot)
from .verify import run_verification


def _parse_pairs(text: str):
    if text == "all" or text.startswith("neighbors:"):
        return text
    pairs = []
    for chunk in text.split(","):
        left, sep, right = chunk.partition("-")
        if not sep:
            raise argparse.ArgumentTypeError(
                f"bad pair {chunk!r}; expected 'n-m', 'all' or 'neighbors:L'")
        try:
            pairs.append((int(left), int(right)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad pair {chunk!r}") from None
    return tuple(pairs)


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="FILE",
                        help="JSON file with any subset of the run options")
    parser.add_argument("--sites", type=int, dest="n_sites",
                        help="chain length (default 21)")
    parser.add_argument("--polarized", type=int, dest="polarized_node",
                        help="initially polarized node (default 1)")
    parser.add_argument("--beta", dest="inverse_temperature",
                        help="inverse temperature, 'inf' for full polarization"
                             " (default 10)")
    parser.add_argument("--rep", action="append", dest="representations",
                        choices=["beta", "c", "spin"],
                        help="representation to evaluate; repeatable"
                             " (default: all three)")
    parser.add_argument("--pairs", type=_parse_pairs,
                        help="'all', 'neighbors:L', or explicit '1-2,3-5'")
    parser.add_argument("--t-min", type=float, dest="t_min",
                        help="start of the time grid (default 0)")
    parser.add_argument("--t-max", type=float, dest="t_max",
                        help="end of the time grid (default 100)")
    parser.add_argument("--steps", type=int,
                        help="number of grid points (default 2000)")
    parser.add_argument("--workers", type=int,
                        help="parallel worker processes (default 1)")
    parser.add_argument("--out", help="output CSV path (default: stdout)")


_RUN_KEYS = ("n_sites", "polarized_node", "inverse_temperature",
             "representations", "pairs", "t_min", "t_max", "steps",
             "workers", "out")


def _build_config(args: argparse.Namespace) -> RunConfig:
    mapping: dict = {}
    if args.config:
        base = load_config(args.config)
        mapping = {key: getattr(base, key) for key in _RUN_KEYS}
        mapping["coupling"] = base.coupling
        mapping["larmor"] = base.larmor
    for key in _RUN_KEYS:
        value = getattr(args, key, None)
        if value is not None:
            mapping[key] = value
    return config_from_mapping(mapping)


def _cmd_sweep(args: argparse.Namespace) -> int:
    config = _build_config(args)
    rows = run_sweep(config)
    if config.out is not None:
        print(f"wrote {rows} rows to {config.out}", file=sys.stderr)
    return 0


def _cmd_snapshot(args: argparse.Namespace) -> int:
    config = _build_config(args)
    records = snapshot(config, t=args.t)
    lines = [CSV_HEADER]
    for r in records:
        lines.append(",".join([
            r.representation, str(r.n), str(r.m), format_value(r.time),
            format_value(r.concurrence), format_value(r.discord),
            format_value(r.discord_a), format_value(r.discord_b),
            format_value(r.classical_b), format_value(r.mutual_info),
            format_value(r.geometric_discord)]))
    text = "\n".join(lines) + "\n"
    if config.out is None:
        sys.stdout.write(text)
    else:
        with open(config.out, "w", newline="") as fh:
            fh.write(text)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = run_verification(max_sites=args.max_n)
    failed = 0
    for res in results:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    if failed:
        print(f"{failed} of {len(results)} checks failed", file=sys.stderr)
        return 1
    print(f"all {len(results)} checks passed")
    return 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    path, checks = reproduce(args.figure, out_dir=args.out)
    print(f"wrote {path}")
    failed = 0
    for res in checks:
        status = "PASS" if res.passed else "FAIL"
        print(f"{status} {res.name}: {res.detail}")
        failed += 0 if res.passed else 1
    return 1 if failed else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xychain",
        description="Correlation dynamics of an open XY spin chain with one"
                    " polarized node")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="stream the correlation CSV over"
                                           " a time grid")
    _add_run_options(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_snap = sub.add_parser("snapshot", help="print all configured pairs at"
                                             " one instant")
    _add_run_options(p_snap)
    p_snap.add_argument("--t", type=float, default=0.0,
                        help="evaluation time (default 0)")
    p_snap.set_defaults(func=_cmd_snapshot)

    p_verify = sub.add_parser("verify", help="run the exact-diagonalization"
                                             " cross-checks")
    p_verify.add_argument("--max-n", type=int, default=6,
                          metavar=f"N<={MAX_ORACLE_SITES}",
                          help="largest chain length checked against the"
                               " dense oracle (default 6)")
    p_verify.set_defaults(func=_cmd_verify)

    p_repro = sub.add_parser("reproduce", help="regenerate benchmark figure"
                                               " data and scalars")
    p_repro.add_argument("figure", choices=list(FIGURE_IDS))
    p_repro.add_argument("--out", default=".",
                         help="output directory (default: current)")
    p_repro.set_defaults(func=_cmd_reproduce)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
