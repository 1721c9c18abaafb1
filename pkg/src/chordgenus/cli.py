"""Command-line interface.

Subcommands:

* ``genus``     — boundary-loop count and genus of given diagrams;
* ``enumerate`` — exact statistics over all diagrams of a small order;
* ``sample``    — Monte-Carlo statistics over uniform random diagrams;
* ``procedure`` — one seeded run of the incremental generator;
* ``plugs``     — plug statistics over procedure prefixes.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error,
3 when a bound report contains a failed check.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from ._version import __version__
from .bounds import BoundReport, bound_report
from .diagrams import parse_diagram
from .errors import DiagramError, IncompleteDiagram, ProcedureError
from .procedure import init_procedure, step
from .reporting import save_bytes, write_csv, write_json
from .stats import exact_stats, mc_stats, plug_mc_stats
from .walk import boundary_count, decompose, genus

__all__ = ["main", "build_parser"]


def _parse_u64(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordgenus",
        description="Genus statistics of oriented chord diagrams.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_genus = sub.add_parser(
        "genus", help="compute loop count and genus of full diagrams"
    )
    src = p_genus.add_mutually_exclusive_group(required=True)
    src.add_argument("--diagram", help='diagram text, e.g. "(1,3),(2,4)"')
    src.add_argument("--file", help="path with one diagram per line")
    p_genus.set_defaults(func=_cmd_genus)

    p_enum = sub.add_parser(
        "enumerate", help="exact statistics over all diagrams of order n"
    )
    p_enum.add_argument("--n", type=int, required=True)
    _add_output_flags(p_enum)
    p_enum.set_defaults(func=_cmd_enumerate)

    p_sample = sub.add_parser(
        "sample", help="Monte-Carlo statistics over uniform random diagrams"
    )
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--samples", type=int, required=True)
    p_sample.add_argument("--seed", type=_parse_u64, required=True)
    _add_output_flags(p_sample)
    p_sample.set_defaults(func=_cmd_sample)

    p_proc = sub.add_parser(
        "procedure", help="run the incremental generator once"
    )
    p_proc.add_argument("--n", type=int, required=True)
    p_proc.add_argument("--seed", type=_parse_u64, required=True)
    p_proc.add_argument(
        "--trace", action="store_true", help="print one line per step"
    )
    p_proc.set_defaults(func=_cmd_procedure)

    p_plugs = sub.add_parser(
        "plugs", help="plug statistics over procedure prefixes"
    )
    p_plugs.add_argument("--n", type=int, required=True)
    p_plugs.add_argument("--k-max", type=int, required=True, dest="k_max")
    p_plugs.add_argument("--runs", type=int, required=True)
    p_plugs.add_argument("--seed", type=_parse_u64, required=True)
    _add_output_flags(p_plugs)
    p_plugs.set_defaults(func=_cmd_plugs)

    return parser


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--out", help="write the report here instead of stdout")
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", dest="fmt"
    )


def _cmd_genus(args: argparse.Namespace) -> int:
    if args.diagram is not None:
        lines = [args.diagram]
    else:
        with open(args.file, "r", encoding="utf-8") as handle:
            lines = handle.read().splitlines()
    errors = 0
    for line in lines:
        text = line.strip()
        if not text:
            continue
        try:
            diagram = parse_diagram(text)
            if not diagram.is_full:
                vacant = len(diagram.vacant_dots)
                raise IncompleteDiagram(
                    f"genus needs a full diagram; {vacant} dots are vacant"
                )
            dec = decompose(diagram)
            d = len(dec.loops)
            g = (diagram.n + 2 - d) // 2
            sizes = ",".join(str(s) for s in sorted(l.size for l in dec.loops))
            print(f"n={diagram.n} d={d} g={g} loops={sizes}")
        except DiagramError as exc:
            errors += 1
            print(f"error: {exc}")
    return 1 if errors else 0


def _emit_report(args: argparse.Namespace, stats, report: BoundReport) -> None:
    writer = write_csv if args.fmt == "csv" else write_json
    data = writer(stats, report)
    if args.out:
        save_bytes(args.out, data)
        counts = {"pass": 0, "fail": 0, "insufficient": 0}
        for row in report.rows:
            counts[row.status] += 1
        print(f"wrote {args.out}")
        print(
            "bounds: {pass} pass, {fail} fail, {insufficient} insufficient".format(
                **counts
            )
        )
    else:
        sys.stdout.write(data.decode("utf-8"))


def _cmd_enumerate(args: argparse.Namespace) -> int:
    stats = exact_stats(args.n)
    report = bound_report(stats)
    _emit_report(args, stats, report)
    return 3 if report.status == "fail" else 0


def _cmd_sample(args: argparse.Namespace) -> int:
    stats = mc_stats(args.n, args.samples, args.seed)
    report = bound_report(stats)
    _emit_report(args, stats, report)
    return 3 if report.status == "fail" else 0


def _cmd_plugs(args: argparse.Namespace) -> int:
    stats = plug_mc_stats(args.n, args.k_max, args.runs, args.seed)
    report = bound_report(stats)
    _emit_report(args, stats, report)
    return 3 if report.status == "fail" else 0


def _cmd_procedure(args: argparse.Namespace) -> int:
    state = init_procedure(args.n, args.seed)
    while not state.is_complete:
        event = step(state)
        if args.trace:
            line = f"step={event.step} chord={event.chord}"
            if event.closed_loop is not None:
                loop = event.closed_loop
                line += f" loop={loop.size}x{loop.edge_count}"
            if event.new_pointer is not None:
                line += f" pointer={event.new_pointer.label(args.n)}"
            print(line)
    diagram = state.partial
    d = boundary_count(diagram)
    print(f"diagram={diagram}")
    print(f"n={diagram.n} d={d} g={genus(diagram)}")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DiagramError, ProcedureError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
