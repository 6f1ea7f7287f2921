#!/usr/bin/env python3
"""
hkcolor - quandle colorings of handlebody-knot diagrams

Counts G-flows and colorings by G-families of quandles, and derives tunnel
and cutting number lower bounds and constituent obstructions from them.

Usage:
    python hkcolor.py validate knot.txt
    python hkcolor.py flows catalog:trefoil --group z2 --family "dihedral(3)"
    python hkcolor.py colorings catalog:trefoil --group z2 --family "dihedral(3)" --method both
    python hkcolor.py bounds catalog:8_18 --group z2 --family "dihedral(3)" --tunnel --cut
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add src to path for direct execution
sys.path.insert(0, str(Path(__file__).parent))

from src import __version__
from src.bounds import (
    best_tunnel_lower_bound,
    constituent_obstruction_coloring,
    constituent_obstruction_flowcount,
    cutting_lower_bound,
)
from src.catalog import check_entry, get_entry, list_entries
from src.coloring import METHODS, coloring_matrix, coloring_report
from src.exceptions import (
    ConfigError,
    DescriptorError,
    FileReadError,
    HKColorError,
    MalformedRecordError,
)
from src.flows import classify_flows, enumerate_flows
from src.io_handler import (
    load_diagram,
    load_diagram_with_warnings,
    load_family,
    load_group,
    write_json_file,
    write_json_lines,
)
from src.models import MOVE_KINDS
from src.moves import walk_with_report

# Errors a user fixes by changing the command line, the input files or the environment
USAGE_ERRORS = (FileReadError, MalformedRecordError, DescriptorError, ConfigError)


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def create_argument_parser() -> argparse.ArgumentParser:
    """Create and configure the argument parser."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-o",
        "--output",
        type=Path,
        dest="output_file",
        help="Write JSON lines to this file instead of stdout",
    )
    common.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Show warnings and progress (-vv for debug logging)",
    )
    common.add_argument(
        "--text",
        action="store_true",
        help="Print human-readable lines instead of JSON",
    )
    common.add_argument(
        "--budget",
        type=_non_negative,
        help="Brute-force budget (default: HKCOLOR_BRUTE_BUDGET or 10000000)",
    )

    parser = argparse.ArgumentParser(
        prog="hkcolor",
        description="Quandle colorings of handlebody-knot diagrams",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Diagrams are files in the 'arcs n / X / V / loop' format or catalog:<name>.
Groups: trivial, z<k>, s<n>, gl(d,gf(q)) or a group file.
Families: dihedral(n), trivial(n), alexander(<field>,<t>|primitive),
          gl(d,<field>), zk(<quandle file>).

Examples:
  %(prog)s catalog
  %(prog)s flows catalog:trefoil --group s3
  %(prog)s colorings catalog:figure-eight --group z2 --family "dihedral(5)"
  %(prog)s constituent catalog:8_18 catalog:O_2 --group z2 --family "dihedral(3)" --flow 1
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    validate = commands.add_parser("validate", parents=[common], help="Check a diagram")
    validate.add_argument("diagram", help="Diagram file or catalog:<name>")

    flows = commands.add_parser("flows", parents=[common], help="Enumerate G-flows")
    flows.add_argument("diagram")
    flows.add_argument("--group", "-g", required=True)
    flows.add_argument(
        "--family", "-f", action="append", default=[],
        help="Classify flows against this family (repeatable)",
    )

    colorings = commands.add_parser("colorings", parents=[common], help="Count colorings per flow")
    colorings.add_argument("diagram")
    colorings.add_argument("--group", "-g", required=True)
    colorings.add_argument("--family", "-f", required=True)
    colorings.add_argument("--method", choices=METHODS, default="auto")

    bounds = commands.add_parser("bounds", parents=[common], help="Tunnel and cutting number bounds")
    bounds.add_argument("diagram")
    bounds.add_argument("--genus", type=_non_negative, help="Declared genus (checked)")
    bounds.add_argument("--group", "-g", required=True)
    bounds.add_argument("--family", "-f", action="append", default=[])
    bounds.add_argument("--tunnel", action="store_true", help="Tunnel bound, the best over the Alexander families")
    bounds.add_argument("--cut", action="store_true", help="Cutting bound from all families")

    constituent = commands.add_parser(
        "constituent", parents=[common], help="Test whether a small diagram can be a constituent"
    )
    constituent.add_argument("small")
    constituent.add_argument("big")
    constituent.add_argument("--small-genus", type=_non_negative)
    constituent.add_argument("--big-genus", type=_non_negative)
    constituent.add_argument("--group", "-g", required=True)
    constituent.add_argument("--family", "-f", action="append", default=[])
    constituent.add_argument("--flow", type=_non_negative, default=0, help="Flow index of the small diagram")
    constituent.add_argument("--method", choices=("coloring", "flowcount"), default="coloring")

    fuzz = commands.add_parser("fuzz", parents=[common], help="Check invariance under random moves")
    fuzz.add_argument("diagram")
    fuzz.add_argument("--group", "-g", required=True)
    fuzz.add_argument("--family", "-f", required=True)
    fuzz.add_argument("--steps", type=_non_negative, default=50)
    fuzz.add_argument("--seed", type=_non_negative, action="append", help="Walk seed (repeatable)")
    fuzz.add_argument("--moves", default=",".join(MOVE_KINDS), help="Comma-separated move kinds")

    catalog = commands.add_parser("catalog", parents=[common], help="List built-in diagrams")
    catalog.add_argument("name", nargs="?", help="Print this entry's diagram file")

    matrix = commands.add_parser("matrix", parents=[common], help="Dump the coloring matrix of a flow")
    matrix.add_argument("diagram")
    matrix.add_argument("--group", "-g", required=True)
    matrix.add_argument("--flow", type=_non_negative, default=0)

    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def print_warnings(warnings: List[str]) -> None:
    """Print report warnings to stderr."""
    for warning in warnings:
        print(f"Warning: {warning}", file=sys.stderr)


def emit(args, records: List[dict], lines: Optional[List[str]] = None) -> None:
    """Write records as JSON lines (or `lines` with --text) to the chosen output."""
    if args.output_file:
        write_json_file(records, args.output_file)
        if args.verbose:
            print(f"Output written to: {args.output_file}", file=sys.stderr)
        return
    if args.text and lines is not None:
        for line in lines:
            print(line)
        return
    write_json_lines(records, sys.stdout)


def _families(args, group) -> list:
    return [load_family(text, group) for text in args.family]


def _pick_flow(flows, index: int, diagram):
    if index >= len(flows):
        raise DescriptorError(
            f"--flow {index}", f"{diagram.name} has only {len(flows)} flows"
        )
    return flows[index]


# Commands
def cmd_validate(args) -> int:
    result = load_diagram_with_warnings(args.diagram)
    records = [result.to_dict()]
    if args.output_file:
        write_json_file(records, args.output_file)
    if result.warnings:
        for violation in result.warnings:
            print(violation)
        return 1
    print("OK")
    return 0


def cmd_flows(args) -> int:
    diagram = load_diagram(args.diagram)
    group = load_group(args.group)
    families = _families(args, group)
    classifications = classify_flows(diagram, group, families, budget=args.budget)
    records = [c.to_dict() for c in classifications]
    trivial = sum(1 for c in classifications if c.trivial)
    summary = {
        "diagram": diagram.name,
        "group": group.name,
        "flows": len(classifications),
        "trivial_relative": trivial,
        "families": [f.name for f in families],
    }
    lines = [c.row() for c in classifications]
    lines.append(f"{len(classifications)} flows, {trivial} trivial relative to the given families")
    emit(args, records + [summary], lines)
    return 0


def cmd_colorings(args) -> int:
    diagram = load_diagram(args.diagram)
    group = load_group(args.group)
    family = load_family(args.family, group)
    report = coloring_report(diagram, group, family, method=args.method, budget=args.budget)
    if args.verbose:
        print_warnings(report.warnings)
    lines = []
    for row in report.rows:
        line = f"flow {row.flow.index}: colorings={row.count}"
        if row.dimension is not None:
            line += f" dim={row.dimension}"
        if row.agree is not None:
            line += f" brute={row.brute_count} agree={'yes' if row.agree else 'NO'}"
        lines.append(line)
    multiset = ", ".join(f"{k}x{v}" for k, v in sorted(report.multiset.items()))
    lines.append(f"multiset {{{multiset}}}")
    emit(args, report.records(), lines)
    return 0 if report.agree else 1


def cmd_bounds(args) -> int:
    diagram = load_diagram(args.diagram)
    group = load_group(args.group)
    families = _families(args, group)
    want_tunnel = args.tunnel or not args.cut
    want_cut = args.cut or not args.tunnel
    reports = []
    if want_tunnel:
        reports.append(best_tunnel_lower_bound(diagram, args.genus, families, budget=args.budget))
    if want_cut:
        reports.append(cutting_lower_bound(diagram, args.genus, group, families, budget=args.budget))

    records, lines = [], []
    for report in reports:
        if args.verbose:
            print_warnings(report.warnings)
        records.extend(report.records())
        lines.append(
            f"{report.kind:<8} >= {report.value:<3} raw {str(report.raw_value):<18} genus {report.genus}"
        )
    emit(args, records, lines)
    return 0


def cmd_constituent(args) -> int:
    small = load_diagram(args.small)
    big = load_diagram(args.big)
    group = load_group(args.group)
    families = _families(args, group)
    if args.method == "flowcount":
        report = constituent_obstruction_flowcount(
            small, big, group, families, args.small_genus, args.big_genus, budget=args.budget
        )
    else:
        linear = [f for f in families if f.is_linear]
        if not linear:
            raise DescriptorError("--family", "the coloring test needs an Alexander family")
        flow = _pick_flow(enumerate_flows(small, group, args.budget), args.flow, small)
        report = constituent_obstruction_coloring(
            small, args.small_genus, flow, big, args.big_genus, linear[0], budget=args.budget
        )
    if args.verbose:
        print_warnings(report.warnings)
    lines = [f"{report.small} in {report.big}: {report.verdict}"]
    emit(args, report.records(), lines)
    return 0 if report.obstructed else 1


def cmd_fuzz(args) -> int:
    diagram = load_diagram(args.diagram)
    group = load_group(args.group)
    family = load_family(args.family, group)
    kinds = [k.strip().upper() for k in args.moves.split(",") if k.strip()]
    unknown = [k for k in kinds if k not in MOVE_KINDS]
    if unknown or not kinds:
        raise DescriptorError(args.moves, f"move kinds must be among {', '.join(MOVE_KINDS)}")

    baseline = coloring_report(diagram, group, family, budget=args.budget).multiset
    records, lines = [], []
    preserved = True
    for seed in args.seed or [None]:
        walk = walk_with_report(diagram, args.steps, seed=seed, kinds=kinds)
        multiset = coloring_report(walk.diagram, group, family, budget=args.budget).multiset
        same = multiset == baseline
        preserved = preserved and same
        record = walk.to_dict()
        record["preserved"] = same
        record["multiset"] = {str(k): v for k, v in sorted(multiset.items())}
        records.append(record)
        if args.verbose:
            print_warnings(walk.warnings)
        lines.append(
            f"seed {walk.seed}: {len(walk.applied)} moves, "
            + ("invariant preserved" if same else "INVARIANT CHANGED")
        )
    emit(args, records, lines)
    return 0 if preserved else 1


def cmd_catalog(args) -> int:
    if args.name:
        try:
            entry = get_entry(args.name)
        except KeyError as e:
            raise FileReadError(f"catalog:{args.name}", str(e.args[0]), "diagram")
        sys.stdout.write(entry.payload_text())
        return 0
    entries = list_entries()
    problems = [p for entry in entries for p in check_entry(entry)]
    print_warnings(problems)
    records = [entry.to_dict() for entry in entries]
    lines = [
        f"{r['name']:<16} genus {r['genus']}  arcs {r['arcs']:<3} {r['provenance']}" for r in records
    ]
    emit(args, records, lines)
    return 1 if problems else 0


def cmd_matrix(args) -> int:
    diagram = load_diagram(args.diagram)
    group = load_group(args.group)
    flow = _pick_flow(enumerate_flows(diagram, group, args.budget), args.flow, diagram)
    dump = coloring_matrix(diagram, flow).dump()
    if args.output_file:
        args.output_file.write_text(dump, encoding="utf-8")
    else:
        sys.stdout.write(dump)
    return 0


COMMANDS = {
    "validate": cmd_validate,
    "flows": cmd_flows,
    "colorings": cmd_colorings,
    "bounds": cmd_bounds,
    "constituent": cmd_constituent,
    "fuzz": cmd_fuzz,
    "catalog": cmd_catalog,
    "matrix": cmd_matrix,
}


def main(args: List[str] = None) -> int:
    """
    Main entry point for the CLI.

    Args:
        args: Command line arguments (uses sys.argv if None)

    Returns:
        Exit code: 0 success, 1 domain failure or no obstruction,
        2 usage or I/O error
    """
    parser = create_argument_parser()
    try:
        parsed_args = parser.parse_args(args)
    except SystemExit as e:
        return int(e.code or 0)
    configure_logging(parsed_args.verbose)

    try:
        return COMMANDS[parsed_args.command](parsed_args)

    except USAGE_ERRORS as e:
        print(f"Error: {e}", file=sys.stderr)
        return 2

    except HKColorError as e:
        print(f"Error: {e}", file=sys.stderr)
        return 1

    except Exception as e:
        print(f"Unexpected error: {e}", file=sys.stderr)
        if parsed_args.verbose:
            import traceback

            traceback.print_exc()
        return 1


if __name__ == "__main__":
    sys.exit(main())
