"""
Command line interface.

Exit codes: 0 success (valid / coverable), 1 negative answer (violations,
no covering, invalid profile), 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .covering import find_exact_covering, first_open_walk
from .enumeration import EnumFilter, cross_check_theorem, enumerate_constellations
from .fileformat import ProfileDocument, ProfileParseError, parse_profile, serialize_profile
from .render import render_diagram
from .surface import surface_report
from .validation import InvalidProfile, is_connected, validate_profile_type


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _load(path: str) -> ProfileDocument:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ProfileParseError(0, 0, f"cannot read {path}: {exc.strerror}") from None
    return parse_profile(data)


def _print_violations(report, out) -> None:
    for v in report.violations:
        print(v, file=out)


def cmd_validate(args, out) -> int:
    doc = _load(args.file)
    if doc.sheet_set.periodic:
        if is_connected(doc.constellation()):
            print("ok", file=out)
            return 0
        print("DISCONNECTED () permutation group is not transitive on the integers", file=out)
        return 1
    report = validate_profile_type(doc.profile())
    if report.ok:
        print("ok", file=out)
        return 0
    _print_violations(report, out)
    return 1


def cmd_cover(args, out) -> int:
    profile = _load(args.file).profile()
    try:
        covering = find_exact_covering(profile)
    except InvalidProfile as exc:
        print("not a valid profile:", file=out)
        _print_violations(exc.report, out)
        return 1
    if covering is None:
        walk = first_open_walk(profile)
        print("no exact covering", file=out)
        print(f"walk from line {walk.start}: {walk}", file=out)
        print(f"returned to column 1 at line {walk.lines[-1]}, expected line {walk.start}", file=out)
        return 1
    if covering.period is not None:
        print(f"exact covering: {len(covering)} path families (period {covering.period})", file=out)
    else:
        print(f"exact covering: {len(covering)} paths", file=out)
    for k, path in enumerate(covering, start=1):
        print(f"path {k}: {path}", file=out)
    return 0


def _report_lines(report) -> list[str]:
    def fmt(x):
        if x is None:
            return "-"
        if isinstance(x, bool):
            return "yes" if x else "no"
        return str(x)

    lines = [
        f"sheets: {fmt(report.sheets)}",
        f"period: {fmt(report.period)}",
        f"columns: {report.q}",
        f"connected: {fmt(report.connected)}",
        f"realizable: {fmt(report.realizable)}",
        f"closed: {fmt(report.closed)}",
    ]
    for b in report.branching:
        orders = " ".join(map(str, b.orders)) or "-"
        lines.append(f"branching {b.column}: orders {orders}; logarithmic {b.logarithmic}")
    lines += [
        f"total_branching: {fmt(report.total_branching)}",
        f"euler_characteristic: {fmt(report.euler_characteristic)}",
        f"genus: {fmt(report.genus)}",
    ]
    return lines


def cmd_invariants(args, out) -> int:
    profile = _load(args.file).profile()
    try:
        report = surface_report(profile)
    except InvalidProfile as exc:
        print("not a valid profile:", file=out)
        _print_violations(exc.report, out)
        return 1
    if args.json:
        print(json.dumps(report.as_dict(), indent=2), file=out)
    else:
        print("\n".join(_report_lines(report)), file=out)
    return 0


def cmd_convert(args, out) -> int:
    doc = _load(args.file)
    try:
        text = serialize_profile(doc, args.to)
    except ValueError as exc:
        print(f"cannot convert: {exc}", file=sys.stderr)
        return 1
    out.write(text)
    return 0


def cmd_enumerate(args, out) -> int:
    if args.cross_check:
        summary = cross_check_theorem(args.sheets, args.columns)
        print(f"instances: {summary.instances}", file=out)
        print(f"coverable: {summary.coverable}", file=out)
        print(f"disagreements: {len(summary.disagreements)}", file=out)
        print(f"shape_failures: {len(summary.shape_failures)}", file=out)
        return 0 if summary.ok else 1
    filt = EnumFilter(require_transitive=args.transitive,
                      require_identity_product=args.identity_product)
    items = enumerate_constellations(args.sheets, args.columns, filt)
    if args.list:
        count = 0
        for c in items:
            count += 1
            print(" ".join(f"[{s}]" for s in c.sigmas), file=out)
        print(f"count: {count}", file=out)
    else:
        print(f"count: {sum(1 for _ in items)}", file=out)
    return 0


def cmd_render(args, out) -> int:
    profile = _load(args.file).profile()
    style = args.style or ("svg" if args.output.endswith(".svg") else "dot")
    covering = None
    if args.overlay_covering:
        try:
            covering = find_exact_covering(profile)
        except InvalidProfile:
            covering = None
        if covering is None:
            print("no exact covering to overlay", file=sys.stderr)
            return 1
    text = render_diagram(profile, style, covering)
    Path(args.output).write_text(text, encoding="ascii", newline="\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rsprofile", description="Profiles of Riemann surfaces.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check the profile-type axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("cover", help="find the exact covering or show why none exists")
    p.add_argument("file")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("invariants", help="sheets, branch data, Euler characteristic, genus")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="machine-readable JSON output")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("convert", help="write the canonical serialization")
    p.add_argument("file")
    p.add_argument("--to", choices=("sigma", "explicit"), default="sigma")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("enumerate", help="count constellations or cross-check realizability")
    p.add_argument("--sheets", type=int, required=True)
    p.add_argument("--columns", type=int, required=True)
    p.add_argument("--transitive", action="store_true")
    p.add_argument("--identity-product", action="store_true")
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("--list", action="store_true", help="print every constellation")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="draw the profile as DOT or SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--style", choices=("dot", "svg"))
    p.add_argument("--overlay-covering", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ProfileParseError as exc:
        print(f"{args.file}:{exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
