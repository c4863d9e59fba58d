"""Command-line front end.

Exit status: 0 when everything checked out, 1 on a mathematical mismatch,
2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .checks import R3_DIVERGENCE, first_failure, verify_range
from .classification import class_table, class_table_json, closed_form_count, count_classes
from .errors import InvalidName
from .hyperelliptic import catalog_json
from .permgroup import GroupName
from .sphere_actions import (
    RotationType,
    enumerate_descriptors,
    maximal_types,
    sorted_names,
    to_json,
)


def _dump(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(c) for c in row] for row in rows]
    widths = [max([len(h)] + [len(row[i]) for row in cells]) for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines)


def _r(value: str) -> int:
    r = int(value)
    if r < 3:
        raise argparse.ArgumentTypeError("r must be >= 3")
    return r


def _g(value: str) -> int:
    g = int(value)
    if g < 2:
        raise argparse.ArgumentTypeError("g must be >= 2")
    return g


def _group(value: str) -> GroupName:
    aliases = {"tetrahedral": "A4", "octahedral": "S4", "icosahedral": "A5"}
    try:
        name = GroupName.parse(aliases.get(value.lower(), value))
        RotationType.from_group_name(name)
    except (InvalidName, ValueError):
        raise argparse.ArgumentTypeError(f"not a rotation group: {value!r} (try Z5, D4, A4, S4, A5)")
    return name


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sphere-mcg",
        description="Finite subgroups of the sphere mapping class group and their hyperelliptic lifts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def fmt(p):
        p.add_argument("--format", choices=("json", "table"), default="table")

    p = sub.add_parser("classify", help="maximal finite subgroup types at r")
    p.add_argument("--r", type=_r, required=True)
    p.add_argument("--mode", choices=("derived", "congruence"), default="derived")
    fmt(p)

    p = sub.add_parser("descriptors", help="all action descriptors at r")
    p.add_argument("--r", type=_r, required=True)
    p.add_argument("--type", type=_group, dest="rot")
    fmt(p)

    p = sub.add_parser("conjugacy", help="conjugacy class table at r")
    p.add_argument("--r", type=_r, required=True)
    p.add_argument("--iso", type=_group)
    fmt(p)

    p = sub.add_parser("hyperelliptic", help="maximal finite subgroups in genus g")
    p.add_argument("--g", type=_g, required=True)
    p.add_argument("--verify", action="store_true")
    fmt(p)

    p = sub.add_parser("verify-range", help="run every invariant sweep")
    p.add_argument("--r-min", type=_r, required=True)
    p.add_argument("--r-max", type=_r, required=True)
    p.add_argument("--g-min", type=_g, required=True)
    p.add_argument("--g-max", type=_g, required=True)
    p.add_argument("--strict", action="store_true", help="treat the r=3 divergence as a failure")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verify-g", type=_g, action="append", default=[],
                   help="extra genus for the full lift check (repeatable)")
    fmt(p)
    return parser


def _classify(args) -> int:
    names = sorted_names(maximal_types(args.r, args.mode))
    if args.r == 3:
        print(f"warning: {R3_DIVERGENCE}", file=sys.stderr)
    if args.format == "json":
        print(_dump({"r": args.r, "maximal": [x.label for x in names]}))
    else:
        print(_table(["type", "order"], [[x.label, x.order] for x in names]))
    return 0


def _descriptor_rows(objs: list[dict], extra: tuple[str, ...] = ()) -> str:
    headers = ["type", "order", "marked", "free_orbits", "maximal", *extra]
    rows = [[o["type"], o["group_order"], ",".join(o["marked"]) or "-", o["free_orbits"],
             "yes" if o["maximal"] else "no", *(o[e] for e in extra)] for o in objs]
    return _table(headers, rows)


def _descriptors(args) -> int:
    rot = RotationType.from_group_name(args.rot) if args.rot else None
    objs = [to_json(d) for d in enumerate_descriptors(args.r, rot)]
    if args.format == "json":
        print(_dump(objs))
    else:
        print(_descriptor_rows(objs))
    return 0


def _conjugacy(args) -> int:
    objs = class_table_json(args.r, args.iso)
    if args.iso is not None:
        enumerative = count_classes(args.r, args.iso, "enumerative")
        closed = closed_form_count(args.r, args.iso)
        if args.format == "json":
            print(_dump({"r": args.r, "iso": args.iso.label, "classes": enumerative,
                         "closed_form": closed, "descriptors": objs}))
        else:
            print(f"r={args.r} {args.iso.label}: {enumerative} classes (closed form {closed})")
            if objs:
                print(_descriptor_rows(objs, ("class_id", "conjugate_to")))
        return 0 if enumerative == closed else 1
    if args.format == "json":
        print(_dump(objs))
    else:
        rows = [[i, str(row.invariant), str(row.representative), "yes" if row.maximal else "no"]
                for i, row in enumerate(class_table(args.r))]
        print(_table(["class", "invariant", "representative", "maximal"], rows))
    return 0


def _hyperelliptic(args) -> int:
    data = catalog_json(args.g, verify=args.verify)
    if args.format == "json":
        print(_dump(data))
        return 0
    headers = ["name", "base", "order", "presentation"]
    rows = [[x["name"], x["base"], x["order"], x["presentation"]] for x in data["lifts"]]
    if args.verify:
        headers.append("evidence")
        for row, x in zip(rows, data["lifts"]):
            ev = x["evidence"]
            row.append(f"|G|={ev['enumerated_order']} |Z|={ev['center_order']} "
                       f"G/<z>~{x['base']}" + "".join(f"; {n}" for n in ev["notes"]))
    print(f"g={args.g}: {len(rows)} conjugacy classes of maximal finite subgroups")
    print(_table(headers, rows))
    return 0


def _verify_range(args) -> int:
    if args.r_min > args.r_max or args.g_min > args.g_max:
        print("error: empty range", file=sys.stderr)
        return 2
    results = verify_range(args.r_min, args.r_max, args.g_min, args.g_max,
                           jobs=max(1, args.jobs), verify_g=args.verify_g)
    if args.strict:
        for res in results:
            if res.name == "maximal-types" and res.warnings:
                res.failures.extend(res.warnings)
                res.warnings = []
    if args.format == "json":
        print(_dump([{"check": res.name, "checked": res.checked, "ok": res.ok,
                      "failures": res.failures[:5], "warnings": res.warnings} for res in results]))
    else:
        rows = [[res.name, res.checked, "ok" if res.ok else f"FAIL ({len(res.failures)})",
                 "; ".join(res.warnings)] for res in results]
        print(_table(["check", "cases", "status", "warnings"], rows))
    failure = first_failure(results)
    if failure:
        print(f"first counterexample: {failure}", file=sys.stderr)
        return 1
    return 0


_COMMANDS = {
    "classify": _classify,
    "descriptors": _descriptors,
    "conjugacy": _conjugacy,
    "hyperelliptic": _hyperelliptic,
    "verify-range": _verify_range,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
