"""Command-line front end: ``capgeom <command> ...``.

Exit codes: 0 when every executed check passes, 1 when a check fails,
2 on usage or infrastructure errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .caps import (
    PointSet,
    cap_size_bound,
    chord_profile,
    complete_cap_search,
    expected_chord_number,
    is_cap,
    is_complete,
)
from .constructions import CONSTRUCTIONS, construct
from .errors import CapGeomError
from .singer import build_singer, orbit_cap_filter, subgroup_orbits
from .space import pg
from .verify import Limits, verify_paper

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class PointFileError(CapGeomError):
    pass


def read_points(text: str) -> PointSet:
    """Parse ``PG r q`` followed by one comma-separated point per line."""
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise PointFileError("empty point file")
    head = rows[0].split()
    if len(head) != 3 or head[0] != "PG":
        raise PointFileError(f"bad header {rows[0]!r}, expected 'PG r q'")
    try:
        r, q = int(head[1]), int(head[2])
    except ValueError:
        raise PointFileError(f"bad header {rows[0]!r}") from None
    space = pg(r, q)
    coords = []
    for lineno, ln in enumerate(rows[1:], start=2):
        try:
            v = [int(x) for x in ln.split(",")]
        except ValueError:
            raise PointFileError(f"line {lineno}: not a list of integers: {ln!r}") from None
        if len(v) != r + 1:
            raise PointFileError(f"line {lineno}: expected {r + 1} coordinates")
        if any(x < 0 or x >= q for x in v):
            raise PointFileError(f"line {lineno}: coordinates must lie in 0..{q - 1}")
        coords.append(v)
    ids = [space.id_of(v) for v in coords]
    if len(set(ids)) != len(ids):
        raise PointFileError("the file lists the same projective point twice")
    return PointSet(space, ids)


def format_points(s: PointSet) -> str:
    lines = [f"PG {s.space.r} {s.space.q}"]
    lines += [",".join(str(x) for x in c) for c in s.coords()]
    return "\n".join(lines) + "\n"


def _load(path: str) -> PointSet:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return read_points(text)


def cmd_construct(args) -> int:
    params = {k: getattr(args, k) for k in ("q", "r", "b") if getattr(args, k) is not None}
    desc = CONSTRUCTIONS[args.name]
    missing = [p for p in desc.params if p not in params]
    if missing:
        print(f"{args.name} needs --{' --'.join(missing)} ({desc.constraint})", file=sys.stderr)
        return EXIT_USAGE
    s = construct(args.name, **{p: params[p] for p in desc.params})
    out = format_points(s)
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def cmd_check(args) -> int:
    s = _load(args.points)
    res = is_cap(s)
    if not res:
        pts = "; ".join(",".join(map(str, s.space.point(i))) for i in res.witness)
        print(f"not a cap: collinear points {pts}")
        return EXIT_FAIL
    print(f"cap of size {len(s)} in {s.space}; complete: {'yes' if is_complete(s) else 'no'}")
    return EXIT_OK


def cmd_chord(args) -> int:
    s = _load(args.points)
    res = is_cap(s)
    if not res:
        print(f"not a cap: collinear PointIds {res.witness}")
        return EXIT_FAIL
    prof = chord_profile(s)
    k, m, q = len(s), s.space.n - len(s), s.space.q
    c = expected_chord_number(k, m, q)
    print(f"chord numbers over {m} external points: min {prof.min}, max {prof.max}")
    print(f"k(k-1)(q-1)/2m = {c}")
    ok = prof.is_constant and c.denominator == 1 and prof.min == c
    print("constant and equal to the formula" if ok else "not constant or not equal to the formula")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_singer(args) -> int:
    space = pg(args.r, args.q)
    part = subgroup_orbits(build_singer(space), args.N)
    verdicts = orbit_cap_filter(space, part)
    print(f"{space}: {len(part)} orbits of size {part.sizes()[0]}")
    for i, (o, v) in enumerate(zip(part.orbits, verdicts)):
        print(f"orbit {i}: first point {space.point(int(o[0]))}, {'cap' if v else 'not a cap'}")
    print(f"{sum(map(bool, verdicts))} of {len(part)} orbits are caps")
    return EXIT_OK


def cmd_search(args) -> int:
    space = pg(args.r, args.q)
    res = complete_cap_search(space, limit=args.limit)
    bound = cap_size_bound(args.r, args.q)
    print(f"{space}: largest cap {res.max_size} ({res.nodes} nodes); known value {bound}")
    print("example: " + "; ".join(",".join(map(str, space.point(i))) for i in res.example))
    ok = res.max_size == bound.value if bound.exact else res.max_size <= bound.value
    return EXIT_OK if ok else EXIT_FAIL


def cmd_verify(args) -> int:
    limits = Limits.from_env(group_limit=args.limit, union_nodes=args.union_nodes)
    report = verify_paper(limits, workers=args.workers)
    sys.stdout.write(report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="capgeom", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="print a named point set")
    c.add_argument("name", choices=sorted(CONSTRUCTIONS))
    c.add_argument("--q", type=int)
    c.add_argument("--r", type=int)
    c.add_argument("--b", type=int)
    c.add_argument("--out", help="write to this file instead of stdout")
    c.set_defaults(func=cmd_construct)

    for name, fn, help_ in (
        ("check", cmd_check, "test whether a point file is a cap"),
        ("chord", cmd_chord, "chord-number profile of a cap"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--points", required=True, help="point file, or - for stdin")
        p.set_defaults(func=fn)

    s = sub.add_parser("singer", help="orbits of a Singer subgroup")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--N", type=int, required=True, help="index of the subgroup (a divisor of the point count)")
    s.set_defaults(func=cmd_singer)

    se = sub.add_parser("search", help="exhaustive largest-cap search")
    se.add_argument("--r", type=int, required=True)
    se.add_argument("--q", type=int, required=True)
    se.add_argument("--limit", type=int, default=121, help="largest space (in points) to search")
    se.set_defaults(func=cmd_search)

    v = sub.add_parser("verify-paper", help="run every classification check")
    fmt = v.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--text", dest="format", action="store_const", const="text")
    v.add_argument("--limit", type=int, help="largest collineation group enumerated by brute force")
    v.add_argument("--union-nodes", type=int, help="node budget per divisor in orbit-union searches")
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify, format="text")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CapGeomError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
