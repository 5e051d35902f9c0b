"""Command-line front end.

Single computations, verification grids, enumeration into a catalog, and
invariant comparison.  All output is JSON lines with a fixed key order per
record type, rationals as "num/den", so identical invocations are
byte-identical.  Exit codes: 0 ok, 1 a verification found a mismatch, 2
usage error (argparse), 3 an input failed validation.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog
from .frames import FareyFrame, SplitKind, splitting_tunnel_slope
from .iteration import (
    EngineMismatchError,
    SequenceKind,
    TwistSequence,
    assemble_invariants,
    oracle_slopes,
)
from .slopes import invariants_equal
from .two_bridge import cf_to_twists, semisimple_slopes, twists_to_cf, validate_cf
from .verify import run_correspondence_grid, run_oracle_grid, twist_tuples, worker_count

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INVALID = 3


def _emit(obj: dict) -> None:
    print(json.dumps(obj, separators=(",", ":"), ensure_ascii=False))


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise ValueError(f"expected comma-separated integers, got {text!r}") from None


def _cmd_split(args) -> int:
    frame = FareyFrame.parse(args.frame, bypass=args.bypass_validation)
    kind = SplitKind(args.kind)
    slope = splitting_tunnel_slope(frame, kind, args.n)
    _emit(
        {
            "frame": frame.text(),
            "kind": kind.value,
            "n": args.n,
            "slope": slope.text(),
            "coords": slope.coords,
            "flags": sorted(frame.flags),
        }
    )
    return EXIT_OK


def _cmd_iterate(args) -> int:
    frame = FareyFrame.parse(args.frame, bypass=args.bypass_validation)
    kind = SequenceKind(args.kind)
    twists = TwistSequence.parse(args.twists)
    invariants = assemble_invariants(
        frame, kind, twists, args.splitting_bit, args.from_trivial, verify=args.verify
    )
    if args.trace:
        _, trace = oracle_slopes(frame, kind, twists)
        for line in trace.json_lines():
            print(line)
    out = {
        "descriptor": catalog.descriptor_dict(
            frame, kind, twists, args.splitting_bit, args.from_trivial
        ),
        "invariants": invariants.to_dict(),
    }
    if args.verify:
        out["verified"] = True
    out["flags"] = sorted(frame.flags)
    _emit(out)
    return EXIT_OK


def _parse_cf(args):
    return validate_cf(_int_list(args.a), _int_list(args.b))


def _cmd_two_bridge_slopes(args) -> int:
    cf = _parse_cf(args)
    invariants = semisimple_slopes(cf)
    _emit(
        {
            "a": list(cf.signs),
            "b": list(cf.turns),
            "cf": cf.text(),
            "invariants": invariants.to_dict(),
            "flags": sorted(cf.flags),
        }
    )
    return EXIT_OK


def _cmd_two_bridge_to_twists(args) -> int:
    cf = _parse_cf(args)
    _emit({"a": list(cf.signs), "b": list(cf.turns), "twists": cf_to_twists(cf).text()})
    return EXIT_OK


def _cmd_two_bridge_from_twists(args) -> int:
    twists = TwistSequence.parse(args.twists)
    cf = twists_to_cf(twists)
    _emit(
        {
            "twists": twists.text(),
            "a": list(cf.signs),
            "b": list(cf.turns),
            "cf": cf.text(),
            "flags": sorted(cf.flags),
        }
    )
    return EXIT_OK


def _cmd_verify_correspondence(args) -> int:
    result = run_correspondence_grid(args.max_d, args.b_range, workers=worker_count())
    for failure in result.failures:
        _emit(failure)
    _emit({"checked": result.cases, "failures": len(result.failures)})
    return EXIT_OK if result.ok else EXIT_FAILURE


def _cmd_verify_oracle(args) -> int:
    result = run_oracle_grid(args.frame_bound, args.depth, args.n_range, workers=worker_count())
    for failure in result.failures:
        _emit(failure)
    _emit({"cases": result.cases, "mismatches": len(result.failures)})
    return EXIT_OK if result.ok else EXIT_FAILURE


def _cmd_enumerate(args) -> int:
    frame = FareyFrame.parse(args.frame, bypass=args.bypass_validation)
    kinds = [SequenceKind(value) for value in args.kind] if args.kind else list(SequenceKind)
    existing = {
        json.dumps(entry["invariants"], separators=(",", ":"))
        for entry in catalog.load_entries(args.catalog)
    }
    seen_run: set[str] = set()
    fresh_lines: list[str] = []
    points = 0
    appended = 0
    for kind in kinds:
        for tw in twist_tuples(args.depth, args.n_range):
            points += 1
            twists = TwistSequence(tw)
            invariants = assemble_invariants(
                frame, kind, twists, args.splitting_bit, args.from_trivial
            )
            key = catalog.invariants_key(invariants)
            if key in seen_run:
                continue
            seen_run.add(key)
            entry = catalog.entry_dict(
                catalog.descriptor_dict(frame, kind, twists, args.splitting_bit, args.from_trivial),
                invariants,
                frame.flags,
            )
            _emit(entry)
            if key not in existing:
                existing.add(key)
                fresh_lines.append(catalog.dump_line(entry))
                appended += 1
    catalog.append_lines(args.catalog, fresh_lines)
    _emit(
        {
            "points": points,
            "unique": len(seen_run),
            "appended": appended,
            "existing": len(seen_run) - appended,
        }
    )
    return EXIT_OK


def _cmd_compare(args) -> int:
    sides = []
    for raw in (args.left, args.right):
        descriptor = json.loads(raw)
        frame, kind, twists, bit, from_trivial = catalog.parse_descriptor(
            descriptor, bypass=args.bypass_validation
        )
        sides.append((frame, assemble_invariants(frame, kind, twists, bit, from_trivial)))
    (left_frame, left), (right_frame, right) = sides
    flags = sorted(set(left_frame.flags) | set(right_frame.flags))
    _emit(
        {
            "equal": invariants_equal(left, right),
            "left": left.to_dict(),
            "right": right.to_dict(),
            "flags": flags,
        }
    )
    return EXIT_OK


def _add_bypass(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--bypass-validation",
        action="store_true",
        help="skip frame validation; outputs get flagged unverified-bypass",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tunnelslopes",
        description="Exact slope and binary invariants of tunnels built from twisted splittings of torus knots.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    split = sub.add_parser("split", help="slope of a single splitting move")
    split.add_argument("--frame", required=True, help="p,q,r,s")
    split.add_argument("--kind", required=True, choices=[k.value for k in SplitKind])
    split.add_argument("--n", required=True, type=int, help="half-twist count, nonzero")
    _add_bypass(split)
    split.set_defaults(func=_cmd_split)

    iterate = sub.add_parser("iterate", help="complete invariant of a splitting chain")
    iterate.add_argument("--frame", required=True, help="p,q,r,s")
    iterate.add_argument("--kind", required=True, choices=[k.value for k in SequenceKind])
    iterate.add_argument("--twists", required=True, help="comma-separated nonzero counts")
    iterate.add_argument("--splitting-bit", type=int, choices=(0, 1), default=0)
    iterate.add_argument("--from-trivial", action="store_true", help="chain grown out of the trivial knot")
    iterate.add_argument("--trace", action="store_true", help="print one JSON line per join first")
    iterate.add_argument("--verify", action="store_true", help="cross-check both slope engines")
    _add_bypass(iterate)
    iterate.set_defaults(func=_cmd_iterate)

    two_bridge = sub.add_parser("two-bridge", help="2-bridge continued fraction tools")
    tb_sub = two_bridge.add_subparsers(dest="tb_command", required=True)
    for name, func, needs_cf in (
        ("slopes", _cmd_two_bridge_slopes, True),
        ("to-twists", _cmd_two_bridge_to_twists, True),
        ("from-twists", _cmd_two_bridge_from_twists, False),
    ):
        tb = tb_sub.add_parser(name)
        if needs_cf:
            tb.add_argument("--a", required=True, help="comma-separated +-1 signs, innermost first")
            tb.add_argument("--b", required=True, help="comma-separated turn integers, innermost first")
        else:
            tb.add_argument("--twists", required=True, help="comma-separated nonzero counts")
        tb.set_defaults(func=func)

    corr = sub.add_parser("verify-correspondence", help="both invariant routes over a fraction grid")
    corr.add_argument("--max-d", type=int, default=2, help="maximum depth")
    corr.add_argument("--b-range", type=int, default=2, help="turns range over [-B,B] without 0")
    corr.set_defaults(func=_cmd_verify_correspondence)

    oracle = sub.add_parser("verify-oracle", help="both slope engines over a frame/twist grid")
    oracle.add_argument("--frame-bound", type=int, default=2, help="frame entries range")
    oracle.add_argument("--depth", type=int, default=2, help="maximum twist sequence length")
    oracle.add_argument("--n-range", type=int, default=2, help="twist counts over [-N,N] without 0")
    oracle.set_defaults(func=_cmd_verify_oracle)

    enum = sub.add_parser("enumerate", help="invariants of a chain family, deduplicated into a catalog")
    enum.add_argument("--catalog", required=True, help="JSON-lines catalog path, appended to")
    enum.add_argument("--frame", required=True, help="p,q,r,s")
    enum.add_argument("--kind", action="append", choices=[k.value for k in SequenceKind],
                      help="chain kind; repeatable, default all eight")
    enum.add_argument("--depth", type=int, default=2, help="maximum twist sequence length")
    enum.add_argument("--n-range", type=int, default=2, help="twist counts over [-N,N] without 0")
    enum.add_argument("--splitting-bit", type=int, choices=(0, 1), default=0)
    enum.add_argument("--from-trivial", action="store_true")
    _add_bypass(enum)
    enum.set_defaults(func=_cmd_enumerate)

    compare = sub.add_parser("compare", help="decide whether two chain descriptors give equal invariants")
    compare.add_argument("--left", required=True, help="descriptor JSON object")
    compare.add_argument("--right", required=True, help="descriptor JSON object")
    _add_bypass(compare)
    compare.set_defaults(func=_cmd_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EngineMismatchError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAILURE
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
