"""Command line interface.

Five subcommands: list the supported groups and cases, compute a
connection-derived object, check a candidate solution family, sample
admissible parameter points for a necessity argument, and audit the
published tables against recomputation.  Exit codes are limited to
0 (success), 1 (finding reported), 2 (usage or environment error) and
3 (sampler starvation).
"""

import argparse
import json
import os
import sys

from .poly import PolyError
from .liealg import ConstraintViolation, FrameVector, SamplerStarvation, make_group
from .connection import KIND_ALIASES
from .classify import (
    KIND_DISPLAY,
    OBJECTS,
    STRUCTURES,
    SolutionFamily,
    build_system,
    check_on_family,
    compute_object,
    sample_necessity,
    verify_paper_theorems,
)

FAMILIES = ("G1", "G2", "G3", "G4", "G5", "G6", "G7")

_EPILOG = (
    "parameter names: a = alpha, b = beta, g = gamma, d = delta "
    "(Greek spellings are accepted anywhere a name is read); "
    "h denotes the metric sign eta = +1 or -1 of G4"
)


def _greek_ok() -> bool:
    enc = getattr(sys.stdout, "encoding", None) or ""
    try:
        "αẽ".encode(enc)
        return True
    except (LookupError, UnicodeEncodeError):
        return False


def _parse_eta(text):
    if text is None:
        return None
    if text in ("+1", "1"):
        return 1
    if text == "-1":
        return -1
    raise argparse.ArgumentTypeError("eta must be +1 or -1")


def _group(args):
    return make_group(args.family, eta=getattr(args, "eta", None))


def _emit(payload: dict):
    print(json.dumps(payload, sort_keys=True, indent=2))


def _case_rows():
    for family in FAMILIES:
        for kind in ("bott", "canonical", "kobayashi_nomizu"):
            for structure in STRUCTURES:
                yield f"{family}/{KIND_DISPLAY[kind]}/{structure}"


def _cmd_list(args) -> int:
    greek = not args.ascii and _greek_ok()
    groups = []
    for family in FAMILIES:
        groups.extend(make_group(family, eta=e)
                      for e in ((1, -1) if family == "G4" else (None,)))
    if args.json:
        _emit({
            "schema": "1",
            "families": [L.to_json() for L in groups],
            "connections": sorted(set(KIND_DISPLAY.values())),
            "structures": list(STRUCTURES),
            "cases": list(_case_rows()),
        })
        return 0
    for L in groups:
        print(L.label())
        for (x, y), v in sorted(L.brackets.items()):
            e = "ẽ" if greek else "e"
            print(f"  [{e}{x},{e}{y}] = {v.text(greek=greek)}")
        conds = [f"{p.text(greek=greek)} = 0" for p in L.constraints.equalities]
        conds += [f"{p.text(greek=greek)} {'≠' if greek else '!='} 0"
                  for p in L.constraints.inequations]
        if conds:
            print("  where " + ", ".join(conds))
    print()
    print("cases (family/connection/structure):")
    for row in _case_rows():
        print("  " + row)
    return 0


def _cmd_compute(args) -> int:
    greek = not args.ascii and _greek_ok()
    L = _group(args)
    table = compute_object(L, args.connection, args.object)
    if args.json:
        _emit({
            "schema": "1",
            "family": L.label(),
            "connection": KIND_DISPLAY[KIND_ALIASES[args.connection.lower()]],
            "object": args.object,
            "entries": {key: value.to_json() if isinstance(value, FrameVector)
                        else value.text() for key, value in table.items()},
        })
        return 0
    print(f"{args.object} of {L.label()} ({KIND_DISPLAY[KIND_ALIASES[args.connection.lower()]]})")
    for key, value in table.items():
        print(f"  ({key}): {value.text(greek=greek)}")
    return 0


def _cmd_check(args) -> int:
    greek = not args.ascii and _greek_ok()
    L = _group(args)
    system = build_system(L, args.connection, args.structure)
    family = SolutionFamily.from_text(args.solution)
    result = check_on_family(system, family)
    if args.json:
        _emit({
            "schema": "1",
            "case": system.case_id,
            "solution": family.to_json(),
            **result.to_json(),
        })
        return 0 if result.holds else 1
    verb = "holds on" if result.holds else "fails on"
    print(f"{system.case_id} {verb} [{family.describe(greek=greek)}]")
    for (x, y, j), p in sorted(result.residuals.items()):
        print(f"  f({x},{y},{j}) = {p.text(greek=greek)}")
    return 0 if result.holds else 1


def _cmd_sample(args) -> int:
    L = _group(args)
    system = build_system(L, args.connection, args.structure)
    excluded = [SolutionFamily.from_text(t) for t in args.exclude]
    try:
        report = sample_necessity(system, excluded, args.trials, args.seed)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        _emit({"schema": "1", "case": system.case_id, "seed": args.seed,
               **report.to_json()})
        return 0
    print(f"{system.case_id}: {report.violations} of {report.trials} sampled "
          f"points violate the system (seed {args.seed})")
    if report.counterexample is not None:
        pt = report.counterexample
        print("  system holds at " + ", ".join(f"{v} = {pt[v]}" for v in sorted(pt)))
    elif report.witness is not None:
        pt = report.witness
        print("  example witness: " + ", ".join(f"{v} = {pt[v]}" for v in sorted(pt)))
    return 0


def _cmd_audit(args) -> int:
    verdicts, register = verify_paper_theorems(trials_per_case=args.trials,
                                               seed=args.seed)
    payload = {
        "schema": "1",
        "seed": args.seed,
        "trials_per_case": args.trials,
        "verdicts": [v.to_json() for v in verdicts],
        "register": register.to_json(),
    }
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                json.dump(payload, fh, sort_keys=True, indent=2)
                fh.write("\n")
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    if args.json:
        _emit(payload)
    else:
        for v in verdicts:
            print(f"{v.case_id:45s} {v.anchor:22s} {v.status}")
        print()
        print(f"discrepancy register: {len(register)} entries")
        for e in register:
            print(f"  [{e.severity}] {e.location}")
            print(f"      printed:    {e.printed}")
            print(f"      recomputed: {e.recomputed}")
    return 1 if len(register) else 0


def _add_case_arguments(sub, with_structure: bool):
    sub.add_argument("--family", required=True, choices=FAMILIES)
    sub.add_argument("--eta", type=_parse_eta, default=None,
                     help="metric sign for G4: +1 or -1")
    sub.add_argument("--connection", required=True,
                     metavar="KIND", help="levi-civita, bott, canonical or "
                     "kobayashi-nomizu (aliases: lc, b, c, k, kn)")
    if with_structure:
        sub.add_argument("--structure", required=True, choices=STRUCTURES)


def _default_seed():
    return os.environ.get("LIECODAZZI_SEED", "0")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="liecodazzi",
        description="Codazzi and quasi-statistical structures on the "
                    "Lorentzian Lie groups G1..G7, computed exactly.",
        epilog=_EPILOG)
    parser.add_argument("--ascii", action="store_true",
                        help="force ASCII parameter names in human output")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("list", help="show the groups, constraints and case ids",
                        epilog=_EPILOG)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_list)

    p = subs.add_parser("compute", help="print one derived object of a connection",
                        epilog=_EPILOG)
    _add_case_arguments(p, with_structure=False)
    p.add_argument("--object", default="connection", choices=OBJECTS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_compute)

    p = subs.add_parser("check", help="decide a residual system on a solution family",
                        epilog=_EPILOG)
    _add_case_arguments(p, with_structure=True)
    p.add_argument("--solution", required=True,
                   help='e.g. "a=0,b=0" or "a=2*h,g!=0"; = assigns, != 0 restricts')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_check)

    p = subs.add_parser("sample", help="evaluate a system at random admissible points",
                        epilog=_EPILOG)
    _add_case_arguments(p, with_structure=True)
    p.add_argument("--exclude", action="append", default=[],
                   metavar="SOLUTION", help="family to sample outside of; repeatable")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_sample)

    p = subs.add_parser("audit", help="recompute every published table and verdict",
                        epilog=_EPILOG)
    p.add_argument("--trials", type=int, default=200,
                   help="sampled points per classification case")
    p.add_argument("--seed", type=int, default=_default_seed())
    p.add_argument("--json", action="store_true")
    p.add_argument("--out", metavar="FILE", help="also write the JSON report here")
    p.set_defaults(func=_cmd_audit)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    if getattr(args, "seed", None) is not None and not isinstance(args.seed, int):
        try:
            args.seed = int(args.seed)
        except ValueError:
            print(f"error: LIECODAZZI_SEED must be an integer, got {args.seed!r}",
                  file=sys.stderr)
            return 2
    try:
        return args.func(args)
    except SamplerStarvation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ConstraintViolation, PolyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
