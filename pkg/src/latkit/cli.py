"""Command-line surface.

Exit codes: 0 = verdict computed (negative mathematical verdicts
included), 1 = a verification run disagreed or a scan found a
counterexample, 2 = invalid input.  Identical invocations produce
byte-identical --json output.
"""

import argparse
import json
import os
import sys

from . import serialize
from .classifier import check_theorem
from .enumeration import (
    DEFAULT_ENUM_CAP,
    conjecture1_scan,
    filter_lattices,
    iter_lattices,
    verify_corpus,
)
from .errors import (
    CounterexampleFound,
    LatkitError,
    M3N5Disagreement,
    TheoremDisagreement,
)
from .freeterm import canonical, format_term, free_leq, parse as parse_term
from .jonsson import d_sequence
from .ladder import decorate, ladder_split, window
from .properties import check_property
from .subalgebra import gadget, gadget_census

PROPERTIES = (
    "modular",
    "distributive",
    "sd-join",
    "sd-meet",
    "sd",
    "whitman",
    "forbidden-m3",
    "forbidden-n5",
)


def _dump(payload):
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _load(path):
    try:
        return serialize.load_lattice(path)
    except FileNotFoundError:
        raise LatkitError(f"no such file: {path}")
    except (ValueError, json.JSONDecodeError) as exc:
        raise LatkitError(f"cannot read lattice from {path}: {exc}")


def _cmd_check(args):
    L = _load(args.file)
    report = check_property(L, args.property)
    _dump(report.to_json_dict())
    return 0


def _cmd_dseq(args):
    L = _load(args.file)
    _dump(d_sequence(L).to_json_dict())
    return 0


def _cmd_classify(args):
    L = _load(args.file)
    try:
        verdict = check_theorem(L)
    except TheoremDisagreement as exc:
        print(f"theorem disagreement: {exc}", file=sys.stderr)
        return 1
    _dump(verdict.to_json_dict())
    return 0


def _cmd_gadget(args):
    L = _load(args.file)
    for name, value in (("a", args.a), ("b", args.b), ("c", args.c)):
        if not 0 <= value < L.n:
            raise LatkitError(f"element {name}={value} out of range for n={L.n}")
    report = gadget(L, args.a, args.b, args.c)
    _dump(report.to_json_dict())
    return 0


def _cmd_gadget_census(args):
    census = gadget_census(iter_lattices(args.max_n), jobs=args.jobs)
    _dump(census.to_json_dict())
    ok = len(census.iso_classes) <= 6 and len(census.fingerprints) <= 7
    return 0 if ok else 1


def _cmd_free(args):
    expected = 2 if args.action == "leq" else 1
    if len(args.terms) != expected:
        raise LatkitError(
            f"free {args.action} takes {expected} term(s), got {len(args.terms)}"
        )
    if args.action == "leq":
        s, t = parse_term(args.terms[0]), parse_term(args.terms[1])
        verdict = free_leq(s, t)
        if args.json:
            _dump({"s": format_term(s), "t": format_term(t), "leq": verdict})
        else:
            print("true" if verdict else "false")
        return 0
    term = parse_term(args.terms[0])
    result = canonical(term)
    if args.json:
        _dump({"input": format_term(term), "canonical": format_term(result)})
    else:
        print(format_term(result))
    return 0


def _cmd_ladder(args):
    W = window(args.radius)
    if args.file and args.file != "none":
        with open(args.file, "r", encoding="utf-8") as handle:
            spec = json.load(handle)
        W = decorate(W, spec)
    report = ladder_split(W, a=args.a, b=args.b)
    _dump(report.to_json_dict())
    return 0


def _cmd_enum(args):
    wanted = [p for p in (args.property or "").split(",") if p]
    pool = [
        L
        for L in iter_lattices(args.max_n, cap=args.cap)
        if args.width is None or L.width() == args.width
    ]
    emitted = 0
    for L in filter_lattices(pool, wanted, jobs=args.jobs):
        _dump(serialize.to_json_dict(L))
        if args.emit:
            os.makedirs(args.emit, exist_ok=True)
            path = os.path.join(args.emit, f"lat_{L.n}_{emitted:05d}.json")
            serialize.save_lattice(L, path)
        emitted += 1
    print(f"emitted {emitted} lattices", file=sys.stderr)
    return 0


def _cmd_scan(args):
    report = conjecture1_scan(args.max_n)
    payload = report.to_json_dict()
    if not args.full:
        payload.pop("entries")
    _dump(payload)
    problems = report.sd_failures or report.decomposition_failures
    return 1 if problems else 0


def _cmd_verify(args):
    if args.what == "gj":
        checked = 0
        try:
            for L in iter_lattices(args.max_n):
                check_theorem(L)
                checked += 1
        except TheoremDisagreement as exc:
            print(f"disagreement after {checked} lattices: {exc}", file=sys.stderr)
            return 1
        _dump({"checked": checked, "max_n": args.max_n, "pass": True})
        return 0
    try:
        report = verify_corpus(max_n=args.max_n, jobs=args.jobs)
    except (TheoremDisagreement, CounterexampleFound, M3N5Disagreement) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1
    _dump(report)
    return 0 if report["pass"] else 1


def _cmd_render(args):
    L = _load(args.file)
    text = serialize.to_dot(L)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        print(text, end="")
    return 0


def build_parser():
    top = argparse.ArgumentParser(
        prog="latkit", description="finite lattice toolkit"
    )
    sub = top.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="evaluate a property of a lattice file")
    p.add_argument("file")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    p.add_argument("--json", action="store_true", help="json output (default)")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("dseq", help="Jonsson D-sequence and quadrant")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_dseq)

    p = sub.add_parser("classify", help="structure-theorem verdict")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("gadget", help="gadget report for a triple")
    p.add_argument("file")
    p.add_argument("a", type=int)
    p.add_argument("b", type=int)
    p.add_argument("c", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_gadget)

    p = sub.add_parser("gadget-census", help="census over all small lattices")
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_gadget_census)

    p = sub.add_parser("free", help="free-lattice word problem")
    p.add_argument("action", choices=("leq", "canon"))
    p.add_argument("terms", nargs="+")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_free)

    p = sub.add_parser("ladder", help="ladder splitting on a window")
    p.add_argument("action", choices=("split",))
    p.add_argument("file", help="decoration spec json, or 'none'")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--a", type=int, default=None, help="cover bottom (default: (0,0))")
    p.add_argument("--b", type=int, default=None, help="cover top (default: (1,0))")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_ladder)

    p = sub.add_parser("enum", help="stream all lattices up to a size")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUM_CAP)
    p.add_argument("--width", type=int, default=None)
    p.add_argument("--property", default="", help="comma-separated filters")
    p.add_argument("--emit", default=None, help="directory for lattice files")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_enum)

    p = sub.add_parser("scan", help="conjecture evidence scans")
    p.add_argument("what", choices=("conjecture1",))
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--full", action="store_true", help="include per-lattice entries")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("verify", help="exhaustive verification runs")
    p.add_argument("what", choices=("gj", "corpus"))
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("render", help="emit DOT")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_render)

    return top


def run(argv):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 2
    try:
        return args.func(args)
    except (LatkitError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
