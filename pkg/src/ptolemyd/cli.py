"""``ptd``: count, check, transform and render type D Ptolemy diagrams.

Exit codes: 0 success, 1 semantic negative (not Ptolemy, failed check),
2 usage, parse or budget error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import series as S
from .enumeration import (
    BudgetExceeded,
    NotPtolemy,
    MalformedGluing,
    count_type_d,
    decompose,
    iter_ptolemy_d,
    recompose,
    torsion_sets_exhaustive,
)
from .formats import (
    FormatError,
    decomposition_from_obj,
    decomposition_to_obj,
    diagram_to_obj,
    dumps,
    emit_diagram,
    parse_diagram,
)
from .geometry import ArcSet, context, nc
from .ptolemy import is_ptolemy_d, is_torsion_arcset, pt_violations, ptolemy_closure
from .render import render_svg
from .verify import FAIL, run_full, run_quick

MAX_ORDER = 64
SERIES = ("pa", "pd", "cI", "cII", "cIII", "w", "ctotal")


class UsageError(Exception):
    pass


def default_order() -> int:
    env = os.environ.get("PTD_ORDER")
    if not env:
        return 12
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"PTD_ORDER must be an integer, got {env!r}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _diagram(args) -> ArcSet:
    return parse_diagram(_read(args.file))


def _workers(args) -> int | None:
    return getattr(args, "workers", None)


def cmd_count(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    if args.method == "genfunc":
        print(S.p_d(max(args.n, 1))[args.n])
    elif args.method == "brute":
        print(count_type_d(args.n, "exhaustive", _workers(args)))
    else:
        print(count_type_d(args.n, "pruned"))
    return 0


def cmd_check(args) -> int:
    X = _diagram(args)
    ctx = context(X.n)
    ptolemy = is_ptolemy_d(ctx, X)
    torsion = is_torsion_arcset(ctx, X)
    violations = pt_violations(ctx, X) if X.n >= 2 else []
    report = {
        "n": X.n,
        "ptolemy": ptolemy,
        "torsion": torsion,
        "violations": [
            {"condition": v.condition,
             "witnesses": [str(w) for w in v.witnesses],
             "missing": [str(m) for m in v.missing]}
            for v in violations
        ],
    }
    print(json.dumps(report, indent=2))
    if ptolemy != torsion:
        print("INTERNAL ERROR: Ptolemy and nc-nc verdicts disagree", file=sys.stderr)
        return 1
    return 0 if ptolemy else 1


def cmd_nc(args) -> int:
    X = _diagram(args)
    print(emit_diagram(nc(context(X.n), X)))
    return 0


def cmd_closure(args) -> int:
    X = _diagram(args)
    if X.n < 2:
        raise UsageError("closure needs n >= 2")
    print(emit_diagram(ptolemy_closure(context(X.n), X)))
    return 0


def cmd_decompose(args) -> int:
    X = _diagram(args)
    try:
        d = decompose(context(X.n), X)
    except NotPtolemy as exc:
        print(f"not a Ptolemy diagram: {exc}", file=sys.stderr)
        return 1
    print(dumps(decomposition_to_obj(d)))
    return 0


def cmd_recompose(args) -> int:
    try:
        data = json.loads(_read(args.file))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}")
    print(emit_diagram(recompose(decomposition_from_obj(data))))
    return 0


def series_for(which: str, order: int) -> S.TruncSeries:
    if which == "pa":
        return S.solve_pa(max(order, 1)).truncate(order)
    if which == "pd":
        return S.p_d(max(order, 1)).truncate(order)
    if which in ("cI", "cII", "cIII"):
        return S.c_series(which[1:], order)
    if which == "w":
        return S.solve_w_system(max(order, 2))[3].truncate(order)
    if which == "ctotal":
        return S.c_total(order)
    raise UsageError(f"unknown series {which!r}")


def cmd_series(args) -> int:
    order = args.order if args.order is not None else default_order()
    if not 0 <= order <= MAX_ORDER:
        raise UsageError(f"--order must lie in [0, {MAX_ORDER}], got {order}")
    print(dumps(series_for(args.which, order).to_json()))
    return 0


def cmd_verify(args) -> int:
    records = run_quick() if args.level == "quick" else run_full()
    for r in records:
        print(dumps(r.to_obj()))
    failed = [r for r in records if r.status == FAIL]
    print(f"{len(records) - len(failed)}/{len(records)} checks without failure", file=sys.stderr)
    return 1 if failed else 0


def cmd_render(args) -> int:
    X = _diagram(args)
    svg = render_svg(X)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    return 0


def cmd_enumerate(args) -> int:
    if args.method == "brute":
        stream = torsion_sets_exhaustive(args.n, _workers(args))
    else:
        stream = iter_ptolemy_d(args.n)
    for bits in stream:
        print(dumps(diagram_to_obj(ArcSet(args.n, bits))))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ptd", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="number of Ptolemy diagrams of type D_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("brute", "pruned", "genfunc"), default="genfunc")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_count)

    for name, fn, help_ in (
        ("check", cmd_check, "Ptolemy and nc-nc verdicts for a diagram"),
        ("nc", cmd_nc, "arcs crossing nothing in the diagram"),
        ("closure", cmd_closure, "smallest Ptolemy diagram containing the input"),
        ("decompose", cmd_decompose, "central region and glued type A diagrams"),
        ("recompose", cmd_recompose, "rebuild a diagram from a decomposition"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--file", required=True, help="JSON input, '-' for stdin")
        p.set_defaults(func=fn)

    p = sub.add_parser("series", help="coefficients of a generating function")
    p.add_argument("--which", choices=SERIES, required=True)
    p.add_argument("--order", type=int, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("verify", help="run the cross-validation suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="draw a diagram")
    p.add_argument("--file", required=True)
    p.add_argument("--format", choices=("svg",), default="svg")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("enumerate", help="stream all diagrams as JSON lines")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("brute", "pruned"), default="pruned")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError, BudgetExceeded, MalformedGluing, ValueError) as exc:
        print(f"ptd: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
