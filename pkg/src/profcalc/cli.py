"""Command-line surface: validate files, run compositions, run suites.

Exit codes: 0 success, 1 validation or check failure, 2 parse error,
3 bound exceeded (substitution).
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import serialize
from .colim import coend
from .day import day_convolve
from .fincat import BoundExceeded, EndpointMismatch, FinCat, NonInvertible, validate_category
from .presheaf import Presheaf, kan_extend
from .prof import Profunctor, kleisli_compose, prof_compose, tau, tau_inv
from .suites import SUITE_NAMES, SuiteConfig, format_suite_text, run_suite
from .symmon import SymSeq, subst_compose


def _load(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise serialize.ParseError(str(exc)) from exc
    return serialize.loads(text)


def _emit(obj, out: str | None) -> None:
    text = serialize.dumps(obj, indent=2)
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


def _print_witnesses(quotients) -> None:
    # classes listed with representatives first
    for key in sorted(quotients, key=repr):
        q = quotients[key]
        classes = q.classes if hasattr(q, "classes") else q.quotient.classes
        print(f"witnesses at {key!r}:", file=sys.stderr)
        for cls in classes:
            print("  " + " ~ ".join(repr(x) for x in cls), file=sys.stderr)


def cmd_validate(args) -> int:
    try:
        obj = _load(args.path)
    except serialize.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    if isinstance(obj, FinCat):
        report = validate_category(obj)
        if not report.ok:
            for line in report.violations:
                print(f"violation: {line}", file=sys.stderr)
            return 1
    print("ok")
    return 0


def cmd_compose(args) -> int:
    try:
        if args.kind == "prof":
            g, f = _load(args.inputs[0]), _load(args.inputs[1])
            result = prof_compose(g, f)
            _emit(result, args.out)
            if args.show_witnesses:
                _print_witnesses(result.coends)
        elif args.kind == "kleisli":
            g, f = _load(args.inputs[0]), _load(args.inputs[1])
            composite = kleisli_compose(tau(g), tau(f))
            result = tau_inv(composite)
            _emit(result, args.out)
            if args.show_witnesses:
                _print_witnesses({x: composite.on_obj[x].coends for x in composite.on_obj})
        elif args.kind == "day":
            mon, f1, f2 = (_load(p) for p in args.inputs[:3])
            result = day_convolve(mon, f1, f2)
            _emit(result, args.out)
            if args.show_witnesses:
                _print_witnesses(result.coends)
        elif args.kind == "subst":
            g, f = _load(args.inputs[0]), _load(args.inputs[1])
            result = subst_compose(g, f, args.m_bound)
            _emit(result, args.out)
            if args.show_witnesses:
                _print_witnesses(result.quotients)
        else:
            print(f"unknown kind {args.kind!r}", file=sys.stderr)
            return 2
    except serialize.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return 3
    except (EndpointMismatch, NonInvertible, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_coend(args) -> int:
    try:
        p = _load(args.path)
        if not isinstance(p, Profunctor) or p.source != p.target:
            print("coend needs a profunctor with matching endpoints", file=sys.stderr)
            return 1
        result = coend(p.source, p.as_bifunctor())
        _emit(result.quotient, args.out)
    except serialize.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_kan(args) -> int:
    try:
        p = _load(args.functor)
        arg = _load(args.presheaf)
        if not isinstance(p, Profunctor) or not isinstance(arg, Presheaf):
            print("kan needs a profunctor and a presheaf", file=sys.stderr)
            return 1
        result = kan_extend(tau(p), arg)
        _emit(result, args.out)
    except serialize.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (EndpointMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_suite(args) -> int:
    config = SuiteConfig(
        seed=args.seed,
        instances=args.instances,
        max_objects=args.max_objects,
        max_values=args.max_values,
        max_arity=args.max_arity,
        workers=args.workers,
        fault=args.fault,
        fault_index=args.fault_index,
    )
    started = time.monotonic()
    try:
        result = run_suite(args.name, config)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    elapsed = time.monotonic() - started
    if args.format == "json":
        print(json.dumps(result, indent=2, sort_keys=True))
    else:
        print(format_suite_text(result, show_witnesses=args.show_witnesses))
    if "warning" in result:
        print(f"warning: {result['warning']}", file=sys.stderr)
    # timing stays out of the report so reruns are byte-identical
    print(f"elapsed: {elapsed:.2f}s", file=sys.stderr)
    return 0 if result["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="profcalc",
        description="exact finite-scale profunctor calculus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a serialized object")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("compose", help="compose serialized objects")
    p.add_argument("--kind", required=True, choices=["prof", "kleisli", "day", "subst"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out")
    p.add_argument("--m-bound", type=int, default=None)
    p.add_argument("--show-witnesses", action="store_true")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("coend", help="coend of an endo-profunctor")
    p.add_argument("path")
    p.add_argument("--out")
    p.set_defaults(func=cmd_coend)

    p = sub.add_parser("kan", help="extend a profunctor and apply it to a presheaf")
    p.add_argument("functor")
    p.add_argument("presheaf")
    p.add_argument("--out")
    p.set_defaults(func=cmd_kan)

    p = sub.add_parser("day", help="Day convolution of two presheaves")
    p.add_argument("inputs", nargs=3, metavar=("MONOIDAL", "F1", "F2"))
    p.add_argument("--out")
    p.add_argument("--show-witnesses", action="store_true")
    p.set_defaults(func=cmd_compose, kind="day", m_bound=None)

    p = sub.add_parser("subst", help="substitution composite of two symmetric sequences")
    p.add_argument("inputs", nargs=2, metavar=("G", "F"))
    p.add_argument("--out")
    p.add_argument("--m-bound", type=int, default=None)
    p.add_argument("--show-witnesses", action="store_true")
    p.set_defaults(func=cmd_compose, kind="subst")

    p = sub.add_parser("suite", help="run a named check suite")
    p.add_argument("name", choices=list(SUITE_NAMES))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--instances", type=int, default=5)
    p.add_argument("--max-objects", type=int, default=4)
    p.add_argument("--max-values", type=int, default=3)
    p.add_argument("--max-arity", type=int, default=3)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--fault", choices=["mu", "eta", "theta", "unit", "comp"], default=None)
    p.add_argument("--fault-index", type=int, default=0)
    p.add_argument("--format", choices=["json", "text"], default="text")
    p.add_argument("--show-witnesses", action="store_true")
    p.set_defaults(func=cmd_suite)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
