"""Command line interface.

Subcommands: validate, count, invariant, compile, examples, selftest.
Reports go to stdout, one key per line; diagnostics go to stderr.

Exit codes: 0 success, 1 axiom violation or replay failure, 2 parse or
usage error, 3 work cap exceeded.  The environment variable XMOD_WORK_CAP
sets the default step budget; --work-cap overrides it.
"""
from __future__ import annotations

import argparse
import os
import random
import sys
import time
from fractions import Fraction

from . import fixtures
from .battery import standard_battery
from .counting import (
    DEFAULT_WORK_CAP,
    count_homomorphisms,
    count_homomorphisms_naive,
    count_linear_fastpath,
    count_report,
    fastpath_applicable,
    format_count_report,
)
from .crossed import (
    FiniteCrossedModule,
    parse_crossed_module_text,
    validate_crossed_module,
)
from .errors import (
    CapExceeded,
    FastPathUnavailable,
    FormatError,
    ReplayError,
    XmodError,
)
from .fuzz import random_instances
from .movies import compile_movie, parse_movie_script
from .presentations import (
    format_presentation_text,
    parse_presentation_text,
    validate_presentation,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_CAP = 3


def _read_file(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _default_work_cap() -> int:
    raw = os.environ.get("XMOD_WORK_CAP")
    if raw is None:
        return DEFAULT_WORK_CAP
    try:
        value = int(raw)
    except ValueError:
        raise FormatError(f"XMOD_WORK_CAP must be an integer, got {raw!r}") from None
    if value < 1:
        raise FormatError("XMOD_WORK_CAP must be positive")
    return value


def _load_module(path: str) -> FiniteCrossedModule:
    cm = parse_crossed_module_text(_read_file(path))
    report = validate_crossed_module(cm)
    if not report.ok:
        first = report.violations[0]
        raise XmodError(
            f"crossed module in {path} violates {first[0]} at witness {first[1]}"
        )
    return cm


def _witness_text(witness: tuple) -> str:
    return " ".join(str(part) for part in witness)


def cmd_validate(args) -> int:
    cm = parse_crossed_module_text(_read_file(args.module))
    report = validate_crossed_module(cm)
    if report.ok:
        print("ok")
        return EXIT_OK
    for axiom, witness in report.violations:
        print(f"violation {axiom} {_witness_text(witness)}".rstrip())
    return EXIT_VIOLATION


def cmd_compile(args) -> int:
    script = parse_movie_script(_read_file(args.movie), name=args.movie)
    compiled = compile_movie(script)
    sys.stdout.write(format_presentation_text(compiled.presentation))
    print(f"one_handles {compiled.one_handles}")
    return EXIT_OK


def _load_target(path: str) -> tuple:
    """Return (presentation, default one_handles) from a pres or movie file."""
    text = _read_file(path)
    first = ""
    for raw in text.splitlines():
        content = raw.split("#", 1)[0].strip()
        if content:
            first = content
            break
    if first == "pres v1":
        pres = parse_presentation_text(text)
        report = validate_presentation(pres)
        if not report.ok:
            first_violation = report.violations[0]
            raise XmodError(
                f"presentation in {path} violates {first_violation[0]} "
                f"at witness {first_violation[1]}"
            )
        return pres, len(pres.generators)
    script = parse_movie_script(text, name=path)
    compiled = compile_movie(script)
    return compiled.presentation, compiled.one_handles


def cmd_invariant(args) -> int:
    pres, one_handles = _load_target(args.target)
    if args.one_handles is not None:
        one_handles = args.one_handles
    cm = _load_module(args.module)
    start = time.perf_counter()
    report = count_report(pres, cm, one_handles, args.method, work_cap=args.work_cap)
    elapsed_ms = round((time.perf_counter() - start) * 1000)
    sys.stdout.write(format_count_report(report, elapsed_ms))
    return EXIT_OK


def cmd_examples(args) -> int:
    names = args.names or list(fixtures.FIXTURE_NAMES)
    if names == ["all"]:
        names = list(fixtures.FIXTURE_NAMES)
    for name in names:
        if name not in fixtures.FIXTURE_NAMES:
            raise FormatError(
                f"unknown fixture {name!r}; known: {', '.join(fixtures.FIXTURE_NAMES)}"
            )
    battery = standard_battery()
    print("fixture module invariant")
    for name in names:
        compiled = compile_movie(fixtures.load_fixture(name))
        for module_name, cm in battery:
            report = count_report(
                compiled.presentation, cm, compiled.one_handles,
                work_cap=args.work_cap,
            )
            value = report.invariant
            print(f"{name} {module_name} {value.numerator}/{value.denominator}")
    return EXIT_OK


def _selftest_checks(seed: int, work_cap: int):
    battery = standard_battery()
    for name, cm in battery:
        yield f"validate {name}", lambda cm=cm: validate_crossed_module(cm).ok

    compiled = {}
    for name in fixtures.FIXTURE_NAMES:
        def check(name=name):
            result = compile_movie(fixtures.load_fixture(name))
            compiled[name] = result
            return validate_presentation(result.presentation).ok
        yield f"compile {name}", check

    def sphere_values():
        for name in ("trivial1", "trivial2", "trivial3", "trivial4"):
            for _, cm in battery:
                value = count_report(
                    compiled[name].presentation, cm, compiled[name].one_handles,
                    work_cap=work_cap,
                ).invariant
                if value != Fraction(cm.base.order, cm.fiber.order):
                    return False
        return True
    yield "unknotted sphere closed form", sphere_values

    def hopf_distinguishes():
        cm = dict(battery)["ga_z2_p2"]
        hopf = count_report(
            compiled["spun_hopf"].presentation, cm,
            compiled["spun_hopf"].one_handles, work_cap=work_cap,
        ).invariant
        tori = count_report(
            compiled["two_tori"].presentation, cm,
            compiled["two_tori"].one_handles, work_cap=work_cap,
        ).invariant
        return hopf == 40 and tori == 64 and hopf != tori
    yield "spun hopf vs two tori", hopf_distinguishes

    def trefoil_distinguishes():
        cm = dict(battery)["ga_z3_p2"]
        value = count_report(
            compiled["spun_trefoil"].presentation, cm,
            compiled["spun_trefoil"].one_handles, work_cap=work_cap,
        ).invariant
        return value == Fraction(9, 8) and value != Fraction(3, 8)
    yield "spun trefoil vs sphere", trefoil_distinguishes

    def oracle_agreement():
        for pres, _, cm in random_instances(seed, 25):
            fast = count_homomorphisms(pres, cm, work_cap=work_cap)
            slow = count_homomorphisms_naive(pres, cm, work_cap=work_cap)
            if fast != slow:
                return False
            if fastpath_applicable(cm):
                if count_linear_fastpath(pres, cm, work_cap=work_cap) != fast:
                    return False
        return True
    yield "counting oracles agree", oracle_agreement


def cmd_selftest(args) -> int:
    failures = 0
    for name, check in _selftest_checks(args.seed, args.work_cap):
        try:
            passed = check()
        except XmodError as exc:
            passed = False
            print(f"error in {name}: {exc}", file=sys.stderr)
        if passed:
            print(f"ok {name}")
        else:
            failures += 1
            print(f"FAIL {name}")
    return EXIT_OK if failures == 0 else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xmod",
        description="Exact invariants of knotted surfaces from finite crossed modules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the crossed-module axioms of a file")
    p.add_argument("module", help="crossed module file (xmod v1 format)")
    p.set_defaults(func=cmd_validate)

    for command in ("count", "invariant"):
        p = sub.add_parser(
            command,
            help="count homomorphisms and report the invariant",
        )
        p.add_argument("target", help="presentation (pres v1) or movie script file")
        p.add_argument("module", help="crossed module file (xmod v1 format)")
        p.add_argument(
            "--method",
            choices=("auto", "backtracking", "naive", "linear"),
            default="auto",
        )
        p.add_argument("--one-handles", type=int, default=None,
                       help="override the 1-handle count used in the invariant")
        p.add_argument("--work-cap", type=int, default=None)
        p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("compile", help="compile a movie script to a presentation")
    p.add_argument("movie", help="movie script file")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("examples", help="invariants of the shipped fixtures")
    p.add_argument("names", nargs="*", help="fixture names (default: all)")
    p.add_argument("--work-cap", type=int, default=None)
    p.set_defaults(func=cmd_examples)

    p = sub.add_parser("selftest", help="run the built-in consistency checks")
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--work-cap", type=int, default=None)
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, matching the parse-error code
        return int(exc.code or 0)
    try:
        if hasattr(args, "work_cap") and args.work_cap is None:
            args.work_cap = _default_work_cap()
        if getattr(args, "one_handles", None) is not None and args.one_handles < 0:
            raise FormatError("--one-handles must be nonnegative")
        return args.func(args)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (FormatError, FastPathUnavailable, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ReplayError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except XmodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


def run() -> None:
    sys.exit(main())
