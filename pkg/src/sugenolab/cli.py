"""Command-line front end.

Exit codes: 0 success / equality, 1 violation found (or classification
mismatch), 2 input error, 3 resource or budget error.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from . import __version__
from .capacity import CapacityError
from .classify import ClassifyParams, a_grid, classify
from .documents import (
    DocumentError,
    dumps,
    load_campaign,
    load_instance,
    parse_semicopula,
    read_json,
)
from .homogeneity import check, fuzz_campaign
from .integral import SpaceMismatch, integrate, integrate_grid_oracle
from .limit_lab import (
    FROM_ABOVE,
    FROM_BELOW,
    LimitInstance,
    LimitNotResolved,
    evaluate_limit_case,
    sweep,
    sweep_csv,
)
from .sections import SectionNotResolvable

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
SEED_ENV = "SUGENOLAB_SEED"


class InputError(Exception):
    pass


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def _semicopula_arg(text: str):
    """A built-in name, inline JSON, or a path to a JSON descriptor."""
    text = text.strip()
    if text.startswith("{"):
        try:
            desc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DocumentError("semicopula", f"invalid inline JSON ({exc.msg})") from exc
    elif Path(text).is_file():
        desc = read_json(text)
        if isinstance(desc, dict) and "semicopula" in desc:
            desc = desc["semicopula"]
    else:
        desc = text
    return parse_semicopula(desc)


def cmd_integrate(args) -> int:
    inst = load_instance(read_json(args.file))
    result = integrate(inst.semicopula, inst.capacity, inst.f)
    report = {"tool_version": __version__, "result": result.to_dict()}
    if args.grid_oracle is not None:
        oracle = integrate_grid_oracle(inst.semicopula, inst.capacity, inst.f, args.grid_oracle)
        report["oracle"] = oracle.to_dict()
        report["oracle_agrees"] = oracle.value == result.value
    sys.stdout.write(dumps(report))
    return EXIT_OK


def cmd_check(args) -> int:
    inst = load_instance(read_json(args.file))
    report = check(inst, args.tolerance)
    out = {"tool_version": __version__}
    out.update(report.to_dict())
    sys.stdout.write(dumps(out))
    return EXIT_VIOLATION if report.violated else EXIT_OK


def cmd_fuzz(args) -> int:
    doc = read_json(args.config)
    override = os.environ.get(SEED_ENV)
    seed = None
    if override is not None:
        try:
            seed = int(override)
        except ValueError:
            raise DocumentError(SEED_ENV, f"not an integer: {override!r}") from None
    s, config = load_campaign(doc, seed)
    report = fuzz_campaign(s, config, workers=args.workers, keep_gaps=args.gaps_csv is not None)
    if args.gaps_csv is not None:
        with open(args.gaps_csv, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["trial", "gap"])
            for trial, gap in report.gaps:
                w.writerow([trial, repr(gap)])
    sys.stdout.write(dumps(report.to_dict()))
    return EXIT_OK if report.passed else EXIT_VIOLATION


def _write_plot_data(s, a_values, directory, points):
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    ts = [i / (points - 1) for i in range(points)]
    for a in a_values:
        with open(out / f"section_a{a:.4f}.csv", "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["t", "S(a,t)"])
            for t in ts:
                w.writerow([repr(t), repr(s.fn(a, t))])


def cmd_classify(args) -> int:
    s = _semicopula_arg(args.semicopula)
    params = ClassifyParams(
        a_values=a_grid(args.a_grid),
        resolution=args.resolution,
        jump_threshold=args.jump_threshold,
        use_section_spec=args.analytic,
    )
    if args.plot_data:
        _write_plot_data(s, params.a_values, args.plot_data, args.plot_points)
    base = {"tool_version": __version__, "semicopula": s.descriptor}
    try:
        result = classify(s, params)
    except SectionNotResolvable as exc:
        partial = getattr(exc, "partial", [])
        base.update(
            error=str(exc),
            partial_sections=[p.to_dict() for p in partial],
        )
        sys.stdout.write(dumps(base))
        return _fail(str(exc), EXIT_BUDGET)
    base.update(result.to_dict())
    if args.verbose:
        base["profiles"] = [p.to_dict() for p in result.sections]
    sys.stdout.write(dumps(base))
    if result.mismatch:
        print(
            f"warning: declared class {result.declared_class} but detected {result.label}",
            file=sys.stderr,
        )
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_limit(args) -> int:
    s = _semicopula_arg(args.semicopula)
    if args.sweep:
        text = sweep_csv(sweep(s, terms=args.terms, method=args.method, edges=args.edges))
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if args.a is None or args.b is None or args.direction is None:
        raise InputError("limit needs --sweep or all of --a, --b, --direction")
    li = LimitInstance(s, args.a, args.b, args.direction, args.family or "", args.terms)
    result = evaluate_limit_case(li, args.method)
    out = {"tool_version": __version__}
    out.update(result.to_dict())
    sys.stdout.write(dumps(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sugenolab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("integrate", help="evaluate the integral of an instance document")
    q.add_argument("file")
    q.add_argument("--grid-oracle", type=int, metavar="N", help="also run the grid oracle")
    q.set_defaults(func=cmd_integrate)

    q = sub.add_parser("check", help="evaluate both sides of the homogeneity equation")
    q.add_argument("file")
    q.add_argument("--tolerance", type=float, default=1e-12)
    q.set_defaults(func=cmd_check)

    q = sub.add_parser("fuzz", help="run a randomized campaign from a config document")
    q.add_argument("config")
    q.add_argument("--gaps-csv", metavar="PATH", help="write every trial's gap as CSV")
    q.add_argument("--workers", type=int, default=1)
    q.set_defaults(func=cmd_fuzz)

    q = sub.add_parser("classify", help="label a semicopula as S0, S1 or other")
    q.add_argument("semicopula", help="built-in name, inline JSON or descriptor file")
    q.add_argument("--a-grid", type=int, default=19, metavar="K")
    q.add_argument("--resolution", type=float, default=1e-4)
    q.add_argument("--jump-threshold", type=float, default=1e-6)
    q.add_argument("--analytic", action="store_true", help="use analytic section profiles")
    q.add_argument("--plot-data", metavar="DIR", help="write (t, S(a,t)) CSV per a")
    q.add_argument("--plot-points", type=int, default=201)
    q.add_argument("--verbose", action="store_true", help="include full section profiles")
    q.set_defaults(func=cmd_classify)

    q = sub.add_parser("limit", help="one-sided limit constructions on [0, 1]")
    q.add_argument("semicopula")
    q.add_argument("--sweep", action="store_true", help="19x19 grid, both pairings, CSV")
    q.add_argument("--edges", action="store_true", help="sweep also b=0 / b=1")
    q.add_argument("--a", type=float)
    q.add_argument("--b", type=float)
    q.add_argument("--direction", choices=[FROM_ABOVE, FROM_BELOW])
    q.add_argument("--family", help="capacity family (must match the direction)")
    q.add_argument("--terms", type=int, default=40)
    q.add_argument("--method", choices=["estimate", "analytic", "auto"], default="estimate")
    q.add_argument("--output", metavar="PATH")
    q.set_defaults(func=cmd_limit)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DocumentError, CapacityError, SpaceMismatch, InputError) as exc:
        return _fail(str(exc), EXIT_INPUT)
    except LimitNotResolved as exc:
        return _fail(str(exc), EXIT_BUDGET)
    except ValueError as exc:
        return _fail(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
