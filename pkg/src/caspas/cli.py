"""Command-line interface: ``caspas solve|sweep|compare|validate|measure``.

Exit codes: 0 success, 2 bad input (arguments, JSON, schema), 3 computation
error.  Output goes to stdout or ``--out``; on error nothing is written.
A relative ``--out`` path is resolved under ``$CASPAS_OUTPUT_DIR`` when set.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from pathlib import Path
from typing import Any, Callable

from . import __version__
from . import serialize as ser
from .analysis import AXES, ValidityError, sweep, validity_condition1, validity_conditions_2_3
from .comparators import TopsisError, cif_topsis, weighted_waspas
from .measure import MeasureError, build_lambda_measure
from .pipeline import CaspasConfig, PipelineError, ProblemError, run_caspas
from .problem_io import bundled, load_problem, load_replacement

EXIT_OK, EXIT_INPUT, EXIT_COMPUTE = 0, 2, 3
OUTPUT_DIR_ENV = "CASPAS_OUTPUT_DIR"
BUNDLED_PREFIX = "bundled:"
METHODS = ("caspas", "wsmwpm", "topsis")


class InputError(Exception):
    """Bad command-line input; maps to exit code 2."""


class ComputeError(Exception):
    """Computation failed; maps to exit code 3."""


# ---------------------------------------------------------------------------
# argument helpers


def parse_grid(text: str) -> list[float]:
    """``a:b:step`` to the inclusive grid a, a+step, ..., <= b (empty if a > b)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise InputError(f"grid must look like start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise InputError(f"grid must contain numbers, got {text!r}") from None
    if not all(map(math.isfinite, (start, stop, step))) or step <= 0:
        raise InputError(f"grid step must be a positive number, got {text!r}")
    if start > stop:
        raise InputError(f"grid {text!r} is empty (start > stop)")
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    # rounding keeps 0.1 * 3 from printing as 0.30000000000000004
    return [round(start + i * step, 10) for i in range(n)]


def parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise InputError(f"{what} must be comma-separated numbers, got {text!r}") from None


def parse_subsets(text: str) -> list[list[str]]:
    """``P1,P2,P3;P2,P3,P4`` to a list of alternative lists."""
    out = [[a.strip() for a in group.split(",") if a.strip()] for group in text.split(";") if group.strip()]
    if not out:
        raise InputError("--subsets is empty")
    return out


def resolve_problem_path(text: str) -> Path:
    if text.startswith(BUNDLED_PREFIX):
        return bundled(text[len(BUNDLED_PREFIX):])
    return Path(text)


def resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    out = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not out.is_absolute():
        out = Path(base) / out
    return out


def config_from(args: argparse.Namespace, **overrides: Any) -> CaspasConfig:
    values = dict(epsilon=args.epsilon, xi=args.xi, lam=args.lam, family=args.family)
    values.update(overrides)
    try:
        return CaspasConfig(**values)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------------------------------------------------------------------------
# commands; each returns (json document, csv header, csv rows)


def cmd_solve(args: argparse.Namespace):
    problem = load_problem(resolve_problem_path(args.problem))
    result = run_caspas(problem, config_from(args))
    return (ser.ranking_json(result), *ser.ranking_rows(result))


def cmd_sweep(args: argparse.Namespace):
    problem = load_problem(resolve_problem_path(args.problem))
    grid = parse_grid(args.grid)
    families = [f.strip() for f in args.families.split(",") if f.strip()]
    if not families or any(f not in ("q", "p") for f in families):
        raise InputError(f"--families must list q and/or p, got {args.families!r}")
    try:
        report = sweep(problem, config_from(args), args.axis, grid, families)
    except ValueError as exc:
        if isinstance(exc, (PipelineError, ProblemError)):
            raise
        raise InputError(str(exc)) from None
    return (ser.sweep_json(report), *ser.sweep_rows(report))


def cmd_compare(args: argparse.Namespace):
    problem = load_problem(resolve_problem_path(args.problem))
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if not methods or unknown:
        raise InputError(f"--methods must be a subset of {','.join(METHODS)}, got {args.methods!r}")
    config = config_from(args)
    base = run_caspas(problem, config)
    doc: dict[str, Any] = {}
    rows: list[list[Any]] = []
    names = list(problem.alternatives)
    for method in methods:
        if method == "caspas":
            doc[method] = ser.ranking_json(base)
            position = {n: i + 1 for i, n in enumerate(base.order)}
            rows += [[method, a.name, position[a.name], a.score, *a.sd] for a in base.alternatives]
        elif method == "wsmwpm":
            res = weighted_waspas(base.aggregated, base.criteria_weights, config, names)
            doc[method] = ser.ranking_json(res)
            position = {n: i + 1 for i, n in enumerate(res.order)}
            rows += [[method, a.name, position[a.name], a.score, *a.sd] for a in res.alternatives]
        else:
            try:
                res = cif_topsis(base.aggregated, base.criteria_weights, args.beta, config.family, names,
                                 args.decimals)
            except TopsisError as exc:
                raise InputError(str(exc)) from None
            doc[method] = ser.closeness_json(res, args.beta)
            position = {n: i + 1 for i, n in enumerate(res.order)}
            rows += [[method, n, position[n], c, *v] for n, c, v in zip(res.names, res.closeness, res.aggregates)]
    header = ["method", "alternative", "position", "value", "mu", "nu", "r"]
    return doc, header, rows


def cmd_validate(args: argparse.Namespace):
    problem = load_problem(resolve_problem_path(args.problem))
    config = config_from(args)
    cond1 = None
    if args.replacement:
        target, ratings, name = load_replacement(resolve_problem_path(args.replacement), problem)
        cond1 = validity_condition1(problem, config, target, ratings, name)
    subsets = parse_subsets(args.subsets) if args.subsets else None
    cond23 = None
    if subsets is not None or not args.replacement or args.all:
        cond23 = validity_conditions_2_3(problem, config, subsets)
    return (ser.validity_json(cond1, cond23, config), *ser.validity_rows(cond1, cond23))


def cmd_measure(args: argparse.Namespace):
    weights = parse_floats(args.weights, "--weights")
    names = [n.strip() for n in args.names.split(",")] if args.names else [f"T{i + 1}" for i in range(len(weights))]
    if len(names) != len(weights):
        raise InputError(f"{len(names)} names for {len(weights)} weights")
    measure = build_lambda_measure(args.lam, weights, names, renormalize=args.renormalize)
    table = measure.to_json()
    doc = {"lambda": args.lam, "weights": weights, "names": names, "measure": table}
    return (doc, *ser.measure_rows(table))


# ---------------------------------------------------------------------------
# parser and dispatch


def _common(p: argparse.ArgumentParser, problem: bool = True) -> None:
    if problem:
        p.add_argument("problem", help=f"problem JSON file, or {BUNDLED_PREFIX}solar.json for the bundled example")
        p.add_argument("--epsilon", type=float, default=0.3, help="CSM/CPM balance in [0, 1] (default 0.3)")
        p.add_argument("--xi", type=float, default=0.8, help="score/radius balance in [0, 1] (default 0.8)")
        p.add_argument("--family", choices=("q", "p"), default="q", help="radius family (default q)")
    p.add_argument("--lambda", dest="lam", type=float, default=0.5, help="interaction index, >= -1 (default 0.5)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", help=f"output file (relative paths go under ${OUTPUT_DIR_ENV} if set)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="caspas", description="Choquet-based CASPAS ranking with D-IFVs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="rank the alternatives of a problem")
    _common(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="re-rank over a grid of epsilon or xi")
    _common(p)
    p.add_argument("--axis", choices=AXES, required=True)
    p.add_argument("--grid", default="0.1:0.9:0.1", help="start:stop:step, inclusive (default 0.1:0.9:0.1)")
    p.add_argument("--families", default="q,p", help="radius families to run (default q,p)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("compare", help="CASPAS next to WSM/WPM and C-IF TOPSIS")
    _common(p)
    p.add_argument("--methods", default=",".join(METHODS))
    p.add_argument("--beta", type=int, default=3, help="Minkowski order for TOPSIS (default 3)")
    p.add_argument("--decimals", type=int, default=None,
                   help="round TOPSIS row aggregates to this many decimals before distances")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("validate", help="ranking-validity checks")
    _common(p)
    p.add_argument("--replacement", help="replacement file for the worse-alternative check")
    p.add_argument("--subsets", help="sub-problems as 'P1,P2,P3;P2,P3,P4' (default: leave one out)")
    p.add_argument("--all", action="store_true", help="with --replacement, also run the sub-problem checks")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("measure", help="print a lambda fuzzy measure table")
    _common(p, problem=False)
    p.add_argument("--weights", required=True, help="comma-separated criterion weights")
    p.add_argument("--names", help="comma-separated criterion names (default T1..Tk)")
    p.add_argument("--renormalize", action="store_true", help="rescale weights that do not sum to 1")
    p.set_defaults(func=cmd_measure)
    return parser


def render(fmt: str, doc: Any, header: list[str], rows: list[list[Any]]) -> str:
    if fmt == "csv":
        return ser.to_csv(header, rows)
    return json.dumps(doc, indent=2, allow_nan=False) + "\n"


def write_output(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.parent.mkdir(parents=True, exist_ok=True)
    # write beside the target and rename, so a failure never leaves half a file
    fd, tmp = tempfile.mkstemp(dir=out.parent, prefix=f".{out.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        os.unlink(tmp)
        raise


def _run(func: Callable, args: argparse.Namespace) -> int:
    try:
        doc, header, rows = func(args)
    except (InputError, ProblemError, MeasureError) as exc:
        print(f"caspas: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ValidityError, PipelineError, ComputeError, ArithmeticError, ValueError) as exc:
        print(f"caspas: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    if not ser.all_finite(doc) or not ser.all_finite(rows):
        print("caspas: computation failed: result contains non-finite numbers", file=sys.stderr)
        return EXIT_COMPUTE
    try:
        write_output(render(args.format, doc, header, rows), resolve_out(args.out))
    except OSError as exc:
        print(f"caspas: error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; keep --help / --version at 0
        return int(exc.code or 0)
    return _run(args.func, args)


if __name__ == "__main__":
    sys.exit(main())
