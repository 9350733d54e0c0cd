"""Command-line interface.

Spec grammar (no shell quoting needed except for ``;``)::

    involution   a:b:c:d
    cycle        a1:b1,a2:b2,...
    blocks       N;p1,p2,...,p2N

Exit codes: 0 success, 2 bad input or failed validation, 3 numerical
check failed or search budget exhausted. Results go to stdout, diagnostics
to stderr. ``AHS_OUTPUT`` sets the output format when ``--format`` is not
given.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from typing import Sequence

from . import closed_form, series, solver
from .digamma import as_fraction, asymptotic_residual, multiplication_residual, recurrence_residual
from .errors import AHSError, BudgetExhausted, SpecError
from .permutations import CycleSpec, InvolutionSpec, MAX_CYCLE_LENGTH, apply, class_index

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

FORMATS = ("json", "csv", "plain")
DEFAULT_BLOCKS = 100_000
DEFAULT_TOL = 1e-6
IDENTITY_TOL = 1e-10

_INT = r"\s*(\d+)\s*"


def _num(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    return str(x)


def parse_involution(text: str) -> InvolutionSpec:
    m = re.fullmatch(":".join([_INT] * 4), text)
    if not m:
        raise SpecError(f"cannot parse involution {text!r}; expected a:b:c:d", "PARSE_ERROR")
    return InvolutionSpec(*map(int, m.groups()))


def parse_cycle(text: str) -> CycleSpec:
    pairs = []
    for item in text.split(","):
        m = re.fullmatch(f"{_INT}:{_INT}", item)
        if not m:
            raise SpecError(f"cannot parse cycle pair {item!r}; expected a:b", "PARSE_ERROR")
        pairs.append((int(m[1]), int(m[2])))
    if len(pairs) > MAX_CYCLE_LENGTH:
        raise SpecError(f"cycles are limited to {MAX_CYCLE_LENGTH} pairs, got {len(pairs)}", "PARSE_ERROR")
    return CycleSpec(tuple(pairs))


def parse_blocks(text: str) -> closed_form.BlockSpec:
    head, sep, tail = text.partition(";")
    if not sep or not re.fullmatch(_INT, head):
        raise SpecError(f"cannot parse blocks {text!r}; expected N;p1,...,p2N", "PARSE_ERROR")
    p = []
    for item in tail.split(","):
        if not re.fullmatch(_INT, item):
            raise SpecError(f"cannot parse block length {item!r}", "PARSE_ERROR")
        p.append(int(item))
    return closed_form.BlockSpec(int(head), tuple(p))


def parse_permutation(text: str):
    """Involution if the text is a:b:c:d, otherwise a cycle."""
    if "," not in text and text.count(":") == 3:
        return parse_involution(text)
    return parse_cycle(text)


PARSERS = {"involution": parse_involution, "cycle": parse_cycle, "blocks": parse_blocks}


def parse_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(rf"{_INT}\.\.{_INT}", text)
    if not m:
        raise SpecError(f"cannot parse range {text!r}; expected lo..hi", "PARSE_ERROR")
    lo, hi = int(m[1]), int(m[2])
    if lo < 1 or hi < lo:
        raise SpecError(f"range must satisfy 1 <= lo <= hi, got {lo}..{hi}", "PARSE_ERROR")
    return lo, hi


def _positive_int(text: str) -> int:
    try:
        value = int(float(text)) if re.fullmatch(r"\d+(\.0*)?([eE]\+?\d+)?", text) else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"expected a finite number, got {text!r}")
    return value


# -- rendering ---------------------------------------------------------------


def _render(payload: dict, fmt: str, rows: list[list] | None = None, header: list[str] | None = None) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if rows is None:
            header, rows = ["field", "value"], [[k, v] for k, v in _flatten(payload)]
        writer.writerow(header)
        writer.writerows([[_num(x) for x in row] for row in rows])
        return buf.getvalue().rstrip("\n")
    return "\n".join(f"{k}: {_num(v)}" for k, v in _flatten(payload))


def _flatten(payload: dict, prefix: str = ""):
    for key, value in payload.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        elif isinstance(value, list):
            for item in value:
                if isinstance(item, dict) and set(item) == {"label", "value"}:
                    yield f"{name}[{item['label']}]", item["value"]
                else:
                    yield name, item
        else:
            yield name, value


# -- commands ----------------------------------------------------------------


def _closed_form(kind: str, spec):
    if kind == "involution":
        return closed_form.theorem1_sum(spec)
    if kind == "cycle":
        return closed_form.cycle_sum(spec)
    return closed_form.block_sum(spec)


def cmd_eval(args) -> tuple[int, str]:
    spec = PARSERS[args.kind](args.spec)
    value = _closed_form(args.kind, spec)
    payload = {"kind": args.kind, "spec": str(spec), **value.to_dict()}
    return EXIT_OK, _render(payload, args.format)


def cmd_verify(args) -> tuple[int, str]:
    spec = PARSERS[args.kind](args.spec)
    closed = _closed_form(args.kind, spec).total
    if args.kind == "blocks":
        report = series.block_partial(spec, args.blocks)
    else:
        report = series.rearranged_partial(spec, args.blocks, args.block_len)
    numeric = report.extrapolated if args.extrapolate else report.raw_sum
    values = {"closed_form": closed}
    payload: dict = {"kind": args.kind, "spec": str(spec), "closed_form": closed}
    if args.kind == "involution":
        values["prop3"] = series.decomposition_sum(spec)
        payload["prop3_via_decomposition"] = values["prop3"]
    values["numeric"] = numeric
    payload["numeric"] = report.to_dict()
    names = list(values)
    differences = {
        f"{x}_vs_{y}": abs(values[x] - values[y]) for i, x in enumerate(names) for y in names[i + 1 :]
    }
    passed = all(diff <= args.tol for diff in differences.values())
    payload.update(differences=differences, tolerance=args.tol, passed=passed)
    return (EXIT_OK if passed else EXIT_NUMERIC), _render(payload, args.format)


def cmd_phi(args) -> tuple[int, str]:
    spec = parse_permutation(args.spec)
    lo, hi = parse_range(args.range)
    rows = []
    for n in range(lo, hi + 1):
        idx = class_index(spec, n)
        rows.append([n, apply(spec, n), "fixed" if idx is None else f"swap-{idx + 1}"])
    payload = {"spec": str(spec), "rows": [{"n": n, "phi": p, "class": c} for n, p, c in rows]}
    if args.format == "plain":
        return EXIT_OK, "\n".join(f"{n} -> {p} ({c})" for n, p, c in rows)
    return EXIT_OK, _render(payload, args.format, rows=rows, header=["n", "phi", "class"])


def _identity_residuals(args) -> tuple[dict, list[tuple[str, float]]]:
    which = args.which
    if which == "cor1":
        params = {"n_max": args.n_max}
        residuals = [(f"N={N}", closed_form.corollary1_lhs(N) - closed_form.LOG2) for N in range(1, args.n_max + 1)]
    elif which == "mult":
        q = as_fraction(args.q)
        params = {"q": str(q), "m": args.m}
        residuals = [(f"m={args.m}", multiplication_residual(q, args.m))]
    elif which == "recurrence":
        params = {"x": args.x, "n": args.n}
        residuals = [(f"n={args.n}", recurrence_residual(args.x, args.n))]
    else:
        params = {"x": args.x, "s": args.s}
        residuals = [(f"x={_num(args.x)}", asymptotic_residual(args.x, args.s))]
    return params, residuals


def cmd_identities(args) -> tuple[int, str]:
    params, residuals = _identity_residuals(args)
    worst_at, worst = max(residuals, key=lambda item: abs(item[1]))
    max_residual = abs(worst)
    passed = max_residual <= IDENTITY_TOL
    payload = {
        "identity": args.which,
        "parameters": params,
        "max_residual": max_residual,
        "worst_at": worst_at,
        "tolerance": IDENTITY_TOL,
        "passed": passed,
    }
    return (EXIT_OK if passed else EXIT_NUMERIC), _render(payload, args.format)


def cmd_solve(args) -> tuple[int, str]:
    result = solver.solve_target(args.target, args.eps, args.budget)
    payload = {"target": args.target, "epsilon": args.eps, **result.to_dict()}
    return EXIT_OK, _render(payload, args.format)


# -- entry point -------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS, help="output format")

    parser = argparse.ArgumentParser(
        prog="ahs",
        parents=[common],
        description="Closed-form rearrangements of the alternating harmonic series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="closed-form rearranged sum")
    p.add_argument("kind", choices=sorted(PARSERS))
    p.add_argument("spec")
    p.set_defaults(handler=cmd_eval, default_format="json")

    p = sub.add_parser("verify", parents=[common], help="closed form against numerical oracles")
    p.add_argument("kind", choices=sorted(PARSERS))
    p.add_argument("spec")
    p.add_argument("--blocks", type=_positive_int, default=DEFAULT_BLOCKS, help="number of blocks K")
    p.add_argument("--block-len", type=_positive_int, default=None, help="terms per block (permutations only)")
    p.add_argument("--tol", type=_finite_float, default=DEFAULT_TOL)
    p.add_argument("--extrapolate", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(handler=cmd_verify, default_format="json")

    p = sub.add_parser("phi", parents=[common], help="tabulate the permutation")
    p.add_argument("spec", help="a:b:c:d or a1:b1,a2:b2,...")
    p.add_argument("range", help="lo..hi")
    p.set_defaults(handler=cmd_phi, default_format="csv")

    p = sub.add_parser("identities", parents=[common], help="digamma identity residuals")
    p.add_argument("which", choices=("cor1", "mult", "recurrence", "asymptotic"))
    p.add_argument("--n-max", type=_positive_int, default=100)
    p.add_argument("--q", default="1/2", help="rational such as 1/3")
    p.add_argument("--m", type=_positive_int, default=2)
    p.add_argument("--x", type=_finite_float, default=None)
    p.add_argument("--n", type=_positive_int, default=1)
    p.add_argument("--s", type=_finite_float, default=0.5)
    p.set_defaults(handler=cmd_identities, default_format="json")

    p = sub.add_parser("solve", parents=[common], help="find an involution summing near a target")
    p.add_argument("--target", type=_finite_float, required=True)
    p.add_argument("--eps", type=_finite_float, required=True)
    p.add_argument("--budget", type=_positive_int, default=solver.DEFAULT_BUDGET)
    p.set_defaults(handler=cmd_solve, default_format="json")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if not hasattr(args, "format"):
        env = os.environ.get("AHS_OUTPUT")
        if env is not None and env not in FORMATS:
            print(f"error: AHS_OUTPUT must be one of {', '.join(FORMATS)}, got {env!r}", file=sys.stderr)
            return EXIT_INPUT
        args.format = env or args.default_format
    if getattr(args, "x", 0) is None:
        args.x = 1e12 if args.which == "asymptotic" else 1.0
    try:
        code, text = args.handler(args)
    except BudgetExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except AHSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT if isinstance(exc, ValueError) else EXIT_NUMERIC
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
