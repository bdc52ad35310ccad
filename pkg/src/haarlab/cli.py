"""``haarlab`` command line: JSON in, JSON out.

Exit codes: 0 success, 1 verification found violations, 2 usage error,
3 malformed input, 4 the library rejected the input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

from .dyadic import IntervalSet
from .enlargement import BoundCertificate, band_enlarge, construct_enlarged_set, epsilon_enlargement
from .errors import HaarlabError, SchemaError
from .haar import analyze, l1_norm, norm_of_sum, norm_on, project, synthesize, threshold
from .jsonio import (
    dumps,
    expansion_from_json,
    expansion_to_json,
    format_rational,
    interval_list,
    parse_interval_list,
    parse_rational,
    step_function_from_json,
    step_function_to_json,
)
from .symmetrization import full_symmetrize
from .verification.checks import STATEMENTS, run_suite
from .verification.families import branch_family, spread_family

EXIT_VIOLATIONS = 1
EXIT_USAGE = 2
EXIT_SCHEMA = 3
EXIT_DOMAIN = 4


class UsageError(Exception):
    pass


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except SchemaError as exc:
        raise argparse.ArgumentTypeError(exc.message) from None


def _read_input(source: str | None) -> Any:
    if source is None or source == "-":
        text = sys.stdin.read()
    elif source.lstrip().startswith(("{", "[")):
        text = source
    else:
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON input: {exc.msg}", {"line": exc.lineno, "column": exc.colno}) from None


def _field(payload: Any, name: str) -> Any:
    if not isinstance(payload, dict) or name not in payload:
        raise SchemaError(f"input is missing the {name!r} field")
    return payload[name]


def _function(payload: Any, name: str = "f"):
    """Accept either a bare step function or an object holding one under ``name``."""
    if isinstance(payload, dict) and "values" in payload:
        return step_function_from_json(payload)
    return step_function_from_json(_field(payload, name))


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.command} needs {' '.join(missing)}")


def certificate_json(cert: BoundCertificate) -> dict:
    details = {}
    for key, value in cert.details.items():
        if isinstance(value, IntervalSet):
            details[key] = interval_list(value)
        elif isinstance(value, Fraction):
            details[key] = format_rational(value)
        else:
            details[key] = value
    return {
        "lhs": format_rational(cert.lhs),
        "rhs_norm": format_rational(cert.rhs_norm),
        "constant": format_rational(cert.constant),
        "satisfied": cert.satisfied,
        "selected": interval_list(cert.selected),
        "bands": [
            {
                "m": band.m,
                "rho": format_rational(band.rho),
                "members": interval_list(band.members),
                "enlarged": interval_list(band.enlarged),
                "second_pass": band.second_pass,
            }
            for band in cert.bands
        ],
        "details": details,
    }


# -- subcommands ----------------------------------------------------------------------


def cmd_analyze(args, payload):
    return expansion_to_json(analyze(_function(payload)))


def cmd_synthesize(args, payload):
    expansion = expansion_from_json(payload)
    resolution = args.resolution
    if resolution is None and isinstance(payload, dict) and "resolution" in payload:
        resolution = payload["resolution"]
        if isinstance(resolution, bool) or not isinstance(resolution, int):
            raise SchemaError(f"invalid resolution {resolution!r}")
    if resolution is None:
        raise UsageError("synthesize needs --resolution or a 'resolution' field")
    return step_function_to_json(synthesize(expansion, resolution))


def cmd_norm(args, payload):
    f = _function(payload)
    out: dict[str, Any] = {"norm": format_rational(l1_norm(f))}
    if isinstance(payload, dict) and "intervals" in payload:
        out["on"] = {str(i): format_rational(norm_on(f, i)) for i in parse_interval_list(payload["intervals"])}
    return out


def cmd_threshold(args, payload):
    _require(args, "delta")
    projected, chosen = threshold(_function(payload), args.delta)
    return {"S": interval_list(chosen), "projection": step_function_to_json(projected), "norm": format_rational(l1_norm(projected))}


def cmd_project(args, payload):
    projected = project(_function(payload), parse_interval_list(_field(payload, "S")))
    return {"projection": step_function_to_json(projected), "norm": format_rational(l1_norm(projected))}


def cmd_enlarge(args, payload):
    _require(args, "epsilon")
    f = _function(payload)
    anchors = parse_interval_list(_field(payload, "A"))
    if args.rho is None:
        return {"E": interval_list(epsilon_enlargement(f, anchors, args.epsilon)), "certificate": None}
    chosen, cert = band_enlarge(f, anchors, args.rho, args.epsilon)
    return {"E": interval_list(chosen), "certificate": certificate_json(cert)}


def cmd_construct_e(args, payload):
    _require(args, "delta", "epsilon")
    f = _function(payload)
    chosen, cert = construct_enlarged_set(f, parse_interval_list(_field(payload, "A")), args.delta, args.epsilon)
    return {"E": interval_list(chosen), "certificate": certificate_json(cert)}


def cmd_symmetrize(args, payload):
    f = step_function_from_json(_field(payload, "f"))
    g = step_function_from_json(_field(payload, "g"))
    pair = full_symmetrize(f, g)
    return {
        "f_tilde": step_function_to_json(pair.f_tilde),
        "g_tilde": step_function_to_json(pair.g_tilde),
        "trace": [{"interval": str(i), "branch": branch} for i, branch in pair.trace],
        "ratio_before": format_rational(l1_norm(f) / norm_of_sum(f, g)),
        "ratio_after": format_rational(pair.ratio),
    }


def cmd_example(args, payload):
    build = branch_family if args.family == "intro" else spread_family
    fam = build(args.n)
    out = {
        "family": args.family,
        "n": args.n,
        "f": step_function_to_json(fam.f),
        "A": interval_list(fam.anchors),
        "norms": {"f": format_rational(fam.norm), "projection": format_rational(fam.projection_norm)},
    }
    if args.epsilon is not None:
        out["enlargement_is_trivial"] = fam.enlargement_is_trivial(args.epsilon)
    return out


COMMANDS = {
    "analyze": cmd_analyze,
    "synthesize": cmd_synthesize,
    "norm": cmd_norm,
    "threshold": cmd_threshold,
    "project": cmd_project,
    "enlarge": cmd_enlarge,
    "construct-e": cmd_construct_e,
    "symmetrize": cmd_symmetrize,
    "example": cmd_example,
}


# -- output ---------------------------------------------------------------------------


def _table(payload: Any, prefix: str = "") -> list[tuple[str, str]]:
    rows = []
    if isinstance(payload, dict):
        for key, value in payload.items():
            rows.extend(_table(value, f"{prefix}.{key}" if prefix else str(key)))
    elif isinstance(payload, list) and all(not isinstance(v, (dict, list)) for v in payload):
        rows.append((prefix, " ".join(str(v) for v in payload) or "-"))
    elif isinstance(payload, list):
        for k, value in enumerate(payload):
            rows.extend(_table(value, f"{prefix}[{k}]"))
    else:
        rows.append((prefix, "null" if payload is None else str(payload).lower() if isinstance(payload, bool) else str(payload)))
    return rows


def render_table(payload: Any) -> str:
    rows = _table(payload)
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def _emit(text: str, destination: str | None) -> None:
    if destination is None or destination == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(destination).write_text(text + "\n")


def _error(code: int, err_code: str, message: str, detail: Any = None) -> int:
    sys.stderr.write(dumps({"error": {"code": err_code, "message": message, "detail": detail}}) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH|-", help="JSON input file, '-' for stdin, or inline JSON")
    common.add_argument("--output", metavar="PATH|-", help="write the result here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="print a readable table instead of JSON")
    common.add_argument("--resolution", type=int)
    common.add_argument("--epsilon", type=_rational_arg, metavar="p/q")
    common.add_argument("--delta", type=_rational_arg, metavar="p/q")
    common.add_argument("--rho", type=_rational_arg, metavar="p/q")
    common.add_argument("--alpha", type=_rational_arg, metavar="p/q")

    parser = argparse.ArgumentParser(prog="haarlab", description="Exact Haar-basis projections and enlargements.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, summary in (
        ("analyze", "step function -> Haar coefficients"),
        ("synthesize", "Haar coefficients -> step function"),
        ("norm", "L1 norm, optionally restricted to listed intervals"),
        ("threshold", "keep coefficients with |c| >= delta"),
        ("project", "project f onto the interval set S"),
        ("enlarge", "epsilon-enlargement of A, or the band procedure with --rho"),
        ("construct-e", "enlarged set E with A ⊆ E ⊆ A_eps(f) and its certificate"),
        ("symmetrize", "symmetrize a pair (f, g) along the zero frontier of f"),
    ):
        sub.add_parser(name, parents=[common], help=summary)

    verify = sub.add_parser("verify", parents=[common], help="run randomized exact checks")
    verify.add_argument("statement", choices=[*STATEMENTS, "all"])
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--json", action="store_true", help="JSON report (the default unless --pretty)")
    verify.add_argument("--timing", action="store_true", help="include wall-clock time in the report")

    example = sub.add_parser("example", parents=[common], help="the explicit unbounded-projection families")
    example.add_argument("--family", choices=("intro", "spread"), required=True)
    example.add_argument("--n", type=int, required=True)
    return parser


def _verify(args) -> tuple[Any, int]:
    _require(args, "resolution")
    if args.trials < 0 or args.seed < 0:
        raise UsageError("--trials and --seed must be nonnegative")
    names = list(STATEMENTS) if args.statement == "all" else [args.statement]
    reports = run_suite(names, args.trials, args.seed, args.resolution)
    bad = any(not r.passed for r in reports)
    if args.pretty and not args.json:
        return "\n".join(r.summary_line() for r in reports), int(bad)
    payloads = [r.to_json(timing=args.timing) for r in reports]
    return (payloads[0] if len(payloads) == 1 else {"reports": payloads}), int(bad)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            result, status = _verify(args)
        else:
            if args.command == "example":
                if args.n < 1:
                    raise UsageError("--n must be a positive integer")
                payload = None
            else:
                payload = _read_input(args.input)
            result, status = COMMANDS[args.command](args, payload), 0
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        return _error(EXIT_USAGE, "usage", str(exc))
    except SchemaError as exc:
        return _error(EXIT_SCHEMA, exc.code, exc.message, exc.detail)
    except HaarlabError as exc:
        return _error(EXIT_DOMAIN, exc.code, exc.message, exc.detail)
    if isinstance(result, str):
        text = result
    elif args.pretty and not getattr(args, "json", False):
        text = render_table(result)
    else:
        text = dumps(result)
    _emit(text, args.output)
    return EXIT_VIOLATIONS if status else 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
