"""Command-line front end.

Exit codes: 0 success, 2 unreadable or malformed input, 3 invalid usage or
an input metric that is not a pseudo-ultrametric, 4 exact recovery failed
its fixpoint check.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bisim, lifting, metric, model
from .numerics import RationalSyntaxError, format_rational, parse_rational

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_USAGE = 3
EXIT_VERIFY = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: error: {message}", EXIT_USAGE)


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except RationalSyntaxError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _load_model(path: str) -> model.FTS:
    try:
        return model.load(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None
    except model.ModelError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _matrix_payload(fts: model.FTS, d: metric.DistanceMatrix) -> dict:
    return {
        "states": list(fts.states),
        "matrix": [[format_rational(v) for v in row] for row in d],
    }


def _pair_indices(fts: model.FTS, pair: Optional[Sequence[str]]):
    if pair is None:
        return None
    try:
        return tuple(fts.state_index(name) for name in pair)
    except model.ModelError as exc:
        raise CliError(str(exc), EXIT_USAGE) from None


def cmd_info(args) -> dict:
    fts = _load_model(args.model)
    return {
        "mode": "info",
        "payload": {
            "states": len(fts.states),
            "labels": len(fts.labels),
            "transitions": sum(1 for _ in fts.distributions()),
            "size_arith": model.size_arith(fts),
            "size_bits": model.size_bits(fts),
            "theta": [format_rational(v) for v in model.theta(fts)],
        },
        "metadata": {},
    }


def cmd_distance(args) -> dict:
    if args.gamma is None:
        if args.epsilon is not None or args.exact or args.denominator_bound is not None:
            raise CliError("--epsilon/--exact/--denominator-bound need --gamma", EXIT_USAGE)
    else:
        if not 0 < args.gamma < 1:
            raise CliError("--gamma must lie strictly between 0 and 1", EXIT_USAGE)
        if args.epsilon is None:
            raise CliError("--gamma requires --epsilon", EXIT_USAGE)
        if not 0 < args.epsilon < 1:
            raise CliError("--epsilon must lie strictly between 0 and 1", EXIT_USAGE)
    if args.exact and args.denominator_bound is None:
        raise CliError("--exact requires --denominator-bound", EXIT_USAGE)
    if args.denominator_bound is not None and not args.exact:
        raise CliError("--denominator-bound is only meaningful with --exact", EXIT_USAGE)
    if args.denominator_bound is not None and args.denominator_bound < 1:
        raise CliError("--denominator-bound must be a positive integer", EXIT_USAGE)

    fts = _load_model(args.model)
    pair = _pair_indices(fts, args.pair)

    meta: dict = {}
    if args.gamma is None:
        report = metric.fixpoint_undiscounted(fts)
        d = report.distances
        meta.update(iterations=report.iterations, converged=report.converged,
                    iteration_bound=metric.iteration_bound(fts))
    elif not args.exact:
        report = metric.fixpoint_discounted_approx(fts, args.gamma, args.epsilon)
        d = report.distances
        meta.update(gamma=format_rational(args.gamma), epsilon=format_rational(args.epsilon),
                    iterations=report.iterations, converged=report.converged)
    else:
        eps = metric.recovery_epsilon(args.denominator_bound)
        try:
            d = metric.fixpoint_discounted_exact(fts, args.gamma, args.denominator_bound)
        except metric.RecoveryError as exc:
            raise CliError(str(exc), EXIT_VERIFY) from None
        meta.update(gamma=format_rational(args.gamma), epsilon=format_rational(args.epsilon),
                    exact=True, denominator_bound=args.denominator_bound,
                    recovery_epsilon=format_rational(eps),
                    iterations=metric.iterations_needed(args.gamma, eps))

    if pair is None:
        payload = _matrix_payload(fts, d)
    else:
        s, t = pair
        payload = {"pair": list(args.pair), "distance": format_rational(d[s, t])}
    return {"mode": "distance", "payload": payload, "metadata": meta}


def cmd_bisim(args) -> dict:
    fts = _load_model(args.model)
    part = bisim.quotient(fts)
    return {
        "mode": "bisim",
        "payload": {"blocks": part.names(fts.states)},
        "metadata": {"block_count": len(part)},
    }


def _load_metric(path: str, fts: model.FTS) -> metric.DistanceMatrix:
    try:
        with open(path, "rb") as fh:
            doc = json.loads(fh.read().decode("utf-8"))
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    if not isinstance(doc, dict) or set(doc) != {"states", "matrix"}:
        raise CliError(f"{path}: metric file needs exactly 'states' and 'matrix'", EXIT_PARSE)
    names, matrix = doc["states"], doc["matrix"]
    if not isinstance(names, list) or sorted(names) != sorted(fts.states) or len(set(names)) != len(names):
        raise CliError(f"{path}: metric states must be the model's states", EXIT_PARSE)
    n = len(names)
    if not isinstance(matrix, list) or len(matrix) != n or any(
        not isinstance(r, list) or len(r) != n for r in matrix
    ):
        raise CliError(f"{path}: matrix must be {n}x{n}", EXIT_PARSE)
    try:
        values = [[parse_rational(v) for v in row] for row in matrix]
    except RationalSyntaxError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    for row in values:
        for v in row:
            if not 0 <= v <= 1:
                raise CliError(f"{path}: distance {v} outside [0, 1]", EXIT_USAGE)
    pos = [names.index(s) for s in fts.states]
    d = metric.DistanceMatrix([[values[pos[i]][pos[j]] for j in range(n)] for i in range(n)])
    bad = d.violation()
    if bad is not None:
        axiom, witness = bad
        raise CliError(
            f"{path}: not a pseudo-ultrametric, {axiom} fails at "
            f"({', '.join(fts.states[i] for i in witness)})",
            EXIT_USAGE,
        )
    return d


def _inline_distribution(text: str, fts: model.FTS, flag: str) -> model.FuzzySubset:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{flag}: {exc}", EXIT_PARSE) from None
    try:
        return model.parse_distribution(raw, fts.states, flag)
    except model.ModelError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None


def cmd_lift(args) -> dict:
    fts = _load_model(args.model)
    if args.discrete:
        d = metric.DistanceMatrix.discrete(fts.n_states)
    else:
        d = _load_metric(args.metric, fts)
    mu = _inline_distribution(args.mu, fts, "--mu")
    eta = _inline_distribution(args.eta, fts, "--eta")
    value = lifting.lift(d, mu, eta)
    return {
        "mode": "lift",
        "payload": {"distance": format_rational(value)},
        "metadata": {"metric": "discrete" if args.discrete else args.metric},
    }


def render_table(doc: dict) -> str:
    payload, meta = doc["payload"], doc["metadata"]
    lines = []
    if "matrix" in payload:
        names = payload["states"]
        cells = [[""] + names] + [[names[i]] + row for i, row in enumerate(payload["matrix"])]
        widths = [max(len(r[c]) for r in cells) for c in range(len(cells[0]))]
        for r in cells:
            lines.append("  ".join(v.rjust(w) for v, w in zip(r, widths)).rstrip())
    elif "blocks" in payload:
        for i, block in enumerate(payload["blocks"]):
            lines.append(f"block {i}: {' '.join(block)}")
    else:
        for key, value in payload.items():
            if isinstance(value, list):
                value = " ".join(str(v) for v in value)
            lines.append(f"{key}: {value}")
    for key, value in meta.items():
        lines.append(f"# {key}: {value}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ftsdist", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_format(p):
        p.add_argument("--format", choices=("json", "table"), default="json")
        return p

    p = with_format(sub.add_parser("info", help="sizes and value set of a model"))
    p.add_argument("model")
    p.set_defaults(func=cmd_info)

    p = with_format(sub.add_parser("distance", help="behavioural distance matrix"))
    p.add_argument("model")
    p.add_argument("--gamma", type=_rational_arg)
    p.add_argument("--epsilon", type=_rational_arg)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--denominator-bound", type=int)
    p.add_argument("--pair", nargs=2, metavar=("S", "T"))
    p.set_defaults(func=cmd_distance)

    p = with_format(sub.add_parser("bisim", help="bisimulation quotient"))
    p.add_argument("model")
    p.set_defaults(func=cmd_bisim)

    p = with_format(sub.add_parser("lift", help="lifted distance between two distributions"))
    p.add_argument("model")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--discrete", action="store_true")
    which.add_argument("--metric")
    p.add_argument("--mu", required=True)
    p.add_argument("--eta", required=True)
    p.set_defaults(func=cmd_lift)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        doc = args.func(args)
    except CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    if args.format == "table":
        print(render_table(doc))
    else:
        print(json.dumps(doc, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
