"""Command-line surface: solve, fiber, classify, sweep, props.

Matrices travel as exact rational CSV (cells "n" or "n/d"); graphs as JSON
{"p": p, "edges": [[i, j], ...]}.  Exit codes: 0 ok, 1 parse error,
2 precondition violation, 3 property failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .graphs import (
    CONNECTIVITY_CHOICES,
    DiGraph,
    EnumPolicy,
    graph_from_json,
)
from .identifiability import ClassifyConfig, classify
from .linalg import format_matrix_csv, is_positive_definite, parse_matrix_csv
from .lyapunov import (
    CovMatrix,
    DriftMatrix,
    NotStableError,
    VolatilityMatrix,
    fiber,
    solve_for_sigma,
)
from .properties import SUITES, run_suite
from .sweep import run_sweep

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_PRECONDITION = 2
EXIT_PROPERTY = 3


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read_matrix(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from exc
    try:
        return parse_matrix_csv(text)
    except ValueError as exc:
        raise _CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def _read_graph(path: str) -> DiGraph:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise _CliError(EXIT_PARSE, f"cannot read {path}: {exc}") from exc
    try:
        return graph_from_json(text)
    except (ValueError, json.JSONDecodeError) as exc:
        raise _CliError(EXIT_PARSE, f"{path}: {exc}") from exc


def _volatility(matrix) -> VolatilityMatrix:
    try:
        return VolatilityMatrix(matrix)
    except ValueError as exc:
        raise _CliError(EXIT_PRECONDITION, f"volatility matrix: {exc}") from exc


def _cmd_solve(args) -> int:
    drift_matrix = _read_matrix(args.drift)
    vol = _volatility(_read_matrix(args.vol))
    if not drift_matrix.is_square or drift_matrix.rows != vol.matrix.rows:
        raise _CliError(EXIT_PRECONDITION, "drift and volatility sizes do not match")
    drift = DriftMatrix.from_matrix(drift_matrix)
    try:
        sigma = solve_for_sigma(drift, vol)
    except NotStableError as exc:
        raise _CliError(EXIT_PRECONDITION, f"drift matrix: {exc}") from exc
    print(format_matrix_csv(sigma.matrix))
    return EXIT_OK


def _cmd_fiber(args) -> int:
    g = _read_graph(args.graph)
    sigma_matrix = _read_matrix(args.sigma)
    vol = _volatility(_read_matrix(args.vol))
    if not (sigma_matrix.is_symmetric() and is_positive_definite(sigma_matrix)):
        raise _CliError(EXIT_PRECONDITION, "sigma must be symmetric positive definite")
    if sigma_matrix.rows != g.p or vol.matrix.rows != g.p:
        raise _CliError(EXIT_PRECONDITION, "matrix sizes do not match the graph")
    result = fiber(CovMatrix(sigma_matrix), g, vol)
    print(json.dumps(result.to_json(), indent=2))
    return EXIT_OK


def _cmd_classify(args) -> int:
    g = _read_graph(args.graph)
    if args.vol is not None:
        vol = _volatility(_read_matrix(args.vol))
        if vol.matrix.rows != g.p:
            raise _CliError(EXIT_PRECONDITION, "volatility size does not match the graph")
    else:
        vol = VolatilityMatrix.identity(g.p)
    cfg = ClassifyConfig(trials=args.trials, bound=args.bound, seed=args.seed,
                         use_kernel_route=args.kernel_route)
    verdict = classify(g, vol, cfg)
    print(json.dumps(verdict.to_json(), indent=2))
    return EXIT_OK


def _cmd_sweep(args) -> int:
    if not 3 <= args.p <= 5:
        raise _CliError(EXIT_PRECONDITION, "sweep supports 3 <= p <= 5")
    policy = EnumPolicy(max_edges=args.max_edges, connectivity=args.connectivity)
    report = run_sweep(
        args.p,
        policy=policy,
        trials=args.trials,
        bound=args.bound,
        seed=args.seed,
        jobs=args.jobs,
    )
    payload = json.dumps(report.to_json(), indent=2)
    if args.out:
        Path(args.out).write_text(payload + "\n")
    else:
        print(payload)
    print(report.summary_csv(), file=sys.stderr if args.out is None else sys.stdout)
    return EXIT_OK


def _cmd_props(args) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [run_suite(name, trials=args.trials, seed=args.seed) for name in names]
    print(json.dumps([r.to_json() for r in results], indent=2))
    if not all(r.passed for r in results):
        return EXIT_PROPERTY
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lyapid",
        description="Identifiability of graphical continuous Lyapunov models",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve M Sigma + Sigma M^T + C = 0 for Sigma")
    p_solve.add_argument("--drift", required=True, help="drift matrix CSV")
    p_solve.add_argument("--vol", required=True, help="volatility matrix CSV")
    p_solve.set_defaults(func=_cmd_solve)

    p_fiber = sub.add_parser("fiber", help="exact solution set of the drift recovery system")
    p_fiber.add_argument("--graph", required=True, help="graph JSON file")
    p_fiber.add_argument("--sigma", required=True, help="covariance matrix CSV")
    p_fiber.add_argument("--vol", required=True, help="volatility matrix CSV")
    p_fiber.set_defaults(func=_cmd_fiber)

    p_classify = sub.add_parser("classify", help="identifiability verdict for one graph")
    p_classify.add_argument("--graph", required=True, help="graph JSON file")
    vol_group = p_classify.add_mutually_exclusive_group()
    vol_group.add_argument("--vol", help="volatility matrix CSV")
    vol_group.add_argument(
        "--identity", action="store_true", help="use the identity volatility (default)"
    )
    p_classify.add_argument("--trials", type=int, default=5)
    p_classify.add_argument("--bound", type=int, default=2**20)
    p_classify.add_argument("--seed", type=int, default=0)
    p_classify.add_argument(
        "--kernel-route",
        action="store_true",
        help="rank-test the kernel-basis restriction instead of the coefficient matrix",
    )
    p_classify.set_defaults(func=_cmd_classify)

    p_sweep = sub.add_parser("sweep", help="classify all candidate graphs on p nodes")
    p_sweep.add_argument("--p", type=int, required=True)
    p_sweep.add_argument("--max-edges", type=int, default=None,
                         help="total edge bound incl. self-loops (default p(p+1)/2)")
    p_sweep.add_argument("--connectivity", choices=CONNECTIVITY_CHOICES,
                         default="weakly-connected")
    p_sweep.add_argument("--trials", type=int, default=5)
    p_sweep.add_argument("--bound", type=int, default=2**20)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--out", help="write the full JSON report to this file")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_props = sub.add_parser("props", help="run a named property suite")
    p_props.add_argument("--suite", choices=sorted(SUITES) + ["all"], required=True)
    p_props.add_argument("--trials", type=int, default=100)
    p_props.add_argument("--seed", type=int, default=0)
    p_props.set_defaults(func=_cmd_props)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
