"""Command-line front door.

Subcommands: complete, verify-theorem1, counterexample, batch, serve.
Exit codes: 1 validation/parse errors, 2 disconnected comparison graph,
3 convergence failure.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

from .core import (
    DisconnectedGraph,
    IncompletePCM,
    NoConvergence,
    OrderTooSmall,
    ParseError,
    PcmError,
    ValidationError,
    parse_matrix,
)
from .canonical4 import verify_theorem1
from .eigen import ev_completion
from .experiments import batch_report, compare_completions, counterexample_of_order
from .llsm import CompletionResult, llsm_completion

EXIT_VALIDATION = 1
EXIT_DISCONNECTED = 2
EXIT_NO_CONVERGENCE = 3


def _load(path: str) -> IncompletePCM:
    fmt = "json" if path.endswith(".json") else "csv"
    with open(path) as fh:
        return parse_matrix(fh.read(), format=fmt)


def _matrix_rows(matrix):
    return [[float(v) for v in row] for row in matrix]


def _result_dict(result: CompletionResult) -> dict:
    return {
        "method": result.method,
        "matrix": _matrix_rows(result.matrix),
        "filled": [[i, j, result.fill_value(i, j)] for i, j in sorted(result.filled)],
        "weights": [float(w) for w in result.weights.weights],
        "lambda_max": result.lambda_max,
        "ci": result.ci,
        "gci": result.gci,
    }


def _print_result(result: CompletionResult, out) -> None:
    print(f"method: {result.method}", file=out)
    for row in result.matrix:
        print("  " + "  ".join(f"{v:10.4f}" for v in row), file=out)
    for i, j in sorted(result.filled):
        print(f"  filled ({i},{j}) = {result.fill_value(i, j):.4f}", file=out)
    print(f"  weights: {'  '.join(f'{w:.4f}' for w in result.weights.weights)}", file=out)
    print(f"  lambda_max = {result.lambda_max:.6f}  CI = {result.ci:.6f}  "
          f"GCI = {result.gci:.6f}", file=out)


def _cmd_complete(args, out) -> int:
    pcm = _load(args.file)
    results = []
    if args.method in ("llsm", "both"):
        results.append(llsm_completion(pcm))
    if args.method in ("ev", "both"):
        results.append(ev_completion(pcm)[0])
    comparison = compare_completions(pcm, tolerance=args.tol) if args.method == "both" else None
    if args.format == "json":
        doc = {"results": [_result_dict(r) for r in results]}
        if comparison is not None:
            doc["comparison"] = {
                "max_divergence": comparison.max_divergence,
                "max_position": list(comparison.max_position),
                "coincide": comparison.coincide,
            }
        print(json.dumps(doc, indent=2), file=out)
    else:
        for r in results:
            _print_result(r, out)
        if comparison is not None:
            i, j = comparison.max_position
            print(f"max divergence |log(b/c)| = {comparison.max_divergence:.6g} at ({i},{j}); "
                  f"methods {'coincide' if comparison.coincide else 'differ'} "
                  f"(tol {comparison.tolerance:g})", file=out)
    return 0


def _cmd_verify_theorem1(args, out) -> int:
    pcm = _load(args.file)
    comparison = verify_theorem1(pcm, tol=args.tol)
    i, j = comparison.max_position
    print(f"order {comparison.order}: max divergence {comparison.max_divergence:.6g} at ({i},{j}); "
          f"coincide = {comparison.coincide}", file=out)
    return 0


def _cmd_counterexample(args, out) -> int:
    pcm = counterexample_of_order(args.order)
    print(pcm.to_csv(), end="", file=out)
    return 0


def _cmd_batch(args, out) -> int:
    print(batch_report(args.n, args.missing, args.trials, args.seed), end="", file=out)
    return 0


def _cmd_serve(args, out) -> int:
    import uvicorn

    from .service import create_app

    port = int(os.environ.get("PCM_PORT", args.port))
    app = create_app(journal_path=args.journal)
    uvicorn.run(app, host=args.host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pcmcomplete",
        description="Complete pairwise comparison matrices with missing judgments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("complete", help="complete a matrix read from a CSV or JSON file")
    p.add_argument("file")
    p.add_argument("--method", choices=("llsm", "ev", "both"), default="both")
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--format", choices=("csv", "json"), default="csv",
                   help="output format (input format follows the file extension)")
    p.set_defaults(func=_cmd_complete)

    p = sub.add_parser("verify-theorem1", help="check that both completions coincide (order 4)")
    p.add_argument("file")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=_cmd_verify_theorem1)

    p = sub.add_parser("counterexample", help="emit an order-n matrix whose completions differ")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_counterexample)

    p = sub.add_parser("batch", help="CSV report over random instances")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--missing", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_batch)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--journal", default=None, help="append-only session journal file")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (ParseError, ValidationError, OrderTooSmall, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except DisconnectedGraph as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except PcmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
