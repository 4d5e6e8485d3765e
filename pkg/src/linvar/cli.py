"""Command-line front end.

Exit codes: 0 success, 1 problem-file parse error, 2 dimension mismatch,
3 numerical failure, 4 selfcheck fixture failure.
"""
import argparse
import sys

from .errors import NonFiniteError, NotPositiveDefiniteError, PartitionBreakdownError, ShapeError, SvdConvergenceError
from .problem import METHODS, ProblemFileError, dumps_json, dumps_text, load_problems, result_document
from .selfcheck import format_table, run_checks
from .varieties import best_pair, classify

EXIT_OK, EXIT_PARSE, EXIT_DIMENSION, EXIT_NUMERIC, EXIT_SELFCHECK = range(5)


def _positive_float(text):
    value = float(text)
    if not value > 0 or value == float("inf"):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="linvar",
        description="Distance and closest points between two affine subspaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve the problem(s) in a problem file")
    solve.add_argument("problem_file")
    solve.add_argument("--method", choices=METHODS, default=None,
                       help="pseudoinverse route (default: file setting, else direct)")
    solve.add_argument("--tol", type=_positive_float, default=None,
                       help="classification tolerance for 'intersecting'")
    solve.add_argument("--json", action="store_true", help="machine-readable output")
    solve.add_argument("--no-fallback", action="store_true",
                       help="fail instead of falling back when the partitioned formula breaks down")

    check = sub.add_parser("selfcheck", help="run the built-in fixture suite")
    check.add_argument("--seed", type=int, default=0, help="seed for the random oracle comparison")
    check.add_argument("--json", action="store_true")
    return parser


def solve_problem(problem, method=None, tol=None, allow_fallback=True):
    method = method or problem.method or "direct"
    tol = tol if tol is not None else problem.tolerance
    pair = best_pair(problem.first, problem.second, method, allow_fallback=allow_fallback)
    relation = classify(problem.first, problem.second, tol=tol)
    doc = result_document(pair, relation)
    if problem.name is not None:
        doc = {"name": problem.name, **doc}
    return doc


def run(args, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        problems = load_problems(args.problem_file)
    except OSError as exc:
        print(f"error: cannot read {args.problem_file}: {exc.strerror}", file=err)
        return EXIT_PARSE
    except (ProblemFileError, NonFiniteError) as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except ShapeError as exc:
        print(f"dimension mismatch: {exc}", file=err)
        return EXIT_DIMENSION

    try:
        docs = [solve_problem(p, args.method, args.tol, not args.no_fallback) for p in problems]
    except ShapeError as exc:
        print(f"dimension mismatch: {exc}", file=err)
        return EXIT_DIMENSION
    except (SvdConvergenceError, PartitionBreakdownError, NotPositiveDefiniteError) as exc:
        print(f"numerical failure: {exc}", file=err)
        return EXIT_NUMERIC

    for doc in docs:
        if doc["fallback"]:
            print("warning: partitioned formula broke down; used the direct pseudoinverse", file=err)
    if args.json:
        print(dumps_json(docs if problems[0].batch else docs[0]), file=out)
    else:
        blocks = [dumps_text(d) for d in docs]
        print("\n\n".join(blocks), file=out)
    return EXIT_OK


def selfcheck(args, out=None):
    out = out or sys.stdout
    rows = run_checks(args.seed)
    if args.json:
        doc = [{"check": name, "passed": ok, "detail": detail} for name, ok, detail in rows]
        print(dumps_json(doc), file=out)
    else:
        print(format_table(rows), file=out)
    return EXIT_OK if all(ok for _, ok, _ in rows) else EXIT_SELFCHECK


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "solve":
        return run(args)
    return selfcheck(args)


if __name__ == "__main__":
    sys.exit(main())
