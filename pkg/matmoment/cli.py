# Distributed under the MIT License.
# See LICENSE for details.
"""
Command-line interface. Every subcommand reads one or more documents (paths,
or standard input when none is given), writes one JSON result per document
to standard output and exits with the largest result code: 0 when the tested
property holds, 1 when it is refuted, 2 on error.

    matmoment check --kind hausdorff moments.json
    matmoment solve recurrence.json
    matmoment reconstruct --order 4 measure.json
    matmoment riesz --square sequence.json

"""

import argparse
import concurrent.futures
import logging
import sys

import numpy as np

from matmoment.atomic_measure import (Outcome, decide_sequence,
                                      decide_truncated, reconstruct)
from matmoment.documents import (ResultDocument, measure_to_dict,
                                 parse_document, parse_measure_document,
                                 polynomial_to_dict, verdict_to_dict)
from matmoment.errors import MomentError, SchemaError
from matmoment.hankel import gram_polynomial, riesz_eval
from matmoment.problems import Hamburger, Hausdorff, Stieltjes

__all__ = ["main", "run_check", "run_solve", "run_reconstruct", "run_riesz"]

_logger = logging.getLogger(__name__)

EXIT_SATISFIED = 0
EXIT_REFUTED = 1
EXIT_ERROR = 2

# Problem name -> class.
PROBLEMS = {
    Hamburger.name().lower(): Hamburger,
    Stieltjes.name().lower(): Stieltjes,
    Hausdorff.name().lower(): Hausdorff,
}


def _exit_code(satisfied):
    return EXIT_SATISFIED if satisfied else EXIT_REFUTED


def run_check(doc, kind):
    """
    Decide the truncated `kind` problem for the document's moments.
    Recurrence documents are extended to $S_{4r}$ first.

    Returns
    -------

    out : ResultDocument

    """
    problem = PROBLEMS[kind]()
    n = None if doc.mode == "sequence" else 4 * doc.recurrence.order
    verdict = problem.check(doc.sequence(n), doc.tolerance)
    diagnostics = [
        f"{name} is PSD only within tolerance" for name in verdict.boundary
    ]
    return ResultDocument("check",
                          _exit_code(verdict.satisfied),
                          verdicts={kind: verdict_to_dict(verdict)},
                          diagnostics=diagnostics)


def _support_kinds(measure, tol):
    return [
        name for name, problem in PROBLEMS.items()
        if all(problem.contains(x, tol.root_eps * max(1., abs(x)))
               for x in measure.nodes)
    ]


def run_solve(doc):
    """
    Compute the minimal polynomial, its roots and the representing atomic
    measure, with both sides of the positivity decision.

    The exit code is 0 when a measure is recovered and (in symmetric mode)
    all of its weights are PSD, and 1 otherwise.

    Returns
    -------

    out : ResultDocument

    """
    tol = doc.tolerance
    if doc.mode == "recurrence":
        report = decide_truncated(doc.recurrence, tol)
    else:
        report = decide_sequence(doc.sequence(), tol)

    data = {
        "outcome": report.outcome.value,
        "all_weights_psd": report.all_weights_psd,
        "hankel_psd": report.hankel_psd,
        "numerical_disagreement": report.numerical_disagreement,
    }
    diagnostics = [
        f"moment {k} had asymmetry defect {d:.3e}"
        for k, d in enumerate(doc.defects) if d > 0.
    ]
    result = ResultDocument("solve",
                            minimal_polynomial=polynomial_to_dict(
                                report.minimal_polynomial, report.roots),
                            data=data,
                            diagnostics=diagnostics)

    if report.outcome is not Outcome.MEASURE:
        data["failure"] = report.failure.to_dict()
        result.exit_code = EXIT_REFUTED
        return result

    measure = report.measure
    result.measure = measure_to_dict(measure)
    result.residuals = {"reconstruction": report.reconstruction_residual}
    data["per_atom_min_eig"] = list(report.per_atom_min_eig)
    diagnostics.extend(f"weight at {x:.12g} is PSD only within tolerance"
                       for x in report.boundary_atoms)
    if report.numerical_disagreement:
        diagnostics.append(
            "Hankel and weight positivity disagree within tolerance")
    if report.all_weights_psd:
        data["support_kinds"] = _support_kinds(measure, tol)
    result.exit_code = _exit_code(report.all_weights_psd is not False)
    return result


def run_reconstruct(measure, n):
    """
    The moments $S_0, \\hdots, S_n$ of an atomic measure.

    Returns
    -------

    out : ResultDocument

    """
    seq = reconstruct(measure, n)
    return ResultDocument("reconstruct", data={"moments": seq.moments})


def run_riesz(doc, square=False):
    """
    Evaluate the Riesz functional on the document's `polynomial`, or on
    ${}^{\\top}P P$ when `square` is set; in that case a negative value
    (beyond tolerance) refutes positivity and gives exit code 1.

    Returns
    -------

    out : ResultDocument

    """
    if doc.polynomial is None:
        raise SchemaError("riesz needs a 'polynomial' field.",
                          fields=["polynomial"])
    coeffs = gram_polynomial(doc.polynomial) if square else doc.polynomial
    n = None if doc.mode == "sequence" else coeffs.shape[0] - 1
    seq = doc.sequence(n)
    value = riesz_eval(seq, coeffs)
    exit_code = EXIT_SATISFIED
    if square:
        floor = -doc.tolerance.psd_eps * max(
            1., float(np.sum(np.abs(coeffs))) * seq.scale)
        exit_code = _exit_code(value >= floor)
    return ResultDocument("riesz",
                          exit_code,
                          data={
                              "value": value,
                              "squared": square
                          })


def _read(path):
    if path == "-":
        return sys.stdin.buffer.read()
    try:
        with open(path, "rb") as f:
            return f.read()
    except OSError as err:
        raise MomentError(f"Cannot read {path}: {err.strerror}",
                          path=path) from err


def _dispatch(args, text, flags):
    if args.command == "reconstruct":
        return run_reconstruct(parse_measure_document(text), args.order)
    doc = parse_document(text, flags)
    if args.command == "check":
        return run_check(doc, args.kind)
    if args.command == "solve":
        return run_solve(doc)
    return run_riesz(doc, args.square)


def _run_one(args, path, flags):
    """
    Run the subcommand on one document and return `(exit_code, json_line)`.

    """
    try:
        result = _dispatch(args, _read(path), flags)
        if len(args.paths) > 1:
            result.source = path
        return result.exit_code, result.to_json()
    except MomentError as err:
        _logger.error("%s: %s", err.kind, err.message)
        error = err.to_dict()
    except ValueError as err:
        # Non-finite output, e.g. a recurrence that overflows.
        _logger.error("%s", err)
        error = {"type": "ValueError", "message": str(err)}
    result = ResultDocument(args.command, EXIT_ERROR, error=error)
    if len(args.paths) > 1:
        result.source = path
    return result.exit_code, result.to_json()


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("paths",
                        nargs="*",
                        metavar="PATH",
                        help="Documents to read (default: standard input).")
    common.add_argument("--tol-psd",
                        type=float,
                        dest="psd_eps",
                        help="Relative eigenvalue floor for PSD tests.")
    common.add_argument("--tol-root",
                        type=float,
                        dest="root_eps",
                        help="Root clustering and realness radius.")
    common.add_argument("--tol-residual",
                        type=float,
                        dest="residual_eps",
                        help="Relative residual bound.")
    common.add_argument("--jobs",
                        type=int,
                        default=1,
                        help="Worker threads for several documents.")
    common.add_argument("-v",
                        "--verbose",
                        action="count",
                        default=0,
                        help="-v for INFO, -vv for DEBUG logging on stderr.")

    parser = argparse.ArgumentParser(
        prog="matmoment",
        description="Truncated matrix moment problems and atomic measure "
        "recovery for recurrent matrix sequences.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    check = subparsers.add_parser("check",
                                  parents=[common],
                                  help="Block Hankel positivity test.")
    check.add_argument("--kind", required=True, choices=sorted(PROBLEMS))

    subparsers.add_parser("solve",
                          parents=[common],
                          help="Minimal polynomial and atomic measure.")

    rebuild = subparsers.add_parser("reconstruct",
                                    parents=[common],
                                    help="Moments of a measure document.")
    rebuild.add_argument("--order",
                         type=int,
                         required=True,
                         help="Index n of the last moment S_n.")

    riesz = subparsers.add_parser("riesz",
                                  parents=[common],
                                  help="Riesz functional of a polynomial.")
    riesz.add_argument("--square",
                       action="store_true",
                       help="Evaluate on transpose(P) P instead of P.")
    return parser


def _configure_logging(verbosity):
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr)


def main(argv=None):
    """
    Entry point of the `matmoment` command. Returns the exit code.

    """
    args = _parser().parse_args(argv)
    _configure_logging(args.verbose)
    if args.command == "reconstruct" and args.order < 0:
        _logger.error("--order must be nonnegative.")
        return EXIT_ERROR
    flags = {
        "psd_eps": args.psd_eps,
        "root_eps": args.root_eps,
        "residual_eps": args.residual_eps,
    }
    paths = args.paths or ["-"]

    if args.jobs > 1 and len(paths) > 1:
        with concurrent.futures.ThreadPoolExecutor(args.jobs) as pool:
            results = list(
                pool.map(lambda path: _run_one(args, path, flags), paths))
    else:
        results = [_run_one(args, path, flags) for path in paths]

    for _, line in results:
        sys.stdout.write(line + "\n")
    return max(code for code, _ in results)


if __name__ == "__main__":
    sys.exit(main())
