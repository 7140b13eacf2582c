"""
Command-line front end.

Reports go to stdout, diagnostics and logs to stderr. Exit status is 0 on
success, 1 for bad input and 2 when a result fails its own check.
"""

import argparse
import logging
import sys
from typing import Callable, Dict, List, NoReturn, Optional

from ..config import DEFAULT_SPECTRUM_SETTINGS, Tolerances, parse_tolerance
from ..errors import InputError, InternalCheckError
from .analyzer import GraphAnalyzer, identity_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_CHECK_FAILED = 2


class UsageError(InputError):
    """Raised when the command line itself is malformed."""

    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        raise UsageError(f"{self.prog}: {message}")


def _positive_float(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{raw!r} is not a number")
    if not 0 < value < float("inf"):
        raise argparse.ArgumentTypeError(f"{raw!r} must be positive")
    return value


def _positive_int(raw: str) -> int:
    try:
        value = int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{raw!r} is not an integer")
    if value < 1:
        raise argparse.ArgumentTypeError(f"{raw!r} must be at least 1")
    return value


def _unit_float(raw: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{raw!r} is not a number")
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{raw!r} must lie in [0, 1]")
    return value


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per report."""
    common = _Parser(add_help=False)
    common.add_argument("--tol", help="PASS/FAIL tolerance (default: $METGRAPH_TOL or 1e-9)")
    common.add_argument(
        "-v", "--verbose", action="count", default=0, help="log to stderr; -vv for debug"
    )

    with_graph = _Parser(add_help=False, parents=[common])
    with_graph.add_argument("graph", help="path to a .graph file")

    parser = _Parser(
        prog="metgraph",
        description="Laplacians, resistances, canonical measures and spectra of metrized graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("validate", parents=[with_graph], help="structure and invariant report")

    p = sub.add_parser("resistance", parents=[with_graph], help="effective resistance r(P, Q)")
    p.add_argument("--from", dest="source", required=True, metavar="P")
    p.add_argument("--to", dest="target", required=True, metavar="Q")

    p = sub.add_parser("jfun", parents=[with_graph], help="the j-function j_z(x, y)")
    p.add_argument("--y", required=True, metavar="P")
    p.add_argument("--z", required=True, metavar="Q")
    p.add_argument("--at", metavar="X", help="evaluate at one point instead of writing the function")

    p = sub.add_parser("current", parents=[with_graph], help="potential and edge currents")
    p.add_argument("--source", required=True, metavar="A")
    p.add_argument("--sink", required=True, metavar="B")
    p.add_argument("--amps", type=_positive_float, default=1.0, metavar="I")
    p.add_argument("--ground", metavar="Z", help="default is the sink")

    sub.add_parser("canonical", parents=[with_graph], help="canonical measure as CSV")
    sub.add_parser("foster", parents=[with_graph], help="Foster's sum against #V - 1")
    sub.add_parser("cyclerank", parents=[with_graph], help="cycle-rank sum against #E - #V + 1")

    p = sub.add_parser("tau", parents=[with_graph], help="the tau constant")
    p.add_argument("--at", metavar="P", help="base point, default the first vertex")

    p = sub.add_parser("spectrum", parents=[with_graph], help="eigenvalues anchored at a point")
    p.add_argument("--z", required=True, metavar="P")
    p.add_argument("--terms", type=_positive_int, default=DEFAULT_SPECTRUM_SETTINGS.terms, metavar="K")
    p.add_argument("--step", type=_positive_float, default=DEFAULT_SPECTRUM_SETTINGS.step, metavar="H")
    p.add_argument("--eigvecs", action="store_true", help="append n,point,value rows")

    sub.add_parser("trees", parents=[with_graph], help="number of spanning trees")

    p = sub.add_parser("identity", parents=[common], help="sine series for min(x, y) on [0, 1]")
    p.add_argument("--x", type=_unit_float, required=True)
    p.add_argument("--y", type=_unit_float, required=True)
    p.add_argument("--terms", type=_positive_int, default=DEFAULT_SPECTRUM_SETTINGS.terms, metavar="K")

    return parser


def _configure_logging(verbose: int) -> None:
    if verbose <= 0:
        return
    level = logging.INFO if verbose == 1 else logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def _run(args: argparse.Namespace) -> str:
    tolerances = Tolerances.from_env()
    if args.tol is not None:
        tolerances = tolerances.with_verdict(parse_tolerance(args.tol, "--tol"))

    if args.command == "identity":
        return identity_report(args.x, args.y, args.terms)

    aly = GraphAnalyzer(args.graph, tolerances=tolerances)
    commands: Dict[str, Callable[[], str]] = {
        "validate": aly.validate,
        "resistance": lambda: aly.resistance(args.source, args.target),
        "jfun": lambda: aly.jfun(args.y, args.z, args.at),
        "current": lambda: aly.current(args.source, args.sink, args.amps, args.ground),
        "canonical": aly.canonical,
        "foster": aly.foster,
        "cyclerank": aly.cyclerank,
        "tau": lambda: aly.tau(args.at),
        "spectrum": lambda: aly.spectrum(args.z, args.terms, args.step, args.eigvecs),
        "trees": aly.trees,
    }
    return commands[args.command]()


def main(argv: Optional[List[str]] = None) -> int:
    """
    Run one subcommand.

    Parameters
    ----------
    argv : list[str] | None, optional
        Arguments without the program name. Default is ``sys.argv[1:]``.

    Returns
    -------
    int
        Exit status.
    """
    try:
        args = build_parser().parse_args(argv)
        _configure_logging(args.verbose)
        logger.info("running %s", args.command)
        report = _run(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except InternalCheckError as e:
        print(f"check failed: {e}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    sys.stdout.write(report)
    return EXIT_OK
