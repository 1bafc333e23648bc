"""Command-line entry point - pair state transfer on total graphs"""
import argparse
import logging
import sys
import time
from typing import List, Optional

from components.commands import COMMAND_HANDLERS
from utils.env_helper import DEFAULT_ELL_MAX, get_log_level, load_tolerances
from utils.errors import PairwalkError, UsageError
from utils.report_writer import AnalysisReport, dumps

logger = logging.getLogger(__name__)

GRAPH_COMMANDS = ("build", "spectra", "support", "cospectral", "amplitude", "certify-pst", "scan-pst", "search-pgst")


def _add_graph_arguments(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("graph")
    group.add_argument("--family", help="Graph family (see list-families), or 'total' together with --base")
    group.add_argument("--params", help="Family parameters as k=v,... e.g. n=6,S=1,3,5")
    group.add_argument("--base", help="Base family when --family total")
    group.add_argument("--graph", help="Edge-list file: 'n m' header then m lines 'u v'")
    group.add_argument("--total", action="store_true", help="Analyse the total graph of the given graph")


def _add_pair_arguments(parser: argparse.ArgumentParser, partner_required: bool) -> None:
    parser.add_argument("--pair", required=True, help="Pair state a,b (e_a - e_b)")
    parser.add_argument("--partner", required=partner_required, help="Second pair state c,d")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR (default from PAIRWALK_LOG_LEVEL, else INFO)")
    common.add_argument("--timing", action="store_true", help="Include wall time in the report")
    common.add_argument("--seed", type=int, help="Reserved; no randomised algorithms use it")

    parser = argparse.ArgumentParser(
        prog="pairwalk",
        description="Laplacian pair state transfer on graphs and total graphs",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", parents=[common], help="Build a graph and summarise it")
    _add_graph_arguments(build)
    build.add_argument("--edges", action="store_true", help="Include the edge list")

    spectra = subparsers.add_parser("spectra", parents=[common], help="Distinct Laplacian eigenvalues with multiplicities")
    _add_graph_arguments(spectra)

    support = subparsers.add_parser("support", parents=[common], help="Eigenvalue support of a pair state")
    _add_graph_arguments(support)
    _add_pair_arguments(support, partner_required=False)

    cospectral = subparsers.add_parser("cospectral", parents=[common], help="Strong cospectrality of two pair states")
    _add_graph_arguments(cospectral)
    _add_pair_arguments(cospectral, partner_required=True)

    amplitude = subparsers.add_parser("amplitude", parents=[common], help="Transfer amplitude between pair states")
    _add_graph_arguments(amplitude)
    _add_pair_arguments(amplitude, partner_required=True)
    amplitude.add_argument("--time", type=float, help="Evaluation time t ≥ 0")
    amplitude.add_argument("--sweep", help="START:STOP:COUNT fidelity sweep")
    amplitude.add_argument("--csv", help="Write the sweep as CSV (time,fidelity)")

    certify = subparsers.add_parser("certify-pst", parents=[common], help="Exact PST certificate for two pair states")
    _add_graph_arguments(certify)
    _add_pair_arguments(certify, partner_required=True)

    scan = subparsers.add_parser("scan-pst", parents=[common], help="Certify every pair of pair states")
    _add_graph_arguments(scan)
    scan.add_argument("--max-workers", type=int, default=None, help="Threads for support groups")

    search = subparsers.add_parser("search-pgst", parents=[common], help="PGST search on T(G) for base pairs")
    _add_graph_arguments(search)
    _add_pair_arguments(search, partner_required=True)
    search.add_argument("--epsilon", type=float, default=0.05)
    search.add_argument("--ell-max", type=int, default=DEFAULT_ELL_MAX)
    search.add_argument("--refine", action="store_true", help="Golden-section refinement around the best candidate")

    verify = subparsers.add_parser("verify-theorem", parents=[common], help="Run a registered verification case")
    verify.add_argument("--case", required=True, help="Case id (see list-cases)")
    verify.add_argument("--params", help="Case parameters as k=v,...")
    verify.add_argument("--n", type=int, help="Shorthand for --params n=N")

    subparsers.add_parser("list-families", parents=[common], help="Registered graph families")
    subparsers.add_parser("list-cases", parents=[common], help="Registered verification cases")
    return parser


def _configure_logging(level: Optional[str]) -> None:
    logging.basicConfig(
        level=getattr(logging, (level or get_log_level()).upper(), logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
        force=True,
    )


def run_cli(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; prints the JSON report and returns the exit code"""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2

    try:
        _configure_logging(args.log_level)
        if args.seed is not None:
            logger.debug("[CLI] --seed is reserved and ignored")
        tolerances = load_tolerances()

        started = time.perf_counter()
        descriptor, payload = COMMAND_HANDLERS[args.command](args, tolerances)
        elapsed = time.perf_counter() - started
    except UsageError as exc:
        print(dumps(exc.to_dict()))
        logger.error(f"[CLI] {exc.msg}")
        return 2
    except PairwalkError as exc:
        print(dumps(exc.to_dict()))
        logger.error(f"[CLI] {exc.code}: {exc.msg}")
        return 1

    report = AnalysisReport(
        command=args.command,
        graph=descriptor,
        tolerances=tolerances.to_dict(),
        payload=payload,
        wall_time=elapsed if args.timing else None,
        argv=argv,
    )
    print(report.to_json())
    if args.command == "verify-theorem" and payload.get("status") != "pass":
        return 1
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
