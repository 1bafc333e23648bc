"""Subcommand handlers; each returns (graph descriptor, result payload)"""
import logging
from argparse import Namespace
from typing import Callable, Dict, Optional, Tuple

from components.graph_loader import load_graph, parse_pair, parse_params, parse_sweep, resolve_spectrum
from graph_families import FAMILY_REGISTRY
from theorem_cases import CASE_REGISTRY, get_case
from utils.env_helper import Tolerances
from utils.errors import InvalidParameterError, UnsupportedError, UsageError
from utils.graph_core import is_bipartite, regularity
from utils.pair_analysis import (
    PAIR_NORM,
    analyze_support,
    fidelity_sweep,
    pair_amplitude,
    strongly_cospectral,
)
from utils.pgst_search import PGSTQuery, pgst_hypotheses, search_pgst
from utils.pst_certifier import certify_pst, scan_all_pairs_pst
from utils.report_writer import write_sweep_csv
from utils.spectral import exact_integer_spectrum, spectrum_to_json

logger = logging.getLogger(__name__)

Result = Tuple[Optional[Dict], Dict]


def _load(args: Namespace):
    return load_graph(
        family=args.family,
        params=args.params,
        base=args.base,
        graph_file=args.graph,
        total=args.total,
    )


def _require_pair(args: Namespace, attribute: str = "pair"):
    value = getattr(args, attribute, None)
    if not value:
        raise UsageError(f"--{attribute} a,b is required")
    return parse_pair(value)


def handle_build(args: Namespace, tolerances: Tolerances) -> Result:
    loaded = _load(args)
    payload = {"vertices": loaded.graph.n, "edges": loaded.graph.num_edges, "regularity": regularity(loaded.graph)}
    bipartition = is_bipartite(loaded.graph)
    payload["bipartite"] = bipartition is not None
    if loaded.labels is not None:
        payload["labels"] = [label.to_string() for label in loaded.labels]
    if args.edges:
        payload["edge_list"] = [list(edge) for edge in loaded.graph.edges]
    return loaded.descriptor, payload


def handle_spectra(args: Namespace, tolerances: Tolerances) -> Result:
    loaded = _load(args)
    decomposition, exact = resolve_spectrum(loaded, tolerances)
    payload = spectrum_to_json(exact if exact is not None else decomposition)
    payload["residuals"] = decomposition.residuals()
    return loaded.descriptor, payload


def handle_support(args: Namespace, tolerances: Tolerances) -> Result:
    loaded = _load(args)
    decomposition, exact = resolve_spectrum(loaded, tolerances)
    pair = _require_pair(args)
    partner = parse_pair(args.partner) if args.partner else None
    analysis = analyze_support(decomposition, pair, partner, tolerances.support * PAIR_NORM)
    payload = {
        "pair": [pair.a, pair.b],
        "support": list(analysis.support),
    }
    if partner is not None:
        payload["partner"] = [partner.a, partner.b]
        payload["strongly_cospectral"] = analysis.partner is not None
        payload["plus_set"] = list(analysis.plus_set)
        payload["minus_set"] = list(analysis.minus_set)
    return loaded.descriptor, payload


def handle_cospectral(args: Namespace, tolerances: Tolerances) -> Result:
    loaded = _load(args)
    decomposition, _ = resolve_spectrum(loaded, tolerances)
    pair, partner = _require_pair(args), _require_pair(args, "partner")
    signs = strongly_cospectral(decomposition, pair, partner, tolerances.cospectral * PAIR_NORM)
    payload = {
        "pair": [pair.a, pair.b],
        "partner": [partner.a, partner.b],
        "strongly_cospectral": signs is not None,
        "plus_set": list(signs[0]) if signs else None,
        "minus_set": list(signs[1]) if signs else None,
    }
    return loaded.descriptor, payload


def handle_amplitude(args: Namespace, tolerances: Tolerances) -> Result:
    loaded = _load(args)
    decomposition, _ = resolve_spectrum(loaded, tolerances)
    pair, partner = _require_pair(args), _require_pair(args, "partner")
    payload = {"pair": [pair.a, pair.b], "partner": [partner.a, partner.b]}

    if args.sweep:
        frame = fidelity_sweep(decomposition, pair, partner, parse_sweep(args.sweep))
        best = frame["fidelity"].idxmax()
        payload["sweep"] = {
            "points": len(frame),
            "best_time": float(frame.loc[best, "time"]),
            "best_fidelity": float(frame.loc[best, "fidelity"]),
        }
        if args.csv:
            payload["sweep"]["csv"] = str(write_sweep_csv(frame, args.csv))
        return loaded.descriptor, payload

    if args.time is None:
        raise UsageError("amplitude needs --time T or --sweep START:STOP:COUNT")
    if args.time < 0:
        raise InvalidParameterError(f"Time must be non-negative, got {args.time}")
    amplitude = pair_amplitude(decomposition, pair, partner, args.time)
    payload["time"] = args.time
    payload["amplitude"] = amplitude.value
    payload["fidelity"] = amplitude.fidelity
    return loaded.descriptor, payload


def handle_certify_pst(args: Namespace, tolerances: Tolerances) -> Result:
    loaded = _load(args)
    decomposition, exact = resolve_spectrum(loaded, tolerances)
    pair, partner = _require_pair(args), _require_pair(args, "partner")
    certificate = certify_pst(exact, pair, partner, tolerances, decomposition)
    return loaded.descriptor, certificate.to_dict()


def handle_scan_pst(args: Namespace, tolerances: Tolerances) -> Result:
    loaded = _load(args)
    _, exact = resolve_spectrum(loaded, tolerances)
    report = scan_all_pairs_pst(exact, tolerances, labels=loaded.labels, max_workers=args.max_workers)
    return loaded.descriptor, report.to_dict()


def handle_search_pgst(args: Namespace, tolerances: Tolerances) -> Result:
    """Search T(G) for the base graph given by the graph arguments; pairs are base vertices"""
    loaded = _load(args)
    if loaded.is_total:
        raise UsageError("search-pgst takes the base graph; T(G) is formed internally")
    graph = loaded.graph
    r = regularity(graph)
    if r is None or r < 2:
        raise UnsupportedError(f"{graph.name} must be r-regular with r ≥ 2")
    pair, partner = _require_pair(args), _require_pair(args, "partner")
    query = PGSTQuery(pair, partner, epsilon=args.epsilon, ell_max=args.ell_max, refine=args.refine)

    spectrum = exact_integer_spectrum(graph, tolerances)
    hypothesis = None
    if pair.unordered == partner.unordered:
        logger.info(f"[CLI] {pair.to_string()} is its own partner; skipping the PST-based hypothesis check")
    elif spectrum is not None and r > 2:
        hypothesis = pgst_hypotheses(graph, spectrum, pair, partner, tolerances)
    if spectrum is not None:
        decomposition = spectrum.to_decomposition()
    else:
        decomposition, _ = resolve_spectrum(loaded, tolerances)
    report = search_pgst(decomposition, is_bipartite(graph), r, query, hypothesis)
    payload = report.to_dict()
    payload["pair"] = [pair.a, pair.b]
    payload["partner"] = [partner.a, partner.b]
    payload["epsilon"] = args.epsilon
    payload["ell_max"] = args.ell_max
    return loaded.descriptor, payload


def handle_verify_theorem(args: Namespace, tolerances: Tolerances) -> Result:
    case = get_case(args.case)
    params = parse_params(args.params)
    if args.n is not None:
        params["n"] = args.n
    result = case.run(params, tolerances)
    return None, result.to_dict()


def handle_list_families(args: Namespace, tolerances: Tolerances) -> Result:
    return None, {"families": [family.describe() for family in FAMILY_REGISTRY.values()]}


def handle_list_cases(args: Namespace, tolerances: Tolerances) -> Result:
    cases = [
        {"case": key, "description": case.description, "default_params": case.default_params}
        for key, case in CASE_REGISTRY.items()
    ]
    return None, {"cases": cases}


COMMAND_HANDLERS: Dict[str, Callable[[Namespace, Tolerances], Result]] = {
    "build": handle_build,
    "spectra": handle_spectra,
    "support": handle_support,
    "cospectral": handle_cospectral,
    "amplitude": handle_amplitude,
    "certify-pst": handle_certify_pst,
    "scan-pst": handle_scan_pst,
    "search-pgst": handle_search_pgst,
    "verify-theorem": handle_verify_theorem,
    "list-families": handle_list_families,
    "list-cases": handle_list_cases,
}
