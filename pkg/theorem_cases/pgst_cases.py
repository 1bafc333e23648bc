"""Cases exhibiting pretty good pair state transfer on total graphs"""
import math
from typing import Any, Dict

from theorem_cases.base_case import CaseResult, TheoremCase
from utils.env_helper import Tolerances
from utils.errors import InternalInconsistencyError
from utils.graph_core import Graph, cocktail_party, hypercube, is_bipartite, regularity
from utils.pair_analysis import PairState
from utils.pgst_search import PGSTQuery, find_pst_pairs_at, pgst_hypotheses, search_pgst
from utils.pst_certifier import scan_all_pairs_pst
from utils.spectral import ExactSpectrum, exact_integer_spectrum


def _run_search(
    case_id: str,
    graph: Graph,
    spectrum: ExactSpectrum,
    pair1: PairState,
    pair2: PairState,
    params: Dict[str, Any],
    tolerances: Tolerances,
) -> CaseResult:
    hypothesis = pgst_hypotheses(graph, spectrum, pair1, pair2, tolerances)
    evidence = {"graph": graph.name, "pair": [pair1.a, pair1.b], "partner": [pair2.a, pair2.b],
                "hypotheses": hypothesis.to_dict()}
    if not params.get("search", 1):
        return CaseResult(
            case_id, hypothesis.applies is not None,
            expected="sufficient conditions hold",
            observed=f"conditions: {hypothesis.applies or 'none'}",
            evidence=evidence,
        )

    query = PGSTQuery(pair1, pair2, epsilon=params["epsilon"], ell_max=params["ell_max"], refine=bool(params["refine"]))
    report = search_pgst(spectrum.to_decomposition(), is_bipartite(graph), regularity(graph), query, hypothesis)
    evidence["search"] = report.to_dict()
    return CaseResult(
        case_id, hypothesis.applies is not None and report.pgst_claim,
        expected=f"conditions hold and fidelity ≥ {1 - query.epsilon} within ℓ ≤ {query.ell_max}",
        observed=f"conditions: {hypothesis.applies or 'none'}; best fidelity {report.best_fidelity:.6f} at ℓ={report.best_ell}",
        evidence=evidence,
    )


class CocktailPartyPGSTCase(TheoremCase):

    @property
    def case_id(self) -> str:
        return "ex-cocktail"

    @property
    def description(self) -> str:
        return "T(CP(m)) with m even has pretty good pair state transfer between antipodal pair states"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"m": 6, "epsilon": 0.05, "ell_max": 100_000, "refine": 0, "search": 1}

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        graph = cocktail_party(params["m"])
        spectrum = exact_integer_spectrum(graph, tolerances)
        report = scan_all_pairs_pst(spectrum, tolerances)
        at_half_pi = [c for c in report.certificates if math.isclose(c.t0, math.pi / 2, rel_tol=1e-12)]
        if not at_half_pi:
            raise InternalInconsistencyError(f"No PST pair at π/2 in {graph.name}")
        first = at_half_pi[0]
        return _run_search(self.case_id, graph, spectrum, first.pair, first.partner, params, tolerances)


class HypercubePGSTCase(TheoremCase):

    @property
    def case_id(self) -> str:
        return "ex-hypercube"

    @property
    def description(self) -> str:
        return "T(Q_d) with d ≡ 2 (mod 8) has pretty good pair state transfer for a cross-side pair"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"d": 10, "epsilon": 0.1, "ell_max": 100_000, "refine": 1, "search": 1}

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        graph = hypercube(params["d"])
        bipartition = is_bipartite(graph)
        spectrum = exact_integer_spectrum(graph, tolerances)
        candidates = [PairState(0, v) for v in range(1, graph.n) if not bipartition.same_side(0, v)]
        found = find_pst_pairs_at(
            spectrum.to_decomposition(), math.pi / 2, pairs=candidates, threshold=1 - tolerances.fidelity
        )
        if not found:
            raise InternalInconsistencyError(f"No cross-side PST pair at π/2 in {graph.name}")
        pair1, pair2, _ = found[0]
        return _run_search(self.case_id, graph, spectrum, pair1, pair2, params, tolerances)
