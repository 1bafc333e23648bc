"""Cases comparing closed-form spectra and propagators with numeric oracles"""
from typing import Any, Dict

import numpy as np
import scipy.linalg

from theorem_cases.base_case import CaseResult, TheoremCase, oracle_fixtures
from utils.env_helper import DEFAULT_TOLERANCES, Tolerances
from utils.errors import InternalInconsistencyError, InvalidParameterError
from utils.graph_core import (
    Graph,
    complete_graph,
    hypercube,
    is_bipartite,
    laplacian,
    petersen,
    regularity,
    total_graph,
)
from utils.pair_analysis import PairState, pair_amplitude, total_pair_amplitude, total_vertex_amplitude
from utils.spectral import (
    SpectralDecomposition,
    check_pair_identities,
    eigendecompose_symmetric,
    exact_integer_spectrum,
    tkn_closed_projectors,
    total_exact_spectrum,
    total_numeric_spectrum,
    transition_matrix,
)


def compare_decompositions(closed: SpectralDecomposition, numeric: SpectralDecomposition) -> Dict[str, Any]:
    """Eigenvalue and projector gaps between two decompositions of the same matrix"""
    if len(closed) != len(numeric):
        return {"matched": False, "distinct_closed": len(closed), "distinct_numeric": len(numeric)}
    return {
        "matched": closed.multiplicities == numeric.multiplicities,
        "eigenvalue_error": float(np.abs(closed.eigenvalues - numeric.eigenvalues).max()),
        "projector_error": float(np.abs(closed.projectors - numeric.projectors).max()),
    }


def numeric_decomposition(graph: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SpectralDecomposition:
    lap = laplacian(graph).astype(float)
    return eigendecompose_symmetric(lap, tolerances.grouping_for(lap))


def closed_form_total(graph: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> SpectralDecomposition:
    base = exact_integer_spectrum(graph, tolerances)
    if base is not None:
        return total_exact_spectrum(graph, base).to_decomposition()
    return total_numeric_spectrum(graph, numeric_decomposition(graph, tolerances))


def _require_positive(params: Dict[str, Any], key: str) -> int:
    value = params[key]
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise InvalidParameterError(f"{key} must be a positive integer, got {value!r}")
    return value


class SpectraOracleCase(TheoremCase):

    @property
    def case_id(self) -> str:
        return "spectra-oracle"

    @property
    def description(self) -> str:
        return "Closed-form total-graph spectra and projectors agree with direct decomposition of L(T(G))"

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        evidence, passed = {}, True
        for graph in oracle_fixtures():
            total, _ = total_graph(graph)
            report = compare_decompositions(
                closed_form_total(graph, tolerances), numeric_decomposition(total, tolerances)
            )
            ok = report["matched"] and report["eigenvalue_error"] <= 1e-9 and report["projector_error"] <= 1e-8
            passed &= ok
            evidence[graph.name] = report
        return CaseResult(
            self.case_id, passed,
            expected="eigenvalues within 1e-9, projectors within 1e-8",
            observed=f"{sum(1 for r in evidence.values() if r.get('matched'))}/{len(evidence)} fixtures matched",
            evidence=evidence,
        )


class TknProjectorsCase(TheoremCase):

    @property
    def case_id(self) -> str:
        return "tkn-projectors"

    @property
    def description(self) -> str:
        return "Explicit T(K_n) projectors match the general closed form and the numeric decomposition"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"n": 5}

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        n = params["n"]
        base = complete_graph(n)
        explicit = tkn_closed_projectors(n).to_decomposition()
        general = total_exact_spectrum(base, exact_integer_spectrum(base, tolerances)).to_decomposition()
        total, _ = total_graph(base)
        numeric = numeric_decomposition(total, tolerances)
        evidence = {
            "vs_closed_form": compare_decompositions(explicit, general),
            "vs_numeric": compare_decompositions(explicit, numeric),
            "eigenvalues": explicit.eigenvalues.tolist(),
            "multiplicities": explicit.multiplicities,
        }
        passed = all(
            report["matched"] and report["projector_error"] <= 1e-8
            for report in (evidence["vs_closed_form"], evidence["vs_numeric"])
        )
        return CaseResult(
            self.case_id, passed,
            expected=f"eigenvalues 0, {n + 1}, {2 * n} with matching projectors",
            observed=f"eigenvalues {[round(v, 9) for v in explicit.eigenvalues.tolist()]}",
            evidence=evidence,
        )


class OracleEquivalenceCase(TheoremCase):
    """Closed-form T(G) amplitudes from the base spectrum against expm(-itL(T(G))) at seeded random times"""

    @property
    def case_id(self) -> str:
        return "oracle-equivalence"

    @property
    def description(self) -> str:
        return "Total-graph vertex and pair amplitudes computed from the base spectrum agree with exp(-itL(T(G)))"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"samples": 20, "seed": 7}

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        samples = _require_positive(params, "samples")
        rng = np.random.default_rng(params["seed"])
        evidence = {}
        for base in (petersen(), hypercube(3)):
            spectrum = exact_integer_spectrum(base, tolerances)
            if spectrum is None:
                raise InternalInconsistencyError(f"{base.name} should have an integral spectrum")
            decomposition = spectrum.to_decomposition()
            bipartition = is_bipartite(base)
            r = regularity(base)
            total, _ = total_graph(base)
            lap = laplacian(total).astype(float)

            vertex_gap = pair_gap = 0.0
            for t in rng.uniform(0.0, 20.0, size=samples):
                unitary = scipy.linalg.expm(-1j * t * lap)
                closed = np.array([
                    [total_vertex_amplitude(decomposition, bipartition, a, b, r, t) for b in range(base.n)]
                    for a in range(base.n)
                ])
                vertex_gap = max(vertex_gap, float(np.abs(closed - unitary[:base.n, :base.n]).max()))

                a, b, c, d = (int(v) for v in rng.choice(base.n, size=4, replace=False))
                pair1, pair2 = PairState(a, b), PairState(c, d)
                expected = 0.5 * pair1.vector(total.n) @ unitary @ pair2.vector(total.n)
                value = total_pair_amplitude(decomposition, bipartition, pair1, pair2, r, t).value
                pair_gap = max(pair_gap, abs(value - expected))
            evidence[total.name] = {"vertex_entry_gap": vertex_gap, "pair_amplitude_gap": pair_gap}

        worst = max(max(gaps.values()) for gaps in evidence.values())
        return CaseResult(
            self.case_id, worst <= 1e-8,
            expected=f"closed-form amplitudes within 1e-8 of expm at {samples} times per graph",
            observed=f"max gap {worst:.3e}",
            evidence=evidence,
        )


class PropertySuiteCase(TheoremCase):
    """Seeded property checks over every oracle fixture and its total graph"""

    @property
    def case_id(self) -> str:
        return "property-suites"

    @property
    def description(self) -> str:
        return "Unitarity, projector residuals, fidelity bounds, T(G) degrees and exact pair identities on all fixtures"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"samples": 50, "seed": 0}

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        samples = _require_positive(params, "samples")
        rng = np.random.default_rng(params["seed"])
        evidence, failures = {}, []

        graphs = []
        for base in oracle_fixtures():
            total, _ = total_graph(base)
            if regularity(total) != 2 * regularity(base):
                failures.append(f"{total.name} is not {2 * regularity(base)}-regular")
            graphs.extend((base, total))

        for graph in graphs:
            lap = laplacian(graph).astype(float)
            decomposition = numeric_decomposition(graph, tolerances)
            residual = max(decomposition.residuals(lap).values())
            unitarity = fidelity = 0.0
            for t in rng.uniform(0.0, 20.0, size=samples):
                unitary = transition_matrix(decomposition, t)
                unitarity = max(unitarity, float(np.abs(unitary @ unitary.conj().T - np.eye(graph.n)).max()))
                a, b, c, d = (int(v) for v in rng.choice(graph.n, size=4, replace=False))
                fidelity = max(fidelity, pair_amplitude(decomposition, PairState(a, b), PairState(c, d), t).fidelity)
            if residual > 1e-9:
                failures.append(f"{graph.name}: projector residual {residual:.3e}")
            if unitarity > 1e-10:
                failures.append(f"{graph.name}: unitarity defect {unitarity:.3e}")
            if fidelity > 1.0 + 1e-9:
                failures.append(f"{graph.name}: fidelity {fidelity:.12f} exceeds 1")
            evidence[graph.name] = {"residual": residual, "unitarity": unitarity, "max_fidelity": fidelity}

        identities = 0
        for r in range(2, 9):
            for theta in range(0, 2 * r + 1):
                if (r + 2) ** 2 - 4 * theta <= 0:
                    continue
                ok, msg = check_pair_identities(r, theta)
                identities += 1
                if not ok:
                    failures.append(f"r={r}, θ={theta}: {msg}")
        evidence["pair_identities_checked"] = identities
        evidence["failures"] = failures[:20]

        return CaseResult(
            self.case_id, not failures,
            expected="every property holds on every fixture",
            observed=f"{len(failures)} failures across {len(graphs)} graphs and {identities} pair identities",
            evidence=evidence,
        )
