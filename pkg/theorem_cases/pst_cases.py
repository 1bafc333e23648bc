"""Cases checking where perfect pair state transfer occurs, and where it cannot"""
import math
from typing import Any, Dict

from theorem_cases.base_case import CaseResult, TheoremCase
from utils.env_helper import Tolerances
from utils.errors import InvalidParameterError
from utils.graph_core import (
    EDGE_EDGE,
    VERTEX_VERTEX,
    circulant,
    cocktail_party,
    complete_graph,
    pair_kind,
    petersen,
    regularity,
    total_graph,
)
from utils.pair_analysis import PAIR_NORM, PairState, support_pairing
from utils.pst_certifier import r_plus_one_absent, scan_all_pairs_pst
from utils.spectral import exact_integer_spectrum, total_exact_spectrum


class TotalCompleteCase(TheoremCase):

    @property
    def case_id(self) -> str:
        return "thm-tkn"

    @property
    def description(self) -> str:
        return "T(K_n) has no perfect pair state transfer for n ≥ 4"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"n": 5}

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        n = params["n"]
        if n < 4:
            raise InvalidParameterError(f"thm-tkn needs n ≥ 4, got {n}")
        base = complete_graph(n)
        _, labels = total_graph(base)
        spectrum = total_exact_spectrum(base, exact_integer_spectrum(base, tolerances))
        report = scan_all_pairs_pst(spectrum, tolerances, labels=labels)
        return CaseResult(
            self.case_id, not report.certificates,
            expected="0 PST pairs",
            observed=f"{len(report.certificates)} PST pairs among {report.pair_states} pair states",
            evidence=report.to_dict(),
        )


class NonexistenceTotalCase(TheoremCase):

    @property
    def case_id(self) -> str:
        return "thm-nonexistence-total"

    @property
    def description(self) -> str:
        return "T(G) has no perfect pair state transfer when G is r-regular, r > 2 and r + 1 is not an eigenvalue"

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        evidence, total_found = {}, 0
        for base in (petersen(), circulant(6, [1, 3, 5]), cocktail_party(3)):
            r = regularity(base)
            base_spectrum = exact_integer_spectrum(base, tolerances)
            if r <= 2 or not r_plus_one_absent(base_spectrum, r):
                raise InvalidParameterError(f"{base.name} does not satisfy r > 2 with r + 1 absent")
            _, labels = total_graph(base)
            report = scan_all_pairs_pst(total_exact_spectrum(base, base_spectrum), tolerances, labels=labels)
            total_found += len(report.certificates)
            evidence[base.name] = {
                "r": r,
                "pst_pairs": len(report.certificates),
                "pair_states": report.pair_states,
                "rejections": report.rejections,
            }
        return CaseResult(
            self.case_id, total_found == 0,
            expected="0 PST pairs on every fixture",
            observed=f"{total_found} PST pairs across {len(evidence)} total graphs",
            evidence=evidence,
        )


class SupportPairingCase(TheoremCase):

    @property
    def case_id(self) -> str:
        return "lemma-support-pairing"

    @property
    def description(self) -> str:
        return "For vertex-vertex and edge-edge pairs of T(G), θⱼ⁺ is in the support exactly when θⱼ⁻ is"

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        base = petersen()
        total, labels = total_graph(base)
        spectrum = total_exact_spectrum(base, exact_integer_spectrum(base, tolerances))
        checked, failures = 0, []
        for a in range(total.n):
            for b in range(a + 1, total.n):
                if pair_kind(labels, (a, b)) not in (VERTEX_VERTEX, EDGE_EDGE):
                    continue
                checked += 1
                if not support_pairing(spectrum, PairState(a, b), tolerances.support * PAIR_NORM):
                    failures.append([a, b])
        return CaseResult(
            self.case_id, not failures,
            expected="pairing holds for every vertex-vertex and edge-edge pair",
            observed=f"{checked - len(failures)}/{checked} pairs satisfy the pairing",
            evidence={"graph": total.name, "checked": checked, "failures": failures[:20]},
        )


class CocktailPartyPSTCase(TheoremCase):

    @property
    def case_id(self) -> str:
        return "ex-cocktail-pst"

    @property
    def description(self) -> str:
        return "CP(m) has perfect pair state transfer, every certificate at t0 = π/2 with Δ = 1 and g = 2"

    @property
    def default_params(self) -> Dict[str, Any]:
        return {"m": 6}

    def _run(self, params: Dict[str, Any], tolerances: Tolerances) -> CaseResult:
        graph = cocktail_party(params["m"])
        report = scan_all_pairs_pst(exact_integer_spectrum(graph, tolerances), tolerances)
        off_pattern = [
            certificate.to_dict() for certificate in report.certificates
            if not (
                math.isclose(certificate.t0, math.pi / 2, rel_tol=1e-12)
                and certificate.delta == 1
                and certificate.g == 2
                and certificate.confirmed_fidelity >= 1 - 1e-9
            )
        ]
        return CaseResult(
            self.case_id, bool(report.certificates) and not off_pattern,
            expected="at least one PST pair; all at t0 = π/2, Δ = 1, g = 2, fidelity ≥ 1 - 1e-9",
            observed=f"{len(report.certificates)} PST pairs, {len(off_pattern)} off the expected pattern",
            evidence={
                "graph": graph.name,
                "pair_states": report.pair_states,
                "pst_pairs": len(report.certificates),
                "off_pattern": off_pattern[:10],
                "rejections": dict(sorted(report.rejections.items())),
            },
        )
