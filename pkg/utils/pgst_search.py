"""Pretty good state transfer search on total graphs over the candidate times (4ℓ + ½)π"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from utils.env_helper import (
    DEFAULT_ELL_MAX,
    DEFAULT_TOLERANCES,
    REFINE_ITERATIONS,
    REFINE_WINDOW,
    SEARCH_CHUNK_SIZE,
    Tolerances,
)
from utils.errors import InvalidParameterError, UnsupportedError
from utils.exact_arithmetic import square_free_decompose
from utils.graph_core import Bipartition, Graph, is_bipartite, regularity
from utils.pair_analysis import PairState, TotalPairEvaluator
from utils.pst_certifier import certify_pst, r_plus_one_absent
from utils.spectral import ExactSpectrum, SpectralDecomposition, transition_matrix
from utils.validators import validate_ell_max, validate_epsilon

logger = logging.getLogger(__name__)

NON_BIPARTITE = "non-bipartite"
BIPARTITE_SAME_SIDE = "bipartite-same-side"
BIPARTITE_CROSS_SIDE = "bipartite-cross-side"

GOLDEN = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class PGSTQuery:
    pair1: PairState
    pair2: PairState
    epsilon: float
    ell_max: int = DEFAULT_ELL_MAX
    refine: bool = False

    def __post_init__(self):
        for check in (validate_epsilon(self.epsilon), validate_ell_max(self.ell_max)):
            ok, msg = check
            if not ok:
                raise InvalidParameterError(msg)


@dataclass(frozen=True)
class TraceRecord:
    ell: int
    time: float
    fidelity: float
    refined: bool = False

    def to_dict(self) -> dict:
        return {"ell": self.ell, "time": self.time, "fidelity": self.fidelity, "refined": self.refined}


@dataclass
class HypothesisReport:
    r: int
    bipartite: bool
    same_side: Optional[bool]
    base_pst: bool
    base_t0: Optional[float]
    r_plus_one_absent: bool
    arithmetic_condition: bool
    case: str
    applies: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "r": self.r,
            "bipartite": self.bipartite,
            "same_side": self.same_side,
            "base_pst_at_half_pi": self.base_pst,
            "base_t0": self.base_t0,
            "r_plus_one_absent": self.r_plus_one_absent,
            "arithmetic_condition": self.arithmetic_condition,
            "case": self.case,
            "applies": self.applies,
        }


@dataclass
class PGSTReport:
    best_time: float
    best_fidelity: float
    best_ell: int
    evaluated: int
    reached_target: bool
    trace: List[TraceRecord] = field(default_factory=list)
    deltas: Tuple[float, ...] = ()
    kronecker_quality: Optional[float] = None
    hypothesis: Optional[HypothesisReport] = None
    degenerate: bool = False

    @property
    def pgst_claim(self) -> bool:
        """Target reached on a support whose Δⱼ are not all integers; integral Δⱼ make the walk periodic"""
        return self.reached_target and not self.degenerate

    def to_dict(self) -> dict:
        return {
            "best_time": self.best_time,
            "best_fidelity": self.best_fidelity,
            "best_ell": self.best_ell,
            "evaluated": self.evaluated,
            "reached_target": self.reached_target,
            "trace": [record.to_dict() for record in self.trace],
            "deltas": list(self.deltas),
            "kronecker_quality": self.kronecker_quality,
            "degenerate": self.degenerate,
            "pgst_claim": self.pgst_claim,
            "hypothesis_check": self.hypothesis.applies if self.hypothesis else None,
            "hypotheses": self.hypothesis.to_dict() if self.hypothesis else None,
        }


def _times_for(ells: np.ndarray) -> np.ndarray:
    return (4.0 * ells + 0.5) * math.pi


def candidate_times(ell_max: int) -> List[float]:
    """(4ℓ + ½)π for ℓ = 0..ell_max"""
    ok, msg = validate_ell_max(ell_max)
    if not ok:
        raise InvalidParameterError(msg)
    return _times_for(np.arange(ell_max + 1)).tolist()


def kronecker_quality(ell: int, deltas: Sequence[float]) -> float:
    """max over j of the distance from Δⱼ(4ℓ + ½)π/2 to 2πZ; 0 means every factor cos(Δⱼt/2) is 1"""
    phases = np.asarray(deltas, dtype=float) * _times_for(np.asarray(ell, dtype=float)) / 2
    offsets = np.abs(phases - 2 * math.pi * np.round(phases / (2 * math.pi)))
    return float(offsets.max()) if offsets.size else 0.0


def all_integral(deltas: Sequence[float], tol: float = 1e-9) -> bool:
    """True when every Δⱼ is an integer (also for an empty support)"""
    return all(abs(delta - round(delta)) <= tol for delta in deltas)


def support_deltas(thetas: Sequence[float], r: int) -> Tuple[float, ...]:
    """Δ = √((r + 2)² - 4θ), taken from the exact surd k√Δ' when θ is an integer"""
    result = []
    for theta in thetas:
        rounded = int(round(theta))
        if abs(theta - rounded) < 1e-9 and (r + 2) ** 2 - 4 * rounded > 0:
            outer, radicand = square_free_decompose((r + 2) ** 2 - 4 * rounded)
            result.append(outer * math.sqrt(radicand))
        else:
            result.append(math.sqrt((r + 2) ** 2 - 4 * theta))
    return tuple(result)


def pgst_hypotheses(
    graph: Graph,
    spectrum: Optional[ExactSpectrum],
    pair1: PairState,
    pair2: PairState,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> HypothesisReport:
    """Check which sufficient condition for PGST in T(G) the base pair satisfies, if any"""
    r = regularity(graph)
    if r is None or r <= 2:
        raise UnsupportedError(f"PGST conditions need an r-regular base with r > 2, got r={r}")

    certificate = certify_pst(spectrum, pair1, pair2, tolerances)
    base_pst = certificate.verdict and math.isclose(certificate.t0, math.pi / 2, rel_tol=1e-12)
    absent = r_plus_one_absent(spectrum, r)
    bipartition = is_bipartite(graph)

    same_side = None
    if bipartition is None:
        case = NON_BIPARTITE
        condition = (r + 2) % 4 == 0
    else:
        same_side = bipartition.same_side(pair1.a, pair1.b)
        if same_side:
            case = BIPARTITE_SAME_SIDE
            condition = (r + 2) % 4 == 0
        else:
            case = BIPARTITE_CROSS_SIDE
            condition = (3 * r) % 2 == 0 and (5 * r + 2) % 4 == 0 and ((3 * r) // 2 - (5 * r + 2) // 4) % 2 == 0

    report = HypothesisReport(
        r=r,
        bipartite=bipartition is not None,
        same_side=same_side,
        base_pst=base_pst,
        base_t0=certificate.t0,
        r_plus_one_absent=absent,
        arithmetic_condition=condition,
        case=case,
    )
    if base_pst and absent and condition:
        report.applies = case
    logger.info(f"[PGST] Hypotheses for {graph.name} {pair1.to_string()}→{pair2.to_string()}: {report.applies or 'none'}")
    return report


def _golden_section_max(evaluator: TotalPairEvaluator, low: float, high: float, iterations: int) -> Tuple[float, float]:
    c = high - GOLDEN * (high - low)
    d = low + GOLDEN * (high - low)
    fc, fd = evaluator.fidelities([c, d])
    for _ in range(iterations):
        if fc > fd:
            high, d, fd = d, c, fc
            c = high - GOLDEN * (high - low)
            fc = evaluator.fidelities([c])[0]
        else:
            low, c, fc = c, d, fd
            d = low + GOLDEN * (high - low)
            fd = evaluator.fidelities([d])[0]
    t = (low + high) / 2
    return t, float(evaluator.fidelities([t])[0])


def search_pgst(
    base: SpectralDecomposition,
    bipartition: Optional[Bipartition],
    r: int,
    query: PGSTQuery,
    hypothesis: Optional[HypothesisReport] = None,
    chunk_size: int = SEARCH_CHUNK_SIZE,
) -> PGSTReport:
    """
    Scan (4ℓ + ½)π for ℓ = 0..ell_max in chunks, recording each strict improvement

    Stops at the first ℓ whose fidelity reaches 1 - ε; ties keep the earliest time. With
    `refine`, a golden-section search in ±π/8 around the best candidate replaces it only if better.
    """
    evaluator = TotalPairEvaluator(base, bipartition, r, query.pair1, query.pair2)
    target = 1.0 - query.epsilon
    best_fidelity, best_ell, evaluated = -1.0, 0, 0
    trace: List[TraceRecord] = []

    for start in range(0, query.ell_max + 1, chunk_size):
        ells = np.arange(start, min(start + chunk_size, query.ell_max + 1))
        fidelities = evaluator.fidelities(_times_for(ells))
        hits = np.nonzero(fidelities >= target)[0]
        stop = int(hits[0]) + 1 if hits.size else len(ells)
        fidelities = fidelities[:stop]

        previous = np.maximum.accumulate(np.concatenate(([best_fidelity], fidelities)))[:-1]
        for idx in np.nonzero(fidelities > previous)[0]:
            ell = int(ells[idx])
            trace.append(TraceRecord(ell, float(_times_for(np.asarray(ell))), float(fidelities[idx])))
            best_fidelity, best_ell = float(fidelities[idx]), ell
        evaluated += stop
        if hits.size:
            break

    best_time = float(_times_for(np.asarray(best_ell)))
    if query.refine and best_fidelity < target:
        refined_time, refined_fidelity = _golden_section_max(
            evaluator, best_time - REFINE_WINDOW, best_time + REFINE_WINDOW, REFINE_ITERATIONS
        )
        if refined_fidelity > best_fidelity:
            best_time, best_fidelity = refined_time, refined_fidelity
            trace.append(TraceRecord(best_ell, best_time, best_fidelity, refined=True))

    deltas = support_deltas(evaluator.thetas[evaluator.support_mask()], r)
    report = PGSTReport(
        best_time=best_time,
        best_fidelity=best_fidelity,
        best_ell=best_ell,
        evaluated=evaluated,
        reached_target=best_fidelity >= target,
        trace=trace,
        deltas=deltas,
        kronecker_quality=kronecker_quality(best_ell, deltas),
        hypothesis=hypothesis,
        degenerate=all_integral(deltas),
    )
    if report.degenerate:
        logger.warning("[PGST] Every support Δ is an integer; the walk is periodic and no PGST claim is made")
    logger.info(
        f"[PGST] {query.pair1.to_string()}→{query.pair2.to_string()}: best fidelity {best_fidelity:.6f} "
        f"at ℓ={best_ell} after {evaluated} candidates"
    )
    return report


def find_pst_pairs_at(
    decomposition: SpectralDecomposition,
    t: float,
    pairs: Optional[Sequence[PairState]] = None,
    threshold: float = 1 - 1e-8,
) -> List[Tuple[PairState, PairState, float]]:
    """
    Pair states whose image under U(t) is (up to phase) another pair state

    For each e_a - e_b, w = U(t)(e_a - e_b); the best partner takes the largest |w_c| and the
    d maximising |w_c - w_d|. Defaults to every pair, which is O(N³); pass `pairs` for large graphs.
    """
    n = decomposition.dimension
    unitary = transition_matrix(decomposition, t)
    if pairs is None:
        pairs = [PairState(a, b) for a in range(n) for b in range(a + 1, n)]

    found = []
    for pair in pairs:
        pair.check_dimension(n)
        image = unitary[:, pair.a] - unitary[:, pair.b]
        c = int(np.argmax(np.abs(image)))
        gaps = np.abs(image[c] - image)
        gaps[c] = -1.0
        d = int(np.argmax(gaps))
        fidelity = float(gaps[d]) / 2
        if fidelity >= threshold:
            partner = PairState(c, d)
            if partner.unordered != pair.unordered:
                found.append((pair, partner, fidelity))
    logger.info(f"[PGST] {len(found)} pairs with fidelity ≥ {threshold} at t={t:.6f}")
    return found
