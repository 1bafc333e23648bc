"""Exact certification of perfect state transfer between pair states"""
import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from utils.env_helper import DEFAULT_TOLERANCES, SCAN_VERTEX_LIMIT, Tolerances
from utils.errors import (
    CertificationUnavailableError,
    GuardViolationError,
    InternalInconsistencyError,
    InvalidParameterError,
)
from utils.exact_arithmetic import ExactScalar, exact_integer
from utils.graph_core import TotalGraphLabel, pair_kind
from utils.pair_analysis import PAIR_NORM, PairState, cospectral_partition, pair_amplitude, pair_projections
from utils.spectral import ExactSpectrum, SpectralDecomposition

logger = logging.getLogger(__name__)

ALL_INTEGERS = "all-integers"
QUADRATIC = "quadratic"
INCOMPATIBLE = "incompatible"

# rejection stages reported by scans
STAGE_FIXED = "fixed-state"
STAGE_FIELD = "incompatible-field"
STAGE_COSPECTRAL = "not-cospectral"
STAGE_PERIODICITY = "condition-iii"


@dataclass(frozen=True)
class FieldClass:
    """Arithmetic class of a support: all integers, one quadratic family (x + yⱼ√Δ)/2, or incompatible"""
    kind: str
    delta: int = 1
    x: Optional[int] = None
    ys: Tuple[int, ...] = ()
    reason: str = ""

    @property
    def compatible(self) -> bool:
        return self.kind != INCOMPATIBLE

    def to_dict(self) -> dict:
        return {"kind": self.kind, "delta": self.delta, "x": self.x, "ys": list(self.ys), "reason": self.reason}


def classify_support(values: Sequence[ExactScalar]) -> FieldClass:
    if not values:
        raise InvalidParameterError("Cannot classify an empty support")

    if all(value.is_integer for value in values):
        return FieldClass(ALL_INTEGERS)

    if any(value.is_rational for value in values):
        offenders = [value.to_string() for value in values if value.is_rational]
        if all(value.is_rational for value in values):
            return FieldClass(INCOMPATIBLE, reason=f"non-integral rational eigenvalue in support: {', '.join(offenders)}")
        return FieldClass(INCOMPATIBLE, reason=f"mixed integer and surd eigenvalues: {', '.join(offenders)} with surds")

    forms = [value.half_form for value in values]
    if any(form is None for form in forms):
        return FieldClass(INCOMPATIBLE, reason="eigenvalue not of the form (x + y√Δ)/2 with integer x, y")

    radicands = sorted({form[2] for form in forms})
    if len(radicands) > 1:
        fields = ", ".join(f"Q(√{d})" for d in radicands)
        return FieldClass(INCOMPATIBLE, reason=f"mixed quadratic fields {fields}")

    xs = sorted({form[0] for form in forms})
    if len(xs) > 1:
        return FieldClass(INCOMPATIBLE, reason=f"shared-x fails: x values {xs}")

    ys = tuple(form[1] for form in forms)
    if len({y % 2 for y in ys}) > 1:
        return FieldClass(INCOMPATIBLE, reason=f"parity clash among y values {list(ys)}")

    return FieldClass(QUADRATIC, delta=radicands[0], x=xs[0], ys=ys)


@dataclass
class PSTCertificate:
    pair: PairState
    partner: PairState
    verdict: bool
    support: Tuple[ExactScalar, ...] = ()
    plus_set: Tuple[ExactScalar, ...] = ()
    minus_set: Tuple[ExactScalar, ...] = ()
    field_class: Optional[FieldClass] = None
    g: Optional[int] = None
    delta: Optional[int] = None
    t0: Optional[float] = None
    violation: Optional[str] = None
    stage: Optional[str] = None
    partner_reversed: bool = False
    confirmed_fidelity: Optional[float] = None
    half_time_fidelity: Optional[float] = None

    def to_dict(self) -> dict:
        return {
            "pair": [self.pair.a, self.pair.b],
            "partner": [self.partner.a, self.partner.b],
            "verdict": "yes" if self.verdict else "no",
            "support": [value.to_string() for value in self.support],
            "plus_set": [value.to_string() for value in self.plus_set],
            "minus_set": [value.to_string() for value in self.minus_set],
            "field": self.field_class.to_dict() if self.field_class else None,
            "g": self.g,
            "delta": self.delta,
            "t0": self.t0,
            "violation": self.violation,
            "partner_reversed": self.partner_reversed,
            "confirmed_fidelity": self.confirmed_fidelity,
            "half_time_fidelity": self.half_time_fidelity,
        }


def _periodicity_numbers(values: Sequence[ExactScalar], field_class: FieldClass) -> List[int]:
    # values are sorted descending; θ₀ - θⱼ = q_j (integer case) or q_j·√Δ
    if field_class.kind == ALL_INTEGERS:
        top = values[0].rational
        return [int(top - value.rational) for value in values]
    y0 = field_class.ys[0]
    return [(y0 - y) // 2 for y in field_class.ys]


def certify_pst(
    spectrum: Optional[ExactSpectrum],
    pair1: PairState,
    pair2: PairState,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    decomposition: Optional[SpectralDecomposition] = None,
) -> PSTCertificate:
    """
    Decide PST between e_a - e_b and e_c - e_d from an exact spectrum

    Checks strong cospectrality, the arithmetic class of the support, and the parity
    pattern of (θ₀ - θⱼ)/g; a yes verdict carries t₀ = π/(g√Δ) and is confirmed numerically.
    The partner orientation is flipped when needed so that θ₀ sits in Φ⁺.
    """
    if spectrum is None:
        raise CertificationUnavailableError("No exact spectrum available; PST can be neither certified nor refuted")
    if pair1.unordered == pair2.unordered:
        raise InvalidParameterError(f"PST needs two different pairs, got {pair1.to_string()} twice")
    decomposition = decomposition or spectrum.to_decomposition()
    cospectral_tol = tolerances.cospectral * PAIR_NORM

    certificate = PSTCertificate(pair1, pair2, verdict=False)
    partition = cospectral_partition(decomposition, pair1, pair2, cospectral_tol)
    if partition is None:
        certificate.violation = "(i) pairs are not strongly cospectral"
        certificate.stage = STAGE_COSPECTRAL
        return certificate

    plus, minus = partition
    ordered = sorted(plus + minus, key=lambda k: -spectrum.entries[k].value.value)
    if ordered and ordered[0] in minus:
        plus, minus = minus, plus
        certificate.partner_reversed = True
    values = [spectrum.entries[k].value for k in ordered]
    certificate.support = tuple(values)
    certificate.plus_set = tuple(spectrum.entries[k].value for k in ordered if k in plus)
    certificate.minus_set = tuple(spectrum.entries[k].value for k in ordered if k in minus)

    if not minus:
        certificate.violation = "fixed state: Φ⁻ is empty, so the pair never leaves itself"
        certificate.stage = STAGE_FIXED
        return certificate

    field_class = classify_support(values)
    certificate.field_class = field_class
    if not field_class.compatible:
        certificate.violation = f"(ii) {field_class.reason}"
        certificate.stage = STAGE_FIELD
        return certificate

    q = _periodicity_numbers(values, field_class)
    g = reduce(math.gcd, [abs(qj) for qj in q if qj != 0])
    minus_set = set(minus)
    for k, qj in zip(ordered, q):
        expected_plus = (qj // g) % 2 == 0
        if expected_plus == (k in minus_set):
            expected = "Φ⁺" if expected_plus else "Φ⁻"
            found = "Φ⁻" if expected_plus else "Φ⁺"
            certificate.violation = (
                f"(iii) θ={spectrum.entries[k].value.to_string()} has (θ₀-θ)/g = {qj // g}: expected {expected}, found {found}"
            )
            certificate.stage = STAGE_PERIODICITY
            certificate.g = g
            return certificate

    delta = field_class.delta
    t0 = math.pi / (g * math.sqrt(delta))
    fidelity = pair_amplitude(decomposition, pair1, pair2, t0).fidelity
    if fidelity < 1 - tolerances.fidelity:
        raise InternalInconsistencyError(
            f"Certified PST {pair1.to_string()}→{pair2.to_string()} at t0={t0} but numeric fidelity is {fidelity:.12f}"
        )
    certificate.verdict = True
    certificate.g = g
    certificate.delta = delta
    certificate.t0 = t0
    certificate.confirmed_fidelity = fidelity
    certificate.half_time_fidelity = pair_amplitude(decomposition, pair1, pair2, t0 / 2).fidelity
    logger.debug(f"[PST] {pair1.to_string()} → {pair2.to_string()} at t0={t0:.6f} (g={g}, Δ={delta})")
    return certificate


def r_plus_one_absent(spectrum: ExactSpectrum, r: int) -> bool:
    return spectrum.index_of(exact_integer(r + 1)) is None


@dataclass
class PSTScanReport:
    dimension: int
    pair_states: int
    certificates: List[PSTCertificate] = field(default_factory=list)
    rejections: Dict[str, int] = field(default_factory=dict)
    kinds: Dict[str, int] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "pair_states": self.pair_states,
            "pst_pairs": len(self.certificates),
            "certificates": [certificate.to_dict() for certificate in self.certificates],
            "rejections": dict(sorted(self.rejections.items())),
            "pair_kinds": dict(sorted(self.kinds.items())),
        }


def _scan_group(
    spectrum: ExactSpectrum,
    decomposition: SpectralDecomposition,
    members: List[PairState],
    tolerances: Tolerances,
) -> Tuple[List[PSTCertificate], Counter]:
    certificates, rejections = [], Counter()
    for i, first in enumerate(members):
        for second in members[i + 1:]:
            certificate = certify_pst(spectrum, first, second, tolerances, decomposition)
            if certificate.verdict:
                certificates.append(certificate)
            else:
                rejections[certificate.stage] += 1
    return certificates, rejections


def scan_all_pairs_pst(
    spectrum: Optional[ExactSpectrum],
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    labels: Optional[Sequence[TotalGraphLabel]] = None,
    max_workers: Optional[int] = None,
    vertex_limit: int = SCAN_VERTEX_LIMIT,
) -> PSTScanReport:
    """
    Certify every unordered pair of distinct pair states

    Pair states are grouped by support, since strongly cospectral pairs share their support;
    fixed states and groups with an incompatible field are skipped without pairwise work.
    """
    if spectrum is None:
        raise CertificationUnavailableError("No exact spectrum available for the PST scan")
    n = spectrum.dimension
    if n > vertex_limit:
        raise GuardViolationError(
            f"All-pairs PST scan is limited to {vertex_limit} vertices, got {n}; certify sampled pairs instead"
        )
    decomposition = spectrum.to_decomposition()
    support_tol = tolerances.support * PAIR_NORM

    states = [PairState(a, b) for a in range(n) for b in range(a + 1, n)]
    report = PSTScanReport(dimension=n, pair_states=len(states))
    if labels is not None:
        report.kinds = dict(Counter(pair_kind(labels, (p.a, p.b)) for p in states))

    groups: Dict[Tuple[int, ...], List[PairState]] = {}
    for state in states:
        norms = np.linalg.norm(pair_projections(decomposition, state), axis=1)
        signature = tuple(int(k) for k in np.nonzero(norms > support_tol)[0])
        groups.setdefault(signature, []).append(state)

    rejections: Counter = Counter()
    work = []
    for signature, members in groups.items():
        if len(signature) == 1:
            rejections[STAGE_FIXED] += len(members)
            continue
        field_class = classify_support([spectrum.entries[k].value for k in signature])
        if not field_class.compatible:
            rejections[STAGE_FIELD] += len(members) * (len(members) - 1) // 2
            continue
        if len(members) > 1:
            work.append(members)

    if max_workers and max_workers > 1 and len(work) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            results = list(executor.map(lambda members: _scan_group(spectrum, decomposition, members, tolerances), work))
    else:
        results = [_scan_group(spectrum, decomposition, members, tolerances) for members in work]

    for certificates, counts in results:
        report.certificates.extend(certificates)
        rejections.update(counts)
    report.certificates.sort(key=lambda c: (c.pair.a, c.pair.b, c.partner.a, c.partner.b))
    report.rejections = dict(rejections)
    logger.info(
        f"[PST] Scanned {len(states)} pair states in {len(groups)} support groups: "
        f"{len(report.certificates)} PST pairs"
    )
    return report
