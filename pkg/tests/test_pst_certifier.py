import math
from fractions import Fraction

import pytest

from utils.errors import CertificationUnavailableError, GuardViolationError, InvalidParameterError
from utils.exact_arithmetic import ExactScalar, exact_integer
from utils.graph_core import EDGE_EDGE, VERTEX_EDGE, VERTEX_VERTEX, complete_graph, total_graph
from utils.pair_analysis import PairState
from utils.pst_certifier import (
    ALL_INTEGERS,
    INCOMPATIBLE,
    QUADRATIC,
    STAGE_COSPECTRAL,
    STAGE_FIXED,
    certify_pst,
    classify_support,
    r_plus_one_absent,
    scan_all_pairs_pst,
)
from utils.spectral import exact_integer_spectrum, total_exact_spectrum


def half(x, y, delta):
    return ExactScalar.from_half_form(x, y, delta)


def test_classify_integers():
    assert classify_support([exact_integer(6), exact_integer(2)]).kind == ALL_INTEGERS


def test_classify_quadratic():
    result = classify_support([half(9, 1, 17), half(9, -1, 17)])
    assert result.kind == QUADRATIC
    assert (result.delta, result.x, result.ys) == (17, 9, (1, -1))
    assert result.compatible


@pytest.mark.parametrize("values, reason", [
    ([exact_integer(1), ExactScalar(Fraction(7, 2))], "non-integral rational"),
    ([exact_integer(5), half(9, 1, 17)], "mixed integer and surd"),
    ([half(9, -1, 17), half(15, 1, 5)], "mixed quadratic fields Q(√5), Q(√17)"),
    ([half(9, 1, 17), half(11, 1, 17)], "shared-x fails"),
    ([half(9, 1, 17), half(9, -2, 17)], "parity clash"),
    ([ExactScalar(Fraction(1, 3), 1, 2), ExactScalar(Fraction(1, 3), -1, 2)], "not of the form"),
])
def test_classify_incompatible(values, reason):
    result = classify_support(values)
    assert result.kind == INCOMPATIBLE
    assert reason in result.reason


def test_classify_empty_support():
    with pytest.raises(InvalidParameterError):
        classify_support([])


def test_cocktail_party_certificate(cp6_spectrum):
    certificate = certify_pst(cp6_spectrum, PairState(0, 1), PairState(6, 7))
    assert certificate.verdict
    assert certificate.t0 == pytest.approx(math.pi / 2)
    assert (certificate.g, certificate.delta) == (2, 1)
    assert certificate.plus_set == (exact_integer(12),)
    assert certificate.minus_set == (exact_integer(10),)
    assert certificate.confirmed_fidelity == pytest.approx(1.0, abs=1e-10)
    assert certificate.half_time_fidelity == pytest.approx(math.sqrt(0.5), abs=1e-10)
    assert certificate.to_dict()["verdict"] == "yes"


def test_cube_certificate_orientation(q3_spectrum):
    forward = certify_pst(q3_spectrum, PairState(0, 1), PairState(6, 7))
    assert forward.verdict and not forward.partner_reversed
    assert forward.support == (exact_integer(6), exact_integer(4), exact_integer(2))
    assert forward.t0 == pytest.approx(math.pi / 2)

    flipped = certify_pst(q3_spectrum, PairState(0, 1), PairState(7, 6))
    assert flipped.verdict and flipped.partner_reversed
    assert flipped.plus_set == forward.plus_set


def test_complete_graph_pairs_rejected(k4):
    certificate = certify_pst(exact_integer_spectrum(k4), PairState(0, 1), PairState(2, 3))
    assert not certificate.verdict
    assert certificate.stage == STAGE_COSPECTRAL
    assert certificate.violation.startswith("(i)")
    assert certificate.to_dict()["verdict"] == "no"


def test_certification_needs_exact_spectrum():
    with pytest.raises(CertificationUnavailableError):
        certify_pst(None, PairState(0, 1), PairState(2, 3))
    with pytest.raises(CertificationUnavailableError):
        scan_all_pairs_pst(None)


def test_same_pair_rejected(q3_spectrum):
    with pytest.raises(InvalidParameterError):
        certify_pst(q3_spectrum, PairState(0, 1), PairState(1, 0))


def test_cocktail_party_scan(cp6_spectrum):
    report = scan_all_pairs_pst(cp6_spectrum)
    assert report.pair_states == 66
    assert len(report.certificates) == 30
    assert all(c.t0 == pytest.approx(math.pi / 2) for c in report.certificates)
    assert all((c.g, c.delta) == (2, 1) for c in report.certificates)
    assert report.rejections.get(STAGE_FIXED, 0) > 0


def test_scan_with_threads_matches(cp6_spectrum):
    serial = scan_all_pairs_pst(cp6_spectrum)
    threaded = scan_all_pairs_pst(cp6_spectrum, max_workers=4)
    assert [c.to_dict() for c in threaded.certificates] == [c.to_dict() for c in serial.certificates]
    assert threaded.rejections == serial.rejections


@pytest.mark.parametrize("n", [4, 5])
def test_no_pst_in_complete_totals(n):
    graph = complete_graph(n)
    _, labels = total_graph(graph)
    report = scan_all_pairs_pst(total_exact_spectrum(graph, exact_integer_spectrum(graph)), labels=labels)
    assert report.certificates == []
    assert report.to_dict()["pst_pairs"] == 0


def test_complete_total_pair_kinds(k4):
    _, labels = total_graph(k4)
    report = scan_all_pairs_pst(total_exact_spectrum(k4, exact_integer_spectrum(k4)), labels=labels)
    assert report.kinds == {VERTEX_VERTEX: 6, EDGE_EDGE: 15, VERTEX_EDGE: 24}


def test_no_pst_in_petersen_total(total_petersen):
    _, labels, spectrum = total_petersen
    report = scan_all_pairs_pst(spectrum, labels=labels)
    assert report.pair_states == 300
    assert report.certificates == []


def test_scan_guard(cp6_spectrum):
    with pytest.raises(GuardViolationError):
        scan_all_pairs_pst(cp6_spectrum, vertex_limit=10)


def test_r_plus_one_absent(petersen_graph, q3_spectrum):
    assert r_plus_one_absent(exact_integer_spectrum(petersen_graph), 3)
    assert not r_plus_one_absent(q3_spectrum, 3)
