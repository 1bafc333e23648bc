import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theorem_cases.base_case import oracle_fixtures
from theorem_cases.spectra_cases import closed_form_total, compare_decompositions
from utils.env_helper import DEFAULT_TOLERANCES
from utils.errors import InvalidMatrixError, UnsupportedError
from utils.exact_arithmetic import ExactScalar, exact_integer
from utils.graph_core import complete_graph, cycle, incidence_matrix, laplacian, total_graph
from utils.spectral import (
    BRANCH_KERNEL,
    SOURCE_NUMERIC,
    SOURCE_TOTAL,
    check_pair_identities,
    closed_form_pair,
    eigendecompose_symmetric,
    exact_integer_spectrum,
    null_space_orthonormal,
    r_plus_two_projector,
    spectrum_to_json,
    tkn_closed_projectors,
    total_exact_spectrum,
    total_numeric_spectrum,
    transition_matrix,
)


def half(x, y, delta):
    return ExactScalar.from_half_form(x, y, delta)


def test_complete_graph_decomposition(k4):
    lap = laplacian(k4)
    dec = eigendecompose_symmetric(lap)
    np.testing.assert_allclose(dec.eigenvalues, [0.0, 4.0], atol=1e-12)
    assert dec.multiplicities == [1, 3]
    residuals = dec.residuals(lap)
    assert max(residuals.values()) < 1e-12


@pytest.mark.parametrize("matrix", [
    np.array([[0.0, 1.0], [0.0, 0.0]]),
    np.zeros((2, 3)),
    np.zeros((0, 0)),
])
def test_rejects_bad_matrices(matrix):
    with pytest.raises(InvalidMatrixError):
        eigendecompose_symmetric(matrix)


def test_transition_on_single_edge():
    dec = eigendecompose_symmetric(laplacian(complete_graph(2)))
    np.testing.assert_allclose(transition_matrix(dec, math.pi / 2), [[0, 1], [1, 0]], atol=1e-12)
    np.testing.assert_allclose(transition_matrix(dec, 0.0), np.eye(2), atol=1e-12)


PROPERTY_GRAPHS = oracle_fixtures() + [total_graph(graph)[0] for graph in oracle_fixtures()]
PROPERTY_DECOMPOSITIONS = {graph.name: eigendecompose_symmetric(laplacian(graph)) for graph in PROPERTY_GRAPHS}


@pytest.mark.parametrize("name", sorted(PROPERTY_DECOMPOSITIONS))
@settings(max_examples=50, deadline=None)
@given(t=st.floats(min_value=0.0, max_value=20.0, allow_nan=False))
def test_transition_is_unitary(name, t):
    dec = PROPERTY_DECOMPOSITIONS[name]
    unitary = transition_matrix(dec, t)
    np.testing.assert_allclose(unitary @ unitary.conj().T, np.eye(dec.dimension), atol=1e-10)


@pytest.mark.parametrize("graph", PROPERTY_GRAPHS, ids=lambda graph: graph.name)
def test_decomposition_residuals(graph):
    lap = laplacian(graph).astype(float)
    residuals = PROPERTY_DECOMPOSITIONS[graph.name].residuals(lap)
    assert set(residuals) == {"completeness", "idempotence", "orthogonality", "reconstruction"}
    assert max(residuals.values()) < 1e-9


@pytest.mark.parametrize("graph", oracle_fixtures(), ids=lambda graph: graph.name)
def test_closed_form_total_residuals(graph):
    total, _ = total_graph(graph)
    residuals = closed_form_total(graph).residuals(laplacian(total).astype(float))
    assert max(residuals.values()) < 1e-8


def test_exact_integer_spectra(q3_spectrum, petersen_graph, c5):
    assert q3_spectrum.values == [exact_integer(v) for v in (0, 2, 4, 6)]
    assert q3_spectrum.multiplicities == [1, 3, 3, 1]

    petersen_spectrum = exact_integer_spectrum(petersen_graph)
    assert petersen_spectrum.values == [exact_integer(v) for v in (0, 2, 5)]
    assert petersen_spectrum.multiplicities == [1, 5, 4]
    assert petersen_spectrum.index_of(5) == 2
    assert petersen_spectrum.index_of(3) is None

    assert exact_integer_spectrum(c5) is None


def test_closed_form_pair():
    minus, plus = closed_form_pair(3, 2)
    assert minus == half(9, -1, 17)
    assert plus == half(9, 1, 17)
    assert closed_form_pair(3, 4) == (exact_integer(5), exact_integer(8))
    with pytest.raises(UnsupportedError):
        closed_form_pair(3, 7)


@st.composite
def regular_degree_and_eigenvalue(draw):
    r = draw(st.integers(min_value=2, max_value=40))
    theta = draw(st.integers(min_value=0, max_value=((r + 2) ** 2 - 1) // 4))
    return r, theta


@given(regular_degree_and_eigenvalue())
def test_pair_identities_hold_exactly(case):
    ok, msg = check_pair_identities(*case)
    assert ok, msg


def test_total_spectrum_of_k4(k4):
    spectrum = total_exact_spectrum(k4, exact_integer_spectrum(k4))
    assert spectrum.source == SOURCE_TOTAL
    assert spectrum.values == [exact_integer(0), exact_integer(5), exact_integer(8)]
    assert spectrum.multiplicities == [1, 4, 5]
    assert spectrum.kernel_crosscheck < 1e-10
    assert spectrum.entries[2].origin_of(None, BRANCH_KERNEL)


def test_total_spectrum_of_petersen(total_petersen):
    _, _, spectrum = total_petersen
    assert spectrum.values == [
        exact_integer(0), half(9, -1, 17), exact_integer(5), half(15, -1, 5),
        half(9, 1, 17), exact_integer(8), half(15, 1, 5),
    ]
    assert spectrum.multiplicities == [1, 5, 1, 4, 5, 5, 4]
    assert spectrum.dimension == 25


def test_total_spectrum_of_cube(total_q3):
    _, _, spectrum = total_q3
    assert spectrum.values == [
        exact_integer(0), half(9, -1, 17), exact_integer(5), half(9, 1, 17), exact_integer(8), exact_integer(9),
    ]
    assert spectrum.multiplicities == [1, 3, 4, 3, 8, 1]


def test_total_spectrum_of_k33(k33):
    spectrum = total_exact_spectrum(k33, exact_integer_spectrum(k33))
    assert spectrum.values == [
        exact_integer(0), half(11, -1, 13), exact_integer(5), half(11, 1, 13), exact_integer(8), exact_integer(9),
    ]
    assert spectrum.multiplicities == [1, 4, 1, 4, 4, 1]


@pytest.mark.parametrize("graph", oracle_fixtures(), ids=lambda g: g.name)
def test_closed_form_matches_numeric(graph):
    total, _ = total_graph(graph)
    report = compare_decompositions(closed_form_total(graph), eigendecompose_symmetric(laplacian(total)))
    assert report["matched"]
    assert report["eigenvalue_error"] < 1e-9
    assert report["projector_error"] < 1e-8


def test_cycle_kernel_alternates():
    basis = null_space_orthonormal(incidence_matrix(cycle(4)))
    assert basis.shape == (4, 1)
    np.testing.assert_allclose(np.abs(basis), 0.5, atol=1e-12)


def test_r_plus_two_projector(total_petersen):
    _, _, spectrum = total_petersen
    entry = spectrum.entries[spectrum.index_of(5)]
    np.testing.assert_allclose(r_plus_two_projector(10, 15, 3), entry.projector, atol=1e-12)


def test_numeric_total_of_pentagon(c5):
    closed = total_numeric_spectrum(c5, eigendecompose_symmetric(laplacian(c5)))
    total, _ = total_graph(c5)
    numeric = eigendecompose_symmetric(laplacian(total))
    assert closed.multiplicities == [1, 2, 1, 4, 2]
    np.testing.assert_allclose(closed.eigenvalues, numeric.eigenvalues, atol=1e-9)
    np.testing.assert_allclose(closed.projectors, numeric.projectors, atol=1e-8)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_complete_total_projectors(n):
    graph = complete_graph(n)
    closed = tkn_closed_projectors(n)
    general = total_exact_spectrum(graph, exact_integer_spectrum(graph))
    assert closed.values == [exact_integer(0), exact_integer(n + 1), exact_integer(2 * n)]
    assert closed.multiplicities == general.multiplicities
    for mine, theirs in zip(closed.entries, general.entries):
        np.testing.assert_allclose(mine.projector, theirs.projector, atol=1e-10)


def test_complete_total_projectors_need_four_vertices():
    with pytest.raises(UnsupportedError):
        tkn_closed_projectors(3)


def test_single_edge_has_no_closed_total():
    graph = complete_graph(2)
    with pytest.raises(UnsupportedError):
        total_exact_spectrum(graph, exact_integer_spectrum(graph))


def test_spectrum_to_json(k4, c5):
    exact = spectrum_to_json(total_exact_spectrum(k4, exact_integer_spectrum(k4)))
    assert [e["exact"] for e in exact["eigenvalues"]] == ["0", "5", "8"]
    assert [e["numeric"] for e in exact["eigenvalues"]] == pytest.approx([0.0, 5.0, 8.0])
    assert exact["tolerance"] == pytest.approx(6e-8)
    assert exact["dimension"] == 10
    assert "kernel_crosscheck" in exact

    numeric = spectrum_to_json(eigendecompose_symmetric(laplacian(c5)))
    assert numeric["source"] == SOURCE_NUMERIC
    assert [e["multiplicity"] for e in numeric["eigenvalues"]] == [1, 2, 2]
    assert all(e["exact"] is None for e in numeric["eigenvalues"])
    assert numeric["tolerance"] == pytest.approx(4e-8)


def test_exact_spectrum_uses_overridden_grouping(k4):
    loose = replace(DEFAULT_TOLERANCES, grouping=1e-6)
    assert exact_integer_spectrum(k4, loose).grouping_tolerance == pytest.approx(6e-6)
    assert exact_integer_spectrum(k4).grouping_tolerance == pytest.approx(6e-8)


def test_surd_rendering(total_petersen):
    _, _, spectrum = total_petersen
    assert spectrum.values[1].to_string() == "(9-1*sqrt(17))/2"
