"""Spectral decompositions: numeric (eigh + clustering), exact integer, and closed-form total-graph spectra"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import scipy.linalg

from utils.env_helper import DEFAULT_TOLERANCES, Tolerances
from utils.errors import (
    InvalidMatrixError,
    InvalidParameterError,
    NumericFailureError,
    UnsupportedError,
)
from utils.exact_arithmetic import ExactScalar, exact_integer, square_free_decompose
from utils.graph_core import Bipartition, Graph, complete_graph, incidence_matrix, is_bipartite, laplacian, regularity

logger = logging.getLogger(__name__)

SOURCE_NUMERIC = "numeric"
SOURCE_INTEGER = "integer-base"
SOURCE_TOTAL = "total-closed-form"
SOURCE_TOTAL_NUMERIC = "total-closed-form-numeric"
SOURCE_TKN = "total-complete-closed-form"

# origin branch tags for total-graph spectrum entries
BRANCH_MINUS = "-"
BRANCH_PLUS = "+"
BRANCH_KERNEL = "kernel"
BRANCH_BIPARTITE = "bipartite"

Origin = Tuple[Optional[int], str]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Distinct eigenvalues (ascending) with orthogonal projectors stacked as a (k, N, N) array"""
    eigenvalues: np.ndarray
    projectors: np.ndarray
    grouping_tolerance: float = 0.0

    @property
    def dimension(self) -> int:
        return int(self.projectors.shape[1])

    @property
    def multiplicities(self) -> List[int]:
        return [int(round(float(np.trace(p)))) for p in self.projectors]

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def residuals(self, matrix: Optional[np.ndarray] = None) -> Dict[str, float]:
        """Largest deviations from ΣE = I, E² = E, EᵢEⱼ = 0 and (optionally) ΣθE = M"""
        identity = np.eye(self.dimension)
        result = {
            "completeness": float(np.abs(self.projectors.sum(axis=0) - identity).max()),
            "idempotence": max(float(np.abs(p @ p - p).max()) for p in self.projectors),
            "orthogonality": 0.0,
        }
        for i in range(len(self)):
            for j in range(i + 1, len(self)):
                overlap = float(np.abs(self.projectors[i] @ self.projectors[j]).max())
                result["orthogonality"] = max(result["orthogonality"], overlap)
        if matrix is not None:
            rebuilt = np.einsum("k,kij->ij", self.eigenvalues, self.projectors)
            result["reconstruction"] = float(np.abs(rebuilt - matrix).max())
        return result


@dataclass(frozen=True)
class ExactSpectrumEntry:
    value: ExactScalar
    multiplicity: int
    projector: np.ndarray = field(repr=False, compare=False)
    origins: Tuple[Origin, ...] = ()

    def origin_of(self, base_index: int, branch: str) -> bool:
        return (base_index, branch) in self.origins


@dataclass(frozen=True)
class ExactSpectrum:
    """Exactly represented distinct eigenvalues (ascending by numeric value) with numeric projectors"""
    entries: Tuple[ExactSpectrumEntry, ...]
    source: str
    kernel_crosscheck: Optional[float] = None
    grouping_tolerance: float = 0.0

    @property
    def dimension(self) -> int:
        return int(self.entries[0].projector.shape[0])

    @property
    def values(self) -> List[ExactScalar]:
        return [entry.value for entry in self.entries]

    @property
    def multiplicities(self) -> List[int]:
        return [entry.multiplicity for entry in self.entries]

    def index_of(self, value: Union[ExactScalar, int]) -> Optional[int]:
        target = value if isinstance(value, ExactScalar) else exact_integer(value)
        for k, entry in enumerate(self.entries):
            if entry.value == target:
                return k
        return None

    def to_decomposition(self) -> SpectralDecomposition:
        return SpectralDecomposition(
            eigenvalues=np.array([entry.value.value for entry in self.entries]),
            projectors=np.stack([entry.projector for entry in self.entries]),
            grouping_tolerance=self.grouping_tolerance,
        )


def eigendecompose_symmetric(matrix: np.ndarray, tol: Optional[float] = None) -> SpectralDecomposition:
    """
    Distinct eigenvalues and orthogonal projectors of a real symmetric matrix

    Eigenvalues closer than `tol` are chained into one cluster whose value is the cluster mean.
    Default `tol` is 1e-8 · max(1, ‖M‖∞).
    """
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1] or matrix.shape[0] == 0:
        raise InvalidMatrixError(f"Expected a non-empty square matrix, got shape {matrix.shape}")
    if tol is None:
        tol = DEFAULT_TOLERANCES.grouping_for(matrix)
    asymmetry = float(np.abs(matrix - matrix.T).max())
    if asymmetry > tol:
        raise InvalidMatrixError(f"Matrix is not symmetric (max |M - Mᵀ| = {asymmetry:.3e})")

    try:
        values, vectors = scipy.linalg.eigh((matrix + matrix.T) / 2)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise NumericFailureError(f"Symmetric eigensolver failed: {exc}")

    clusters: List[List[int]] = [[0]]
    for i in range(1, len(values)):
        if values[i] - values[i - 1] <= tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])

    eigenvalues = np.array([values[c].mean() for c in clusters])
    projectors = np.stack([vectors[:, c] @ vectors[:, c].T for c in clusters])
    logger.debug(f"[Spectral] {matrix.shape[0]}x{matrix.shape[0]} matrix: {len(clusters)} distinct eigenvalues")
    return SpectralDecomposition(eigenvalues, projectors, tol)


def transition_matrix(decomposition: SpectralDecomposition, t: float) -> np.ndarray:
    """U(t) = Σ exp(-iθt) E_θ"""
    phases = np.exp(-1j * decomposition.eigenvalues * t)
    return np.einsum("k,kij->ij", phases, decomposition.projectors)


def exact_integer_spectrum(graph: Graph, tolerances: Tolerances = DEFAULT_TOLERANCES) -> Optional[ExactSpectrum]:
    """Exact integer Laplacian spectrum, or None when some eigenvalue fails the integrality or residual check"""
    tol = tolerances.integrality
    lap = laplacian(graph).astype(float)
    decomposition = eigendecompose_symmetric(lap, tolerances.grouping_for(lap))

    entries = []
    for theta, projector in zip(decomposition.eigenvalues, decomposition.projectors):
        rounded = int(round(theta))
        if abs(theta - rounded) > tol:
            logger.info(f"[Spectral] {graph.name}: eigenvalue {theta:.10f} is not an integer")
            return None
        residual = float(np.linalg.norm((lap - rounded * np.eye(graph.n)) @ projector))
        if residual > tol:
            logger.warning(f"[Spectral] {graph.name}: residual {residual:.3e} at eigenvalue {rounded}")
            return None
        multiplicity = int(round(float(np.trace(projector))))
        entries.append(ExactSpectrumEntry(exact_integer(rounded), multiplicity, projector))

    for previous, current in zip(entries, entries[1:]):
        if previous.value == current.value:
            logger.warning(f"[Spectral] {graph.name}: two clusters round to {current.value}")
            return None
    return ExactSpectrum(tuple(entries), SOURCE_INTEGER, grouping_tolerance=decomposition.grouping_tolerance)


# Total graphs

def closed_form_pair(r: int, theta: int) -> Tuple[ExactScalar, ExactScalar]:
    """
    (θ⁻, θ⁺) = ((r + 2 + 2θ) ∓ √D) / 2 with D = (r + 2)² - 4θ

    The surd is stored in reduced form k√Δ with Δ square-free.
    """
    discriminant = (r + 2) ** 2 - 4 * theta
    if discriminant <= 0:
        raise UnsupportedError(f"Non-positive discriminant {discriminant} for r={r}, θ={theta}")
    outer, radicand = square_free_decompose(discriminant)
    centre = Fraction(r + 2 + 2 * theta, 2)
    half_outer = Fraction(outer, 2)
    return ExactScalar(centre, -half_outer, radicand), ExactScalar(centre, half_outer, radicand)


def check_pair_identities(r: int, theta: int) -> Tuple[bool, str]:
    """θ⁺ + θ⁻ = r + 2 + 2θ and θ⁺θ⁻ = θ(θ + r + 3), checked exactly"""
    minus, plus = closed_form_pair(r, theta)
    if plus + minus != exact_integer(r + 2 + 2 * theta):
        return False, f"θ⁺ + θ⁻ = {plus + minus}, expected {r + 2 + 2 * theta}"
    if plus * minus != exact_integer(theta * (theta + r + 3)):
        return False, f"θ⁺θ⁻ = {plus * minus}, expected {theta * (theta + r + 3)}"
    return True, ""


def null_space_orthonormal(matrix: np.ndarray) -> np.ndarray:
    """Orthonormal basis of ker(M) as columns"""
    return scipy.linalg.null_space(np.asarray(matrix, dtype=float))


def _pair_block(projector: np.ndarray, incidence: np.ndarray, theta: float, value: float, r: int) -> np.ndarray:
    # E_{θ±} = 1/(c² + 2r - θ) · [[c²E, cER], [cRᵀE, RᵀER]] with c = 2 + θ - θ±
    c = 2.0 + theta - value
    scale = c * c + 2 * r - theta
    er = projector @ incidence
    return np.block([[c * c * projector, c * er], [c * er.T, incidence.T @ er]]) / scale


def _kernel_block(incidence: np.ndarray) -> Tuple[np.ndarray, int]:
    n, m = incidence.shape
    basis = null_space_orthonormal(incidence)
    block = np.zeros((n + m, n + m))
    block[n:, n:] = basis @ basis.T
    return block, basis.shape[1]


def _bipartite_block(bipartition: Bipartition, m: int) -> np.ndarray:
    n = len(bipartition.side)
    sign = bipartition.sign_vector()
    block = np.zeros((n + m, n + m))
    block[:n, :n] = np.outer(sign, sign) / n
    return block


def _total_prerequisites(graph: Graph) -> Tuple[int, np.ndarray, Optional[Bipartition]]:
    r = regularity(graph)
    if r is None:
        raise UnsupportedError(f"{graph.name} is not regular; closed-form total spectra need a regular base")
    if r < 2:
        raise UnsupportedError(f"{graph.name} is {r}-regular; closed-form total spectra need r ≥ 2")
    return r, incidence_matrix(graph).astype(float), is_bipartite(graph)


def total_exact_spectrum(graph: Graph, base: ExactSpectrum) -> ExactSpectrum:
    """
    Closed-form spectrum of L(T(G)) for r-regular G from an exact integer base spectrum

    Each base eigenvalue θ yields θ± with block projectors; ker(R) contributes 2r + 2; for
    bipartite G the top base eigenvalue 2r is replaced by 3r with projector Q/n. Equal exact
    values are merged and their projectors summed.
    """
    r, incidence, bipartition = _total_prerequisites(graph)
    if any(not entry.value.is_integer for entry in base.entries):
        raise UnsupportedError("Base spectrum is not integral")
    n, m = incidence.shape

    used = list(enumerate(base.entries))
    if bipartition is not None:
        top = base.entries[-1]
        if top.value != exact_integer(2 * r):
            raise UnsupportedError(f"Bipartite base must have top eigenvalue 2r = {2 * r}, found {top.value}")
        used = used[:-1]

    pieces: List[Tuple[ExactScalar, int, np.ndarray, Origin]] = []
    for j, entry in used:
        theta = int(entry.value.rational)
        for branch, value in zip((BRANCH_MINUS, BRANCH_PLUS), closed_form_pair(r, theta)):
            block = _pair_block(entry.projector, incidence, theta, value.value, r)
            pieces.append((value, entry.multiplicity, block, (j, branch)))

    kernel_block, kernel_dim = _kernel_block(incidence)
    expected_dim = m - n + (1 if bipartition is not None else 0)
    if kernel_dim != expected_dim:
        logger.warning(f"[Spectral] ker(R) has dimension {kernel_dim}, expected {expected_dim}")

    non_kernel_sum = sum(piece[2] for piece in pieces)
    if bipartition is not None:
        bipartite_block = _bipartite_block(bipartition, m)
        pieces.append((exact_integer(3 * r), 1, bipartite_block, (None, BRANCH_BIPARTITE)))
        non_kernel_sum = non_kernel_sum + bipartite_block
    crosscheck = float(np.abs(np.eye(n + m) - non_kernel_sum - kernel_block).max())
    if crosscheck > 1e-8:
        logger.warning(f"[Spectral] Kernel projector cross-check residual {crosscheck:.3e}")
    if kernel_dim > 0:
        pieces.append((exact_integer(2 * r + 2), kernel_dim, kernel_block, (None, BRANCH_KERNEL)))

    merged: Dict[ExactScalar, List] = {}
    for value, multiplicity, block, origin in pieces:
        if value in merged:
            merged[value][0] += multiplicity
            merged[value][1] = merged[value][1] + block
            merged[value][2].append(origin)
        else:
            merged[value] = [multiplicity, block, [origin]]

    entries = tuple(
        ExactSpectrumEntry(value, mult, block, tuple(origins))
        for value, (mult, block, origins) in sorted(merged.items(), key=lambda item: item[0].value)
    )
    logger.info(f"[Spectral] T({graph.name}): {len(entries)} distinct eigenvalues on {n + m} vertices")
    return ExactSpectrum(entries, SOURCE_TOTAL, kernel_crosscheck=crosscheck, grouping_tolerance=base.grouping_tolerance)


def total_numeric_spectrum(graph: Graph, base: SpectralDecomposition, tol: float = 1e-8) -> SpectralDecomposition:
    """Same block formulas driven by a numeric base decomposition (irrational base spectra such as C5)"""
    r, incidence, bipartition = _total_prerequisites(graph)
    n, m = incidence.shape

    thetas = list(zip(base.eigenvalues, base.projectors))
    pieces: List[Tuple[float, np.ndarray]] = []
    if bipartition is not None:
        top = float(base.eigenvalues[-1])
        if abs(top - 2 * r) > tol * max(1.0, 2 * r):
            raise UnsupportedError(f"Bipartite base must have top eigenvalue 2r = {2 * r}, found {top}")
        thetas = thetas[:-1]
        pieces.append((3.0 * r, _bipartite_block(bipartition, m)))

    for theta, projector in thetas:
        discriminant = (r + 2) ** 2 - 4 * theta
        if discriminant <= 0:
            raise UnsupportedError(f"Non-positive discriminant for r={r}, θ={theta}")
        root = np.sqrt(discriminant)
        for value in ((r + 2 + 2 * theta - root) / 2, (r + 2 + 2 * theta + root) / 2):
            pieces.append((value, _pair_block(projector, incidence, theta, value, r)))

    kernel_block, kernel_dim = _kernel_block(incidence)
    if kernel_dim > 0:
        pieces.append((2.0 * r + 2, kernel_block))

    pieces.sort(key=lambda piece: piece[0])
    groups: List[List[Tuple[float, np.ndarray]]] = [[pieces[0]]]
    for piece in pieces[1:]:
        if piece[0] - groups[-1][-1][0] <= tol:
            groups[-1].append(piece)
        else:
            groups.append([piece])
    return SpectralDecomposition(
        eigenvalues=np.array([np.mean([p[0] for p in group]) for group in groups]),
        projectors=np.stack([sum(p[1] for p in group) for group in groups]),
        grouping_tolerance=tol,
    )


def r_plus_two_projector(n: int, m: int, r: int) -> np.ndarray:
    """Projector for θ₀⁺ = r + 2: (1/(r² + 2r)) · [[r²/n J, -2r/n J], [-2r/n J, 4/n J]]"""
    if r < 1 or n < 2:
        raise InvalidParameterError(f"Need n ≥ 2 and r ≥ 1, got n={n}, r={r}")
    blocks = np.block([
        [np.full((n, n), r * r / n), np.full((n, m), -2 * r / n)],
        [np.full((m, n), -2 * r / n), np.full((m, m), 4 / n)],
    ])
    return blocks / (r * r + 2 * r)


def tkn_closed_projectors(n: int) -> ExactSpectrum:
    """
    Closed-form projectors of L(T(K_n)) for n ≥ 4

    Eigenvalues 0, n + 1 (θ₀⁺ merged with θ₁⁻) and 2n (θ₁⁺ merged with the kernel part).
    """
    if n < 4:
        raise UnsupportedError(f"T(K_n) closed projectors need n ≥ 4, got {n}")
    graph = complete_graph(n)
    incidence = incidence_matrix(graph).astype(float)
    m = graph.num_edges
    eye_n = np.eye(n)
    j_nn, j_nm, j_mm = np.ones((n, n)), np.ones((n, m)), np.ones((m, m))
    rtr = incidence.T @ incidence

    e0_minus = 2.0 / (n * n + n) * np.ones((n + m, n + m))
    e0_plus = np.block([
        [(n - 1) ** 2 / n * j_nn, (2 - 2 * n) / n * j_nm],
        [(2 - 2 * n) / n * j_nm.T, 4 / n * j_mm],
    ]) / (n * n - 1)
    centred_r = incidence - 2 * j_nm / n
    centred_rtr = rtr - 4 * j_mm / n
    e1_minus = np.block([
        [eye_n - j_nn / n, centred_r],
        [centred_r.T, centred_rtr],
    ]) / (n - 1)
    e1_plus = np.block([
        [(2 - n) ** 2 * (eye_n - j_nn / n), (2 - n) * centred_r],
        [(2 - n) * centred_r.T, centred_rtr],
    ]) / (n * n - 3 * n + 2)
    kernel_block, kernel_dim = _kernel_block(incidence)

    entries = (
        ExactSpectrumEntry(exact_integer(0), 1, e0_minus, ((0, BRANCH_MINUS),)),
        ExactSpectrumEntry(exact_integer(n + 1), n, e0_plus + e1_minus, ((0, BRANCH_PLUS), (1, BRANCH_MINUS))),
        ExactSpectrumEntry(
            exact_integer(2 * n), (n - 1) + kernel_dim, e1_plus + kernel_block,
            ((1, BRANCH_PLUS), (None, BRANCH_KERNEL)),
        ),
    )
    return ExactSpectrum(entries, SOURCE_TKN)


def spectrum_to_json(spectrum: Union[ExactSpectrum, SpectralDecomposition]) -> dict:
    """Eigenvalue list with multiplicities and the grouping tolerance; exact strings when available"""
    if isinstance(spectrum, ExactSpectrum):
        eigenvalues = [
            {"numeric": entry.value.value, "exact": entry.value.to_string(), "multiplicity": entry.multiplicity}
            for entry in spectrum.entries
        ]
        result = {
            "dimension": spectrum.dimension,
            "source": spectrum.source,
            "eigenvalues": eigenvalues,
            "tolerance": spectrum.grouping_tolerance,
        }
        if spectrum.kernel_crosscheck is not None:
            result["kernel_crosscheck"] = spectrum.kernel_crosscheck
        return result

    eigenvalues = [
        {"numeric": float(value), "exact": None, "multiplicity": mult}
        for value, mult in zip(spectrum.eigenvalues, spectrum.multiplicities)
    ]
    return {
        "dimension": spectrum.dimension,
        "source": SOURCE_NUMERIC,
        "eigenvalues": eigenvalues,
        "tolerance": spectrum.grouping_tolerance,
    }
