"""Pair states e_a - e_b: eigenvalue supports, strong cospectrality and transfer amplitudes"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from utils.env_helper import DEFAULT_TOLERANCES
from utils.errors import InvalidParameterError, NumericFailureError, UnsupportedError
from utils.graph_core import Bipartition
from utils.spectral import BRANCH_MINUS, BRANCH_PLUS, ExactSpectrum, SpectralDecomposition

logger = logging.getLogger(__name__)

PAIR_NORM = np.sqrt(2.0)


@dataclass(frozen=True)
class PairState:
    """The unnormalised vector e_a - e_b"""
    a: int
    b: int

    def __post_init__(self):
        if self.a == self.b or self.a < 0 or self.b < 0:
            raise InvalidParameterError(f"Pair state needs two distinct non-negative vertices, got ({self.a}, {self.b})")

    @property
    def unordered(self) -> frozenset:
        return frozenset((self.a, self.b))

    def check_dimension(self, n: int) -> None:
        if max(self.a, self.b) >= n:
            raise InvalidParameterError(f"Pair ({self.a}, {self.b}) out of range for {n} vertices")

    def vector(self, n: int) -> np.ndarray:
        self.check_dimension(n)
        state = np.zeros(n)
        state[self.a], state[self.b] = 1.0, -1.0
        return state

    def to_string(self) -> str:
        return f"({self.a},{self.b})"


@dataclass(frozen=True)
class Amplitude:
    value: complex

    @property
    def fidelity(self) -> float:
        return abs(self.value)

    def to_dict(self) -> dict:
        return {"re": float(self.value.real), "im": float(self.value.imag), "fidelity": self.fidelity}


@dataclass(frozen=True)
class SupportAnalysis:
    pair: PairState
    support: Tuple[float, ...]
    partner: Optional[PairState] = None
    plus_set: Tuple[float, ...] = ()
    minus_set: Tuple[float, ...] = ()


def pair_projections(decomposition: SpectralDecomposition, pair: PairState) -> np.ndarray:
    """(k, N) array whose rows are E_θ(e_a - e_b)"""
    pair.check_dimension(decomposition.dimension)
    return decomposition.projectors[:, :, pair.a] - decomposition.projectors[:, :, pair.b]


def support_indices(decomposition: SpectralDecomposition, pair: PairState, tol: Optional[float] = None) -> List[int]:
    tol = DEFAULT_TOLERANCES.support * PAIR_NORM if tol is None else tol
    norms = np.linalg.norm(pair_projections(decomposition, pair), axis=1)
    indices = [int(k) for k in np.nonzero(norms > tol)[0]]
    if not indices:
        raise NumericFailureError(f"Empty eigenvalue support for pair {pair.to_string()}")
    return indices


def eigenvalue_support(decomposition: SpectralDecomposition, pair: PairState, tol: Optional[float] = None) -> Tuple[float, ...]:
    """Eigenvalues θ with E_θ(e_a - e_b) ≠ 0, ascending"""
    return tuple(float(decomposition.eigenvalues[k]) for k in support_indices(decomposition, pair, tol))


def cospectral_partition(
    decomposition: SpectralDecomposition,
    pair1: PairState,
    pair2: PairState,
    tol: Optional[float] = None,
) -> Optional[Tuple[List[int], List[int]]]:
    """
    Indices (Φ⁺, Φ⁻) with E(e_a - e_b) = ±E(e_c - e_d), or None

    A sign is accepted only when its distance is below `tol` and the opposite sign's is
    above 10·tol; eigenvalues where both projections vanish are skipped.
    """
    if pair1.unordered == pair2.unordered:
        raise InvalidParameterError(f"Strong cospectrality needs two different pairs, got {pair1.to_string()} twice")
    tol = DEFAULT_TOLERANCES.cospectral * PAIR_NORM if tol is None else tol
    first = pair_projections(decomposition, pair1)
    second = pair_projections(decomposition, pair2)

    plus, minus = [], []
    for k in range(len(decomposition)):
        if np.linalg.norm(first[k]) <= tol and np.linalg.norm(second[k]) <= tol:
            continue
        d_plus = np.linalg.norm(first[k] - second[k])
        d_minus = np.linalg.norm(first[k] + second[k])
        if d_plus < tol and d_minus > 10 * tol:
            plus.append(k)
        elif d_minus < tol and d_plus > 10 * tol:
            minus.append(k)
        else:
            return None
    return plus, minus


def strongly_cospectral(
    decomposition: SpectralDecomposition,
    pair1: PairState,
    pair2: PairState,
    tol: Optional[float] = None,
) -> Optional[Tuple[Tuple[float, ...], Tuple[float, ...]]]:
    """(Φ⁺, Φ⁻) as eigenvalue tuples when the pairs are strongly cospectral, else None"""
    partition = cospectral_partition(decomposition, pair1, pair2, tol)
    if partition is None:
        return None
    values = decomposition.eigenvalues
    plus, minus = partition
    return tuple(float(values[k]) for k in plus), tuple(float(values[k]) for k in minus)


def analyze_support(
    decomposition: SpectralDecomposition,
    pair: PairState,
    partner: Optional[PairState] = None,
    tol: Optional[float] = None,
) -> SupportAnalysis:
    support = eigenvalue_support(decomposition, pair, tol)
    if partner is None:
        return SupportAnalysis(pair, support)
    signs = strongly_cospectral(decomposition, pair, partner, tol)
    if signs is None:
        return SupportAnalysis(pair, support)
    return SupportAnalysis(pair, support, partner, signs[0], signs[1])


def pair_coefficients(decomposition: SpectralDecomposition, pair1: PairState, pair2: PairState) -> np.ndarray:
    """(e_a - e_b)ᵀ E_θ (e_c - e_d) for every eigenvalue"""
    pair2.check_dimension(decomposition.dimension)
    projections = pair_projections(decomposition, pair1)
    return projections[:, pair2.a] - projections[:, pair2.b]


def pair_amplitudes(
    decomposition: SpectralDecomposition,
    pair1: PairState,
    pair2: PairState,
    times: Sequence[float],
) -> np.ndarray:
    """Normalised amplitudes ½ Σ exp(-iθt)·(e_a - e_b)ᵀE_θ(e_c - e_d) at each time"""
    coefficients = pair_coefficients(decomposition, pair1, pair2)
    phases = np.exp(-1j * np.outer(np.asarray(times, dtype=float), decomposition.eigenvalues))
    return 0.5 * phases @ coefficients


def pair_amplitude(decomposition: SpectralDecomposition, pair1: PairState, pair2: PairState, t: float) -> Amplitude:
    return Amplitude(complex(pair_amplitudes(decomposition, pair1, pair2, [t])[0]))


def fidelity_sweep(
    decomposition: SpectralDecomposition,
    pair1: PairState,
    pair2: PairState,
    times: Sequence[float],
) -> pd.DataFrame:
    times = np.asarray(times, dtype=float)
    fidelity = np.abs(pair_amplitudes(decomposition, pair1, pair2, times))
    return pd.DataFrame({"time": times, "fidelity": fidelity})


# Total-graph amplitudes from the base spectrum

class TotalPairEvaluator:
    """
    Pair amplitudes between base-vertex pair states in T(G), computed from the base spectrum only

    Uses U_T[a,b](t) = Σⱼ exp(-it(r + 2θⱼ + 2)/2)·E_j[a,b]·(cos(Δⱼt/2) + i(2 - r)/Δⱼ·sin(Δⱼt/2)),
    with Δⱼ = √((r + 2)² - 4θⱼ); for bipartite G the top term 2r is replaced by exp(-3irt)·E_{2r}[a,b].
    """

    def __init__(
        self,
        base: SpectralDecomposition,
        bipartition: Optional[Bipartition],
        r: int,
        pair1: PairState,
        pair2: PairState,
    ):
        if r < 2:
            raise UnsupportedError(f"Total-graph amplitudes need an r-regular base with r ≥ 2, got r={r}")
        self.r = r
        self.pair1 = pair1
        self.pair2 = pair2

        thetas = np.asarray(base.eigenvalues, dtype=float)
        coefficients = pair_coefficients(base, pair1, pair2)
        # ‖E(e_a - e_b)‖², zero off the support of the first pair
        weights = pair_coefficients(base, pair1, pair1)
        self.top_coefficient = 0.0
        if bipartition is not None:
            if abs(thetas[-1] - 2 * r) > 1e-8 * max(1.0, 2 * r):
                raise UnsupportedError(f"Bipartite base must have top eigenvalue 2r = {2 * r}, found {thetas[-1]}")
            self.top_coefficient = float(coefficients[-1])
            thetas, coefficients, weights = thetas[:-1], coefficients[:-1], weights[:-1]

        discriminants = (r + 2) ** 2 - 4 * thetas
        if np.any(discriminants <= 0):
            raise UnsupportedError(f"Non-positive discriminant among base eigenvalues for r={r}")
        self.thetas = thetas
        self.coefficients = coefficients
        self.deltas = np.sqrt(discriminants)
        self.weights = weights

    def amplitudes(self, times: Sequence[float]) -> np.ndarray:
        t = np.asarray(times, dtype=float)[:, None]
        centre = np.exp(-0.5j * t * (self.r + 2 * self.thetas + 2))
        half = 0.5 * self.deltas * t
        rotation = np.cos(half) + 1j * (2 - self.r) / self.deltas * np.sin(half)
        values = 0.5 * (centre * rotation) @ self.coefficients
        if self.top_coefficient:
            values = values + 0.5 * np.exp(-3j * self.r * t[:, 0]) * self.top_coefficient
        return values

    def fidelities(self, times: Sequence[float]) -> np.ndarray:
        return np.abs(self.amplitudes(times))

    def support_mask(self, tol: float = 1e-12) -> np.ndarray:
        """Base eigenvalues (top 2r excluded for bipartite G) in the support of the first pair"""
        return self.weights > tol

    def support_deltas(self, tol: float = 1e-12) -> np.ndarray:
        return self.deltas[self.support_mask(tol)]


def total_vertex_amplitude(
    base: SpectralDecomposition,
    bipartition: Optional[Bipartition],
    a: int,
    b: int,
    r: int,
    t: float,
) -> complex:
    """U_T(t)[a, b] for base vertices a, b (a == b allowed)"""
    if r < 2:
        raise UnsupportedError(f"Total-graph amplitudes need an r-regular base with r ≥ 2, got r={r}")
    thetas = np.asarray(base.eigenvalues, dtype=float)
    entries = base.projectors[:, a, b]
    top = 0.0
    if bipartition is not None:
        if abs(thetas[-1] - 2 * r) > 1e-8 * max(1.0, 2 * r):
            raise UnsupportedError(f"Bipartite base must have top eigenvalue 2r = {2 * r}, found {thetas[-1]}")
        top = entries[-1]
        thetas, entries = thetas[:-1], entries[:-1]
    discriminants = (r + 2) ** 2 - 4 * thetas
    if np.any(discriminants <= 0):
        raise UnsupportedError(f"Non-positive discriminant among base eigenvalues for r={r}")
    deltas = np.sqrt(discriminants)
    rotation = np.cos(deltas * t / 2) + 1j * (2 - r) / deltas * np.sin(deltas * t / 2)
    value = np.sum(np.exp(-0.5j * t * (r + 2 * thetas + 2)) * entries * rotation)
    return complex(value + np.exp(-3j * r * t) * top)


def total_pair_amplitude(
    base: SpectralDecomposition,
    bipartition: Optional[Bipartition],
    pair1: PairState,
    pair2: PairState,
    r: int,
    t: float,
) -> Amplitude:
    evaluator = TotalPairEvaluator(base, bipartition, r, pair1, pair2)
    return Amplitude(complex(evaluator.amplitudes([t])[0]))


# Structure of pair supports in total graphs

def _entry_index(spectrum: ExactSpectrum, base_index: int, branch: str) -> Optional[int]:
    for k, entry in enumerate(spectrum.entries):
        if entry.origin_of(base_index, branch):
            return k
    return None


def _paired_indices(spectrum: ExactSpectrum) -> List[Tuple[int, int]]:
    base_indices = sorted({j for entry in spectrum.entries for j, branch in entry.origins if j is not None})
    pairs = []
    for j in base_indices:
        plus = _entry_index(spectrum, j, BRANCH_PLUS)
        minus = _entry_index(spectrum, j, BRANCH_MINUS)
        if plus is not None and minus is not None:
            pairs.append((plus, minus))
    return pairs


def support_pairing(spectrum: ExactSpectrum, pair: PairState, tol: Optional[float] = None) -> bool:
    """θⱼ⁺ lies in the support of a vertex-vertex or edge-edge pair exactly when θⱼ⁻ does"""
    support = set(support_indices(spectrum.to_decomposition(), pair, tol))
    return all((plus in support) == (minus in support) for plus, minus in _paired_indices(spectrum))


def sign_pairing(spectrum: ExactSpectrum, pair1: PairState, pair2: PairState, tol: Optional[float] = None) -> Optional[bool]:
    """For strongly cospectral pairs, θⱼ⁺ and θⱼ⁻ fall in the same sign class; None if not strongly cospectral"""
    partition = cospectral_partition(spectrum.to_decomposition(), pair1, pair2, tol)
    if partition is None:
        return None
    plus_set, minus_set = set(partition[0]), set(partition[1])
    for plus, minus in _paired_indices(spectrum):
        if plus in plus_set and minus in minus_set:
            return False
        if plus in minus_set and minus in plus_set:
            return False
    return True
