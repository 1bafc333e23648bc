"""Resolve CLI graph arguments into graphs and spectra"""
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from graph_families import get_available_families, get_family
from utils.env_helper import Tolerances
from utils.errors import UnsupportedError, UsageError
from utils.graph_core import Graph, TotalGraphLabel, laplacian, read_edge_list, regularity, total_graph
from utils.pair_analysis import PairState
from utils.report_writer import file_digest
from utils.spectral import (
    ExactSpectrum,
    SpectralDecomposition,
    eigendecompose_symmetric,
    exact_integer_spectrum,
    total_exact_spectrum,
)

logger = logging.getLogger(__name__)

TOTAL_FAMILY = "total"

ParamValue = Union[int, float, List[int]]


@dataclass
class LoadedGraph:
    """Graph under analysis; `base` is set when it is the total graph of `base`"""
    graph: Graph
    descriptor: Dict
    base: Optional[Graph] = None
    labels: Optional[List[TotalGraphLabel]] = None

    @property
    def is_total(self) -> bool:
        return self.base is not None


def _number(token: str) -> Union[int, float]:
    try:
        return int(token)
    except ValueError:
        pass
    try:
        return float(token)
    except ValueError:
        raise UsageError(f"Parameter value {token!r} is not a number")


def parse_params(text: Optional[str]) -> Dict[str, ParamValue]:
    """
    Parse "k=v,..." parameters

    A bare value after a key extends that key into a list, so "n=6,S=1,3,5" gives
    {"n": 6, "S": [1, 3, 5]}; ';' also separates list items.
    """
    params: Dict[str, ParamValue] = {}
    if not text:
        return params
    current = None
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        if "=" in token:
            key, _, value = token.partition("=")
            current = key.strip()
            if not current:
                raise UsageError(f"Empty parameter name in {text!r}")
            items = [_number(v) for v in value.split(";") if v.strip()]
            if not items:
                raise UsageError(f"Parameter {current} has no value")
            params[current] = items if len(items) > 1 else items[0]
        elif current is None:
            raise UsageError(f"Parameter value {token!r} has no key")
        else:
            previous = params[current]
            previous = previous if isinstance(previous, list) else [previous]
            params[current] = previous + [_number(v) for v in token.split(";") if v.strip()]
    return params


def parse_pair(text: str) -> PairState:
    """"a,b" → PairState(a, b)"""
    parts = [p.strip() for p in text.replace(":", ",").split(",") if p.strip()]
    if len(parts) != 2:
        raise UsageError(f"Pair must look like 'a,b', got {text!r}")
    try:
        return PairState(int(parts[0]), int(parts[1]))
    except ValueError:
        raise UsageError(f"Pair entries must be integers, got {text!r}")


def parse_sweep(text: str) -> np.ndarray:
    """"START:STOP:COUNT" → evenly spaced times including both ends"""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"Sweep must look like START:STOP:COUNT, got {text!r}")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"Sweep bounds must be numbers and COUNT an integer, got {text!r}")
    if count < 1 or start < 0 or stop < start:
        raise UsageError(f"Sweep needs 0 ≤ START ≤ STOP and COUNT ≥ 1, got {text!r}")
    return np.linspace(start, stop, count)


def _build_family(name: str, params: Dict[str, ParamValue]) -> Tuple[Graph, Dict]:
    family = get_family(name)
    if family is None:
        raise UsageError(f"Unknown family {name!r}; available: {', '.join(get_available_families())}")
    graph = family.build(params)
    return graph, {"family": family.family_name, "params": params}


def load_graph(
    family: Optional[str] = None,
    params: Optional[str] = None,
    base: Optional[str] = None,
    graph_file: Optional[str] = None,
    total: bool = False,
) -> LoadedGraph:
    """Build the analysed graph from --family/--params/--base, or --graph FILE (optionally with --total)"""
    parsed = parse_params(params)
    if graph_file:
        if family and family != TOTAL_FAMILY:
            raise UsageError("--graph cannot be combined with --family (except 'total')")
        graph = read_edge_list(graph_file)
        descriptor = {"file": str(graph_file), "sha256": file_digest(graph_file)}
        total = total or family == TOTAL_FAMILY
    elif family == TOTAL_FAMILY:
        if not base:
            raise UsageError("--family total needs --base FAMILY")
        graph, descriptor = _build_family(base, parsed)
        total = True
    elif family:
        graph, descriptor = _build_family(family, parsed)
    else:
        raise UsageError("Specify a graph with --family or --graph")

    if not total:
        descriptor.update(graph.describe())
        return LoadedGraph(graph, descriptor)

    analysed, labels = total_graph(graph)
    descriptor.update(analysed.describe())
    descriptor["total_of"] = graph.describe()
    return LoadedGraph(analysed, descriptor, base=graph, labels=labels)


def resolve_spectrum(loaded: LoadedGraph, tolerances: Tolerances) -> Tuple[SpectralDecomposition, Optional[ExactSpectrum]]:
    """
    Decomposition of L for the analysed graph, plus an exact spectrum when one exists

    Total graphs of regular bases with integral spectra use the closed form; otherwise the
    integrality check on the analysed graph itself decides.
    """
    exact = None
    if loaded.is_total and (regularity(loaded.base) or 0) >= 2:
        base_exact = exact_integer_spectrum(loaded.base, tolerances)
        if base_exact is not None:
            try:
                exact = total_exact_spectrum(loaded.base, base_exact)
            except UnsupportedError as exc:
                logger.info(f"[Loader] Closed form unavailable: {exc.msg}")
    if exact is None:
        exact = exact_integer_spectrum(loaded.graph, tolerances)
    if exact is not None:
        return exact.to_decomposition(), exact

    lap = laplacian(loaded.graph).astype(float)
    return eigendecompose_symmetric(lap, tolerances.grouping_for(lap)), None
