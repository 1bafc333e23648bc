"""Common validation utilities"""
from typing import Iterable, Sequence, Tuple


def validate_vertex_count(n, minimum: int = 1, label: str = "n") -> Tuple[bool, str]:
    """Validate an integer size parameter"""
    if isinstance(n, bool) or not isinstance(n, int):
        return False, f"{label} must be an integer"

    if n < minimum:
        return False, f"{label} must be at least {minimum}, got {n}"

    return True, ""


def validate_connection_set(n: int, connection_set: Iterable[int]) -> Tuple[bool, str]:
    """Validate a circulant connection set (residues mod n, no 0, closed under negation)"""
    residues = set()
    for s in connection_set:
        if isinstance(s, bool) or not isinstance(s, int):
            return False, f"Connection set entries must be integers, got {s!r}"
        residues.add(s % n)

    if not residues:
        return False, "Connection set must not be empty"

    if 0 in residues:
        return False, "Connection set must not contain 0 (mod n)"

    missing = sorted(s for s in residues if (-s) % n not in residues)
    if missing:
        return False, f"Connection set must be closed under negation mod {n}; missing negatives of {missing}"

    return True, ""


def validate_edge_list(n: int, edges: Sequence[Tuple[int, int]]) -> Tuple[bool, str]:
    """Validate endpoints, loops and duplicates of an undirected edge list"""
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            return False, f"Edge ({u}, {v}) has an endpoint outside 0..{n - 1}"

        if u == v:
            return False, f"Loop at vertex {u}"

        key = (min(u, v), max(u, v))
        if key in seen:
            return False, f"Duplicate edge {key}"
        seen.add(key)

    return True, ""


def validate_pair(a: int, b: int, n: int) -> Tuple[bool, str]:
    """Validate a pair state e_a - e_b on n vertices"""
    if a == b:
        return False, f"Pair state needs two distinct vertices, got ({a}, {b})"

    if not (0 <= a < n and 0 <= b < n):
        return False, f"Pair ({a}, {b}) out of range for {n} vertices"

    return True, ""


def validate_epsilon(epsilon: float) -> Tuple[bool, str]:
    """Validate a PGST target gap"""
    if not (0.0 < epsilon < 1.0):
        return False, f"epsilon must lie in (0, 1), got {epsilon}"

    return True, ""


def validate_ell_max(ell_max: int) -> Tuple[bool, str]:
    """Validate the candidate-time budget"""
    if isinstance(ell_max, bool) or not isinstance(ell_max, int) or ell_max < 0:
        return False, f"ell_max must be a non-negative integer, got {ell_max!r}"

    return True, ""
