"""Graph construction, incidence and Laplacian matrices, and the total-graph operator"""
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx
import numpy as np

from utils.errors import InvalidParameterError
from utils.validators import validate_connection_set, validate_edge_list, validate_vertex_count

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

VERTEX_VERTEX = "vertex-vertex"
EDGE_EDGE = "edge-edge"
VERTEX_EDGE = "vertex-edge"


def _require(check: Tuple[bool, str]) -> None:
    ok, msg = check
    if not ok:
        raise InvalidParameterError(msg)


@dataclass(frozen=True)
class Graph:
    """
    Finite simple connected undirected graph on vertices 0..n-1

    Edges are stored as sorted (u, v) tuples with u < v, in lexicographic order; that
    order fixes the column order of the incidence matrix.
    """
    n: int
    edges: Tuple[Edge, ...]
    name: str = field(default="graph", compare=False)
    adjacency: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _require(validate_vertex_count(self.n, minimum=2, label="vertex count"))
        edges = [(int(u), int(v)) for u, v in self.edges]
        _require(validate_edge_list(self.n, edges))
        normalized = tuple(sorted((min(u, v), max(u, v)) for u, v in edges))
        object.__setattr__(self, "edges", normalized)

        adjacency = np.zeros((self.n, self.n), dtype=np.int64)
        for u, v in normalized:
            adjacency[u, v] = adjacency[v, u] = 1
        adjacency.setflags(write=False)
        object.__setattr__(self, "adjacency", adjacency)

        if not nx.is_connected(self.to_networkx()):
            raise InvalidParameterError(f"Graph {self.name} is disconnected")

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges)
        return graph

    def describe(self) -> dict:
        return {
            "name": self.name,
            "vertices": self.n,
            "edges": self.num_edges,
            "regularity": regularity(self),
        }


@dataclass(frozen=True)
class Bipartition:
    """Sides of a connected bipartite graph; vertex 0 is always on side X1"""
    side: Tuple[int, ...]

    @property
    def x1(self) -> List[int]:
        return [v for v, s in enumerate(self.side) if s == 0]

    @property
    def x2(self) -> List[int]:
        return [v for v, s in enumerate(self.side) if s == 1]

    def same_side(self, a: int, b: int) -> bool:
        return self.side[a] == self.side[b]

    def sign_vector(self) -> np.ndarray:
        """+1 on X1, -1 on X2"""
        return np.array([1.0 if s == 0 else -1.0 for s in self.side])


@dataclass(frozen=True)
class TotalGraphLabel:
    """Origin of a total-graph vertex: a base vertex or a base edge"""
    index: int
    kind: str
    origin: Union[int, Edge]

    @property
    def is_vertex(self) -> bool:
        return self.kind == "vertex"

    def to_string(self) -> str:
        if self.is_vertex:
            return f"v{self.origin}"
        u, v = self.origin
        return f"e{u}-{v}"


# Constructors

def complete_graph(n: int) -> Graph:
    _require(validate_vertex_count(n, minimum=2))
    edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    return Graph(n, tuple(edges), name=f"K{n}")


def circulant(n: int, connection_set: Iterable[int]) -> Graph:
    """Cay(Z_n, S): i ~ j iff (j - i) mod n ∈ S"""
    _require(validate_vertex_count(n, minimum=2))
    connection_set = list(connection_set)
    _require(validate_connection_set(n, connection_set))
    residues = sorted({s % n for s in connection_set})
    edges = {(min(i, (i + s) % n), max(i, (i + s) % n)) for i in range(n) for s in residues}
    return Graph(n, tuple(edges), name=f"Cay(Z{n},{{{','.join(map(str, residues))}}})")


def cocktail_party(m: int) -> Graph:
    """CP(m) = Cay(Z_2m, Z_2m minus {0, m}); the antipode of i is i + m"""
    _require(validate_vertex_count(m, minimum=2, label="m"))
    n = 2 * m
    graph = circulant(n, [s for s in range(1, n) if s != m])
    return Graph(graph.n, graph.edges, name=f"CP({m})")


def hypercube(d: int) -> Graph:
    """Q_d on bit strings 0..2^d - 1, adjacent iff they differ in one bit"""
    _require(validate_vertex_count(d, minimum=1, label="d"))
    n = 1 << d
    edges = [(i, i ^ (1 << bit)) for i in range(n) for bit in range(d) if i < i ^ (1 << bit)]
    return Graph(n, tuple(edges), name=f"Q{d}")


def petersen() -> Graph:
    return Graph(10, tuple(nx.petersen_graph().edges()), name="Petersen")


def cycle(n: int) -> Graph:
    _require(validate_vertex_count(n, minimum=3))
    edges = [(i, (i + 1) % n) for i in range(n)]
    return Graph(n, tuple(edges), name=f"C{n}")


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with sides 0..a-1 and a..a+b-1"""
    _require(validate_vertex_count(a, minimum=1, label="a"))
    _require(validate_vertex_count(b, minimum=1, label="b"))
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return Graph(a + b, tuple(edges), name=f"K{a},{b}")


def parse_edge_list(text: str, name: str = "edge-list") -> Graph:
    """Parse an "n m" header followed by m lines "u v"; '#' starts a comment"""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows or len(rows[0]) != 2:
        raise InvalidParameterError("Edge list must start with an 'n m' header")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(u), int(v)) for u, v in rows[1:]]
    except ValueError as exc:
        raise InvalidParameterError(f"Edge list contains a non-integer token: {exc}")
    if len(edges) != m:
        raise InvalidParameterError(f"Edge list header declares {m} edges but {len(edges)} were given")
    return Graph(n, tuple(edges), name=name)


def read_edge_list(path: Union[str, Path]) -> Graph:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InvalidParameterError(f"Cannot read edge list {path}: {exc}")
    return parse_edge_list(text, name=path.stem)


# Matrices and structure

def laplacian(graph: Graph) -> np.ndarray:
    """L = D - A as an integer matrix"""
    return np.diag(graph.degrees) - graph.adjacency


def regularity(graph: Graph) -> Optional[int]:
    degrees = graph.degrees
    if np.all(degrees == degrees[0]):
        return int(degrees[0])
    return None


def incidence_matrix(graph: Graph) -> np.ndarray:
    """n×m 0/1 matrix with R[v, j] = 1 iff v is an endpoint of edge j"""
    incidence = np.zeros((graph.n, graph.num_edges), dtype=np.int64)
    for j, (u, v) in enumerate(graph.edges):
        incidence[u, j] = incidence[v, j] = 1
    return incidence


def total_graph(graph: Graph) -> Tuple[Graph, List[TotalGraphLabel]]:
    """
    Total graph T(G) on the base vertices (indices 0..n-1) followed by the base edges

    Adjacency is the block matrix [[A, R], [Rᵀ, RᵀR - 2I]].
    """
    n, m = graph.n, graph.num_edges
    incidence = incidence_matrix(graph)
    adjacency = np.block([
        [graph.adjacency, incidence],
        [incidence.T, incidence.T @ incidence - 2 * np.eye(m, dtype=np.int64)],
    ])
    rows, cols = np.nonzero(np.triu(adjacency, k=1))
    edges = tuple(zip(rows.tolist(), cols.tolist()))
    total = Graph(n + m, edges, name=f"T({graph.name})")

    labels = [TotalGraphLabel(v, "vertex", v) for v in range(n)]
    labels += [TotalGraphLabel(n + j, "edge", e) for j, e in enumerate(graph.edges)]
    logger.debug(f"[Graph] Built {total.name}: {total.n} vertices, {total.num_edges} edges")
    return total, labels


def is_bipartite(graph: Graph) -> Optional[Bipartition]:
    """BFS 2-colouring from vertex 0; None when an edge joins two vertices of one colour"""
    side = [0] * graph.n
    for parent, child in nx.bfs_edges(graph.to_networkx(), 0):
        side[child] = 1 - side[parent]
    if any(side[u] == side[v] for u, v in graph.edges):
        return None
    return Bipartition(tuple(side))


def embed_vertex_state(n: int, m: int, index: int) -> np.ndarray:
    """Characteristic vector of total-graph vertex `index`: (e_a; 0) for base vertices, (0; e_j) for edges"""
    if not 0 <= index < n + m:
        raise InvalidParameterError(f"Index {index} out of range for a total graph on {n + m} vertices")
    state = np.zeros(n + m)
    state[index] = 1.0
    return state


def pair_kind(labels: Sequence[TotalGraphLabel], pair: Tuple[int, int]) -> str:
    a, b = pair
    kinds = {labels[a].is_vertex, labels[b].is_vertex}
    if kinds == {True}:
        return VERTEX_VERTEX
    if kinds == {False}:
        return EDGE_EDGE
    return VERTEX_EDGE
