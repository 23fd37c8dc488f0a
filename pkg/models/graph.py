"""
Graph Model
Finite directed multigraphs, their predicates, matrices, duals, moves and paths
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from models.errors import (
    GraphValidationError, LastVertex, NonRegularGraph, NotAnEliminableSource,
)

logger = logging.getLogger(__name__)

DUAL_SUFFIX = "_t"


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    range: str
    weight: int = 1


@dataclass(frozen=True)
class Path:
    """A path of edges; the empty path is stored with its base vertex"""
    source: str
    range: str
    edges: Tuple[str, ...] = ()

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def sort_key(self) -> Tuple:
        return (len(self.edges), self.edges, self.source)


@dataclass(frozen=True)
class VertexClassification:
    sinks: Tuple[str, ...]
    sources: Tuple[str, ...]
    regular: Tuple[str, ...]

    @property
    def is_regular(self) -> bool:
        return not self.sinks

    @property
    def is_essential(self) -> bool:
        return not self.sinks and not self.sources


@dataclass(frozen=True)
class Graph:
    name: str
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    _out: Dict[str, Tuple[Edge, ...]] = field(default=None, init=False, repr=False, compare=False, hash=False)
    _in: Dict[str, Tuple[Edge, ...]] = field(default=None, init=False, repr=False, compare=False, hash=False)
    _by_name: Dict[str, Edge] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, 'vertices', tuple(self.vertices))
        object.__setattr__(self, 'edges', tuple(self.edges))
        if not self.vertices:
            raise GraphValidationError(f"graph '{self.name}' has no vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphValidationError(f"graph '{self.name}' declares a vertex twice")
        names = [e.name for e in self.edges]
        if len(set(names)) != len(names):
            raise GraphValidationError(f"graph '{self.name}' declares an edge twice")
        clash = set(names) & set(self.vertices)
        if clash:
            raise GraphValidationError(f"names used for both a vertex and an edge: {sorted(clash)}")
        declared = set(self.vertices)
        for e in self.edges:
            if e.source not in declared or e.range not in declared:
                raise GraphValidationError(f"edge '{e.name}' uses an undeclared vertex")
            if e.weight == 0:
                raise GraphValidationError(f"edge '{e.name}' has weight 0")

        out_edges = {v: [] for v in self.vertices}
        in_edges = {v: [] for v in self.vertices}
        for e in self.edges:
            out_edges[e.source].append(e)
            in_edges[e.range].append(e)
        object.__setattr__(self, '_out', {v: tuple(es) for v, es in out_edges.items()})
        object.__setattr__(self, '_in', {v: tuple(es) for v, es in in_edges.items()})
        object.__setattr__(self, '_by_name', {e.name: e for e in self.edges})

    @classmethod
    def build(cls, name: str, vertices: List[str], edges: List[Tuple]) -> 'Graph':
        """Build from (name, source, range[, weight]) tuples"""
        return cls(name, tuple(vertices), tuple(Edge(*spec) for spec in edges))

    def edge(self, name: str) -> Edge:
        try:
            return self._by_name[name]
        except KeyError:
            raise GraphValidationError(f"graph '{self.name}' has no edge '{name}'")

    def has_edge(self, name: str) -> bool:
        return name in self._by_name

    def has_vertex(self, name: str) -> bool:
        return name in self._out

    def out_edges(self, v: str) -> Tuple[Edge, ...]:
        return self._out[v]

    def in_edges(self, v: str) -> Tuple[Edge, ...]:
        return self._in[v]

    def weight(self, edge_name: str) -> int:
        return self._by_name[edge_name].weight

    def vertex_index(self, v: str) -> int:
        return self.vertices.index(v)

    @property
    def is_weighted(self) -> bool:
        return any(e.weight != 1 for e in self.edges)


def classify(g: Graph) -> VertexClassification:
    sinks = tuple(v for v in g.vertices if not g.out_edges(v))
    sources = tuple(v for v in g.vertices if not g.in_edges(v))
    regular = tuple(v for v in g.vertices if g.out_edges(v))
    return VertexClassification(sinks=sinks, sources=sources, regular=regular)


def is_strongly_graded(g: Graph) -> bool:
    """L(E) is strongly graded exactly when E has no sinks"""
    return classify(g).is_regular


def square_adjacency(g: Graph) -> np.ndarray:
    """E0 x E0 edge-count matrix (rows of sinks are zero)"""
    n = len(g.vertices)
    a = np.zeros((n, n), dtype=object)
    for e in g.edges:
        a[g.vertex_index(e.source), g.vertex_index(e.range)] += 1
    return a


def adjacency_matrix(g: Graph) -> np.ndarray:
    """reg(E) x E0 matrix counting edges v -> w"""
    square = square_adjacency(g)
    rows = [g.vertex_index(v) for v in classify(g).regular]
    return square[rows, :]


def require_regular(g: Graph) -> None:
    sinks = classify(g).sinks
    if sinks:
        raise NonRegularGraph(f"graph '{g.name}' has sinks: {', '.join(sinks)}")


def wielandt_bound(n: int) -> int:
    return n * n - 2 * n + 2


def is_primitive(g: Graph) -> Optional[int]:
    """Least N with A^N entrywise positive, or None past the Wielandt bound"""
    require_regular(g)
    n = len(g.vertices)
    pattern = (square_adjacency(g) > 0).astype(np.int64)
    power = pattern.copy()
    for exponent in range(1, wielandt_bound(n) + 1):
        if (power > 0).all():
            return exponent
        power = np.minimum(power @ pattern, 1)
    return None


def toggle_dual_name(name: str) -> str:
    if name.endswith(DUAL_SUFFIX) and len(name) > len(DUAL_SUFFIX):
        return name[:-len(DUAL_SUFFIX)]
    return name + DUAL_SUFFIX


def dual_graph(g: Graph) -> Graph:
    """Reverse every edge; applying twice gives back the original names"""
    edges = tuple(
        Edge(toggle_dual_name(e.name), e.range, e.source, e.weight) for e in g.edges
    )
    return Graph(toggle_dual_name(g.name), g.vertices, edges)


def source_elimination(g: Graph, v: str) -> Graph:
    if not g.has_vertex(v):
        raise GraphValidationError(f"graph '{g.name}' has no vertex '{v}'")
    cls = classify(g)
    if v not in cls.sources or v in cls.sinks:
        raise NotAnEliminableSource(f"vertex '{v}' is not a source that emits edges")
    if len(g.vertices) < 2:
        raise LastVertex(f"cannot eliminate the only vertex of '{g.name}'")
    vertices = tuple(w for w in g.vertices if w != v)
    edges = tuple(e for e in g.edges if e.source != v)
    return Graph(f"{g.name}\\{v}", vertices, edges)


def essential_reduction(g: Graph) -> Tuple[Graph, List[str]]:
    """Eliminate sources of a regular graph until none remain"""
    require_regular(g)
    eliminated = []
    current = g
    while True:
        cls = classify(current)
        if not cls.sources:
            break
        v = cls.sources[0]
        if len(current.vertices) == 1:
            raise LastVertex(f"reducing '{g.name}' would remove every vertex")
        current = source_elimination(current, v)
        eliminated.append(v)
    if eliminated:
        logger.debug("essential reduction of %s eliminated %s", g.name, eliminated)
    return current, eliminated


def extend_path(g: Graph, p: Path, e: Edge) -> Path:
    return Path(p.source, e.range, p.edges + (e.name,))


def paths_into(g: Graph, v: str, n: int) -> List[Path]:
    """All paths of length n ending at v, in declaration order"""
    if n < 0:
        raise GraphValidationError("path length must be nonnegative")
    if n == 0:
        return [Path(v, v, ())]
    result = []
    for e in g.in_edges(v):
        for p in paths_into(g, e.source, n - 1):
            result.append(extend_path(g, p, e))
    return result


def paths_of_length(g: Graph, n: int) -> List[Path]:
    return [p for v in g.vertices for p in paths_into(g, v, n)]


def paths_from(g: Graph, v: str, bound: int) -> List[Path]:
    """Paths starting at v of length at most bound, shortest first"""
    layer = [Path(v, v, ())]
    result = list(layer)
    for _ in range(bound):
        layer = [extend_path(g, p, e) for p in layer for e in g.out_edges(p.range)]
        result.extend(layer)
    return result


def path_degree(g: Graph, p: Path) -> int:
    return sum(g.weight(name) for name in p.edges)
