"""Weighted graphs and the two graph families the package is built around.

`build_k2n(n)` gives the unit-weight complete bipartite graph with terminal
side {0, 1} and n other vertices.  `build_theta(k, ell)` gives the graph made
of 2k internally disjoint paths of length 2*ell between the two terminals,
which is K_{2,2k} with every edge subdivided ell-1 times.

Theta-graph vertex numbering (fixed once, here): terminals are 0 and 1; the
internal vertices of path i (one-based, i in [1, 2k]) are labeled
consecutively from the 0 side as

    (2*ell - 1)*(i - 1) + j + 1      for offset j in [1, 2*ell - 1],

so path i reads 0, (2ell-1)(i-1)+2, ..., (2ell-1)i+1, 1.  Offset j means
"j unit edges away from terminal 0 along the path"; the midpoint offset ell
is the original B-side vertex.  Algorithms that pick a path index use the
same one-based i.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError

Edge = tuple[int, int, Fraction]


@dataclass(frozen=True)
class WeightedGraph:
    """Undirected graph with nonnegative rational edge weights.

    Edges are stored with u < v and at most one edge per unordered pair;
    self-loops are rejected.
    """

    vertex_count: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.vertex_count < 1:
            raise InputError("graph needs at least one vertex")
        seen = set()
        normalized = []
        for u, v, w in self.edges:
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InputError(f"edge ({u},{v}) out of range")
            if u > v:
                u, v = v, u
            if (u, v) in seen:
                raise InputError(f"duplicate edge ({u},{v})")
            w = Fraction(w)
            if w < 0:
                raise InputError(f"negative weight on edge ({u},{v})")
            seen.add((u, v))
            normalized.append((u, v, w))
        object.__setattr__(self, "edges", tuple(normalized))

    def adjacency(self) -> list[list[tuple[int, Fraction]]]:
        adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.vertex_count)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def degree(self, v: int) -> int:
        return sum(1 for a, b, _ in self.edges if a == v or b == v)


def build_k2n(n: int) -> WeightedGraph:
    """Unit-weight K_{2,n}: terminals 0 and 1, other side 2..n+1, 2n edges."""
    if n < 1:
        raise InputError("build_k2n requires n >= 1")
    edges = []
    for b in range(2, n + 2):
        edges.append((0, b, Fraction(1)))
        edges.append((1, b, Fraction(1)))
    return WeightedGraph(vertex_count=n + 2, edges=tuple(edges))


@dataclass(frozen=True)
class ThetaGraph:
    """2k internally disjoint 0-1 paths of length 2*ell, unit weights."""

    k: int
    ell: int
    underlying: WeightedGraph = field(compare=False)

    @property
    def vertex_count(self) -> int:
        return 2 + 2 * self.k * (2 * self.ell - 1)

    @property
    def num_paths(self) -> int:
        return 2 * self.k

    def label(self, path: int, offset: int) -> int:
        """Vertex label of the internal vertex at `offset` on one-based `path`."""
        if not 1 <= path <= 2 * self.k:
            raise InputError(f"path index {path} out of range [1, {2 * self.k}]")
        if not 1 <= offset <= 2 * self.ell - 1:
            raise InputError(f"offset {offset} out of range [1, {2 * self.ell - 1}]")
        return (2 * self.ell - 1) * (path - 1) + offset + 1

    def path_and_offset(self, v: int) -> tuple[int, int]:
        """Inverse of `label`; terminals 0 and 1 are not on any single path."""
        if not 2 <= v < self.vertex_count:
            raise InputError(f"vertex {v} is not an internal theta vertex")
        span = 2 * self.ell - 1
        path = (v - 2) // span + 1
        offset = (v - 2) % span + 1
        return path, offset

    def midpoint(self, path: int) -> int:
        """The original B-side vertex of `path` (offset ell)."""
        return self.label(path, self.ell)

    def path_vertices(self, path: int) -> tuple[int, ...]:
        """Full vertex sequence of `path`, terminal 0 to terminal 1."""
        inner = [self.label(path, j) for j in range(1, 2 * self.ell)]
        return (0, *inner, 1)


def build_theta(k: int, ell: int) -> ThetaGraph:
    """Construct the theta graph for the given parameters.

    build_theta(k, 1) is exactly build_k2n(2k): with no subdivision the
    interior of each path is the single B vertex.
    """
    if k < 1 or ell < 1:
        raise InputError("build_theta requires k >= 1 and ell >= 1")
    span = 2 * ell - 1
    edges = []
    for i in range(1, 2 * k + 1):
        first = span * (i - 1) + 2
        last = span * i + 1
        edges.append((0, first, Fraction(1)))
        for v in range(first, last):
            edges.append((v, v + 1, Fraction(1)))
        edges.append((1, last, Fraction(1)))
    g = WeightedGraph(vertex_count=2 + 2 * k * span, edges=tuple(edges))
    return ThetaGraph(k=k, ell=ell, underlying=g)
