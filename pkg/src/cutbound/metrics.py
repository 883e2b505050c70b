"""Finite metric spaces over exact rationals."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import DisconnectedGraphError, InputError
from .graphs import WeightedGraph
from .rationals import format_rational, parse_rational


@dataclass(frozen=True)
class FiniteMetric:
    """Symmetric matrix of exact pairwise distances.

    Off-diagonal distances must be strictly positive; degenerate point pairs
    have to be quotiented by the caller before a FiniteMetric is built.
    """

    dist: tuple[tuple[Fraction, ...], ...]

    @property
    def point_count(self) -> int:
        return len(self.dist)

    def d(self, x: int, y: int) -> Fraction:
        return self.dist[x][y]

    def pairs(self):
        return combinations(range(self.point_count), 2)

    def validate(self) -> None:
        """Check all metric axioms exactly; raise InputError on the first failure."""
        n = self.point_count
        for x in range(n):
            if self.dist[x][x] != 0:
                raise InputError(f"nonzero diagonal at point {x}")
            if len(self.dist[x]) != n:
                raise InputError("distance matrix is not square")
        for x, y in self.pairs():
            if self.dist[x][y] != self.dist[y][x]:
                raise InputError(f"asymmetric distances at pair ({x},{y})")
            if self.dist[x][y] <= 0:
                raise InputError(f"nonpositive distance at distinct pair ({x},{y})")
        for x, y, z in combinations(range(n), 3):
            for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
                if self.dist[a][b] > self.dist[a][c] + self.dist[c][b]:
                    raise InputError(
                        "triangle inequality violated on triple "
                        f"({a},{b},{c}): d({a},{b}) > d({a},{c}) + d({c},{b})"
                    )

    def scaled(self, factor: Fraction) -> "FiniteMetric":
        factor = Fraction(factor)
        if factor <= 0:
            raise InputError("metric scale factor must be positive")
        return FiniteMetric(
            tuple(tuple(factor * d for d in row) for row in self.dist)
        )

    def to_json(self) -> dict:
        return {
            "points": self.point_count,
            "dist": [[format_rational(d) for d in row] for row in self.dist],
        }


def metric_from_json(doc: dict) -> FiniteMetric:
    """Parse {points, dist: [["p/q", ...]]} and validate all axioms."""
    if not isinstance(doc, dict) or "dist" not in doc:
        raise InputError("metric document must be an object with a 'dist' matrix")
    rows = doc["dist"]
    if not isinstance(rows, list) or not rows:
        raise InputError("'dist' must be a nonempty matrix")
    n = doc.get("points", len(rows))
    if n != len(rows):
        raise InputError(f"'points'={n} does not match matrix size {len(rows)}")
    dist = []
    for row in rows:
        if not isinstance(row, list) or len(row) != len(rows):
            raise InputError("'dist' must be a square matrix")
        dist.append(tuple(parse_rational(entry) for entry in row))
    metric = FiniteMetric(tuple(dist))
    metric.validate()
    return metric


def shortest_path_metric(g: WeightedGraph) -> FiniteMetric:
    """Exact all-pairs shortest-path distances of a connected positive graph.

    Runs one exact Dijkstra relaxation per source; Fraction comparisons keep
    every intermediate value rational.  Zero-weight edges are rejected since
    they would collapse two points onto distance zero.
    """
    for u, v, w in g.edges:
        if w == 0:
            raise InputError(
                f"zero-weight edge ({u},{v}): quotient identical points first"
            )
    n = g.vertex_count
    if n == 1:
        return FiniteMetric(((Fraction(0),),))
    adj = g.adjacency()
    rows = []
    for src in range(n):
        dist: list[Fraction | None] = [None] * n
        dist[src] = Fraction(0)
        heap: list[tuple[Fraction, int]] = [(Fraction(0), src)]
        while heap:
            d, u = heapq.heappop(heap)
            if dist[u] is not None and d > dist[u]:
                continue
            for v, w in adj[u]:
                nd = d + w
                if dist[v] is None or nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        for v in range(n):
            if dist[v] is None:
                raise DisconnectedGraphError(src, v)
        rows.append(tuple(dist))
    return FiniteMetric(tuple(rows))


def restrict_metric(m: FiniteMetric, points: Sequence[int]) -> FiniteMetric:
    """Induced submetric on `points`, in the given order."""
    seen = set()
    for p in points:
        if not 0 <= p < m.point_count:
            raise InputError(f"restriction index {p} out of range")
        if p in seen:
            raise InputError(f"duplicate restriction index {p}")
        seen.add(p)
    if not points:
        raise InputError("restriction requires at least one point")
    return FiniteMetric(
        tuple(tuple(m.dist[x][y] for y in points) for x in points)
    )
