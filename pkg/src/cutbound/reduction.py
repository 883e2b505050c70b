"""Reduce a weighted two-terminal bipartite instance to a theta graph.

Pipeline: approximate weights by simple rationals (optional), scale them to
even integers, subdivide every edge into unit edges, pad an odd far side by
duplicating a path, equalize all terminal-to-terminal paths to the common
minimum length by contraction steps, run the cut embedding on the resulting
theta graph, and pull the measure back to the original vertices along the
recorded correspondence.

Every step logs a vertex map into a ReductionTrace, so the composition sends
each original vertex to exactly one vertex of the final graph.  The pipeline
reports the distortion it actually measures on the original metric; it does
not assert any theoretical bound for general weights.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .cuts import Cut, CutMeasure
from .embedding import DEFAULT_MAX_K, DistortionReport, combine_d1, distortion_report
from .errors import GuardExceededError, InputError
from .graphs import ThetaGraph, WeightedGraph, build_theta
from .metrics import FiniteMetric, shortest_path_metric
from .rationals import format_rational, parse_rational


@dataclass(frozen=True)
class TraceStep:
    kind: str  # "scale" | "subdivide" | "shrink" | "pad" | "restrict"
    params: dict
    vertex_map: dict[int, int]

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "params": self.params,
            "vertex_map": {str(k): v for k, v in sorted(self.vertex_map.items())},
        }


@dataclass
class ReductionTrace:
    source_size: int
    steps: list[TraceStep] = field(default_factory=list)
    target_size: int = 0

    def append(self, step: TraceStep, new_size: int) -> None:
        self.steps.append(step)
        self.target_size = new_size

    def compose(self) -> dict[int, int]:
        """Follow every source vertex through all recorded maps.

        Vertices dropped along the way (only the final restrict step may do
        that) disappear from the result.
        """
        current = {v: v for v in range(self.source_size)}
        for step in self.steps:
            current = {
                src: step.vertex_map[img]
                for src, img in current.items()
                if img in step.vertex_map
            }
        return current

    def to_json(self) -> dict:
        return {
            "source_size": self.source_size,
            "target_size": self.target_size,
            "steps": [s.to_json() for s in self.steps],
        }


@dataclass(frozen=True)
class WeightedInstance:
    """Positive rational weights on K_{2,n}: one per edge (0,b) and (1,b)."""

    zero_side: tuple[Fraction, ...]
    one_side: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.zero_side) != len(self.one_side) or not self.zero_side:
            raise InputError("instance needs matching nonempty weight lists")
        for w in (*self.zero_side, *self.one_side):
            if Fraction(w) <= 0:
                raise InputError("all edge weights must be positive rationals")

    @property
    def n(self) -> int:
        return len(self.zero_side)

    def graph(self) -> WeightedGraph:
        edges = []
        for idx in range(self.n):
            b = idx + 2
            edges.append((0, b, self.zero_side[idx]))
            edges.append((1, b, self.one_side[idx]))
        return WeightedGraph(vertex_count=self.n + 2, edges=tuple(edges))

    def metric(self) -> FiniteMetric:
        return shortest_path_metric(self.graph())

    def to_json(self) -> dict:
        weights = {}
        for idx in range(self.n):
            b = idx + 2
            weights[f"0-{b}"] = format_rational(self.zero_side[idx])
            weights[f"1-{b}"] = format_rational(self.one_side[idx])
        return {"n": self.n, "weights": weights}


def instance_from_json(doc: dict) -> WeightedInstance:
    if not isinstance(doc, dict) or "n" not in doc or "weights" not in doc:
        raise InputError("instance document needs 'n' and 'weights'")
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError("'n' must be a positive integer")
    weights = doc["weights"]
    zero_side = []
    one_side = []
    for b in range(2, n + 2):
        for side, store in ((0, zero_side), (1, one_side)):
            key = f"{side}-{b}"
            if key not in weights:
                raise InputError(f"missing weight for edge ({side},{b}): key {key!r}")
            store.append(parse_rational(weights[key]))
    return WeightedInstance(tuple(zero_side), tuple(one_side))


def simplest_rational_between(lo: Fraction, hi: Fraction) -> Fraction:
    """Smallest-denominator rational in [lo, hi], for 0 < lo <= hi."""
    if not 0 < lo <= hi:
        raise InputError("interval must satisfy 0 < lo <= hi")
    floor_lo = lo.numerator // lo.denominator
    if lo.denominator == 1:
        return lo
    if floor_lo + 1 <= hi:
        return Fraction(floor_lo + 1)
    inner = simplest_rational_between(1 / (hi - floor_lo), 1 / (lo - floor_lo))
    return floor_lo + 1 / inner


def scale_and_subdivide(
    instance: WeightedInstance, epsilon: Fraction = Fraction(0)
) -> tuple[WeightedGraph, ReductionTrace]:
    """Replace the weighted instance by a unit-weight union of 0-1 paths.

    Weights are (optionally) approximated within relative error `epsilon`,
    scaled by twice the common denominator to even integers, and each edge of
    integer weight t becomes a path of t unit edges.  The doubling keeps all
    path lengths even, which the later equalization relies on.
    """
    epsilon = Fraction(epsilon)
    if not 0 <= epsilon < 1:
        raise InputError("epsilon must satisfy 0 <= epsilon < 1")
    n = instance.n
    trace = ReductionTrace(source_size=n + 2)

    approx_zero = list(instance.zero_side)
    approx_one = list(instance.one_side)
    if epsilon > 0:
        approx_zero = [
            simplest_rational_between(w * (1 - epsilon), w * (1 + epsilon))
            for w in approx_zero
        ]
        approx_one = [
            simplest_rational_between(w * (1 - epsilon), w * (1 + epsilon))
            for w in approx_one
        ]

    denom = lcm(*(w.denominator for w in (*approx_zero, *approx_one)))
    scale = 2 * denom
    int_zero = [int(w * scale) for w in approx_zero]
    int_one = [int(w * scale) for w in approx_one]
    trace.append(
        TraceStep(
            kind="scale",
            params={
                "epsilon": format_rational(epsilon),
                "scale": scale,
                "integer_weights": {
                    f"0-{idx + 2}": int_zero[idx] for idx in range(n)
                }
                | {f"1-{idx + 2}": int_one[idx] for idx in range(n)},
            },
            vertex_map={v: v for v in range(n + 2)},
        ),
        new_size=n + 2,
    )

    edges = []
    vertex_map = {0: 0, 1: 1}
    next_label = 2
    lengths = []
    b_positions = []
    for idx in range(n):
        length = int_zero[idx] + int_one[idx]
        lengths.append(length)
        b_positions.append(int_zero[idx])
        prev = 0
        first = next_label
        for pos in range(1, length):
            edges.append((prev, next_label, Fraction(1)))
            prev = next_label
            next_label += 1
        edges.append((prev, 1, Fraction(1)))
        vertex_map[idx + 2] = first + int_zero[idx] - 1
    graph = WeightedGraph(vertex_count=next_label, edges=tuple(edges))
    trace.append(
        TraceStep(
            kind="subdivide",
            params={"path_lengths": lengths, "b_positions": b_positions},
            vertex_map=vertex_map,
        ),
        new_size=graph.vertex_count,
    )
    return graph, trace


def _single_source_distance(g: WeightedGraph, src: int, dst: int) -> Fraction:
    adj = g.adjacency()
    dist: dict[int, Fraction] = {src: Fraction(0)}
    heap = [(Fraction(0), src)]
    while heap:
        d, u = heapq.heappop(heap)
        if u == dst:
            return d
        if d > dist.get(u, d):
            continue
        for v, w in adj[u]:
            nd = d + w
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    raise InputError(f"no path between {src} and {dst}")


def _same_graph(a: WeightedGraph, b: WeightedGraph) -> bool:
    return a.vertex_count == b.vertex_count and set(a.edges) == set(b.edges)


def _decompose_paths(g: WeightedGraph) -> list[list[int]]:
    """Split a unit union of internally disjoint 0-1 paths into vertex lists."""
    for u, v, w in g.edges:
        if w != 1:
            raise InputError("path equalization expects a unit-weight graph")
    adj = g.adjacency()
    if g.vertex_count < 3:
        raise InputError("expected internal vertices between the terminals")
    for v in range(2, g.vertex_count):
        if len(adj[v]) != 2:
            raise InputError(f"vertex {v} has degree {len(adj[v])}, expected 2")
    if any(v == 1 for v, _ in adj[0]):
        raise InputError("direct terminal edge: paths must have length >= 2")
    paths = []
    seen = set()
    for start, _ in sorted(adj[0]):
        path = [0, start]
        prev, cur = 0, start
        while cur != 1:
            nxt = [x for x, _ in adj[cur] if x != prev]
            if len(nxt) != 1:
                raise InputError(f"vertex {cur} does not continue a simple path")
            prev, cur = cur, nxt[0]
            path.append(cur)
        for v in path[1:-1]:
            if v in seen:
                raise InputError(f"paths are not internally disjoint at vertex {v}")
            seen.add(v)
        paths.append(path)
    covered = seen | {0, 1}
    if len(covered) != g.vertex_count:
        raise InputError("graph has vertices outside the terminal-to-terminal paths")
    return paths


def shrink_step(
    g: WeightedGraph, path: Sequence[int], cut: set[int]
) -> tuple[WeightedGraph, TraceStep]:
    """Contract the edges between `cut` and its complement.

    `path` is the full vertex sequence of a loose path (strictly longer than
    the distance between its endpoints, all interior vertices of degree 2)
    and `cut` a nonempty proper subset of its interior.  The path shortens by
    exactly the number of contracted edges.
    """
    if len(path) < 3:
        raise InputError("path must have at least one interior vertex")
    interior = set(path[1:-1])
    if len(interior) != len(path) - 2:
        raise InputError("path revisits a vertex")
    cut = set(cut)
    if not cut or cut == interior:
        raise InputError("cut must be a nonempty proper subset of the path interior")
    if not cut <= interior:
        raise InputError("cut contains vertices outside the path interior")

    adj = g.adjacency()
    edge_index = {}
    for u, v, w in g.edges:
        edge_index[(u, v)] = w
        edge_index[(v, u)] = w
    for a, b in zip(path, path[1:]):
        if (a, b) not in edge_index:
            raise InputError(f"({a},{b}) is not an edge of the graph")
    for v in interior:
        if len(adj[v]) != 2:
            raise InputError(f"interior vertex {v} has degree {len(adj[v])}, expected 2")

    path_weight = sum(edge_index[(a, b)] for a, b in zip(path, path[1:]))
    if not path_weight > _single_source_distance(g, path[0], path[-1]):
        raise InputError(
            "path is already at the shortest endpoint distance; nothing to shrink"
        )

    parent = list(range(g.vertex_count))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            # smaller label wins so terminals keep their identity
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra

    contracted = 0
    for u, v, _ in g.edges:
        if (u in cut) != (v in cut):
            union(u, v)
            contracted += 1

    reps = sorted({find(v) for v in range(g.vertex_count)})
    relabel = {rep: i for i, rep in enumerate(reps)}
    vertex_map = {v: relabel[find(v)] for v in range(g.vertex_count)}

    new_edges = {}
    for u, v, w in g.edges:
        nu, nv = vertex_map[u], vertex_map[v]
        if nu == nv:
            continue
        if nu > nv:
            nu, nv = nv, nu
        if (nu, nv) not in new_edges or w < new_edges[(nu, nv)]:
            new_edges[(nu, nv)] = w
    new_graph = WeightedGraph(
        vertex_count=len(reps),
        edges=tuple((u, v, w) for (u, v), w in sorted(new_edges.items())),
    )
    step = TraceStep(
        kind="shrink",
        params={
            "path": list(path),
            "cut": sorted(cut),
            "contracted_edges": contracted,
        },
        vertex_map=vertex_map,
    )
    return new_graph, step


def equalize_paths(
    g: WeightedGraph, protected: set[int] | None = None
) -> tuple[WeightedGraph, list[TraceStep], int, int]:
    """Shrink every 0-1 path down to the common minimum length.

    `protected` vertices (at most one per path interior) are kept strictly
    interior: contraction is taken from their far side first and from the
    near side only for whatever the far side cannot absorb.  A cut of
    pairwise non-adjacent interior vertices contracts two edges per vertex,
    so each path needs at most one step per side.  Returns the equalized
    graph, the shrink steps taken, the number of paths, and ell (half the
    common length).
    """
    protected = set(protected or ())
    paths = _decompose_paths(g)
    lengths = [len(p) - 1 for p in paths]
    if any(length % 2 for length in lengths):
        raise InputError(f"path lengths must all be even, got {lengths}")
    target = min(lengths)
    steps: list[TraceStep] = []

    def apply(path: list[int], cut: set[int]) -> None:
        nonlocal g, protected
        g, step = shrink_step(g, path, cut)
        steps.append(step)
        protected = {step.vertex_map[v] for v in protected}

    for index in range(len(paths)):
        path = _decompose_paths(g)[index]
        length = len(path) - 1
        delta = length - target
        if delta == 0:
            continue
        guarded = [v for v in path[1:-1] if v in protected]
        if len(guarded) > 1:
            raise InputError("at most one protected vertex per path")
        if not guarded:
            # collapse the even positions 2, 4, ... just past terminal 0
            apply(path, {path[2 * i] for i in range(1, delta // 2 + 1)})
            continue

        pos = path.index(guarded[0])
        right = length - pos
        # each contraction removes an even amount per side, so keep at least
        # one unit on the far side and push the remainder to the near side
        right_remove = min(delta, right - 1)
        right_remove -= right_remove % 2
        left_remove = delta - right_remove
        if pos - left_remove < 1:
            raise InputError(
                "cannot shrink further without touching a protected vertex"
            )
        if right_remove:
            apply(path, {path[pos + 2 * i] for i in range(1, right_remove // 2 + 1)})
            path = _decompose_paths(g)[index]
            pos = path.index(next(iter(v for v in path if v in protected)))
        if left_remove:
            apply(path, {path[2 * i - 1] for i in range(1, left_remove // 2 + 1)})

    num_paths = len(_decompose_paths(g))
    return g, steps, num_paths, target // 2


@dataclass(frozen=True)
class PipelineResult:
    measure: CutMeasure
    report: DistortionReport
    trace: ReductionTrace
    scale: int
    k: int
    ell: int
    theta: ThetaGraph


def embed_weighted_instance(
    instance: WeightedInstance,
    epsilon: Fraction = Fraction(0),
    max_k: int = DEFAULT_MAX_K,
) -> PipelineResult:
    """Full reduction pipeline, ending in a measured distortion report.

    The returned measure lives on the original n+2 vertices (weights divided
    by the integer scale so distances compare directly with the input
    metric).  The report states the distortion this measure actually achieves
    against the instance's shortest-path metric; no theoretical bound is
    assumed on the way.
    """
    n = instance.n
    if (n + 1) // 2 > max_k:
        raise GuardExceededError(
            f"n={n} needs {(n + 1) // 2} path pairs, beyond the guard {max_k}"
        )
    graph, trace = scale_and_subdivide(instance, epsilon)
    scale = trace.steps[0].params["scale"]
    b_labels = [trace.steps[1].vertex_map[b] for b in range(2, n + 2)]

    if n % 2 == 1:
        lengths = trace.steps[1].params["path_lengths"]
        positions = trace.steps[1].params["b_positions"]
        copy_idx = min(range(n), key=lambda i: (lengths[i], i))
        length = lengths[copy_idx]
        first = graph.vertex_count
        edges = list(graph.edges)
        prev = 0
        for pos in range(1, length):
            edges.append((prev, first + pos - 1, Fraction(1)))
            prev = first + pos - 1
        edges.append((prev, 1, Fraction(1)))
        padded = WeightedGraph(vertex_count=first + length - 1, edges=tuple(edges))
        trace.append(
            TraceStep(
                kind="pad",
                params={
                    "copied_path": copy_idx + 1,
                    "length": length,
                    "b_position": positions[copy_idx],
                },
                vertex_map={v: v for v in range(graph.vertex_count)},
            ),
            new_size=padded.vertex_count,
        )
        graph = padded

    equalized, shrink_steps, num_paths, ell = equalize_paths(
        graph, protected=set(b_labels)
    )
    for step in shrink_steps:
        trace.append(step, new_size=len(set(step.vertex_map.values())))
    if num_paths % 2:
        raise InputError("pipeline produced an odd number of paths")
    k = num_paths // 2
    theta = build_theta(k, ell)
    if not _same_graph(theta.underlying, equalized):
        raise InputError("equalized graph does not match the canonical theta labeling")

    measure_theta = combine_d1(k, ell, max_k=max_k)
    placement = trace.compose()
    original = list(range(n + 2))
    pulled_atoms = []
    inv_weight = Fraction(1, scale)
    for cut, w in measure_theta.atoms:
        members = frozenset(v for v in original if placement[v] in cut.members)
        pulled_atoms.append((Cut(members, n + 2), w * inv_weight))
    measure = CutMeasure(n + 2, tuple(pulled_atoms)).normalized(drop_trivial=True)
    trace.append(
        TraceStep(
            kind="restrict",
            params={"points": original},
            vertex_map={placement[v]: v for v in original},
        ),
        new_size=n + 2,
    )

    report = distortion_report(instance.metric(), measure)
    return PipelineResult(
        measure=measure,
        report=report,
        trace=trace,
        scale=scale,
        k=k,
        ell=ell,
        theta=theta,
    )
