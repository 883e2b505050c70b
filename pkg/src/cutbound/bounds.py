"""Hypermetric inequalities and the distortion lower bounds they imply.

For integer coefficients b with sum 1, every metric that embeds isometrically
in l1 satisfies

    sum over ordered pairs (x, y) of b_x * b_y * d(x, y) <= 0.

This module evaluates the left side as twice the unordered-pair sum, turns a
violating vector into an exact distortion lower bound (positive-pair mass
over negative-pair mass, under the non-contracting normalization), and builds
the specific certificate that is tight for unit two-terminal bipartite
graphs with an odd far side.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm
from typing import Sequence

from .errors import GuardExceededError, InputError
from .graphs import build_k2n
from .metrics import FiniteMetric, shortest_path_metric
from .rationals import format_rational

SEARCH_GUARD = 10**7


def _check_vector(m: FiniteMetric, b: Sequence[int]) -> None:
    if len(b) != m.point_count:
        raise InputError(
            f"coefficient vector has length {len(b)}, metric has {m.point_count} points"
        )
    if any(not isinstance(v, int) for v in b):
        raise InputError("coefficient vector must be all integers")
    if sum(b) != 1:
        raise InputError(f"coefficient vector must sum to 1, got {sum(b)}")


def hypermetric_value(m: FiniteMetric, b: Sequence[int]) -> Fraction:
    """Twice the unordered-pair sum of b_x * b_y * d(x, y).

    Nonpositive whenever m embeds isometrically in l1; a positive value
    certifies that no isometric embedding exists.
    """
    _check_vector(m, b)
    total = Fraction(0)
    for x, y in m.pairs():
        total += 2 * b[x] * b[y] * m.d(x, y)
    return total


@dataclass(frozen=True)
class HypermetricCertificate:
    """A violating coefficient vector and the exact bound it implies.

    positive_mass is the unordered sum of b_x*b_y*d(x,y) over pairs with
    positive product, negative_mass the absolute sum over pairs with negative
    product.  Any non-contracting l1 embedding must expand some pair by at
    least positive_mass / negative_mass.
    """

    b: tuple[int, ...]
    positive_mass: Fraction
    negative_mass: Fraction

    @property
    def bound(self) -> Fraction:
        return max(Fraction(1), self.positive_mass / self.negative_mass)

    def to_json(self) -> dict:
        return {
            "b": list(self.b),
            "positive_mass": format_rational(self.positive_mass),
            "negative_mass": format_rational(self.negative_mass),
            "bound": format_rational(self.bound),
        }


def distortion_lower_bound(m: FiniteMetric, b: Sequence[int]) -> HypermetricCertificate:
    """Certificate that every l1 embedding of m has distortion >= bound.

    Soundness: for a non-contracting embedding f with expansion D, the
    hypermetric inequality on the embedded points gives
    positive_mass <= sum over positive pairs of b_x b_y ||f(x)-f(y)||
    <= sum over negative pairs |b_x b_y| ||f(x)-f(y)|| <= D * negative_mass.
    """
    _check_vector(m, b)
    positive = Fraction(0)
    negative = Fraction(0)
    for x, y in m.pairs():
        prod = b[x] * b[y]
        if prod > 0:
            positive += prod * m.d(x, y)
        elif prod < 0:
            negative += -prod * m.d(x, y)
    if negative == 0:
        raise InputError(
            "coefficient vector has no negative-product pairs; no distortion leverage"
        )
    return HypermetricCertificate(
        b=tuple(int(v) for v in b),
        positive_mass=positive,
        negative_mass=negative,
    )


def k2n_certificate(k: int) -> HypermetricCertificate:
    """The tight certificate on unit K_{2,2k+1}: b = -k on terminals, 1 elsewhere.

    positive_mass = 2k^2 + 2k(2k+1) and negative_mass = 2k(2k+1), so the
    bound is (3k+1)/(2k+1) exactly.
    """
    if k < 1:
        raise InputError("k2n_certificate requires k >= 1")
    n = 2 * k + 1
    metric = shortest_path_metric(build_k2n(n))
    b = (-k, -k) + (1,) * n
    return distortion_lower_bound(metric, b)


def search_b_vectors(
    m: FiniteMetric, max_abs: int, guard: int = SEARCH_GUARD
) -> HypermetricCertificate:
    """Exhaustive search for the strongest certificate with small coefficients.

    Scans integer vectors with entries in [-max_abs, max_abs] summing to 1 in
    lexicographic order; the first vector attaining the maximal bound wins.
    Refuses search spaces larger than `guard` candidates.
    """
    if max_abs < 1:
        raise InputError("search_b_vectors requires max_abs >= 1")
    points = m.point_count
    space = (2 * max_abs + 1) ** points
    if space > guard:
        raise GuardExceededError(
            f"search space {space} exceeds guard {guard} "
            f"({points} points, entries in [-{max_abs}, {max_abs}])"
        )

    # Integer fast path: clear denominators once so the scan is pure int math.
    denom = lcm(*(m.d(x, y).denominator for x, y in m.pairs())) if points > 1 else 1
    pair_list = list(m.pairs())
    scaled = [int(m.d(x, y) * denom) for x, y in pair_list]

    best: tuple[Fraction, tuple[int, ...]] | None = None
    for b in product(range(-max_abs, max_abs + 1), repeat=points):
        if sum(b) != 1:
            continue
        pos = 0
        neg = 0
        for (x, y), dxy in zip(pair_list, scaled):
            prod = b[x] * b[y]
            if prod > 0:
                pos += prod * dxy
            elif prod < 0:
                neg -= prod * dxy
        if neg == 0:
            continue
        bound = max(Fraction(1), Fraction(pos, neg))
        if best is None or bound > best[0]:
            best = (bound, b)
    if best is None:
        raise InputError("no coefficient vector with negative-product pairs exists")
    return distortion_lower_bound(m, best[1])
