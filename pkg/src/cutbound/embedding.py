"""The low-distortion cut embedding of theta graphs.

Two cut families are enumerated as exact finite distributions (no sampling
anywhere):

* family I: for each one-based path i and depth j in [1, ell], the central
  interior segment of path i at offsets j .. 2*ell-j, with probability
  1/(2k*ell).  These cuts contain neither terminal.
* family II: for each k-subset I of the 2k paths and each b in [1, ell], the
  set containing terminal 0 plus, on every path, a prefix from the 0 side:
  offsets 1 .. 2*ell-b on paths in I, offsets 1 .. b-1 elsewhere.  Terminal 1
  is never included, so every such cut separates the terminals.

The combined measure weights family I by 2*ell*k*(k-1)/(2k-1) and family II
by 2*ell (equivalently (k-1)/(2k-1) resp. 2/C(2k,k) per atom).  Its
pseudometric never contracts the graph metric and expands it by at most
(3k-2)/(2k-1), with both extremes attained, which is what the distortion
report certifies pair by pair.

`closed_form_d1` evaluates the same quantity through piecewise formulas in
the path offsets, after canonicalizing the pair by the two symmetries of the
construction (swapping the terminals reflects every offset j to 2*ell-j;
path indices may be permuted freely).  The enumeration is the ground truth;
the closed form is validated against it exhaustively in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

from .cuts import Cut, CutMeasure, cut_pseudometric, l1_distance
from .errors import GuardExceededError, InfiniteDistortionError, InputError
from .metrics import FiniteMetric
from .rationals import format_rational

DEFAULT_MAX_K = 6


def _require_params(k: int, ell: int) -> None:
    if k < 1 or ell < 1:
        raise InputError("cut enumeration requires k >= 1 and ell >= 1")


def _theta_universe(k: int, ell: int) -> int:
    return 2 + 2 * k * (2 * ell - 1)


def enumerate_cuts_I(k: int, ell: int) -> CutMeasure:
    """Distribution of the central-segment cuts, 2k*ell equiprobable atoms."""
    _require_params(k, ell)
    size = _theta_universe(k, ell)
    weight = Fraction(1, 2 * k * ell)
    span = 2 * ell - 1
    atoms = []
    for i in range(1, 2 * k + 1):
        base = span * (i - 1)
        for j in range(1, ell + 1):
            members = frozenset(base + t + 1 for t in range(j, 2 * ell - j + 1))
            atoms.append((Cut(members, size), weight))
    return CutMeasure(size, tuple(atoms))


def enumerate_cuts_II(k: int, ell: int, max_k: int = DEFAULT_MAX_K) -> CutMeasure:
    """Distribution of the terminal-separating prefix cuts.

    C(2k,k)*ell equiprobable atoms; refuses k beyond `max_k` rather than
    degrading to sampling (exactness is the module contract).
    """
    _require_params(k, ell)
    if k > max_k:
        raise GuardExceededError(
            f"k={k} exceeds the subset-enumeration guard {max_k} "
            f"(C({2 * k},{k}) = {comb(2 * k, k)} subsets)"
        )
    size = _theta_universe(k, ell)
    weight = Fraction(1, comb(2 * k, k) * ell)
    span = 2 * ell - 1
    atoms = []
    for chosen in combinations(range(1, 2 * k + 1), k):
        chosen_set = set(chosen)
        for b in range(1, ell + 1):
            members = {0}
            for i in range(1, 2 * k + 1):
                base = span * (i - 1)
                prefix_len = (2 * ell - b) if i in chosen_set else (b - 1)
                members.update(base + t + 1 for t in range(1, prefix_len + 1))
            atoms.append((Cut(frozenset(members), size), weight))
    return CutMeasure(size, tuple(atoms))


def combine_d1(k: int, ell: int, max_k: int = DEFAULT_MAX_K) -> CutMeasure:
    """The combined embedding measure for theta(k, ell).

    Family I scaled by 2*ell*k*(k-1)/(2k-1), family II scaled by 2*ell.  At
    k = 1 the first coefficient vanishes and the measure is family II alone
    (up to weight-zero atoms, which are kept so atom counts stay predictable).
    """
    coef_one = Fraction(2 * ell * k * (k - 1), 2 * k - 1)
    part_one = enumerate_cuts_I(k, ell).scaled(coef_one)
    part_two = enumerate_cuts_II(k, ell, max_k=max_k).scaled(Fraction(2 * ell))
    return CutMeasure(part_one.universe_size, part_one.atoms + part_two.atoms)


def _classify(k: int, ell: int, v: int) -> tuple[int, int] | None:
    """(path, offset) for internal vertices, None for a terminal."""
    if v in (0, 1):
        return None
    span = 2 * ell - 1
    return (v - 2) // span + 1, (v - 2) % span + 1


def closed_form_d1(k: int, ell: int, x: int, y: int) -> Fraction:
    """Piecewise evaluation of the combined measure's distance on theta(k, ell).

    Equal to cut_pseudometric(combine_d1(k, ell), x, y) on every pair; the
    equality is what the acceptance suite checks exhaustively.
    """
    _require_params(k, ell)
    n = _theta_universe(k, ell)
    for v in (x, y):
        if not 0 <= v < n:
            raise InputError(f"vertex {v} out of range for theta({k},{ell})")
    if x == y:
        raise InputError("closed_form_d1 requires two distinct vertices")

    two_ell = 2 * ell
    stretch = Fraction(3 * k - 2, 2 * k - 1)
    half_gap = Fraction(k - 1, 2 * k - 1)

    cx = _classify(k, ell, x)
    cy = _classify(k, ell, y)

    if cx is None and cy is None:
        # the two terminals
        return Fraction(two_ell)

    if cx is None or cy is None:
        terminal = x if cx is None else y
        _, q = cy if cx is None else cx
        if terminal == 1:
            q = two_ell - q  # reflect so the terminal becomes 0
        if q <= ell:
            return stretch * q
        return Fraction(q) + half_gap * (two_ell - q)

    (px, ox), (py, oy) = cx, cy
    if px == py:
        p, q = sorted((ox, oy))
        if q <= ell:
            return stretch * (q - p)
        if p >= ell + 1:
            p, q = two_ell - q, two_ell - p  # reflect into the first half
            return stretch * (q - p)
        return Fraction(q - p) + half_gap * abs(p + q - two_ell)

    p, q = ox, oy
    if p <= ell and q <= ell:
        return Fraction(p + q) + half_gap * abs(q - p)
    if p > ell and q > ell:
        p, q = two_ell - p, two_ell - q
        return Fraction(p + q) + half_gap * abs(q - p)
    if p > q:
        p, q = q, p  # paths are interchangeable; put the 0-side offset first
    return Fraction(two_ell) - Fraction(k, 2 * k - 1) * abs(two_ell - p - q)


@dataclass(frozen=True)
class DistortionReport:
    """Exact extremes of embedded/base distance ratios over all pairs."""

    min_ratio: Fraction
    max_ratio: Fraction
    argmin_pair: tuple[int, int]
    argmax_pair: tuple[int, int]

    @property
    def distortion(self) -> Fraction:
        return self.max_ratio / self.min_ratio

    def to_json(self) -> dict:
        return {
            "min_ratio": format_rational(self.min_ratio),
            "max_ratio": format_rational(self.max_ratio),
            "distortion": format_rational(self.distortion),
            "argmin_pair": list(self.argmin_pair),
            "argmax_pair": list(self.argmax_pair),
        }


def distortion_report(
    base: FiniteMetric,
    embedded: CutMeasure | list[list[Fraction]],
) -> DistortionReport:
    """Compare an embedded (pseudo)metric against `base` pair by pair.

    `embedded` is either a cut measure or materialized coordinate vectors;
    both give identical distances.  A zero embedded distance on a distinct
    pair has no finite ratio and raises InfiniteDistortionError.
    """
    n = base.point_count
    if isinstance(embedded, CutMeasure):
        if embedded.universe_size != n:
            raise InputError(
                f"measure universe {embedded.universe_size} does not match "
                f"metric on {n} points"
            )
        embedded_dist = lambda x, y: cut_pseudometric(embedded, x, y)
    else:
        if len(embedded) != n:
            raise InputError(
                f"{len(embedded)} coordinate vectors for a metric on {n} points"
            )
        embedded_dist = lambda x, y: l1_distance(embedded[x], embedded[y])

    min_ratio = max_ratio = None
    argmin = argmax = (0, 1)
    for x, y in base.pairs():
        d = base.d(x, y)
        if d <= 0:
            raise InputError(f"base metric has nonpositive distance on ({x},{y})")
        e = embedded_dist(x, y)
        if e == 0:
            raise InfiniteDistortionError(x, y)
        ratio = e / d
        if min_ratio is None or ratio < min_ratio:
            min_ratio, argmin = ratio, (x, y)
        if max_ratio is None or ratio > max_ratio:
            max_ratio, argmax = ratio, (x, y)
    if min_ratio is None:
        raise InputError("distortion needs at least two points")
    return DistortionReport(
        min_ratio=min_ratio,
        max_ratio=max_ratio,
        argmin_pair=argmin,
        argmax_pair=argmax,
    )


def theta_distortion_target(k: int) -> Fraction:
    """The exact distortion the combined measure attains on theta(k, ell)."""
    return Fraction(3 * k - 2, 2 * k - 1)
