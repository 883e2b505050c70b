"""Independent ground truth: exact minimum l1 distortion of a small metric.

The minimum distortion equals the optimum of a linear program over the cut
cone: find nonnegative cut weights whose pseudometric d' dominates d pairwise
while staying below D * d, minimizing D (the non-contracting normalization).
Cuts are canonicalized to contain point 0, which halves the generator count
without losing any cut pseudometric.

Everything is solved in exact rational arithmetic; the returned witness is
re-verified against its defining inequalities after the solve.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cuts import Cut, CutMeasure, cut_pseudometric
from .errors import GuardExceededError, InputError
from .metrics import FiniteMetric
from .rationals import format_rational
from .simplex import EQ, GE, LE, LPSolution, solve_lp

DEFAULT_GUARD_POINTS = 12


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "guard_exceeded"
    optimum_D: Fraction | None
    witness: CutMeasure | None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "optimum_D": None if self.optimum_D is None else format_rational(self.optimum_D),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


def enumerate_nontrivial_cuts(m: int, guard: int = DEFAULT_GUARD_POINTS) -> list[Cut]:
    """All 2^(m-1) - 1 cuts containing point 0, excluding the full set."""
    if m < 2:
        raise InputError("cut enumeration requires at least 2 points")
    if m > guard:
        raise GuardExceededError(
            f"{m} points exceeds the oracle guard of {guard} "
            f"(would need {2 ** (m - 1) - 1} cuts)"
        )
    cuts = []
    for mask in range(2 ** (m - 1) - 1):
        members = {0}
        members.update(v for v in range(1, m) if mask & (1 << (v - 1)))
        cuts.append(Cut(frozenset(members), m))
    return cuts


def _validated(metric: FiniteMetric, guard_points: int) -> None:
    if metric.point_count > guard_points:
        raise GuardExceededError(
            f"{metric.point_count} points exceeds the oracle guard of {guard_points}"
        )
    metric.validate()


def exact_c1(metric: FiniteMetric, guard_points: int = DEFAULT_GUARD_POINTS) -> LPResult:
    """Exact minimum distortion of any l1 embedding of `metric`.

    Solves min D subject to, for every pair, d <= sum of cut weights
    separating it <= D * d.  The witness measure satisfies the sandwich
    exactly (checked post-solve) and D is simplex-optimal.
    """
    _validated(metric, guard_points)
    n = metric.point_count
    if n == 2:
        # Single pair: the one nontrivial cut realizes the metric exactly.
        witness = CutMeasure(2, ((Cut(frozenset({0}), 2), metric.d(0, 1)),))
        return LPResult(status="optimal", optimum_D=Fraction(1), witness=witness)
    cuts = enumerate_nontrivial_cuts(n, guard_points)
    ncuts = len(cuts)

    rows = []
    senses = []
    rhs = []
    for x, y in metric.pairs():
        rho = [Fraction(1 if c.separates(x, y) else 0) for c in cuts]
        d = metric.d(x, y)
        rows.append(rho + [Fraction(0)])
        senses.append(GE)
        rhs.append(d)
        rows.append(rho + [-d])
        senses.append(LE)
        rhs.append(Fraction(0))

    c = [Fraction(0)] * ncuts + [Fraction(1)]
    solution = solve_lp(c, rows, senses, rhs)
    if solution.status != "optimal":
        return LPResult(status="infeasible", optimum_D=None, witness=None)

    weights = solution.x[:ncuts]
    optimum = solution.x[ncuts]
    witness = CutMeasure(
        n, tuple((cut, w) for cut, w in zip(cuts, weights) if w != 0)
    )
    for x, y in metric.pairs():
        realized = cut_pseudometric(witness, x, y)
        d = metric.d(x, y)
        if not d <= realized <= optimum * d:
            raise InputError(
                f"witness verification failed on pair ({x},{y}): "
                f"{format_rational(d)} <= {format_rational(realized)} "
                f"<= {format_rational(optimum * d)} is false"
            )
    return LPResult(status="optimal", optimum_D=optimum, witness=witness)


def is_l1_isometric(
    metric: FiniteMetric, guard_points: int = DEFAULT_GUARD_POINTS
) -> tuple[bool, CutMeasure | None]:
    """Whether `metric` lies in the cut cone, with an exact witness when it does."""
    _validated(metric, guard_points)
    n = metric.point_count
    if n == 2:
        return True, CutMeasure(2, ((Cut(frozenset({0}), 2), metric.d(0, 1)),))
    cuts = enumerate_nontrivial_cuts(n, guard_points)
    rows = []
    rhs = []
    for x, y in metric.pairs():
        rows.append([Fraction(1 if c.separates(x, y) else 0) for c in cuts])
        rhs.append(metric.d(x, y))
    c = [Fraction(0)] * len(cuts)
    solution = solve_lp(c, rows, [EQ] * len(rows), rhs)
    if solution.status != "optimal":
        return False, None
    witness = CutMeasure(
        n, tuple((cut, w) for cut, w in zip(cuts, solution.x) if w != 0)
    )
    for x, y in metric.pairs():
        if cut_pseudometric(witness, x, y) != metric.d(x, y):
            raise InputError(f"isometry witness failed on pair ({x},{y})")
    return True, witness
