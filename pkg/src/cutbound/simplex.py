"""Two-phase primal simplex over exact rationals.

Small, dense, and deterministic: Bland's smallest-index rule for both the
entering and the leaving variable guarantees termination without any
perturbation or tolerance, which is the point of running the solver on
Fractions.  Built for the desk-scale cut-cone programs in this package, not
for large LPs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError

LE, GE, EQ = "<=", ">=", "=="


@dataclass(frozen=True)
class LPSolution:
    status: str  # "optimal" | "infeasible" | "unbounded"
    objective: Fraction | None
    x: tuple[Fraction, ...] | None


def solve_lp(
    c: Sequence[Fraction],
    rows: Sequence[Sequence[Fraction]],
    senses: Sequence[str],
    rhs: Sequence[Fraction],
) -> LPSolution:
    """Minimize c . x subject to rows[i] . x  <sense_i>  rhs[i], x >= 0."""
    n = len(c)
    m = len(rows)
    if not (len(senses) == len(rhs) == m):
        raise InputError("inconsistent LP dimensions")
    for row in rows:
        if len(row) != n:
            raise InputError("inconsistent LP row length")
    if m == 0:
        raise InputError("LP needs at least one constraint")

    # Normalize to nonnegative right-hand sides.
    norm_rows: list[list[Fraction]] = []
    norm_senses: list[str] = []
    norm_rhs: list[Fraction] = []
    for row, sense, b in zip(rows, senses, rhs):
        row = [Fraction(v) for v in row]
        b = Fraction(b)
        if sense not in (LE, GE, EQ):
            raise InputError(f"unknown constraint sense {sense!r}")
        if b < 0:
            row = [-v for v in row]
            b = -b
            sense = {LE: GE, GE: LE, EQ: EQ}[sense]
        norm_rows.append(row)
        norm_senses.append(sense)
        norm_rhs.append(b)

    # Column layout: structural | slack/surplus | artificial | rhs.
    slack_cols = sum(1 for s in norm_senses if s in (LE, GE))
    art_rows = [i for i, s in enumerate(norm_senses) if s != LE]
    ncols = n + slack_cols + len(art_rows)

    tableau = [[Fraction(0)] * (ncols + 1) for _ in range(m)]
    basis = [-1] * m
    slack_at = n
    art_at = n + slack_cols
    artificial_cols = []
    for i in range(m):
        tableau[i][:n] = norm_rows[i]
        tableau[i][-1] = norm_rhs[i]
        s = norm_senses[i]
        if s == LE:
            tableau[i][slack_at] = Fraction(1)
            basis[i] = slack_at
            slack_at += 1
        elif s == GE:
            tableau[i][slack_at] = Fraction(-1)
            slack_at += 1
        if s != LE:
            tableau[i][art_at] = Fraction(1)
            basis[i] = art_at
            artificial_cols.append(art_at)
            art_at += 1

    def pivot(row_idx: int, col_idx: int, cost: list[Fraction]) -> None:
        piv = tableau[row_idx][col_idx]
        tableau[row_idx] = [v / piv for v in tableau[row_idx]]
        prow = tableau[row_idx]
        for r in range(m):
            if r != row_idx and tableau[r][col_idx] != 0:
                f = tableau[r][col_idx]
                tableau[r] = [v - f * p for v, p in zip(tableau[r], prow)]
        if cost[col_idx] != 0:
            f = cost[col_idx]
            for j in range(ncols + 1):
                cost[j] -= f * prow[j]
        basis[row_idx] = col_idx

    def run(cost: list[Fraction], allowed: int) -> str:
        """Pivot until optimal or unbounded; columns >= `allowed` are frozen."""
        while True:
            enter = -1
            for j in range(allowed):
                if cost[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            leave = -1
            best = None
            for i in range(m):
                coeff = tableau[i][enter]
                if coeff > 0:
                    ratio = tableau[i][-1] / coeff
                    if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[leave]
                    ):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded"
            pivot(leave, enter, cost)

    # Phase 1: minimize the sum of artificials.
    if artificial_cols:
        cost1 = [Fraction(0)] * (ncols + 1)
        for col in artificial_cols:
            cost1[col] = Fraction(1)
        for i in range(m):
            if basis[i] in artificial_cols:
                for j in range(ncols + 1):
                    cost1[j] -= tableau[i][j]
        status = run(cost1, ncols)
        if status != "optimal" or -cost1[-1] != 0:
            return LPSolution(status="infeasible", objective=None, x=None)
        # Drive surviving artificials out of the basis; drop redundant rows.
        art_set = set(artificial_cols)
        drop = []
        for i in range(m):
            if basis[i] in art_set:
                enter = next(
                    (j for j in range(n + slack_cols) if tableau[i][j] != 0), -1
                )
                if enter < 0:
                    drop.append(i)
                else:
                    pivot(i, enter, cost1)
        for i in reversed(drop):
            del tableau[i]
            del basis[i]
        m = len(tableau)

    structural = n + slack_cols
    cost2 = [Fraction(0)] * (ncols + 1)
    cost2[:n] = [Fraction(v) for v in c]
    for i in range(m):
        if basis[i] < n and cost2[basis[i]] != 0:
            f = cost2[basis[i]]
            for j in range(ncols + 1):
                cost2[j] -= f * tableau[i][j]
    status = run(cost2, structural)
    if status == "unbounded":
        return LPSolution(status="unbounded", objective=None, x=None)

    x = [Fraction(0)] * n
    for i in range(m):
        if basis[i] < n:
            x[basis[i]] = tableau[i][-1]
    objective = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    return LPSolution(status="optimal", objective=objective, x=tuple(x))
