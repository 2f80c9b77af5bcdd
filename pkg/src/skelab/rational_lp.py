"""Exact linear programming over the rationals.

A small dense two-phase simplex on `fractions.Fraction` data. Pivots use
Bland's smallest-index rule, so the solver cannot cycle; with exact
arithmetic every returned optimum re-substitutes with zero residual.
Problems here are tiny (a few hundred variables at most), so termination
and exactness matter far more than speed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .hypercube import Vertex

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"

_SENSES = ("=", "<=")


@dataclass
class LpProblem:
    """maximize objective . x  subject to  rows x (sense) rhs,  x >= 0."""

    objective: list[Fraction]
    rows: list[list[Fraction]]
    rhs: list[Fraction]
    senses: list[str]

    def __post_init__(self) -> None:
        self.objective = [Fraction(c) for c in self.objective]
        self.rows = [[Fraction(a) for a in row] for row in self.rows]
        self.rhs = [Fraction(b) for b in self.rhs]
        self.senses = list(self.senses)
        ncols = len(self.objective)
        if not (len(self.rows) == len(self.rhs) == len(self.senses)):
            raise ValueError("row, rhs and sense counts disagree")
        for row in self.rows:
            if len(row) != ncols:
                raise ValueError("constraint width does not match objective")
        for s in self.senses:
            if s not in _SENSES:
                raise ValueError(f"unknown sense {s!r}")


@dataclass
class LpOutcome:
    status: str
    value: Fraction | None = None
    solution: list[Fraction] | None = None


@dataclass
class _Tableau:
    rows: list[list[Fraction]]  # m x (ncols + 1), last column is rhs
    basis: list[int]
    ncols: int

    def pivot(self, r: int, c: int) -> None:
        piv = self.rows[r][c]
        inv = 1 / piv
        self.rows[r] = [a * inv for a in self.rows[r]]
        prow = self.rows[r]
        for i, row in enumerate(self.rows):
            if i != r and row[c] != 0:
                f = row[c]
                self.rows[i] = [a - f * b for a, b in zip(row, prow)]
        self.basis[r] = c


def _bland(tab: _Tableau, cost: list[Fraction], enterable: list[bool]) -> str:
    """Maximize cost over the tableau with Bland's rule. Returns a status."""
    m = len(tab.rows)
    while True:
        cb = [cost[b] for b in tab.basis]
        enter = -1
        for j in range(tab.ncols):
            if not enterable[j]:
                continue
            red = cost[j] - sum(cb[i] * tab.rows[i][j] for i in range(m))
            if red > 0:
                enter = j
                break
        if enter < 0:
            return OPTIMAL
        leave = -1
        best_ratio: Fraction | None = None
        for i in range(m):
            a = tab.rows[i][enter]
            if a > 0:
                ratio = tab.rows[i][-1] / a
                if (
                    best_ratio is None
                    or ratio < best_ratio
                    or (ratio == best_ratio and tab.basis[i] < tab.basis[leave])
                ):
                    best_ratio = ratio
                    leave = i
        if leave < 0:
            return UNBOUNDED
        tab.pivot(leave, enter)


def simplex_solve(problem: LpProblem) -> LpOutcome:
    """Exact optimum of a maximization LP, or infeasible/unbounded."""
    nstruct = len(problem.objective)
    senses = list(problem.senses)
    rows = [list(r) for r in problem.rows]
    rhs = list(problem.rhs)
    m = len(rows)

    # Normalize to nonnegative right-hand sides.
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]
            if senses[i] == "<=":
                senses[i] = ">="

    slack_of: dict[int, int] = {}
    art_rows = []
    ncols = nstruct
    for i, s in enumerate(senses):
        if s == "<=":
            slack_of[i] = ncols
            ncols += 1
        elif s == ">=":
            slack_of[i] = ncols  # surplus, coefficient -1
            ncols += 1
            art_rows.append(i)
        else:
            art_rows.append(i)
    art_of = {}
    for i in art_rows:
        art_of[i] = ncols
        ncols += 1

    zero = Fraction(0)
    tab_rows = []
    basis = []
    for i in range(m):
        row = [zero] * (ncols + 1)
        for j, a in enumerate(rows[i]):
            row[j] = a
        if senses[i] == "<=":
            row[slack_of[i]] = Fraction(1)
            basis.append(slack_of[i])
        elif senses[i] == ">=":
            row[slack_of[i]] = Fraction(-1)
            row[art_of[i]] = Fraction(1)
            basis.append(art_of[i])
        else:
            row[art_of[i]] = Fraction(1)
            basis.append(art_of[i])
        row[-1] = rhs[i]
        tab_rows.append(row)
    tab = _Tableau(tab_rows, basis, ncols)
    art_cols = set(art_of.values())

    if art_cols:
        cost1 = [zero] * ncols
        for c in art_cols:
            cost1[c] = Fraction(-1)
        enterable = [True] * ncols
        _bland(tab, cost1, enterable)  # bounded: objective is <= 0
        phase1 = sum(cost1[b] * tab.rows[i][-1] for i, b in enumerate(tab.basis))
        if phase1 != 0:
            return LpOutcome(INFEASIBLE)
        # Remove artificials from the basis; drop rows that turn out redundant.
        drop = []
        for i in range(len(tab.rows)):
            if tab.basis[i] in art_cols:
                piv_col = next(
                    (
                        j
                        for j in range(tab.ncols)
                        if j not in art_cols and tab.rows[i][j] != 0
                    ),
                    -1,
                )
                if piv_col >= 0:
                    tab.pivot(i, piv_col)
                else:
                    drop.append(i)
        for i in reversed(drop):
            del tab.rows[i]
            del tab.basis[i]

    cost2 = [zero] * ncols
    for j, c in enumerate(problem.objective):
        cost2[j] = c
    enterable = [j not in art_cols for j in range(ncols)]
    status = _bland(tab, cost2, enterable)
    if status == UNBOUNDED:
        return LpOutcome(UNBOUNDED)

    solution = [zero] * nstruct
    for i, b in enumerate(tab.basis):
        if b < nstruct:
            solution[b] = tab.rows[i][-1]
    value = sum(c * x for c, x in zip(problem.objective, solution))
    return LpOutcome(OPTIMAL, Fraction(value), solution)


def convex_membership(point: list[Fraction], generators: list[Vertex]) -> bool:
    """Is `point` a convex combination of the 0/1 generators?

    Decided exactly as feasibility of { sum l_w w = point, sum l_w = 1,
    l >= 0 } over the rationals.
    """
    if not generators:
        raise ValueError("no generators")
    n = generators[0].n
    for g in generators[1:]:
        if g.n != n:
            raise ValueError(f"dimension mismatch: {g.n} != {n}")
    if len(point) != n:
        raise ValueError(f"point has {len(point)} coordinates, generators {n}")
    k = len(generators)
    rows = [
        [Fraction((g.bits >> i) & 1) for g in generators] for i in range(n)
    ]
    rows.append([Fraction(1)] * k)
    rhs = [Fraction(c) for c in point] + [Fraction(1)]
    problem = LpProblem(
        objective=[Fraction(0)] * k,
        rows=rows,
        rhs=rhs,
        senses=["="] * (n + 1),
    )
    return simplex_solve(problem).status == OPTIMAL
