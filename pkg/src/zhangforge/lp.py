"""Exact rational simplex solver (two phases, Bland's rule).

Solves   maximize c.x  subject to  A x <= b,  x free in R^n,
entirely over ``fractions.Fraction``.  Bland's rule guarantees termination;
with exact arithmetic there is no tolerance tuning.  Problems here are tiny
(a few dozen constraints, <= 10 variables), so a dense tableau is fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import Infeasible, Unbounded
from .linalg import frac

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass
class LPResult:
    x: tuple[Fraction, ...]
    value: Fraction


def _pivot(T: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = T[row][col]
    inv = 1 / piv
    T[row] = [a * inv for a in T[row]]
    prow = T[row]
    for i in range(len(T)):
        if i != row:
            f = T[i][col]
            if f != 0:
                T[i] = [a - f * p for a, p in zip(T[i], prow)]
    basis[row] = col


def _simplex(T: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> Fraction:
    """Run Bland-rule simplex on tableau T (rows: constraints, rhs last).

    ``cost`` is the objective coefficient vector (maximization) over all
    columns.  Returns the optimal objective value; raises Unbounded.
    """
    ncols = len(T[0]) - 1
    while True:
        # reduced costs: cbar_j = cost_j - cost_B . column_j
        cb = [cost[b] for b in basis]
        enter = -1
        for j in range(ncols):
            if j in basis:
                continue
            red = cost[j]
            for i in range(len(T)):
                if cb[i] != 0 and T[i][j] != 0:
                    red -= cb[i] * T[i][j]
            if red > 0:
                enter = j
                break
        if enter < 0:
            val = _ZERO
            for i, b in enumerate(basis):
                if cost[b] != 0:
                    val += cost[b] * T[i][-1]
            return val
        leave = -1
        best: Fraction | None = None
        for i in range(len(T)):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise Unbounded("LP objective unbounded above")
        _pivot(T, basis, leave, enter)


def lp_solve(c, A, b) -> LPResult:
    """maximize c.x s.t. A x <= b (x free). Raises Infeasible / Unbounded."""
    m = len(A)
    n = len(c)
    c = [frac(v) for v in c]
    rows = [[frac(v) for v in r] for r in A]
    rhs = [frac(v) for v in b]

    # columns: x+ (n) | x- (n) | slack (m) | artificial (added as needed)
    nx = 2 * n
    total = nx + m
    T: list[list[Fraction]] = []
    basis: list[int] = []
    art_cols: list[int] = []
    for i in range(m):
        neg = rhs[i] < 0
        row = [_ZERO] * total
        for j in range(n):
            a = rows[i][j]
            if neg:
                a = -a
            row[j] = a
            row[n + j] = -a
        row[nx + i] = -_ONE if neg else _ONE
        r = -rhs[i] if neg else rhs[i]
        if neg:
            art_cols.append(len(row))  # placeholder; column added below
        T.append(row + [r])
        basis.append(nx + i)

    if art_cols:
        # append artificial columns and make them basic in their rows
        k = 0
        for i in range(m):
            if rhs[i] < 0:
                for ii in range(m):
                    T[ii].insert(-1, _ONE if ii == i else _ZERO)
                basis[i] = total + k
                k += 1
        nart = k
        ncols = total + nart
        cost1 = [_ZERO] * ncols
        for j in range(total, ncols):
            cost1[j] = -_ONE
        val = _simplex(T, basis, cost1)
        if val < 0:
            raise Infeasible("phase-1 optimum below zero")
        # pivot any artificial still in the basis out (or drop redundant rows)
        drop: list[int] = []
        for i in range(m):
            if basis[i] >= total:
                piv = next((j for j in range(total) if T[i][j] != 0), None)
                if piv is None:
                    drop.append(i)
                else:
                    _pivot(T, basis, i, piv)
        for i in reversed(drop):
            del T[i]
            del basis[i]
        for i in range(len(T)):
            T[i] = T[i][:total] + [T[i][-1]]

    cost2 = [_ZERO] * total
    for j in range(n):
        cost2[j] = c[j]
        cost2[n + j] = -c[j]
    value = _simplex(T, basis, cost2)

    xplus = [_ZERO] * n
    xminus = [_ZERO] * n
    for i, bv in enumerate(basis):
        if bv < n:
            xplus[bv] = T[i][-1]
        elif bv < nx:
            xminus[bv - n] = T[i][-1]
    x = tuple(xp - xm for xp, xm in zip(xplus, xminus))
    return LPResult(x=x, value=value)


def max_slack_point(A, b, cap: Fraction = Fraction(1)) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Maximize the uniform slack t with A x + t <= b, t <= cap.

    Always feasible.  The sign of the optimum classifies {x : A x <= b}:
    t* > 0 gives an interior point, t* == 0 a boundary-only (degenerate) set,
    t* < 0 an empty set.
    """
    n = len(A[0]) if A else 0
    rows = [list(r) + [Fraction(1)] for r in A]
    rows.append([Fraction(0)] * n + [Fraction(1)])
    rhs = list(b) + [cap]
    c = [Fraction(0)] * n + [Fraction(1)]
    res = lp_solve(c, rows, rhs)
    return res.value, res.x[:n]


def lex_min_over(A, b, coords: int, fixed: list[tuple[list[Fraction], Fraction]] | None = None):
    """Lexicographically smallest point of {x : A x <= b} in its first ``coords`` coordinates.

    ``fixed`` holds extra equality rows (row, value) appended as constraint pairs,
    used to pin an optimal objective level before breaking ties.
    """
    rows = [list(r) for r in A]
    rhs = list(b)
    if fixed:
        for row, val in fixed:
            rows.append(list(row))
            rhs.append(val)
            rows.append([-v for v in row])
            rhs.append(-val)
    n = len(rows[0])
    point: list[Fraction] = []
    for j in range(coords):
        c = [Fraction(0)] * n
        c[j] = Fraction(-1)
        res = lp_solve(c, rows, rhs)
        vj = res.x[j]
        point.append(vj)
        row = [Fraction(0)] * n
        row[j] = Fraction(1)
        rows.append(list(row))
        rhs.append(vj)
        rows.append([-v for v in row])
        rhs.append(-vj)
    return tuple(point)
