"""Small dense linear algebra over exact rationals.

Everything here operates on lists/tuples of ``fractions.Fraction`` and is
written for the tiny systems (dimension <= 5 or so) that the polytope kernel
produces.  No pivoting heuristics beyond exact nonzero selection are needed
because arithmetic is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Vec = tuple[Fraction, ...]


def frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(xs) -> Vec:
    return tuple(frac(x) for x in xs)


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a, b) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a, b) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def vscale(a, s) -> Vec:
    s = frac(s)
    return tuple(x * s for x in a)


def mat_vec(rows, x) -> Vec:
    return tuple(dot(r, x) for r in rows)


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot column indices)."""
    m = [list(r) for r in rows]
    nrow = len(m)
    ncol = len(m[0]) if nrow else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, nrow) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrow):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrow:
            break
    return m, pivots


def rank(rows) -> int:
    if not rows:
        return 0
    _, pivots = rref([list(r) for r in rows])
    return len(pivots)


def solve_linear(rows, rhs) -> Vec | None:
    """One solution of A x = b, or None if inconsistent (underdetermined allowed)."""
    n = len(rows[0])
    aug = [list(r) + [frac(v)] for r, v in zip(rows, rhs)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = red[i][-1]
    return tuple(x)


def nullspace(rows, n: int) -> list[Vec]:
    """Basis of {x : A x = 0} for A given as rows of length n."""
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    red, pivots = rref([list(r) for r in rows])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -red[i][fc]
        basis.append(tuple(x))
    return basis


def det(rows) -> Fraction:
    """Determinant by fraction-free-ish Gaussian elimination (exact)."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    d = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        d *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * d


def mat_inv(rows) -> list[Vec] | None:
    """Inverse matrix, or None if singular."""
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(aug)
    if pivots != list(range(n)):
        return None
    return [tuple(red[i][n:]) for i in range(n)]


def primitive(a) -> Vec:
    """Scale a rational vector to a primitive integer vector (positive leading gcd).

    The direction is preserved; the common denominator is cleared and the
    integer gcd divided out.  The zero vector is returned unchanged.
    """
    denoms = 1
    for x in a:
        denoms = denoms * x.denominator // gcd(denoms, x.denominator)
    ints = [int(x * denoms) for x in a]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        return tuple(Fraction(0) for _ in a)
    return tuple(Fraction(v // g) for v in ints)


def affine_basis(points: list[Vec]) -> list[int]:
    """Indices of a maximal affinely independent subset (greedy, deterministic)."""
    if not points:
        return []
    idx = [0]
    dirs: list[list[Fraction]] = []
    for i in range(1, len(points)):
        d = list(vsub(points[i], points[0]))
        if rank(dirs + [d]) > len(dirs):
            dirs.append(d)
            idx.append(i)
    return idx
