"""Counting measures on polytopes: G_k, the mixed column measure, discrete
covariograms, and exact ray-interval decompositions behind discrete moments.

Lattice enumeration is a bounding-box scan with exact integer membership
tests.  Membership in the open fattening P + (-1,1)^k x {0}^{n-k} is decided
by an exact LP minimizing the l_inf distance of the first k coordinates to
the matching slice of P, with a strict < 1 comparison; for k = n the strict
interior of the closed Minkowski sum gives the same answer without an LP and
is used as a fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import OriginMissing
from .linalg import dot, vec
from .lp import lp_solve
from .polytope import (
    Direction,
    Interval,
    MeasureValue,
    Polytope,
    minkowski_sum,
    project_drop_last,
    translate,
    vertical_section,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LatticePointSet:
    """Sorted, duplicate-free integer points of a polytope (or its fattening)."""

    dim: int
    points: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


def closed_unit_cube(k: int, dim: int) -> Polytope:
    """The closed cube [-1,1]^k x {0}^{dim-k}."""
    pts = []
    for signs in product((-1, 1), repeat=k):
        pts.append(tuple(Fraction(s) for s in signs) + tuple(Fraction(0) for _ in range(dim - k)))
    return Polytope.from_points(pts, dim)


def _int_rows(P: Polytope) -> list[tuple[tuple[int, ...], int, int]]:
    """Halfspaces as integer rows (a, num, den): sum a*x <= num/den."""
    rows = []
    for a, b in P.halfspaces:
        rows.append((tuple(int(x) for x in a), b.numerator, b.denominator))
    return rows


def _int_box(P: Polytope, pad: float = 0.0) -> list[range]:
    rngs = []
    for lo, hi in P.bounding_box():
        lo_i = math.ceil(lo - pad)
        hi_i = math.floor(hi + pad)
        rngs.append(range(lo_i, hi_i + 1))
    return rngs


def _contains_int(rows, x, strict: bool = False) -> bool:
    for a, num, den in rows:
        s = 0
        for ai, xi in zip(a, x):
            if ai:
                s += ai * xi
        s *= den
        if s > num or (strict and s == num):
            return False
    return True


def _open_membership_lp(P: Polytope, x: tuple[int, ...], k: int) -> bool:
    """Exact test of x in P + (-1,1)^k x {0}^{n-k} via the l_inf-distance LP."""
    n = P.dim
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for a, b in P.halfspaces:  # variables: y (n), d
        rows.append(list(a) + [_ZERO])
        rhs.append(b)
    for j in range(k, n):
        e = [_ZERO] * (n + 1)
        e[j] = _ONE
        rows.append(list(e))
        rhs.append(Fraction(x[j]))
        rows.append([-v for v in e])
        rhs.append(Fraction(-x[j]))
    for j in range(k):
        r1 = [_ZERO] * (n + 1)
        r1[j] = _ONE
        r1[n] = -_ONE
        rows.append(r1)
        rhs.append(Fraction(x[j]))
        r2 = [_ZERO] * (n + 1)
        r2[j] = -_ONE
        r2[n] = -_ONE
        rows.append(r2)
        rhs.append(Fraction(-x[j]))
    c = [_ZERO] * n + [-_ONE]  # maximize -d
    try:
        res = lp_solve(c, rows, rhs)
    except Exception:
        return False
    return -res.value < 1


def lattice_points(P: Polytope, open_cube_k: int = 0) -> LatticePointSet:
    """Integer points of P (open_cube_k = 0) or of P + (-1,1)^k x {0}^{n-k}."""
    k = open_cube_k
    if k == 0:
        rows = _int_rows(P)
        pts = [
            x for x in product(*_int_box(P)) if _contains_int(rows, x)
        ]
        return LatticePointSet(P.dim, tuple(sorted(pts)))
    closed_rows = _int_rows(P)
    box = _int_box(P)
    wide = [range(r.start - 1, r.stop + 1) if j < k else r for j, r in enumerate(box)]
    fast_strict = None
    if k == P.dim:
        fat = minkowski_sum(P, closed_unit_cube(k, P.dim))
        fast_strict = _int_rows(fat)
    pts = []
    for x in product(*wide):
        if _contains_int(closed_rows, x):
            pts.append(x)
        elif fast_strict is not None:
            if _contains_int(fast_strict, x, strict=True):
                pts.append(x)
        elif _open_membership_lp(P, x, k):
            pts.append(x)
    return LatticePointSet(P.dim, tuple(sorted(pts)))


def count_lattice(P: Polytope, open_cube_k: int = 0) -> int:
    return len(lattice_points(P, open_cube_k))


def mu_measure(P: Polytope) -> MeasureValue:
    """Sum of vertical-section lengths over the integer columns of the projection."""
    if P.dim < 2:
        raise ValueError("column measure needs ambient dimension >= 2")
    proj = project_drop_last(P)
    total = _ZERO
    for y in lattice_points(proj):
        seg = vertical_section(P, y)
        if seg is not None:
            total += seg.length
    return MeasureValue.from_exact(total)


def discrete_covariogram(P: Polytope, x) -> int:
    """Number of integer points of P cap (x + P); 0 when the sets are disjoint."""
    from .polytope import intersect

    Q = intersect(P, translate(P, x))
    if Q is None:
        return 0
    return count_lattice(Q)


@dataclass(frozen=True)
class RayDecomposition:
    """Per-lattice-point parameter intervals {r >= 0 : y - r theta in K}.

    Intervals are stated for the unit-normalized direction.  They are exact
    rationals whenever the direction's Euclidean norm is rational (all axis
    directions); otherwise endpoints are binary64-rounded and ``exact`` is
    False.
    """

    direction: Direction
    entries: tuple[tuple[tuple[int, ...], Interval], ...]
    open_cube: bool
    exact: bool

    def max_reach(self) -> Fraction:
        """Largest upper endpoint; the radial of (K cap Z^n) - K for closed decompositions."""
        return max((iv.hi for _, iv in self.entries), default=_ZERO)


def ray_interval(body: Polytope, point, raw, strict: bool = False):
    """(lo, hi) of {r >= 0 : point - r*raw in body} in raw-direction units, or None.

    ``strict`` asks for the open interior of ``body`` (endpoints then open).
    """
    yv = vec(point)
    lo = _ZERO
    hi: Fraction | None = None
    for a, b in body.halfspaces:
        s = dot(a, raw)
        c = dot(a, yv) - b
        if s == 0:
            if c > 0 or (strict and c == 0):
                return None
        elif s > 0:
            lo = max(lo, c / s)
        else:
            t = c / s
            hi = t if hi is None else min(hi, t)
    if hi is None or lo > hi or (strict and lo == hi):
        return None
    return lo, hi


def ray_decomposition(P: Polytope, theta: Direction, open_cube: bool = False) -> RayDecomposition:
    if not P.contains(tuple(Fraction(0) for _ in range(P.dim))):
        raise OriginMissing("ray decompositions require 0 in the body")
    if open_cube:
        body = minkowski_sum(P, closed_unit_cube(P.dim, P.dim))
        strict = True
        pts = lattice_points(P, P.dim)
    else:
        body = P
        strict = False
        pts = lattice_points(P)
    nrm = theta.exact_norm()
    exact = nrm is not None
    scale = nrm if exact else Fraction(math.sqrt(float(theta.norm_sq)))
    entries = []
    for y in pts:
        seg = ray_interval(body, y, theta.raw, strict)
        if seg is None:
            continue
        lo, hi = seg
        entries.append((y, Interval(lo * scale, hi * scale, False, strict)))
    return RayDecomposition(theta, tuple(entries), open_cube, exact)


def discrete_ray_moment(decomp: RayDecomposition, p) -> MeasureValue:
    """p * integral of r^{p-1} G_n(K cap (r theta + K)) dr = sum (b^p - a^p)."""
    if isinstance(p, int) or (isinstance(p, Fraction) and p.denominator == 1):
        q = int(p)
        if q <= 0:
            raise ValueError("moment exponent must be positive")
        if decomp.exact:
            total = sum((iv.hi**q - iv.lo**q for _, iv in decomp.entries), _ZERO)
            return MeasureValue.from_exact(total)
    pf = float(p)
    if pf <= 0:
        raise ValueError("moment exponent must be positive")
    total = 0.0
    for _, iv in decomp.entries:
        total += float(iv.hi) ** pf - float(iv.lo) ** pf
    err = 1e-13 * max(1.0, abs(total)) * max(1, len(decomp.entries))
    return MeasureValue.approx(total, err)


def lattice_points_to_json(pts: LatticePointSet) -> list:
    return [list(p) for p in pts.points]


def ray_decomposition_to_json(decomp: RayDecomposition) -> list:
    return [
        {
            "point": list(y),
            "lo": [iv.lo.numerator, iv.lo.denominator],
            "hi": [iv.hi.numerator, iv.hi.denominator],
            "lo_open": iv.lo_open,
            "hi_open": iv.hi_open,
        }
        for y, iv in decomp.entries
    ]
