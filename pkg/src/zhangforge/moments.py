"""Covariogram, ray moments along three independent routes, star radials of
Ball bodies (continuous and lattice-counting sources), the polar projection
body, and star-set volumes by sphere quadrature.

Exactness policy: moments in the last-axis direction with integer exponents
are exact rationals (piecewise-polynomial interpolation at rational nodes);
quadrature nodes, generic directions and fractional exponents run in binary64
with abs_error populated.  Between the kink locations inherited from vertex
differences, every integrand here is a polynomial of degree <= n (+ exponent),
so fixed-order Gauss-Legendre panels are exact up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import (
    DegenerateBody,
    ExponentOutOfRange,
    OriginMissing,
    RouteUnsupported,
    ZeroBase,
)
from .lattice import (
    closed_unit_cube,
    count_lattice,
    lattice_points,
    ray_decomposition,
)
from .linalg import Vec, dot, frac, vsub
from .lp import lp_solve
from .polytope import (
    Direction,
    MeasureValue,
    Polytope,
    axis_direction,
    intersect,
    minkowski_sum,
    project_drop_last,
    projection_volume,
    slice_at_height,
    translate,
    vertical_section,
)
from .steiner import steiner_symmetrize

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# covariogram and ray geometry
# ---------------------------------------------------------------------------

def covariogram(P: Polytope, x) -> MeasureValue:
    """vol_n(K cap (x+K)) as an exact rational; 0 outside the difference body."""
    Q = intersect(P, translate(P, x))
    if Q is None:
        return MeasureValue.from_exact(0)
    return MeasureValue.from_exact(Q.volume_fraction())


def ray_support(P: Polytope, theta: Direction) -> tuple[Fraction, Vec]:
    """(R, u) with R = sup{r : r*theta.raw in K-K} in raw units and u a witness
    point satisfying u in K and u - R*theta.raw in K."""
    from .errors import DimensionMismatch

    if theta.dim != P.dim:
        raise DimensionMismatch("direction and body dimensions differ")
    n = P.dim
    rows = []
    rhs = []
    for a, b in P.halfspaces:
        rows.append(list(a) + [_ZERO])
        rhs.append(b)
        rows.append(list(a) + [-dot(a, theta.raw)])
        rhs.append(b)
    c = [_ZERO] * n + [_ONE]
    res = lp_solve(c, rows, rhs)
    return res.value, res.x[:n]


def _covariogram_at(P: Polytope, theta: Direction, r: Fraction, R: Fraction, witness: Vec):
    """Exact K cap (r*raw + K) for 0 <= r < R, with a free interior point."""
    t = tuple(r * x for x in theta.raw)
    rows = list(P.halfspaces) + [(a, b + dot(a, t)) for a, b in P.halfspaces]
    if r < R:
        lam = r / R
        c = P.interior_point
        hint = tuple((1 - lam) * c[i] + lam * witness[i] for i in range(P.dim))
    else:
        hint = None
    return Polytope.from_halfspaces(rows, P.dim, interior=hint)


def _pyramid_volume(rows, dim: int, x0) -> Fraction:
    """Volume of a full-dimensional {Ax <= b} with strictly interior x0.

    One polar hull recovers the vertices; each facet's (n-1)-volume is read
    off a coordinate projection, and the norms cancel in the pyramid formula
    vol = (1/n) sum_i dist(x0, F_i) vol(F_i), keeping everything rational.
    """
    from .hull import convex_hull

    canon: dict = {}
    for a, b in rows:
        sigma = b - dot(a, x0)
        if a in canon:
            canon[a] = min(canon[a], sigma)
        else:
            canon[a] = sigma
    duals = [tuple(x / s for x in a) for a, s in canon.items()]
    dual_hull = convex_hull(duals)
    verts = []
    for u, c in dual_hull.facets:
        if c <= 0:
            raise Unbounded_("unbounded in pyramid volume")
        verts.append(tuple(x0[i] + u[i] / c for i in range(dim)))
    total = _ZERO
    for a, sigma in canon.items():
        fv = [v for v in verts if dot(a, v) - dot(a, x0) == sigma]
        if len(fv) < dim:
            continue
        j = max(range(dim), key=lambda i: abs(a[i]))
        if dim == 2:
            (k,) = [i for i in range(2) if i != j]
            coords = [v[k] for v in fv]
            area = max(coords) - min(coords)
        else:
            dropped = [tuple(v[k] for k in range(dim) if k != j) for v in fv]
            area = _points_area(dropped)
        total += sigma * area / abs(a[j])
    return total / dim


def Unbounded_(msg):
    from .errors import Unbounded

    return Unbounded(msg)


def _points_area(points) -> Fraction:
    """Full-dimensional volume of the hull of 2-d (or small-d) points."""
    from .hull import convex_hull

    uniq = sorted(set(points))
    if len(uniq) < 3:
        return _ZERO
    try:
        hull = convex_hull(uniq)
    except ValueError:
        return _ZERO
    from .linalg import det as _d

    c = hull.interior
    total = _ZERO
    d = len(uniq[0])
    for simplex in hull.simplices:
        rows = [list(vsub(uniq[i], c)) for i in simplex]
        total += abs(_d(rows))
    return total / math.factorial(d)


def _simplify_interior(rows, hint):
    """A nearby low-denominator point strictly inside {Ax <= b}, if one exists.

    The interior point only centers the polar transform; a simple one keeps
    the rational arithmetic of the dual hull small.
    """
    for den in (16, 256):
        cand = tuple(Fraction(float(x)).limit_denominator(den) for x in hint)
        if all(dot(a, cand) < b for a, b in rows):
            return cand
    return hint


def covariogram_on_ray(P: Polytope, theta: Direction, r, *, support=None) -> Fraction:
    r = frac(r)
    if support is None:
        support = ray_support(P, theta)
    R, witness = support
    if r >= R:
        return _ZERO
    t = tuple(r * x for x in theta.raw)
    rows = list(P.halfspaces) + [(a, b + dot(a, t)) for a, b in P.halfspaces]
    lam = r / R
    c = P.interior_point
    hint = tuple((1 - lam) * c[i] + lam * witness[i] for i in range(P.dim))
    return _pyramid_volume(rows, P.dim, _simplify_interior(rows, hint))


def ray_breakpoints(P: Polytope, theta: Direction, R: Fraction) -> list[Fraction]:
    """Sorted kink superset for r -> vol(K cap (r theta + K)), clipped to (0, R].

    Contains all vertex height differences and all vertex-facet contact
    parameters (a vertex of one copy meeting a facet plane of the other).
    The latter make the set complete in the plane; in higher dimension
    edge-edge contacts may remain inside panels, which the adaptive panel
    rule absorbs into the reported error bound.
    """
    nsq = theta.norm_sq
    vals = {R}
    for v in P.vertices:
        for w in P.vertices:
            t = dot(vsub(v, w), theta.raw) / nsq
            if 0 < t < R:
                vals.add(t)
    for a, b in P.halfspaces:
        s = dot(a, theta.raw)
        if s == 0:
            continue
        for v in P.vertices:
            gap = dot(a, v) - b
            for t in (gap / s, -gap / s):
                if 0 < t < R and t not in vals:
                    # the contact parameter is a kink only if the contact
                    # point lies in the facet, not merely its hyperplane
                    pt = tuple(v[i] - t * theta.raw[i] for i in range(P.dim))
                    pt2 = tuple(v[i] + t * theta.raw[i] for i in range(P.dim))
                    if P.contains(pt) or P.contains(pt2):
                        vals.add(t)
    if P.dim >= 3:
        vals |= _edge_edge_events(P, theta, R)
    return sorted(vals)


def _edges(P: Polytope) -> list[tuple[Vec, Vec]]:
    """Vertex pairs joined by an edge (sharing n-1 independent facets)."""
    from .linalg import rank

    out = []
    verts = P.vertices
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            common = [
                a
                for a, b in P.halfspaces
                if dot(a, verts[i]) == b and dot(a, verts[j]) == b
            ]
            if len(common) >= P.dim - 1 and rank([list(a) for a in common]) >= P.dim - 1:
                out.append((verts[i], verts[j]))
    return out


def _edge_edge_events(P: Polytope, theta: Direction, R: Fraction) -> set:
    """Ray parameters where an edge of K meets an edge of K + r theta (n = 3)."""
    from .linalg import det, solve_linear

    edges = _edges(P)
    vals: set = set()
    for i in range(len(edges)):
        p1, q1 = edges[i]
        d1 = vsub(q1, p1)
        for j in range(i + 1, len(edges)):
            p2, q2 = edges[j]
            d2 = vsub(q2, p2)
            rows = [
                [d1[k], -d2[k], -theta.raw[k]] for k in range(3)
            ]
            if det(rows) == 0:
                continue
            sol = solve_linear(rows, list(vsub(p2, p1)))
            if sol is None:
                continue
            s, t, r = sol
            if 0 <= s <= 1 and 0 <= t <= 1:
                r = abs(r)
                if 0 < r < R:
                    vals.add(r)
    return vals


@lru_cache(maxsize=32)
def _leggauss(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


# ---------------------------------------------------------------------------
# the three continuous routes
# ---------------------------------------------------------------------------

ROUTES = (
    "ray-quadrature",
    "symmetral-slab",
    "projection-power",
    "discrete-exact",
    "discrete-open-exact",
)


@dataclass(frozen=True)
class MomentRequest:
    body: Polytope
    direction: Direction
    exponent: float | Fraction
    route: str
    seed: int = 20240

    def __post_init__(self):
        if self.route not in ROUTES:
            raise RouteUnsupported(f"unknown route {self.route!r}")
        p = float(self.exponent)
        if self.route == "projection-power":
            if p <= -1:
                raise RouteUnsupported("projection-power needs exponent > -1")
        elif p <= 0:
            raise RouteUnsupported(f"route {self.route} needs exponent > 0")
        if self.route in ("symmetral-slab", "projection-power") and not _is_last_axis(
            self.direction
        ):
            raise RouteUnsupported(f"route {self.route} is defined for the last axis only")


def _is_last_axis(theta: Direction) -> bool:
    return all(x == 0 for x in theta.raw[:-1]) and theta.raw[-1] > 0


class RayMomentEngine:
    """Shared per-(body, direction) covariogram moments along a ray.

    On a kink-free panel, r -> vol(K cap (r theta + K)) is a polynomial of
    degree <= n, recovered exactly from n+1 covariogram values at rational
    nodes and certified at one extra node.  A failed certificate (a kink the
    breakpoint superset missed, possible only for n >= 3) bisects the panel;
    at the depth cap the mismatch goes into the error bound.  The recovered
    panel polynomials are shared by every exponent; integer-exponent moments
    on certified panels are exact rationals in the plane.
    """

    def __init__(self, P: Polytope, theta: Direction, refine: int = 6):
        self.P = P
        self.theta = theta
        self.refine = refine
        self.support = ray_support(P, theta)
        R, _ = self.support
        self._breaks = ray_breakpoints(P, theta, R) if R > 0 else []
        self._panels: list | None = None  # (a, b, coeffs, mismatch_float)
        self._g_cache: dict[Fraction, Fraction] = {}
        self.certified = True

    def g(self, r: Fraction) -> Fraction:
        v = self._g_cache.get(r)
        if v is None:
            v = covariogram_on_ray(self.P, self.theta, r, support=self.support)
            self._g_cache[r] = v
        return v

    def _build(self) -> list:
        n = self.P.dim
        panels = []
        stack = []
        prev = _ZERO
        for b in self._breaks:
            if b > prev:
                stack.append((prev, b, self.refine))
            prev = b
        while stack:
            a, b, depth = stack.pop()
            width = b - a
            nodes = [a + width * Fraction(j + 1, n + 3) for j in range(n + 1)]
            vals = [self.g(r) for r in nodes]
            coeffs = _lagrange_coeffs(nodes, vals)
            check = a + width * Fraction(n + 2, n + 3)
            predicted = sum((c * check**k for k, c in enumerate(coeffs)), _ZERO)
            actual = self.g(check)
            if predicted != actual:
                if depth > 0:
                    mid = (a + b) / 2
                    stack.append((a, mid, depth - 1))
                    stack.append((mid, b, depth - 1))
                    continue
                self.certified = False
                panels.append((a, b, coeffs, abs(float(predicted - actual)) * float(width)))
            else:
                panels.append((a, b, coeffs, 0.0))
        panels.sort(key=lambda t: t[0])
        return panels

    def moment(self, p) -> MeasureValue:
        pf = float(p)
        if pf <= 0:
            raise ExponentOutOfRange("ray moments need p > 0")
        if self._panels is None:
            self._panels = self._build()
        if not self._panels:
            return MeasureValue.from_exact(0)
        exact_p = pf == int(pf)
        nrm = self.theta.exact_norm()
        if exact_p and nrm is not None:
            q = int(p)
            total = _ZERO
            err = 0.0
            for a, b, coeffs, mismatch in self._panels:
                total += q * _power_integral(coeffs, a, b, q - 1)
                err += mismatch
            total *= nrm**q
            if err == 0.0 and self.certified and self.P.dim <= 2:
                return MeasureValue.from_exact(total)
            fl = float(total)
            return MeasureValue.approx(fl, err * float(nrm) ** q + 4e-16 * abs(fl))
        total_f = 0.0
        err = 0.0
        for a, b, coeffs, mismatch in self._panels:
            total_f += pf * float(_power_integral(coeffs, a, b, pf - 1.0))
            err += mismatch
        scale = math.sqrt(float(self.theta.norm_sq)) ** pf
        total_f *= scale
        err = err * scale + 1e-12 * abs(total_f)
        return MeasureValue.approx(total_f, err)


def ray_moment_quadrature(P: Polytope, theta: Direction, p,
                          engine: RayMomentEngine | None = None) -> MeasureValue:
    """p * int_0^inf r^{p-1} vol(K cap (r theta + K)) dr (see RayMomentEngine)."""
    if engine is None:
        engine = RayMomentEngine(P, theta)
    return engine.moment(p)


def _lagrange_coeffs(nodes: list[Fraction], values: list[Fraction]) -> list[Fraction]:
    """Exact coefficients (ascending powers) of the interpolating polynomial."""
    from .linalg import solve_linear

    k = len(nodes)
    rows = [[nodes[i] ** j for j in range(k)] for i in range(k)]
    sol = solve_linear(rows, values)
    assert sol is not None
    return list(sol)


def _power_integral(coeffs, alpha: Fraction, beta: Fraction, p) -> Fraction | float:
    """int_alpha^beta t^p * sum_k c_k t^k dt, exact for integer p."""
    if isinstance(p, int) or float(p) == int(p):
        q = int(p)
        total = _ZERO
        for k, c in enumerate(coeffs):
            if c:
                e = q + k + 1
                total += c * (beta**e - alpha**e) / e
        return total
    pf = float(p)
    total = 0.0
    fa, fb = float(alpha), float(beta)
    for k, c in enumerate(coeffs):
        if c:
            e = pf + k + 1
            total += float(c) * (fb**e - fa**e) / e
    return total


def slab_pieces(S: Polytope) -> list[tuple[Fraction, Fraction, list[Fraction]]]:
    """Per-height-panel polynomials of the slice volume of the symmetral.

    Slice combinatorics change only at vertex heights, so exact interpolation
    at n interior rational nodes recovers each panel's polynomial exactly.
    """
    n = S.dim
    heights = sorted({v[-1] for v in S.vertices if v[-1] >= 0} | {_ZERO})
    pieces = []
    for alpha, beta in zip(heights, heights[1:]):
        width = beta - alpha
        nodes = [alpha + width * Fraction(j + 1, n + 1) for j in range(n)]
        vals = []
        for t in nodes:
            sl = slice_at_height(S, t)
            vals.append(_ZERO if sl is None else sl.volume_fraction())
        pieces.append((alpha, beta, _lagrange_coeffs(nodes, vals)))
    return pieces


def slab_moment(P: Polytope, p, symmetral: Polytope | None = None,
                pieces: list | None = None) -> MeasureValue:
    """2^p int_{S(K)} |x_n|^p dx with slice volumes exact per height panel."""
    if float(p) <= 0:
        raise ExponentOutOfRange("slab moments need p > 0")
    if pieces is None:
        S = symmetral if symmetral is not None else steiner_symmetrize(P)
        pieces = slab_pieces(S)
    exact = isinstance(p, int) or float(p) == int(p)
    total_exact = _ZERO
    total_float = 0.0
    for alpha, beta, coeffs in pieces:
        piece = _power_integral(coeffs, alpha, beta, p)
        if exact:
            total_exact += piece
        else:
            total_float += piece
    if exact:
        q = int(p)
        return MeasureValue.from_exact(Fraction(2) ** (q + 1) * total_exact)
    val = 2.0 ** (float(p) + 1.0) * total_float
    return MeasureValue.approx(val, 1e-12 * abs(val) + 1e-15)


def projection_power_moment(P: Polytope, p, seed: int = 20240) -> MeasureValue:
    """(1/(p+1)) int_{P(K)} ell(y)^{p+1} dy; exact 1-d integration for n = 2,
    Monte Carlo with a 3-sigma error bound for n >= 3."""
    pf = float(p)
    if pf <= -1:
        raise ExponentOutOfRange("projection-power needs p > -1")
    n = P.dim
    if n == 2:
        return _projection_power_2d(P, p)
    return _projection_power_mc(P, p, seed)


def _section_length(P: Polytope, y) -> Fraction:
    seg = vertical_section(P, y)
    return _ZERO if seg is None else seg.length


def _projection_power_2d(P: Polytope, p) -> MeasureValue:
    ys = sorted({v[0] for v in P.vertices})
    exact = (isinstance(p, int) or float(p) == int(p)) and float(p) >= 0
    total_exact = _ZERO
    total_float = 0.0
    for alpha, beta in zip(ys, ys[1:]):
        width = beta - alpha
        nodes = [alpha + width * Fraction(1, 3), alpha + width * Fraction(2, 3)]
        va, vb = (_section_length(P, (t,)) for t in nodes)
        slope = (vb - va) / (nodes[1] - nodes[0])
        const = va - slope * nodes[0]
        # ell(y) = const + slope*y on the panel; integrate ell^{p+1} directly
        if exact:
            q = int(p) + 1
            if slope == 0:
                total_exact += const**q * width
            else:
                e = q + 1
                total_exact += ((const + slope * beta) ** e - (const + slope * alpha) ** e) / (
                    slope * e
                )
        else:
            qf = float(p) + 1.0
            c0, c1, fa, fb = float(const), float(slope), float(alpha), float(beta)
            if c1 == 0.0:
                total_float += c0**qf * (fb - fa)
            else:
                e = qf + 1.0
                la = max(c0 + c1 * fa, 0.0)
                lb = max(c0 + c1 * fb, 0.0)
                total_float += (lb**e - la**e) / (c1 * e)
    if exact:
        return MeasureValue.from_exact(total_exact / (int(p) + 1))
    val = total_float / (float(p) + 1.0)
    return MeasureValue.approx(val, 1e-12 * abs(val) + 1e-15)


def mc_section_samples(P: Polytope, seed: int, nsamp: int = 1_000_000):
    """(box volume, section lengths) at uniform box samples of the projection."""
    n = P.dim
    uppers = []
    lowers = []
    verts_rows = []
    for a, b in P.halfspaces:
        an = float(a[-1])
        head = np.array([float(x) for x in a[:-1]])
        if an > 0:
            uppers.append((head / an, float(b) / an))
        elif an < 0:
            lowers.append((head / an, float(b) / an))
        else:
            verts_rows.append((head, float(b)))
    proj_box = P.bounding_box()[:-1]
    lo = np.array([float(a) for a, _ in proj_box])
    hi = np.array([float(b) for _, b in proj_box])
    boxvol = float(np.prod(hi - lo))
    rng = np.random.default_rng(seed)
    y = rng.uniform(lo, hi, size=(nsamp, n - 1))
    umin = np.full(nsamp, np.inf)
    for head, c in uppers:
        np.minimum(umin, c - y @ head, out=umin)
    lmax = np.full(nsamp, -np.inf)
    for head, c in lowers:
        np.maximum(lmax, c - y @ head, out=lmax)
    ell = np.clip(umin - lmax, 0.0, None)
    for head, c in verts_rows:
        ell[y @ head > c] = 0.0
    return boxvol, ell


def projection_power_from_samples(samples, p) -> MeasureValue:
    boxvol, ell = samples
    pf = float(p)
    vals = np.where(ell > 0.0, ell ** (pf + 1.0), 0.0)
    mean = float(vals.mean())
    std = float(vals.std(ddof=1))
    est = boxvol * mean / (pf + 1.0)
    err = 3.0 * boxvol * std / math.sqrt(len(ell)) / abs(pf + 1.0)
    return MeasureValue.approx(est, err)


def _projection_power_mc(P: Polytope, p, seed: int) -> MeasureValue:
    return projection_power_from_samples(mc_section_samples(P, seed), p)


def continuous_ray_moment(req: MomentRequest) -> MeasureValue:
    """The common value of the three ray-moment expressions, by the chosen route."""
    P, theta, p = req.body, req.direction, req.exponent
    if req.route == "ray-quadrature":
        return ray_moment_quadrature(P, theta, p)
    if req.route == "symmetral-slab":
        return slab_moment(P, p)
    if req.route == "projection-power":
        return projection_power_moment(P, p, req.seed)
    if req.route == "discrete-exact":
        return discrete_moment(P, theta, p, open_cube=False)
    if req.route == "discrete-open-exact":
        return discrete_moment(P, theta, p, open_cube=True)
    raise RouteUnsupported(req.route)


def discrete_moment(P: Polytope, theta: Direction, p, open_cube: bool = False) -> MeasureValue:
    from .lattice import discrete_ray_moment

    decomp = ray_decomposition(P, theta, open_cube=open_cube)
    return discrete_ray_moment(decomp, p)


# ---------------------------------------------------------------------------
# layer-cake section-power integrals (any q > -1, q != 0)
# ---------------------------------------------------------------------------

@dataclass
class SectionDistribution:
    """Piecewise polynomials of u -> vol{y : ell(y) >= u} on [0, max ell]."""

    pieces: list[tuple[Fraction, Fraction, list[Fraction]]]
    projvol: Fraction
    reach: Fraction


def section_distribution(P: Polytope, symmetral: Polytope | None = None) -> SectionDistribution:
    """Distribution function of the section-length profile.

    vol{ell >= u} equals the projected volume of K cap (u e_n + K); it is a
    piecewise polynomial of degree <= n-1 whose kinks are the critical values
    of the piecewise-linear profile ell, i.e. twice the symmetral's vertex
    heights.  Exact interpolation per panel.
    """
    n = P.dim
    e_n = axis_direction(n)
    support = ray_support(P, e_n)
    R, witness = support
    S = symmetral if symmetral is not None else steiner_symmetrize(P)
    heights = sorted({2 * v[-1] for v in S.vertices if v[-1] > 0})
    breaks = [h for h in heights if h < R]
    breaks.append(R)
    projvol = project_drop_last(P).volume_fraction()
    pieces = []
    prev = _ZERO
    for brk in breaks:
        width = brk - prev
        nodes = [prev + width * Fraction(j + 1, n + 1) for j in range(n)]
        vals = []
        for u in nodes:
            Q = _covariogram_at(P, e_n, u, R, witness)
            vals.append(_ZERO if Q is None else project_drop_last(Q).volume_fraction())
        pieces.append((prev, brk, _lagrange_coeffs(nodes, vals)))
        prev = brk
    return SectionDistribution(pieces, projvol, R)


def section_power_integral(P: Polytope, q, symmetral: Polytope | None = None,
                           dist: SectionDistribution | None = None) -> MeasureValue:
    """int_{P(K)} ell(y)^q dy for q > -1, q != 0 (layer-cake over the
    section-length distribution).  Exact for integer q >= 1."""
    qf = float(q)
    if qf <= -1 or qf == 0:
        raise ExponentOutOfRange("section powers need q > -1, q != 0")
    n = P.dim
    if n == 2 and qf > 0 and dist is None:
        return _projection_power_scaled_2d(P, q)
    if dist is None:
        dist = section_distribution(P, symmetral)
    projvol = dist.projvol
    exact = (isinstance(q, int) or qf == int(qf)) and qf >= 1
    total_exact = _ZERO
    total_float = 0.0
    for prev, brk, coeffs in dist.pieces:
        if qf > 0:
            piece = _power_integral(coeffs, prev, brk, q - 1 if exact else qf - 1.0)
            if exact:
                total_exact += int(q) * piece
            else:
                total_float += qf * float(piece)
        else:
            # -q * int u^{q-1} (A - B(u)) du; the constant term of A - B(u)
            # vanishes exactly on the first panel
            comp = [projvol - coeffs[0]] + [-c for c in coeffs[1:]]
            if prev == 0 and comp[0] != 0:
                raise ArithmeticError(
                    "distribution function does not start at the projection volume"
                )
            total_float += -qf * float(_power_integral(comp, prev, brk, qf - 1.0))
    if qf < 0:
        total_float += float(projvol) * float(dist.reach) ** qf
        return MeasureValue.approx(total_float, 1e-11 * abs(total_float) + 1e-15)
    if exact:
        return MeasureValue.from_exact(total_exact)
    return MeasureValue.approx(total_float, 1e-11 * abs(total_float) + 1e-15)


def _projection_power_scaled_2d(P: Polytope, q) -> MeasureValue:
    mv = _projection_power_2d(P, q - 1 if isinstance(q, int) else float(q) - 1.0)
    if mv.exact is not None:
        return MeasureValue.from_exact(mv.exact * int(q))
    return MeasureValue.approx(mv.value * float(q), mv.abs_error * float(q))


# ---------------------------------------------------------------------------
# star radials
# ---------------------------------------------------------------------------

SOURCES = (
    "continuous",
    "discrete",
    "discrete-open",
    "discrete-open-tilde",
    "polar-projection",
    "difference-set",
)


def radial_ball_body(source: str, P: Polytope, theta: Direction, p) -> MeasureValue:
    """Radial function of the requested star body at ``theta``."""
    if source not in SOURCES:
        raise RouteUnsupported(f"unknown star source {source!r}")
    if source == "polar-projection":
        return polar_projection_radial(P, theta)
    origin = tuple(Fraction(0) for _ in range(P.dim))
    if source == "difference-set":
        if not P.contains(origin):
            raise OriginMissing("the difference set needs 0 in the body")
        decomp = ray_decomposition(P, theta, open_cube=False)
        reach = decomp.max_reach()
        if decomp.exact:
            return MeasureValue.from_exact(reach)
        return MeasureValue.approx(float(reach), 1e-12 * float(reach))
    pf = float(p)
    if pf <= 0:
        raise ExponentOutOfRange("Ball-body radials need p > 0")
    if source == "continuous":
        g0 = P.volume_fraction()
        if g0 == 0:
            raise ZeroBase("covariogram vanishes at 0")
        mom = ray_moment_quadrature(P, theta, p)
        val = (mom.value / float(g0)) ** (1.0 / pf)
        err = abs(val) * (mom.abs_error / mom.value / pf if mom.value > 0 else 0.0) + 1e-14
        return MeasureValue.approx(val, err)
    if not P.contains(origin):
        raise OriginMissing("discrete Ball bodies require 0 in the body")
    gK = count_lattice(P)
    if gK == 0:
        raise ZeroBase("no lattice points in the body")
    if source == "discrete":
        mom = discrete_moment(P, theta, p)
        base = gK
    else:
        mom = discrete_moment(P, theta, p, open_cube=True)
        base = count_lattice(P, P.dim) if source == "discrete-open" else gK
    if mom.exact is not None:
        ratio = mom.exact / base
        root = float(ratio) ** (1.0 / pf)
        if pf == 1.0:
            return MeasureValue.from_exact(ratio)
        return MeasureValue.approx(root, 4e-16 * abs(root))
    val = (mom.value / base) ** (1.0 / pf)
    err = abs(val) * (mom.abs_error / mom.value / pf if mom.value > 0 else 0.0) + 1e-14
    return MeasureValue.approx(val, err)


def polar_projection_radial(P: Polytope, theta: Direction) -> MeasureValue:
    pv = projection_volume(P, theta)
    if pv.exact is not None:
        return MeasureValue.from_exact(1 / pv.exact)
    val = 1.0 / pv.value
    return MeasureValue.approx(val, pv.abs_error * val / pv.value)


@dataclass
class StarRadial:
    """A star body given by its radial evaluator (unit directions -> radii)."""

    source: str
    body: Polytope
    exponent: float | Fraction | None

    def evaluate(self, theta: Direction) -> MeasureValue:
        return radial_ball_body(self.source, self.body, theta, self.exponent)

    def evaluate_batch(self, dirs: np.ndarray) -> np.ndarray:
        return radial_batch(self.source, self.body, dirs, self.exponent)


# ---------------------------------------------------------------------------
# vectorized float radial evaluators (generic directions)
# ---------------------------------------------------------------------------

def _float_halfspaces(P: Polytope):
    A = np.array([[float(x) for x in a] for a, _ in P.halfspaces])
    b = np.array([float(b) for _, b in P.halfspaces])
    return A, b


def _interval_batch(body: Polytope, pts: np.ndarray, dirs: np.ndarray, strict: bool):
    """lo/hi of {r >= 0 : y - r theta in body} for every point x direction pair."""
    A, b = _float_halfspaces(body)
    S = A @ dirs.T  # (F, D)
    C = A @ pts.T - b[:, None]  # (F, m)
    F, D = S.shape
    m = pts.shape[0]
    lo = np.zeros((m, D))
    hi = np.full((m, D), np.inf)
    feas = np.ones((m, D), dtype=bool)
    tol = 1e-12
    for f in range(F):
        s = S[f]
        c = C[f]
        zero = np.abs(s) <= tol
        if zero.any():
            bad = c > (-tol if strict else tol)
            feas &= ~(np.outer(bad, zero))
        pos = (~zero) & (s > 0)
        if pos.any():
            ratio = c[:, None] / s[None, pos]
            lo[:, pos] = np.maximum(lo[:, pos], ratio)
        neg = (~zero) & (s < 0)
        if neg.any():
            ratio = c[:, None] / s[None, neg]
            hi[:, neg] = np.minimum(hi[:, neg], ratio)
    feas &= hi >= lo - 1e-12
    return lo, hi, feas


def discrete_moment_batch(P: Polytope, dirs: np.ndarray, p, open_cube: bool) -> np.ndarray:
    """sum_y (b_y^p - a_y^p) per unit direction (binary64)."""
    if open_cube:
        body = minkowski_sum(P, closed_unit_cube(P.dim, P.dim))
        pts = lattice_points(P, P.dim)
        strict = True
    else:
        body = P
        pts = lattice_points(P)
        strict = False
    if len(pts) == 0:
        return np.zeros(len(dirs))
    Y = np.array([[float(c) for c in y] for y in pts])
    lo, hi, feas = _interval_batch(body, Y, dirs, strict)
    pf = float(p)
    contrib = np.where(feas, np.maximum(hi, 0.0) ** pf - np.maximum(lo, 0.0) ** pf, 0.0)
    return contrib.sum(axis=0)


def radial_batch(source: str, P: Polytope, dirs: np.ndarray, p) -> np.ndarray:
    """Vectorized radial of the star body over an array of unit directions."""
    if source == "polar-projection":
        total = np.zeros(len(dirs))
        for a, _b, w in P.facet_weights():
            af = np.array([float(x) for x in a])
            total += np.abs(dirs @ af) * float(w)
        return 1.0 / (0.5 * total)
    if source == "difference-set":
        pts = lattice_points(P)
        Y = np.array([[float(c) for c in y] for y in pts])
        _lo, hi, feas = _interval_batch(P, Y, dirs, strict=False)
        hi = np.where(feas, hi, 0.0)
        return hi.max(axis=0)
    pf = float(p)
    if source == "continuous":
        mom = polygon_ray_moment_batch(P, dirs, p)
        return (mom / float(P.volume_fraction())) ** (1.0 / pf)
    gK = count_lattice(P)
    if source == "discrete":
        mom = discrete_moment_batch(P, dirs, p, open_cube=False)
        base = gK
    elif source == "discrete-open":
        mom = discrete_moment_batch(P, dirs, p, open_cube=True)
        base = count_lattice(P, P.dim)
    elif source == "discrete-open-tilde":
        mom = discrete_moment_batch(P, dirs, p, open_cube=True)
        base = gK
    else:
        raise RouteUnsupported(source)
    return (mom / base) ** (1.0 / pf)


# ---------------------------------------------------------------------------
# float polygon pipeline (n = 2 continuous radials at many angles)
# ---------------------------------------------------------------------------

def _clip_polygon(poly, ax, ay, b):
    out = []
    k = len(poly)
    for i in range(k):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % k]
        d1 = ax * x1 + ay * y1 - b
        d2 = ax * x2 + ay * y2 - b
        if d1 <= 0:
            out.append((x1, y1))
            if d2 > 0:
                t = d1 / (d1 - d2)
                out.append((x1 + t * (x2 - x1), y1 + t * (y2 - y1)))
        elif d2 < 0:
            t = d1 / (d1 - d2)
            out.append((x1 + t * (x2 - x1), y1 + t * (y2 - y1)))
    return out


def _poly_area(poly) -> float:
    s = 0.0
    k = len(poly)
    for i in range(k):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % k]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2.0


def _polygon_ring(P: Polytope):
    # counterclockwise float ring from the exact vertices
    vs = [(float(v[0]), float(v[1])) for v in P.vertices]
    cx = sum(v[0] for v in vs) / len(vs)
    cy = sum(v[1] for v in vs) / len(vs)
    vs.sort(key=lambda v: math.atan2(v[1] - cy, v[0] - cx))
    return vs


def polygon_ray_moment_batch(P: Polytope, dirs: np.ndarray, p) -> np.ndarray:
    """p * int r^{p-1} area(K cap (r theta + K)) dr per unit direction (n = 2)."""
    if P.dim != 2:
        raise RouteUnsupported("the polygon pipeline is 2-d only")
    pf = float(p)
    ring = _polygon_ring(P)
    H = [(float(a[0]), float(a[1]), float(b)) for a, b in P.halfspaces]
    verts = np.array([[float(v[0]), float(v[1])] for v in P.vertices])
    diffs = (verts[:, None, :] - verts[None, :, :]).reshape(-1, 2)
    A = np.array([[float(a[0]), float(a[1])] for a, _ in P.halfspaces])
    gaps = verts @ A.T - np.array([float(b) for _, b in P.halfspaces])  # (V, F)
    order = max(3, math.ceil((2 + pf) / 2) + 2)
    xs, ws = _leggauss(order)
    out = np.zeros(len(dirs))
    for di, theta in enumerate(dirs):
        proj = diffs @ theta
        cand = set(proj.tolist())
        s = A @ theta  # vertex-facet contact events complete the kink set
        for f in np.nonzero(np.abs(s) > 1e-12)[0]:
            for gval in gaps[:, f]:
                cand.add(gval / s[f])
                cand.add(-gval / s[f])
        sup = max((t for t in proj.tolist()), default=0.0)
        brks = sorted({t for t in cand if 1e-14 < t <= sup + 1e-14})
        if not brks:
            continue
        total = 0.0
        prev = 0.0
        for brk in brks:
            half = (brk - prev) / 2.0
            mid = (brk + prev) / 2.0
            for xi, wi in zip(xs, ws):
                r = mid + half * xi
                poly = ring
                shift = (r * theta[0], r * theta[1])
                for ax, ay, b in H:
                    poly = _clip_polygon(poly, ax, ay, b + ax * shift[0] + ay * shift[1])
                    if len(poly) < 3:
                        poly = []
                        break
                g = _poly_area(poly) if poly else 0.0
                total += wi * half * pf * r ** (pf - 1.0) * g
            prev = brk
        out[di] = total
    return out


# ---------------------------------------------------------------------------
# sphere quadrature
# ---------------------------------------------------------------------------

def circle_nodes(n_nodes: int, extra_angles=()) -> np.ndarray:
    base = [2.0 * math.pi * k / n_nodes for k in range(n_nodes)]
    angles = sorted(set(base) | {a % (2.0 * math.pi) for a in extra_angles})
    return np.array(angles)


def _circle_rule(evaluator, angles: np.ndarray) -> float:
    dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    rho = evaluator(dirs)
    k = len(angles)
    gaps = np.empty(k)
    gaps[:-1] = angles[1:] - angles[:-1]
    gaps[-1] = 2.0 * math.pi - angles[-1] + angles[0]
    w = np.empty(k)
    w[0] = (gaps[-1] + gaps[0]) / 2.0
    w[1:] = (gaps[:-1] + gaps[1:]) / 2.0
    return float(0.5 * np.sum(rho**2 * w))


def _sphere_rule(evaluator, n_polar: int, n_azimuth: int) -> float:
    z, wz = _leggauss(n_polar)
    phi = 2.0 * math.pi * np.arange(n_azimuth) / n_azimuth
    sin_t = np.sqrt(1.0 - z**2)
    dirs = np.empty((n_polar * n_azimuth, 3))
    weights = np.empty(n_polar * n_azimuth)
    idx = 0
    for i in range(n_polar):
        dirs[idx : idx + n_azimuth, 0] = sin_t[i] * np.cos(phi)
        dirs[idx : idx + n_azimuth, 1] = sin_t[i] * np.sin(phi)
        dirs[idx : idx + n_azimuth, 2] = z[i]
        weights[idx : idx + n_azimuth] = wz[i] * (2.0 * math.pi / n_azimuth)
        idx += n_azimuth
    rho = evaluator(dirs)
    return float(np.sum(rho**3 * weights) / 3.0)


def star_volume(
    evaluator,
    dim: int,
    extra_angles=(),
    n_circle: int = 2048,
    n_polar: int = 48,
    n_azimuth: int = 96,
) -> MeasureValue:
    """vol = (1/n) int_{S^{n-1}} rho^n, with a refinement-based error estimate.

    ``evaluator`` maps an (m, dim) array of unit directions to radii.  For
    dim = 2 a composite trapezoid rule over n_circle equal angles plus the
    supplied extra angles; for dim = 3 a Gauss-Legendre x trapezoid product
    rule with n_polar * n_azimuth >= 974 nodes.
    """
    if dim == 2:
        fine = _circle_rule(evaluator, circle_nodes(n_circle, extra_angles))
        coarse = _circle_rule(evaluator, circle_nodes(n_circle // 2, extra_angles))
    elif dim == 3:
        fine = _sphere_rule(evaluator, n_polar, n_azimuth)
        coarse = _sphere_rule(evaluator, n_polar // 2, n_azimuth // 2)
    else:
        raise RouteUnsupported("star volumes are implemented for dimensions 2 and 3")
    err = abs(fine - coarse) + 1e-12 * abs(fine)
    return MeasureValue.approx(fine, err)


def facet_angles(P: Polytope) -> list[float]:
    """Angles of the facet normals of a polygon (extra nodes for circle rules)."""
    out = []
    for a, _b in P.halfspaces:
        out.append(math.atan2(float(a[1]), float(a[0])) % (2.0 * math.pi))
    return out


# ---------------------------------------------------------------------------
# radial mean bodies
# ---------------------------------------------------------------------------

def radial_Rp(P: Polytope, theta: Direction, p) -> MeasureValue:
    """Radial of the p-th chord-mean body via the projection-power form,
    rotated so the direction is the last axis (rotation in binary64)."""
    pf = float(p)
    if pf == 0 or pf <= -1:
        raise ExponentOutOfRange("the chord-mean radial needs p in (-1, inf), p != 0")
    if not P.is_full_dimensional:
        raise DegenerateBody("chord-mean radials need a full-dimensional body")
    voln = float(P.volume_fraction())
    if _is_last_axis(theta):
        mom = projection_power_moment(P, p)
        val = (mom.value / voln) ** (1.0 / pf)
        rel = mom.abs_error / mom.value if mom.value > 0 else 0.0
        return MeasureValue.approx(val, abs(val) * rel / abs(pf) + 1e-14)
    u = np.array(theta.unit)
    n = P.dim
    e = np.zeros(n)
    e[-1] = 1.0
    v = u - e
    if np.linalg.norm(v) < 1e-14:
        R = np.eye(n)
    else:
        v = v / np.linalg.norm(v)
        R = np.eye(n) - 2.0 * np.outer(v, v)  # Householder: maps u -> e_n
    V = np.array([[float(c) for c in vert] for vert in P.vertices]) @ R.T
    A = np.array([[float(c) for c in a] for a, _ in P.halfspaces]) @ R.T
    b = np.array([float(bb) for _a, bb in P.halfspaces])
    val, err = _projection_power_float(V, A, b, pf)
    rho = (val / voln) ** (1.0 / pf)
    rel = err / val if val > 0 else 0.0
    return MeasureValue.approx(rho, abs(rho) * (rel / abs(pf) + 1e-12))


def _cluster_sorted(values, tol: float):
    out: list[float] = []
    for v in sorted(values):
        if not out or v - out[-1] > tol * max(1.0, abs(v)):
            out.append(v)
    return out


def _projection_power_float(V: np.ndarray, A: np.ndarray, b: np.ndarray, pf: float):
    """(1/(p+1)) int ell^{p+1} over the projection of a float H/V-polytope."""
    n = V.shape[1]
    if n == 2:
        ys = _cluster_sorted(V[:, 0].tolist(), 1e-12)
        up = A[:, 1] > 1e-13
        dn = A[:, 1] < -1e-13
        total = 0.0
        for alpha, beta in zip(ys, ys[1:]):
            nodes = [alpha + (beta - alpha) / 3.0, alpha + 2.0 * (beta - alpha) / 3.0]
            vals = []
            for y in nodes:
                hi = np.min((b[up] - A[up, 0] * y) / A[up, 1]) if up.any() else np.inf
                lo = np.max((b[dn] - A[dn, 0] * y) / A[dn, 1]) if dn.any() else -np.inf
                vals.append(max(hi - lo, 0.0))
            slope = (vals[1] - vals[0]) / (nodes[1] - nodes[0])
            const = vals[0] - slope * nodes[0]
            q = pf + 1.0
            if abs(slope) < 1e-15:
                total += max(const, 0.0) ** q * (beta - alpha)
            else:
                la = max(const + slope * alpha, 0.0)
                lb = max(const + slope * beta, 0.0)
                total += (lb ** (q + 1.0) - la ** (q + 1.0)) / (slope * (q + 1.0))
        return total / (pf + 1.0), 1e-11 * abs(total)
    # n == 3: Monte Carlo over the projected bounding box
    rng = np.random.default_rng(987654321)
    lo = V[:, :-1].min(axis=0)
    hi = V[:, :-1].max(axis=0)
    boxvol = float(np.prod(hi - lo))
    nsamp = 1_000_000
    y = rng.uniform(lo, hi, size=(nsamp, n - 1))
    an = A[:, -1]
    up = an > 1e-13
    dn = an < -1e-13
    vert = ~(up | dn)
    umin = np.full(nsamp, np.inf)
    for i in np.where(up)[0]:
        np.minimum(umin, (b[i] - y @ A[i, :-1]) / an[i], out=umin)
    lmax = np.full(nsamp, -np.inf)
    for i in np.where(dn)[0]:
        np.maximum(lmax, (b[i] - y @ A[i, :-1]) / an[i], out=lmax)
    ell = np.clip(umin - lmax, 0.0, None)
    for i in np.where(vert)[0]:
        ell[y @ A[i, :-1] > b[i]] = 0.0
    vals = np.where(ell > 0.0, ell ** (pf + 1.0), 0.0)
    est = boxvol * float(vals.mean()) / (pf + 1.0)
    err = 3.0 * boxvol * float(vals.std(ddof=1)) / math.sqrt(nsamp) / abs(pf + 1.0)
    return est, err
