"""Exact convex hulls of rational point sets in dimensions 1..4.

The general path is an incremental beneath-beyond construction with strict
(exact) visibility tests.  It yields a simplicial triangulation of the hull
boundary, the set of supporting facet hyperplanes, and the extreme points.
Coplanar points never corrupt the result: a point lying on a supporting
hyperplane is invisible to its facets, and simplicial facets sharing a
hyperplane are merged when facets are reported.

Dimension 2 uses the monotone chain for speed; dimension 1 is explicit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Vec, dot, nullspace, primitive, rank, vsub

_ZERO = Fraction(0)


@dataclass
class HullResult:
    """Convex hull of a full-dimensional point set.

    facets: unique supporting hyperplanes (a, b), a primitive integer, <a,x> <= b.
    simplices: boundary triangulation; tuples of point indices, each simplex
        carried by exactly one facet hyperplane (parallel list ``simplex_planes``).
    vertex_indices: indices of the extreme points, ascending.
    interior: a strictly interior point.
    """

    facets: list[tuple[Vec, Fraction]]
    simplices: list[tuple[int, ...]]
    simplex_planes: list[tuple[Vec, Fraction]]
    vertex_indices: list[int]
    interior: Vec


def _hyperplane(pts: list[Vec], base: list[Vec]) -> tuple[Vec, Fraction]:
    rows = [list(vsub(p, base[0])) for p in base[1:]]
    ns = nullspace(rows, len(base[0]))
    if len(ns) != 1:
        raise ValueError("degenerate facet points")
    a = primitive(ns[0])
    return a, dot(a, base[0])


def _hull_1d(points: list[Vec]) -> HullResult:
    vals = [(p[0], i) for i, p in enumerate(points)]
    lo = min(vals)
    hi = max(vals)
    one = Fraction(1)
    facets = [((Fraction(-1),), -lo[0]), ((one,), hi[0])]
    if lo[0] == hi[0]:
        raise ValueError("1-d hull of a single point is not full-dimensional")
    mid = ((lo[0] + hi[0]) / 2,)
    return HullResult(
        facets=facets,
        simplices=[(lo[1],), (hi[1],)],
        simplex_planes=[facets[0], facets[1]],
        vertex_indices=sorted({lo[1], hi[1]}),
        interior=mid,
    )


def _cross2(o: Vec, a: Vec, b: Vec) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points: list[Vec]) -> HullResult:
    order = sorted(range(len(points)), key=lambda i: points[i])
    uniq: list[int] = []
    for i in order:
        if not uniq or points[i] != points[uniq[-1]]:
            uniq.append(i)

    def chain(idx: list[int]) -> list[int]:
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and _cross2(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(uniq)
    upper = chain(list(reversed(uniq)))
    ring = lower[:-1] + upper[:-1]  # counterclockwise
    if len(ring) < 3:
        raise ValueError("2-d hull is not full-dimensional")
    cx = sum((points[i][0] for i in ring), _ZERO) / len(ring)
    cy = sum((points[i][1] for i in ring), _ZERO) / len(ring)
    interior = (cx, cy)
    facets: list[tuple[Vec, Fraction]] = []
    simplices: list[tuple[int, ...]] = []
    planes: list[tuple[Vec, Fraction]] = []
    for k in range(len(ring)):
        i, j = ring[k], ring[(k + 1) % len(ring)]
        d = vsub(points[j], points[i])
        a = primitive((d[1], -d[0]))  # outward for ccw ring
        b = dot(a, points[i])
        facets.append((a, b))
        simplices.append((i, j))
        planes.append((a, b))
    return HullResult(facets, simplices, planes, sorted(ring), interior)


def _hull_nd(points: list[Vec], d: int) -> HullResult:
    order = sorted(range(len(points)), key=lambda i: points[i])
    uniq: list[int] = []
    for i in order:
        if not uniq or points[i] != points[uniq[-1]]:
            uniq.append(i)

    # initial affinely independent d+1 points
    init = [uniq[0]]
    dirs: list[list[Fraction]] = []
    for i in uniq[1:]:
        row = list(vsub(points[i], points[init[0]]))
        if rank(dirs + [row]) > len(dirs):
            dirs.append(row)
            init.append(i)
        if len(init) == d + 1:
            break
    if len(init) != d + 1:
        raise ValueError("point set is not full-dimensional")

    interior = tuple(
        sum((points[i][k] for i in init), _ZERO) / (d + 1) for k in range(d)
    )

    facets: dict[int, tuple[tuple[int, ...], Vec, Fraction]] = {}
    ridge_map: dict[frozenset[int], list[int]] = {}
    next_id = 0

    def orient(a: Vec, b: Fraction) -> tuple[Vec, Fraction]:
        s = dot(a, interior)
        if s > b:
            return tuple(-x for x in a), -b
        if s == b:
            raise ValueError("interior point on facet hyperplane")
        return a, b

    def add_facet(verts: tuple[int, ...]) -> None:
        nonlocal next_id
        a, b = _hyperplane(points, [points[v] for v in verts])
        a, b = orient(a, b)
        fid = next_id
        next_id += 1
        facets[fid] = (verts, a, b)
        for skip in range(len(verts)):
            ridge = frozenset(verts[:skip] + verts[skip + 1:])
            ridge_map.setdefault(ridge, []).append(fid)

    for skip in range(d + 1):
        add_facet(tuple(sorted(init[:skip] + init[skip + 1:])))

    used = set(init)
    for i in uniq:
        if i in used:
            continue
        p = points[i]
        visible = [fid for fid, (_, a, b) in facets.items() if dot(a, p) > b]
        if not visible:
            continue
        visible_set = set(visible)
        # every ridge of the closed boundary complex has exactly two owner
        # facets; a horizon ridge has exactly one visible owner
        horizon: list[frozenset[int]] = []
        for fid in visible:
            verts = facets[fid][0]
            for skip in range(len(verts)):
                ridge = frozenset(verts[:skip] + verts[skip + 1:])
                if any(o not in visible_set for o in ridge_map[ridge]):
                    horizon.append(ridge)
        # remove visible facets
        for fid in visible:
            verts = facets.pop(fid)[0]
            for skip in range(len(verts)):
                ridge = frozenset(verts[:skip] + verts[skip + 1:])
                ridge_map[ridge].remove(fid)
                if not ridge_map[ridge]:
                    del ridge_map[ridge]
        for ridge in horizon:
            add_facet(tuple(sorted(ridge | {i})))

    plane_groups: dict[tuple[Vec, Fraction], None] = {}
    simplices: list[tuple[int, ...]] = []
    planes: list[tuple[Vec, Fraction]] = []
    incident: dict[int, set[tuple[Vec, Fraction]]] = {}
    for verts, a, b in facets.values():
        key = (a, b)
        plane_groups.setdefault(key)
        simplices.append(verts)
        planes.append(key)
        for v in verts:
            incident.setdefault(v, set()).add(key)
    vertex_indices = sorted(
        v for v, keys in incident.items() if rank([list(a) for a, _ in keys]) == d
    )
    return HullResult(sorted(plane_groups), simplices, planes, vertex_indices, interior)


def convex_hull(points: list[Vec]) -> HullResult:
    """Hull of a full-dimensional rational point set (ambient dim = len(points[0]))."""
    if not points:
        raise ValueError("no points")
    d = len(points[0])
    if d == 1:
        return _hull_1d(points)
    if d == 2:
        return _hull_2d(points)
    return _hull_nd(points, d)
