"""Steiner symmetrization: exact halfspace construction and its invariants."""

from fractions import Fraction as F

from zhangforge import make_polytope, minkowski_sum, transform, vertical_section, volume
from zhangforge.lattice import closed_unit_cube, mu_measure
from zhangforge.steiner import steiner_symmetrize

T = make_polytope([(0, 0), (1, 0), (0, 1)], 2)
S = steiner_symmetrize(T)
print("S(T) vertices:", S.vertices)
print("volume preserved:", volume(S).exact, "=", volume(T).exact)
print("idempotent:", steiner_symmetrize(S) == S)

print("\nevery vertical section is recentered with the same length:")
for k in (0, 25, 50, 75):
    y = F(k, 100)
    a, b = vertical_section(T, (y,)), vertical_section(S, (y,))
    print(f"  y={y}: K-section [{a.lo},{a.hi}] -> S-section [{b.lo},{b.hi}]")

print("\nscaling equivariance S(2K) = 2 S(K):")
two = [[F(2), F(0)], [F(0), F(2)]]
print(" ", steiner_symmetrize(transform(T, two, [0, 0])) == transform(S, two, [0, 0]))

print("\nMinkowski superadditivity against the base cube:")
cube = closed_unit_cube(1, 2)
left = minkowski_sum(S, cube)
right = steiner_symmetrize(minkowski_sum(T, cube))
print("  all vertices of S(K)+C inside S(K+C):",
      all(right.contains(v) for v in left.vertices))
print("  column-measure comparison:",
      mu_measure(left).exact, "<=", mu_measure(minkowski_sum(T, cube)).exact)

skew = make_polytope([(0, 0), (2, -1), (1, 1)], 2)
print("\na body whose symmetral has a vertex at a non-lattice height:")
print("  S vertices:", steiner_symmetrize(skew).vertices)
print("  (its top height 3/4 is the half of the longest chord 3/2)")
