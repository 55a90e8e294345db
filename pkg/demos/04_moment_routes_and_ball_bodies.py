"""Covariogram moments along three independent routes, and star bodies.

The same number  p * int r^(p-1) vol(K cap (r e_n + K)) dr  is computed as a
ray quadrature over exact covariogram panels, as a slab integral over the
symmetral, and as a section-power integral over the projection; the routes
cross-validate each other.  Radial p-th means, Ball bodies of the discrete
covariogram, and the polar projection body all reduce to these moments.
"""

import math

import numpy as np

from zhangforge import Direction, axis_direction, make_polytope, volume
from zhangforge.moments import (
    MomentRequest,
    continuous_ray_moment,
    covariogram,
    facet_angles,
    polar_projection_radial,
    radial_Rp,
    radial_ball_body,
    radial_batch,
    star_volume,
)

square = make_polytope([(0, 0), (1, 0), (0, 1), (1, 1)], 2)
T = make_polytope([(0, 0), (1, 0), (0, 1)], 2)
e2 = axis_direction(2)

print("covariogram of the unit square:")
for x in [(0, 0), (0.5, 0), (2, 0)]:
    print(f"  g({x}) = {covariogram(square, x).exact}")

print("\nthree routes for the p-th moments of [0,1]^2 along e2:")
for p in (1, 2):
    row = []
    for route in ("ray-quadrature", "symmetral-slab", "projection-power"):
        mv = continuous_ray_moment(MomentRequest(square, e2, p, route))
        row.append(f"{route}: {mv.exact if mv.exact is not None else mv.value}")
    print(f"  p={p}:  " + "   ".join(row))

print("\nchord-mean radials (projection-power form):")
print("  rho_R1([0,1]^2)(e2) =", radial_Rp(square, e2, 1).value)
print("  rho_R1(T)(e2) =", radial_Rp(T, e2, 1).value, "(= 1/3)")

print("\ndiscrete Ball-body radials of [0,1]^2 along e1:")
e1 = Direction((1, 0))
print("  closed source, p=1:", radial_ball_body("discrete", square, e1, 1).exact)
print("  open-fattened source, p=1:", radial_ball_body("discrete-open", square, e1, 1).exact)
print("  difference set (K cap Z^2) - K:",
      radial_ball_body("difference-set", square, e1, None).exact)

print("\npolar projection body and the simplex equality case:")
print("  rho_polar([0,1]^2)(e2) =", polar_projection_radial(square, e2).exact)
sv = star_volume(lambda dirs: radial_batch("polar-projection", T, dirs, None),
                 2, extra_angles=facet_angles(T))
print(f"  vol(polar body of T) = {sv.value:.6f}  (the bound")
print(f"  C(4,2)/4 = 1.5 <= vol(T) * that = {0.5*sv.value:.6f} is tight for simplices)")

print("\nthe n-th Ball body of the covariogram has the body's volume:")
sv2 = star_volume(lambda dirs: radial_batch("continuous", T, dirs, 2),
                  2, extra_angles=facet_angles(T))
print(f"  vol(K_2(g_T)) = {sv2.value:.6f}  vs  vol(T) = {float(volume(T).exact)}")

print("\nscaled-radial inclusion chain (nonincreasing in p):")
angles = np.linspace(0, 2 * math.pi, 8, endpoint=False)
dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
for p in (1, 2, 3):
    scaled = math.comb(2 + p, 2) ** (1.0 / p) * radial_batch("continuous", square, dirs, p)
    print(f"  p={p}: max over 8 directions = {scaled.max():.6f}")
