"""Circles (block projections) and the strong Wilbrink vertex test.

Projecting the secant blocks to their first coordinates yields q^3 - q^2
"circles" of size q+1 forming a (q^2, q+1, q) design.  The Wilbrink test
asks, for a point v and blocks B (off v) and C (through v, meeting B),
whether every point w on C away from v and B^C extends to a block B'
meeting everything through v that meets B.
"""

from unitalforge import analysis as an, gf, planar, unital as un
from unitalforge.plane import ShiftPlane

s9 = gf.split_new(gf.field_new(3, 2), 1)
plane = ShiftPlane(planar.square(s9))
u = un.build_parabolic_unital(plane, s9.choose_theta())

c = an.circle(u, a=0, beta=1)
print(f"circle C(0,1) = {c.members} (size q+1), via delta = {c.delta}")

rep = an.verify_circle_design(u)
print(f"circle design: {rep.circle_count} circles of size {rep.circle_size}, "
      f"every pair of field elements in exactly {rep.lambda_value} circles")

# infinity is a strong vertex; no affine point is
inf = plane.infinity_id
r_inf = an.wilbrink_vertex_check(u, inf)
print(f"infinity: strong={r_inf.strong} ({r_inf.satisfied}/{r_inf.total})")

idx = an.DesignIndex(u)
strong = [int(p) for p in u.points
          if an.wilbrink_vertex_check(u, int(p), index=idx).strong]
print(f"strong vertices of the parabolic unital: {strong}")

# the classical comparison unital is strong everywhere
baseline = un.build_classical_baseline(s9)
idx_b = an.DesignIndex(baseline)
strong_b = sum(an.wilbrink_vertex_check(baseline, int(p), index=idx_b).strong
               for p in baseline.points)
print(f"strong vertices of the classical unital: {strong_b} of "
      f"{len(baseline.points)}")
