"""Building unitals: parabolic point sets and polarity absolute sets.

A unital of order q has q^3 + 1 points, every plane line meets it in 1 or
q+1 points, and its line sections form a 2-(q^3+1, q+1, 1) design.  Both
routes below are certified by direct counting.
"""

from unitalforge import gf, planar, unital as un
from unitalforge.plane import ShiftPlane

s9 = gf.split_new(gf.field_new(3, 2), 1)
plane = ShiftPlane(planar.square(s9))
theta = s9.choose_theta()

# the fiber histogram that makes {(x, t*theta)} + infinity work
ok, hist = un.check_parabolic_hypothesis(plane, theta)
print(f"fiber histogram for theta={theta}: {hist}  ok={ok}")
ok1, hist1 = un.check_parabolic_hypothesis(plane, 1)
print(f"fiber histogram for theta=1: {hist1}  ok={ok1} (square norm fails)")

u = un.build_parabolic_unital(plane, theta)
print(u)
emb = un.verify_unital_embedded(u)
des = un.verify_design(u)
print(f"embedded: secants={emb.secant_count} tangents={emb.tangent_count}")
print(f"design: {des.point_count} points, {des.block_count} blocks, "
      f"{des.pairs_covered} pairs covered once")

# the same set through the data-driven route: g_x(t) = t*theta as a table
import numpy as np

g_table = np.tile(un.parabolic_y_values(plane, theta), (9, 1))
u2 = un.build_general_unital(plane, g_table)
print("table-driven route rebuilds the same point set:",
      bool(np.array_equal(u2.points, u.points)))

# unitary polarity (x, y) <-> L(conj x, conj y): absolute points
rep = un.verify_polarity(plane, un.InvolutionSpec("frobq"))
print(f"polarity: {rep.absolute_points} absolute points "
      f"({rep.incidences_checked} incidences reversed)")
baseline = un.build_classical_baseline(s9)
print("classical comparison unital:", baseline)

# a bigger non-translation example: x^14 over F_81, q = 9
s81 = gf.split_new(gf.field_new(3, 4), 2)
plane81 = ShiftPlane(planar.coulter_matthews(s81, 3))
u81 = un.build_parabolic_unital(plane81, s81.choose_theta())
emb81 = un.verify_unital_embedded(u81)
print(f"x^14 unital: {len(u81.points)} points, secants={emb81.secant_count}")
