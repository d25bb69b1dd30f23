"""Self-duality, oval decompositions, and the scaling orbit of theta.

The point/line switch (a,b) <-> L(a,b), (a) <-> V(a) preserves canonical
IDs, so self-duality of a parabolic unital is the statement that its
tangent lines occupy exactly its own ID set.
"""

import numpy as np

from unitalforge import gf, planar, unital as un
from unitalforge.plane import ShiftPlane

s9 = gf.split_new(gf.field_new(3, 2), 1)
plane = ShiftPlane(planar.square(s9))
theta = s9.choose_theta()
u = un.build_parabolic_unital(plane, theta)

dual, witness = un.dual_unital(u)
print(f"self-duality: {witness}")
print("dual of the dual returns the original:",
      bool(np.array_equal(un.dual_unital(dual)[0].points, u.points)))

# the unital is a union of q ovals {(x, c)} + infinity, c in theta*F_q,
# pairwise meeting only at infinity
ovals = un.ovals_decomposition(u)
print(f"ovals: {len(ovals)} of size {len(ovals[0])}")
inf = plane.infinity_id
common = set(map(int, ovals[0])) & set(map(int, ovals[1]))
print("two ovals share only infinity:", common == {inf})

# every theta with nonsquare norm yields an equivalent unital: the scaling
# collineations merge them into a single orbit
idx = np.arange(9)
norms = np.asarray(s9.norm(idx))
thetas = [int(t) for t in idx if t and s9.sub_eta(int(norms[t])) == -1]
classes = un.gamma_orbit_partition(plane, thetas)
print(f"admissible thetas {thetas} fall into {len(classes)} orbit(s): {classes}")
