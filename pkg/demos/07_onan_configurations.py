"""O'Nan configurations: four blocks pairwise meeting in six points.

Three searches: through the infinity point (driven by circle
intersections), the explicit power-map template, and the exhaustive
block-quadruple sweep at small q.
"""

from unitalforge import analysis as an, gf, planar, unital as un
from unitalforge.errors import WitnessCheckFailed
from unitalforge.plane import ShiftPlane

# square plane, q = 3: no configuration touches infinity, but 324 exist
s9 = gf.split_new(gf.field_new(3, 2), 1)
plane3 = ShiftPlane(planar.square(s9))
u3 = un.build_parabolic_unital(plane3, s9.choose_theta())
cfgs, hits = an.find_onan_through_infinity(u3)
print(f"q=3 through-infinity: {len(cfgs)} configurations "
      f"({len(hits)} circle pairs sharing 3+ elements)")
res = an.find_onan_exhaustive(u3)
print(f"q=3 exhaustive: {res.count} configurations "
      f"({res.examined} quadruples examined)")
print("example:", res.configs[0])

# the classical unital carries none at all
baseline = un.build_classical_baseline(s9)
print("classical exhaustive count:", an.find_onan_exhaustive(baseline).count)

# x^14 over F_81: configurations through infinity do exist
s81 = gf.split_new(gf.field_new(3, 4), 2)
plane81 = ShiftPlane(planar.coulter_matthews(s81, 3))
u81 = un.build_parabolic_unital(plane81, s81.choose_theta())
cfgs81, hits81 = an.find_onan_through_infinity(u81)
print(f"\nx^14, q=9 through-infinity: {len(cfgs81)} configurations "
      f"({len(hits81)} circle-pair hits)")

# the explicit template succeeds at q = 5 ...
s25 = gf.split_new(gf.field_new(5, 2), 1)
u5 = un.build_parabolic_unital(ShiftPlane(planar.square(s25)),
                               s25.choose_theta())
cfg5 = an.construct_onan_explicit(u5)
print(f"\nexplicit template at q=5: blocks={cfg5.blocks}")

# ... but has no admissible parameters at q = 3: the membership constraint
# forces a ratio in F_3* \ {1, -1}, which is empty (decisions ledger)
try:
    an.construct_onan_explicit(u3)
except WitnessCheckFailed as e:
    print(f"explicit template at q=3: {e}")
