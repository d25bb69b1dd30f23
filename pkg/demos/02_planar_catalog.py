"""The planar-function catalog and its computational certificates.

A function is planar when every difference map x -> f(x+a) - f(x) with
a != 0 is a bijection; the certificates below come from full sweeps, never
from catalog membership.
"""

from unitalforge import gf, planar

instances = [
    ("square on F_9", planar.square(gf.split_new(gf.field_new(3, 2), 1))),
    ("square on F_25", planar.square(gf.split_new(gf.field_new(5, 2), 1))),
    ("twisted field x^10 on F_3^6",
     planar.albert(gf.split_new(gf.field_new(3, 6), 3), 2)),
    ("x^14 on F_81 (not a translation plane)",
     planar.coulter_matthews(gf.split_new(gf.field_new(3, 4), 2), 3)),
    ("two-component family on F_5^4",
     planar.dickson(gf.split_new(gf.field_new(5, 4), 2), 1)),
    ("two-component family on F_3^6 (char-3, odd degree)",
     planar.ganley(gf.split_new(gf.field_new(3, 6), 3))),
    ("coefficient family on F_3^6, k=2",
     planar.budaghyan_helleseth(gf.split_new(gf.field_new(3, 6), 3), 2)),
]

for name, spec in instances:
    cert = planar.certify(spec)
    print(f"{spec.spec_string():<14} {name}")
    print(f"    planar={cert.is_planar} normal={cert.is_normal} "
          f"square-fibered={cert.satisfies_value_distribution} "
          f"power-map={spec.is_power_map} semifield-type={spec.is_dembowski_ostrom}")

# user polynomials are verified, never assumed: x^3 is additive, not planar
s9 = gf.split_new(gf.field_new(3, 2), 1)
cube = planar.custom(s9, [(3, 1)])
chk = planar.check_planarity(cube)
print(f"\ncustom x^3 on F_9: planar={chk.passed}, witness (a, x, x') = {chk.witness}")

# the polarization f(x+y) - f(x) - f(y) is the bilinear heart of the
# shear collineations; halved, it recovers f on the diagonal
dk = instances[4][1]
x, y = 37, 411
print("\npolarization symmetric:",
      int(planar.polarization(dk, x, y)) == int(planar.polarization(dk, y, x)))
print("half-polarization on the diagonal equals f:",
      int(planar.half_polarization(dk, x, x)) == int(dk.eval(x)))
