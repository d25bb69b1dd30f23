"""Stabilizer subgroups and the non-isomorphism verdict.

The shear-translation stabilizer of the parabolic unital is abelian of
order q^3; the stabilizer of the polarity unital has the same order but is
not abelian, so no plane collineation can carry one to the other.  As
designs they are separated by invariant profiles.
"""

from unitalforge import analysis as an, gf, planar, unital as un
from unitalforge.plane import ShiftPlane

s9 = gf.split_new(gf.field_new(3, 2), 1)
plane = ShiftPlane(planar.square(s9))
u = un.build_parabolic_unital(plane, s9.choose_theta())
upol = un.build_polarity_unital(plane, un.InvolutionSpec("frobq"))

rep1 = an.sigma_stabilizer_report(u)
rep2 = an.sigma_stabilizer_report(upol)
print(f"parabolic stabilizer: order {rep1.order}, abelian={rep1.is_abelian}")
print(f"polarity stabilizer:  order {rep2.order}, abelian={rep2.is_abelian}, "
      f"witness {rep2.commutator_witness}")

comp = an.verify_sigma_composition(plane)
print(f"composition law verified on {comp['pairs_checked']} parameter pairs")

# the translation stabilizers over F_81 (x^14): orders 3^(3n) and 3^(2n)
s81 = gf.split_new(gf.field_new(3, 4), 2)
plane81 = ShiftPlane(planar.coulter_matthews(s81, 3))
u81 = un.build_parabolic_unital(plane81, s81.choose_theta())
upol81 = un.build_polarity_unital(plane81, un.InvolutionSpec("frobq"))
print(f"x^14 translation stabilizers: parabolic "
      f"{an.shift_stabilizer_report(u81).order}, polarity "
      f"{an.shift_stabilizer_report(upol81).order}")

# design-level separation: configuration counts and strong vertices differ
p1 = an.invariant_profile(u)
p2 = an.invariant_profile(un.build_classical_baseline(s9))
verdict, reasons = an.compare_profiles(p1, p2)
print(f"\nprofile comparison: {verdict}")
for r in reasons:
    print("   ", r)
