"""Build a rank-two grading and look at its chamber fan.

A grading matrix assigns each homogeneous coordinate a column in Z^2.  The
columns cut the effective cone into chambers; each chamber gives a toric
variety, described here by its irrelevant ideal.
"""
from tworay import (
    GradingMatrix, adjunction_anticanonical, anticanonical_ambient, chamber_fan,
    effective_cone, k_condition, mobile_cone_toric, model_from_chamber,
)

g = GradingMatrix.from_rows("u v x t y z", [1, 1, 0, -2, -2, -4], [0, 0, 1, 2, 1, 1])
fan = chamber_fan(g)
print("rays:", [r.as_tuple() for r in fan.rays])
for c in fan.chambers:
    f, h = model_from_chamber(g, c).irrelevant
    print(f"chamber {c.lo.as_tuple()}..{c.hi.as_tuple()}: irrelevant ideal ({','.join(f)})*({','.join(h)})")

print("effective cone:", effective_cone(g))
print("mobile cone:", mobile_cone_toric(g))
print("-K of the ambient:", anticanonical_ambient(g))

# a hypersurface of degree (-4,4): adjunction and the position of -K
d = (-4, 4)
print("-K of the hypersurface:", adjunction_anticanonical(g, d))
print("K-condition:", k_condition(g, d))
