"""Compute minimal generators of the ring of sections along a ray.

The semigroup of monomials whose degree lies on the ray is finitely
generated; its minimal generators give the ambient weighted projective
space of the contracted model.  A weight certificate bounds the search.
"""
from tworay import builtin, rewrite_in_generators, section_generators
from tworay.sectionring import weights_str

x = builtin("paper-X")
for ray in ((0, 1), (-1, 1), (-2, 1)):
    p = section_generators(x.grading, ray)
    print(ray, weights_str([gen.weight for gen in p.generators]), "complete:", p.complete)

# rewrite the quartic of the second model in the generators at (0,1)
xp = builtin("paper-Xprime")
p = section_generators(xp.grading, (0, 1))
rw = rewrite_in_generators(xp.system(), p)
print("image of degree", rw.image_degree, "in", weights_str([gen.weight for gen in p.generators]))
