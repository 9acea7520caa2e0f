"""Enumerate the monomials of a bidegree and group them by fibre part.

Each fibre monomial (no u, v) carries a coefficient that is a form in u, v
of some free degree.  Constraints such as "divisible by u^k" shrink the
linear system; ``build_system`` records them per class.
"""
from tworay import build_system, builtin, enumerate_monomials
from tworay.monomials import format_monomial

x = builtin("paper-X")
g = x.grading
print("all monomials of degree (-4,4):", len(enumerate_monomials(g, (-4, 4))))

s = x.system()
for c in s.classes:
    print(f"  {format_monomial(c.fibre, g.vars):12s} coefficient degree {c.coeff_deg:2d}, "
          f"divisible by u^{c.u_min}")

# without constraints every coefficient is a general binary form
full = build_system(g, (-4, 4))
print("unconstrained classes:", len(full.classes))
