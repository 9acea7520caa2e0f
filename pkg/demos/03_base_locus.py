"""Find the base locus of a linear system and certify smoothness along it.

A stratum {x_i = 0 for i in S} lies in the base locus when every member
vanishes there.  A certificate is a monomial that is linear in one further
variable and free of S otherwise: its partial derivative is a unit there.
Strata without a certificate are examined in a local chart.
"""
from tworay import base_locus, builtin, local_chart, local_support, smoothness_certificate
from tworay.monomials import format_monomial

x = builtin("paper-X")
model, s = x.model(), x.system()
for stratum in base_locus(model, s):
    cert = smoothness_certificate(model, s, stratum)
    zeros = ",".join(sorted(stratum.zeros))
    if cert is None:
        print(f"({zeros}): no certificate")
    else:
        print(f"({zeros}): smooth, d/d{cert.variable} of {format_monomial(cert.cls.fibre, s.ambient.vars)}")

# the uncertified point: set v = z = 1 and read off the lowest-degree terms
chart = local_chart(s.ambient, ("v", "z"), point_stratum="uxty")
rep = local_support(s, chart, max_degree=4)
for deg, mons in sorted(rep.by_degree.items()):
    print(f"  degree {deg}:", ", ".join(format_monomial(e, chart.coords) for e in mons))
