"""Apply a fibrewise change of coordinates and cancel the common power of u.

Substituting x -> u^4 x, t -> u^6 t, y -> u^3 y turns the first bundled
model into the second one, after dividing by u^12.  The inverse transform
restores the original equation.
"""
from tworay import apply_transform, builtin
from tworay.scenario import serialize

x = builtin("paper-X")
xp = apply_transform(x)
print(serialize(xp))
print("same as the bundled model:", xp.same_content(builtin("paper-Xprime")))
