"""Exact rays and cones in a rank-two lattice.

Everything here is integer arithmetic on Python ints.  Rays are stored
primitive, cones are strictly convex and counterclockwise oriented.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Sequence, Tuple

Vec = Tuple[int, int]

INTERIOR = "interior"
BOUNDARY = "boundary"
EXTERIOR = "exterior"


def cross(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[1] - a[1] * b[0]


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return a[0] * b[0] + a[1] * b[1]


@dataclass(frozen=True, order=False)
class RayZ2:
    """A primitive nonzero lattice vector."""

    x: int
    y: int

    def __post_init__(self):
        if self.x == 0 and self.y == 0:
            raise ValueError("the zero vector does not span a ray")
        if gcd(self.x, self.y) != 1:
            raise ValueError(f"({self.x},{self.y}) is not primitive; use primitivize")

    def __iter__(self):
        yield self.x
        yield self.y

    def __getitem__(self, i):
        return (self.x, self.y)[i]

    def __len__(self):
        return 2

    def as_tuple(self) -> Vec:
        return (self.x, self.y)

    def __str__(self):
        return f"({self.x},{self.y})"

    def __repr__(self):
        return f"RayZ2({self.x}, {self.y})"


def primitivize(v: Sequence[int]) -> RayZ2:
    """Return the primitive ray through the nonzero integer vector ``v``.

    >>> primitivize((-4, 2))
    RayZ2(-2, 1)
    """
    x, y = int(v[0]), int(v[1])
    if x == 0 and y == 0:
        raise ValueError("cannot primitivize the zero vector")
    g = gcd(x, y)
    return RayZ2(x // g, y // g)


def compare_rays(a: Sequence[int], b: Sequence[int]) -> int:
    """Counterclockwise comparison: -1 if ``a`` comes before ``b``, 0 if equal.

    Only meaningful for rays inside a common open half-plane; antiparallel
    rays are rejected since they span a straight angle.
    """
    c = cross(a, b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    if dot(a, b) > 0:
        return 0
    raise ValueError(f"rays {tuple(a)} and {tuple(b)} span 180 degrees")


def sort_rays(rays: Iterable[Sequence[int]]) -> list[RayZ2]:
    """Distinct primitive rays in counterclockwise order."""
    uniq = {primitivize(r) for r in rays}
    return sorted(uniq, key=cmp_to_key(compare_rays))


@dataclass(frozen=True)
class Cone2:
    """The cone spanned by ``lo`` and ``hi``, with ``cross(lo, hi) > 0``."""

    lo: RayZ2
    hi: RayZ2

    def __post_init__(self):
        if not isinstance(self.lo, RayZ2):
            object.__setattr__(self, "lo", primitivize(self.lo))
        if not isinstance(self.hi, RayZ2):
            object.__setattr__(self, "hi", primitivize(self.hi))
        if cross(self.lo, self.hi) <= 0:
            raise ValueError(
                f"Convex<{self.lo},{self.hi}> is not strictly convex and counterclockwise")

    def __str__(self):
        return f"Convex<{self.lo},{self.hi}>"

    def interior_ray(self) -> RayZ2:
        return primitivize((self.lo.x + self.hi.x, self.lo.y + self.hi.y))

    def contains(self, d: Sequence[int]) -> bool:
        return cone_position(self, d) != EXTERIOR


def cone_position(c: Cone2, d: Sequence[int]) -> str:
    """Classify ``d`` as ``"interior"``, ``"boundary"`` or ``"exterior"`` to ``c``."""
    if d[0] == 0 and d[1] == 0:
        raise ValueError("the zero class has no position relative to a cone")
    a = cross(c.lo, d)
    b = cross(d, c.hi)
    if a > 0 and b > 0:
        return INTERIOR
    if (a == 0 and dot(c.lo, d) > 0) or (b == 0 and dot(c.hi, d) > 0):
        return BOUNDARY
    return EXTERIOR


@dataclass(frozen=True)
class UnimodularMap:
    """A 2x2 integer matrix of determinant +1, stored row-major."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.det() != 1:
            raise ValueError(f"determinant {self.det()} != 1")

    @classmethod
    def from_rows(cls, rows) -> "UnimodularMap":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def rows(self) -> tuple[Vec, Vec]:
        return ((self.a, self.b), (self.c, self.d))

    def apply(self, v: Sequence[int]) -> Vec:
        return (self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1])

    def apply_ray(self, r: Sequence[int]) -> RayZ2:
        return RayZ2(*self.apply(r))

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """``self @ other``."""
        return UnimodularMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(self.d, -self.b, -self.c, self.a)

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = UnimodularMap(1, 0, 0, 1)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), (1 if a >= 0 else -1), 0)
    g, s, t = _ext_gcd(b, a % b)
    return g, t, s - (a // b) * t


def normalize_wall(w: Sequence[int], orient: Sequence[int]) -> UnimodularMap:
    """Unimodular ``M`` with ``M w = (0, 1)`` and ``orient`` sent to the right half-plane.

    With determinant +1 the first row of ``M`` is forced to be
    ``(w_y, -w_x)``, so the first coordinate of ``M c`` is ``cross(c, w)``.
    ``orient`` must therefore satisfy ``cross(orient, w) > 0``.  The second
    row is defined up to adding multiples of the first; we take the one of
    least L1 norm, ties broken towards a larger second entry.  This keeps
    the grading's second row untouched whenever ``w`` lies at height one.
    """
    if isinstance(w, RayZ2):
        wx, wy = w.x, w.y
    else:
        wx, wy = int(w[0]), int(w[1])
        if (wx, wy) == (0, 0) or gcd(wx, wy) != 1:
            raise ValueError(f"wall {tuple(w)} is not a primitive vector")
    side = cross(orient, (wx, wy))
    if side == 0:
        raise ValueError(f"orientation {tuple(orient)} is parallel to the wall")
    if side < 0:
        raise ValueError(
            f"orientation {tuple(orient)} lies clockwise of the wall ({wx},{wy}); "
            "no determinant-one map puts it on the positive side")
    row1 = (wy, -wx)
    # second row r with r.w = 1
    _, s, t = _ext_gcd(wx, wy)
    base = (s, t)
    candidates = set()
    for comp_base, comp_step in ((base[0], row1[0]), (base[1], row1[1])):
        if comp_step != 0:
            j0 = -comp_base // comp_step
            candidates.update(range(j0 - 1, j0 + 3))
    candidates.add(0)

    def key(j):
        r = (base[0] + j * row1[0], base[1] + j * row1[1])
        return (abs(r[0]) + abs(r[1]), -r[1], -r[0])

    j = min(candidates, key=key)
    row2 = (base[0] + j * row1[0], base[1] + j * row1[1])
    return UnimodularMap(row1[0], row1[1], row2[0], row2[1])
