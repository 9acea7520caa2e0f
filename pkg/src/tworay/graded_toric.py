"""Rank-two graded Cox rings and their GIT chamber structure."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cones2d import (
    BOUNDARY, EXTERIOR, INTERIOR, Cone2, RayZ2, UnimodularMap, compare_rays,
    cone_position, cross, primitivize, sort_rays,
)

Bidegree = tuple  # (d1, d2)

HOLDS_BOUNDARY = "holds_boundary"
HOLDS_EXTERIOR = "holds_exterior"
FAILS_INTERIOR = "fails_interior"

GORENSTEIN = "gorenstein"
NOT_GORENSTEIN = "not_gorenstein"
NOT_APPLICABLE = "not_applicable"


class GradingError(ValueError):
    pass


class MobileConeWarning(UserWarning):
    """The hypersurface class is not interior to the toric mobile cone."""


@dataclass(frozen=True)
class GradingMatrix:
    """A 2 x n integer grading of a polynomial ring with named variables.

    ``cols[i]`` is the bidegree of ``vars[i]``.  The columns must span a
    pointed cone, which is what makes every graded piece finite dimensional.
    """

    vars: tuple
    cols: tuple

    def __post_init__(self):
        object.__setattr__(self, "vars", tuple(str(v) for v in self.vars))
        object.__setattr__(self, "cols", tuple((int(c[0]), int(c[1])) for c in self.cols))
        if len(self.vars) != len(self.cols):
            raise GradingError("one column per variable is required")
        if len(set(self.vars)) != len(self.vars):
            raise GradingError(f"variable names are not distinct: {self.vars}")
        if len(self.vars) < 2:
            raise GradingError("need at least two variables")
        if any(c == (0, 0) for c in self.cols):
            raise GradingError("a zero column makes every graded piece infinite")
        _extremes(self.cols)

    @classmethod
    def from_rows(cls, names, row1, row2) -> "GradingMatrix":
        names = list(names.split()) if isinstance(names, str) else list(names)
        if not (len(names) == len(row1) == len(row2)):
            raise GradingError("rows must have one entry per variable")
        return cls(tuple(names), tuple(zip(row1, row2)))

    @property
    def n(self) -> int:
        return len(self.vars)

    def rows(self) -> tuple[tuple, tuple]:
        return tuple(c[0] for c in self.cols), tuple(c[1] for c in self.cols)

    def index(self, name: str) -> int:
        try:
            return self.vars.index(name)
        except ValueError:
            raise GradingError(f"unknown variable {name!r}") from None

    def col(self, name: str) -> tuple:
        return self.cols[self.index(name)]

    def ray(self, name: str) -> RayZ2:
        return primitivize(self.col(name))

    def degree(self, exps: Sequence[int]) -> tuple:
        d1 = sum(e * c[0] for e, c in zip(exps, self.cols))
        d2 = sum(e * c[1] for e, c in zip(exps, self.cols))
        return (d1, d2)

    def transform(self, m: UnimodularMap) -> "GradingMatrix":
        return GradingMatrix(self.vars, tuple(m.apply(c) for c in self.cols))

    def reflect(self) -> "GradingMatrix":
        """Swap the two coordinates: the orientation-reversing change of basis."""
        return GradingMatrix(self.vars, tuple((c[1], c[0]) for c in self.cols))

    def permute(self, order: Sequence[str]) -> "GradingMatrix":
        return GradingMatrix(tuple(order), tuple(self.col(v) for v in order))

    def positive_functional(self) -> tuple:
        """An integer linear form strictly positive on every column."""
        lo, hi = _extremes(self.cols)
        # inward normals of the two extreme rays
        return (-lo.y + hi.y, lo.x - hi.x)

    def __str__(self):
        r1, r2 = self.rows()
        w = [max(len(v), len(str(a)), len(str(b))) for v, a, b in zip(self.vars, r1, r2)]
        lines = [" ".join(str(x).rjust(k) for x, k in zip(row, w)) for row in (self.vars, r1, r2)]
        return "\n".join(lines)


def _extremes(cols) -> tuple[RayZ2, RayZ2]:
    rays = {primitivize(c) for c in cols}
    for a in rays:
        for b in rays:
            if a.x == -b.x and a.y == -b.y:
                raise GradingError("columns span a non-pointed cone (opposite rays)")
    lo = [r for r in rays if all(cross(r, s) >= 0 for s in rays)]
    hi = [r for r in rays if all(cross(s, r) >= 0 for s in rays)]
    if len(rays) == 1:
        raise GradingError("all columns lie on a single ray; the class group is not rank two")
    if not lo or not hi or cross(lo[0], hi[0]) <= 0:
        raise GradingError("columns span a non-pointed cone")
    return lo[0], hi[0]


def effective_cone(g: GradingMatrix) -> Cone2:
    lo, hi = _extremes(g.cols)
    return Cone2(lo, hi)


@dataclass(frozen=True)
class ChamberFan:
    rays: tuple
    chambers: tuple
    multiplicity: Mapping = field(hash=False, compare=False)

    def interior_rays(self) -> tuple:
        return self.rays[1:-1]

    def chamber_index(self, c: Cone2) -> int:
        try:
            return self.chambers.index(c)
        except ValueError:
            raise GradingError(f"{c} is not a GIT chamber") from None


def chamber_fan(g: GradingMatrix) -> ChamberFan:
    """Sort the column rays counterclockwise and pair consecutive ones into chambers."""
    effective_cone(g)
    rays = tuple(sort_rays(g.cols))
    mult = {r: tuple(v for v, c in zip(g.vars, g.cols) if primitivize(c) == r) for r in rays}
    chambers = tuple(Cone2(a, b) for a, b in zip(rays, rays[1:]))
    return ChamberFan(rays, chambers, mult)


@dataclass(frozen=True)
class ToricModel:
    """A GIT quotient: a grading plus a chamber.

    The irrelevant ideal is ``(F) ∩ (G)``; ``F`` collects the variables
    whose ray is at or before the chamber's first ray, ``G`` those at or after
    its last ray.
    """

    grading: GradingMatrix
    chamber: Cone2
    irrelevant: tuple  # (F, G) as tuples of variable names

    def irrelevant_str(self) -> str:
        f, g = self.irrelevant
        return f"({','.join(f)})∩({','.join(g)})"


def model_from_chamber(g: GradingMatrix, c: Cone2) -> ToricModel:
    fan = chamber_fan(g)
    fan.chamber_index(c)
    f = tuple(v for v in g.vars if compare_rays(g.ray(v), c.lo) <= 0)
    gg = tuple(v for v in g.vars if compare_rays(g.ray(v), c.hi) >= 0)
    return ToricModel(g, c, (f, gg))


def anticanonical_ambient(g: GradingMatrix) -> tuple:
    """Sum of the columns: the class of the toric boundary."""
    return (sum(c[0] for c in g.cols), sum(c[1] for c in g.cols))


def adjunction_anticanonical(g: GradingMatrix, hyp: Sequence[int]) -> tuple:
    a = anticanonical_ambient(g)
    return (a[0] - hyp[0], a[1] - hyp[1])


def mobile_cone_toric(g: GradingMatrix) -> Cone2:
    """Classes with no fixed toric divisor.

    Computed as the intersection, over all variables, of the cone spanned by
    the remaining columns.  An extreme ray carried by a single variable
    therefore pulls the mobile cone in to the next ray.
    """
    fan = chamber_fan(g)
    rays = fan.rays
    lo_i, hi_i = 0, len(rays) - 1
    if len(fan.multiplicity[rays[lo_i]]) == 1:
        lo_i += 1
    if len(fan.multiplicity[rays[hi_i]]) == 1:
        hi_i -= 1
    if lo_i >= hi_i:
        raise GradingError("the mobile cone degenerates to a ray or less")
    return Cone2(rays[lo_i], rays[hi_i])


def hypersurface_is_mobile_interior(g: GradingMatrix, hyp: Sequence[int]) -> bool:
    if tuple(hyp) == (0, 0):
        return False
    return cone_position(mobile_cone_toric(g), hyp) == INTERIOR


def k_condition(g: GradingMatrix, hyp: Sequence[int]) -> str:
    """Position of the anticanonical class of the hypersurface against its mobile cone.

    Returns ``"holds_boundary"``, ``"holds_exterior"`` or ``"fails_interior"``.
    The mobile cone of the hypersurface is taken to be the toric one; a
    :class:`MobileConeWarning` is issued when the hypersurface class is not
    interior to it, since then the two cones need not agree.
    """
    k = adjunction_anticanonical(g, hyp)
    if k == (0, 0):
        raise ValueError("anticanonical class is trivial; K-condition undefined")
    mob = mobile_cone_toric(g)
    if not hypersurface_is_mobile_interior(g, hyp):
        warnings.warn(
            f"hypersurface class {tuple(hyp)} is not interior to the toric mobile cone {mob}",
            MobileConeWarning, stacklevel=2)
    pos = cone_position(mob, k)
    return {BOUNDARY: HOLDS_BOUNDARY, EXTERIOR: HOLDS_EXTERIOR, INTERIOR: FAILS_INTERIOR}[pos]


def gorenstein_check(g: GradingMatrix, hyp: Sequence[int]) -> str:
    """Numeric Gorenstein test for double-cover models of degree two del Pezzo fibrations.

    Applies only to gradings with two columns ``(1,0)``, three of the form
    ``(-a,1)`` and one ``(-d,2)``, and to hypersurfaces of degree ``(-n,4)``.
    The model is Gorenstein exactly when ``n = 2d``.
    """
    if len(g.cols) != 6 or hyp[1] != 4:
        return NOT_APPLICABLE
    base = [c for c in g.cols if c == (1, 0)]
    height1 = [c for c in g.cols if c[1] == 1]
    height2 = [c for c in g.cols if c[1] == 2]
    if len(base) != 2 or len(height1) != 3 or len(height2) != 1:
        return NOT_APPLICABLE
    return GORENSTEIN if hyp[0] == 2 * height2[0][0] else NOT_GORENSTEIN


__all__ = [
    "GradingMatrix", "GradingError", "ChamberFan", "ToricModel", "MobileConeWarning",
    "effective_cone", "chamber_fan", "model_from_chamber", "anticanonical_ambient",
    "adjunction_anticanonical", "mobile_cone_toric", "k_condition", "gorenstein_check",
    "hypersurface_is_mobile_interior",
    "HOLDS_BOUNDARY", "HOLDS_EXTERIOR", "FAILS_INTERIOR",
    "GORENSTEIN", "NOT_GORENSTEIN", "NOT_APPLICABLE",
]
