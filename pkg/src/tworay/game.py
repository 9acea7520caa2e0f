"""The 2-ray game of a rank-two toric variety and its restriction to a hypersurface.

The toric game is read off the chamber fan: every interior ray of the
mobile cone is a wall where the model changes by a small modification, the
far end of the mobile cone is a divisorial contraction or a fibration.  A
hypersurface inherits the game when each toric step either misses it or
can be cut down by eliminating one variable locally; those two rules are
all that is attempted here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .cones2d import (
    Cone2, RayZ2, UnimodularMap, compare_rays, cross, normalize_wall, primitivize,
)
from .graded_toric import (
    GradingMatrix, ToricModel, adjunction_anticanonical, chamber_fan, effective_cone,
    mobile_cone_toric, model_from_chamber,
)
from .monomials import LinearSystem, MonomialClass, class_vanishes
from .sectionring import (
    RewriteError, SectionRingPresentation, ambient_weights, rewrite_in_generators,
    section_generators, wps_index,
)

SMALL = "small"
DIVISORIAL = "divisorial"
BOUNDARY_FIBRATION = "boundary_fibration"
BOUNDARY_DIVISORIAL = "boundary_divisorial"

RESTRICTED_SMALL = "restricted_small"
ISOMORPHISM_DISJOINT = "isomorphism_disjoint"
RESULT_DIVISORIAL = "divisorial"
RESULT_FIBRATION = "fibration"

FLIP, FLOP, ANTIFLIP, NOT_SMALL = "flip", "flop", "antiflip", "not_small"

INCONCLUSIVE = "restriction rule inconclusive"
NONTERMINAL = "non-isolated singularities on extracted locus"
K_TRIVIAL = "K-trivial contraction"

SARKISOV_LINK = "sarkisov_link"
FAILS_MORI = "fails_mori_category"
K_TRIVIAL_END = "k_trivial_end"


class GameError(ValueError):
    pass


@dataclass(frozen=True)
class WallCrossing:
    """One step of the toric game, in coordinates where the wall is ``(0,1)``.

    ``weights[v]`` is the first coordinate of ``normalizer @ deg(v)``.  The
    chamber we come from lies on the positive side unless ``reversed``.
    """

    grading: GradingMatrix
    wall: RayZ2
    normalizer: UnimodularMap
    weights: dict = field(hash=False)
    positive_side: tuple
    wall_vars: tuple
    negative_side: tuple
    kind: str
    divisor: Optional[str] = None
    reversed: bool = False

    @property
    def far_side(self) -> tuple:
        return self.positive_side if self.reversed else self.negative_side

    def weight_vector(self, names=None) -> tuple:
        names = names or [v for v in self.grading.vars if self.weights[v] != 0]
        return tuple(self.weights[v] for v in names)

    def describe(self) -> str:
        if self.kind == BOUNDARY_FIBRATION:
            return f"fibration at {self.wall} over ({','.join(self.wall_vars)})"
        if self.kind == BOUNDARY_DIVISORIAL:
            return f"boundary {self.wall} carried by {self.divisor} alone"
        w = ",".join(str(x) for x in self.weight_vector())
        if self.kind == SMALL:
            return f"small modification of type ({w}) at {self.wall}"
        return f"divisorial contraction of ({self.divisor}=0) at {self.wall}, weights ({w})"


def _sides(g: GradingMatrix, weights):
    pos = tuple(v for v in g.vars if weights[v] > 0)
    on = tuple(v for v in g.vars if weights[v] == 0)
    neg = tuple(v for v in g.vars if weights[v] < 0)
    return pos, on, neg


def classify_boundary(g: GradingMatrix, r) -> WallCrossing:
    """Classify an extreme ray of the effective cone as a fibration or a divisorial end."""
    r = primitivize(r)
    eff = effective_cone(g)
    fan = chamber_fan(g)
    if r == eff.lo:
        i = fan.chambers[0].interior_ray()
        orient = (-i.x, -i.y)
    elif r == eff.hi:
        orient = fan.chambers[-1].interior_ray()
    else:
        raise GameError(f"{r} is not an extreme ray of {eff}")
    m = normalize_wall(r, orient)
    weights = {v: m.apply(c)[0] for v, c in zip(g.vars, g.cols)}
    pos, on, neg = _sides(g, weights)
    if len(on) >= 2:
        return WallCrossing(g, r, m, weights, pos, on, neg, BOUNDARY_FIBRATION)
    return WallCrossing(g, r, m, weights, pos, on, neg, BOUNDARY_DIVISORIAL, divisor=on[0])


def classify_wall(g: GradingMatrix, w, from_chamber: Cone2) -> WallCrossing:
    """Normalize an interior wall and read off the weights of the crossing."""
    w = primitivize(w)
    fan = chamber_fan(g)
    if w not in fan.interior_rays():
        raise GameError(f"{w} is not an interior wall of the chamber fan")
    fan.chamber_index(from_chamber)
    i = from_chamber.interior_ray()
    if from_chamber.hi == w:
        orient, rev = i, False
    elif from_chamber.lo == w:
        orient, rev = (-i.x, -i.y), True
    else:
        raise GameError(f"{from_chamber} is not adjacent to the wall {w}")
    m = normalize_wall(w, orient)
    weights = {v: m.apply(c)[0] for v, c in zip(g.vars, g.cols)}
    pos, on, neg = _sides(g, weights)
    far, near = (pos, neg) if rev else (neg, pos)
    if len(far) == 1:
        kind, div = DIVISORIAL, far[0]
    elif len(near) == 1:
        kind, div = DIVISORIAL, near[0]
    else:
        kind, div = SMALL, None
    return WallCrossing(g, w, m, weights, pos, on, neg, kind, div, rev)


@dataclass(frozen=True)
class RestrictedCrossing:
    parent: WallCrossing
    result: str
    weights: dict = field(hash=False)
    eliminated: Optional[str] = None
    witness: Optional[MonomialClass] = None
    rule: Optional[str] = None
    warning: Optional[str] = None

    @property
    def k_sign(self) -> str:
        if self.result != RESTRICTED_SMALL:
            return NOT_SMALL
        s = sum(self.weights.values())
        if self.parent.reversed:
            s = -s
        return FLIP if s > 0 else FLOP if s == 0 else ANTIFLIP

    def weight_vector(self) -> tuple:
        return tuple(w for w in self.weights.values() if w != 0)

    def extracted_weights(self) -> tuple:
        far = self.parent.far_side
        return tuple(self.weights[v] for v in far if v in self.weights)


def _check_system(g: GradingMatrix, s: LinearSystem):
    if g.vars != s.ambient.vars or g.cols != s.ambient.cols:
        raise GameError("linear system and wall crossing use different gradings")


def _disjoint_witness(wc: WallCrossing, s: LinearSystem):
    off = {v for v, x in wc.weights.items() if x != 0}
    names = s.ambient.vars
    for c in s.classes:
        support = {names[i] for i, e in enumerate(c.fibre) if e}
        if support <= set(wc.wall_vars) and not class_vanishes(s, c, off):
            return c
    return None


def _elimination_witness(wc: WallCrossing, s: LinearSystem):
    off = {v for v, x in wc.weights.items() if x != 0}
    names = s.ambient.vars
    for c in s.classes:
        offwall = [(names[i], e) for i, e in enumerate(c.fibre) if e and names[i] in off]
        if len(offwall) != 1 or offwall[0][1] != 1:
            continue
        v = offwall[0][0]
        rest = tuple(0 if names[i] == v else e for i, e in enumerate(c.fibre))
        if not class_vanishes(s, MonomialClass(rest, c.coeff_deg, c.u_min), off):
            return v, c
    return None


def restrict_to_hypersurface(wc: WallCrossing, s: LinearSystem) -> RestrictedCrossing:
    """Restrict a toric crossing to the general member of ``s``.

    Rules, in order: a class supported on the wall variables alone whose
    coefficient survives off the wall makes the hypersurface miss the
    flipping locus; a class linear in exactly one off-wall variable lets that
    variable be eliminated locally.  Otherwise the toric weights are kept
    and a warning is attached.
    """
    _check_system(wc.grading, s)
    weights = dict(wc.weights)
    if wc.kind in (BOUNDARY_FIBRATION, BOUNDARY_DIVISORIAL, DIVISORIAL):
        result = RESULT_FIBRATION if wc.kind == BOUNDARY_FIBRATION else RESULT_DIVISORIAL
        found = _elimination_witness(wc, s) if wc.kind != BOUNDARY_FIBRATION else None
        if found:
            v, c = found
            weights.pop(v)
            return RestrictedCrossing(wc, result, weights, v, c, "elimination")
        return RestrictedCrossing(wc, result, weights)

    c = _disjoint_witness(wc, s)
    if c is not None:
        return RestrictedCrossing(wc, ISOMORPHISM_DISJOINT, weights, None, c, "disjoint")
    found = _elimination_witness(wc, s)
    if found:
        v, c = found
        weights.pop(v)
        return RestrictedCrossing(wc, RESTRICTED_SMALL, weights, v, c, "elimination")
    return RestrictedCrossing(wc, RESTRICTED_SMALL, weights, warning=INCONCLUSIVE)


@dataclass(frozen=True)
class MoriCheck:
    ok: bool
    reason: Optional[str] = None
    note: Optional[str] = None


def mori_check(rc: RestrictedCrossing, antican) -> MoriCheck:
    """Does this step keep the game inside the Mori category?

    Terminal threefold singularities are isolated, so a small step whose
    extracted locus has every weight at least two in absolute value fails.
    A contraction whose wall is proportional to the anticanonical class
    contracts K-trivial curves and fails as well.
    """
    note = None
    if rc.result == RESTRICTED_SMALL:
        ext = rc.extracted_weights()
        if len(ext) >= 2 and all(abs(w) >= 2 for w in ext):
            return MoriCheck(False, NONTERMINAL,
                             f"extracted locus has weights ({','.join(str(abs(w)) for w in ext)})")
        if any(abs(w) >= 2 for w in ext):
            note = "extracted locus carries isolated quotient points; they may be terminal"
    if rc.result != ISOMORPHISM_DISJOINT and tuple(antican) != (0, 0) \
            and cross(rc.parent.wall, antican) == 0:
        return MoriCheck(False, K_TRIVIAL, f"wall {rc.parent.wall} is proportional to -K = {tuple(antican)}")
    return MoriCheck(True, None, note)


@dataclass(frozen=True)
class GameStep:
    crossing: WallCrossing
    restricted: RestrictedCrossing
    check: MoriCheck


@dataclass
class LinkEnd:
    crossing: WallCrossing
    presentation: SectionRingPresentation
    weights: list
    image_degree: Optional[int] = None
    index: Optional[int] = None
    rewritten: Optional[object] = None
    rewrite_error: Optional[str] = None

    def describe(self) -> str:
        from .sectionring import weights_str
        amb = weights_str(self.weights)
        if self.crossing.kind == BOUNDARY_FIBRATION:
            return f"fibration over {amb}"
        head = f"divisorial contraction of ({self.crossing.divisor}=0) to {amb}"
        if self.image_degree is not None:
            head += f"; image is a hypersurface of degree {self.image_degree}, index {self.index}"
        return head


@dataclass
class GameTrace:
    models: list
    steps: list
    verdict: str
    reason: Optional[str] = None
    failed_step: Optional[int] = None
    failures: list = field(default_factory=list)
    end: Optional[LinkEnd] = None
    warnings: list = field(default_factory=list)
    antican: tuple = ()
    reflected: bool = False  # walls are reported with the two coordinates swapped

    def verdict_line(self) -> str:
        if self.verdict == SARKISOV_LINK:
            return f"LINK: {self.end.describe()}"
        wall = self.steps[self.failed_step].crossing.wall
        if self.verdict == K_TRIVIAL_END:
            return f"K-TRIVIAL END at wall {wall}"
        return f"FAIL at wall {wall}: {self.reason}"


def _end_of_link(wc: WallCrossing, s: LinearSystem, bound: int) -> LinkEnd:
    p = section_generators(wc.grading, wc.wall, bound)
    w = ambient_weights(p)
    end = LinkEnd(wc, p, w)
    if wc.kind != BOUNDARY_FIBRATION:
        try:
            rw = rewrite_in_generators(s, p)
        except RewriteError as exc:
            end.rewrite_error = str(exc)
        else:
            end.rewritten = rw
            end.image_degree = rw.image_degree
            end.index = wps_index(w, rw.image_degree)
    return end


def run_game(m: ToricModel, s: LinearSystem, full_trace: bool = False,
             bound: int = 12) -> GameTrace:
    """Play the 2-ray game from the fibration end of ``m`` and restrict it to ``s``.

    Stops at the first step leaving the Mori category unless ``full_trace``.
    """
    g = m.grading
    _check_system(g, s)
    fan = chamber_fan(g)
    eff = effective_cone(g)
    start = classify_boundary(g, eff.lo)
    if start.kind != BOUNDARY_FIBRATION:
        if classify_boundary(g, eff.hi).kind != BOUNDARY_FIBRATION:
            raise GameError("no fibration boundary")
        # Reverse the orientation so the fibration ray comes first.
        rg = g.reflect()
        rc = Cone2(RayZ2(m.chamber.hi.y, m.chamber.hi.x), RayZ2(m.chamber.lo.y, m.chamber.lo.x))
        rs = LinearSystem(rg, (s.degree[1], s.degree[0]), s.classes, s.base)
        trace = run_game(model_from_chamber(rg, rc), rs, full_trace, bound)
        trace.reflected = True
        return trace
    if m.chamber != fan.chambers[0]:
        raise GameError(f"the model's chamber {m.chamber} does not touch the fibration ray {eff.lo}")
    mob = mobile_cone_toric(g)
    antican = adjunction_anticanonical(g, s.degree)

    crossings = [start]
    models = [m]
    for i, w in enumerate(fan.interior_rays()):
        if compare_rays(w, mob.hi) > 0:
            break
        crossings.append(classify_wall(g, w, fan.chambers[i]))
        if w != mob.hi:
            models.append(model_from_chamber(g, fan.chambers[i + 1]))
    if mob.hi == eff.hi:
        crossings.append(classify_boundary(g, eff.hi))

    steps, failures, warns = [], [], []
    for wc in crossings:
        rc = restrict_to_hypersurface(wc, s)
        chk = mori_check(rc, antican)
        steps.append(GameStep(wc, rc, chk))
        if rc.warning:
            warns.append(f"{wc.wall}: {rc.warning}")
        if not chk.ok:
            failures.append((len(steps) - 1, chk.reason))
            if not full_trace:
                break

    trace = GameTrace(models, steps, SARKISOV_LINK, failures=failures, warnings=warns,
                      antican=antican)
    if failures:
        idx, reason = failures[0]
        last = idx == len(crossings) - 1
        trace.verdict = K_TRIVIAL_END if (reason == K_TRIVIAL and last) else FAILS_MORI
        trace.reason, trace.failed_step = reason, idx
    else:
        trace.end = _end_of_link(crossings[-1], s, bound)
    return trace


__all__ = [
    "WallCrossing", "RestrictedCrossing", "MoriCheck", "GameStep", "GameTrace", "LinkEnd",
    "GameError", "classify_boundary", "classify_wall", "restrict_to_hypersurface",
    "mori_check", "run_game",
    "SMALL", "DIVISORIAL", "BOUNDARY_FIBRATION", "BOUNDARY_DIVISORIAL",
    "RESTRICTED_SMALL", "ISOMORPHISM_DISJOINT", "RESULT_DIVISORIAL", "RESULT_FIBRATION",
    "FLIP", "FLOP", "ANTIFLIP", "NOT_SMALL", "INCONCLUSIVE", "NONTERMINAL", "K_TRIVIAL",
    "SARKISOV_LINK", "FAILS_MORI", "K_TRIVIAL_END",
]
