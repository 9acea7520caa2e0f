"""Monomial bases, constrained linear systems and their local analysis.

A member of a linear system on a rank-two toric variety is written as a sum
over *fibre monomials* (the part not involving the base variables ``u, v``)
times a coefficient polynomial in the base variables.  A
:class:`MonomialClass` records one fibre monomial, the degree ``k`` of its
coefficient and the power ``u_min`` of ``u`` forced to divide it.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .cones2d import cross, primitivize
from .graded_toric import GradingError, GradingMatrix, ToricModel, effective_cone

Exps = tuple


class LinearSystemError(ValueError):
    """Invalid linear system construction or transform."""


class ChartError(ValueError):
    def __init__(self, msg, det=None):
        super().__init__(msg)
        self.det = det


# --------------------------------------------------------------------------
# formatting

def format_monomial(exps: Sequence[int], names: Sequence[str], sep: str = "*") -> str:
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return sep.join(parts) if parts else "1"


_FACTOR = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9']*)\s*(?:\^\s*(\d+))?\s*$")


def parse_monomial(text: str, names: Sequence[str]) -> Exps:
    """Parse ``"x^3*z"`` into an exponent vector over ``names``."""
    exps = [0] * len(names)
    text = text.strip()
    if text == "1":
        return tuple(exps)
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise ValueError(f"cannot parse factor {factor!r} in monomial {text!r}")
        name, power = m.group(1), int(m.group(2) or 1)
        if name not in names:
            raise ValueError(f"unknown variable {name!r} in monomial {text!r}")
        exps[list(names).index(name)] += power
    return tuple(exps)


def grlex_key(exps: Sequence[int]):
    """Sort key putting monomials in descending graded-lex order."""
    return (-sum(exps), tuple(-e for e in exps))


# --------------------------------------------------------------------------
# enumeration

def enumerate_monomials(g: GradingMatrix, d: Sequence[int]) -> list[Exps]:
    """All exponent vectors ``e >= 0`` with ``A e = d``, in descending grlex order.

    Depth-first over the variables.  Each branch is bounded by a linear form
    positive on every column and pruned as soon as the remaining degree
    leaves the cone spanned by the columns not yet assigned.
    """
    cols = g.cols
    n = len(cols)
    lam = g.positive_functional()
    lam_col = [lam[0] * c[0] + lam[1] * c[1] for c in cols]
    d = (int(d[0]), int(d[1]))

    # suffix cones: (lo, hi) extreme columns of cols[i:], or None for a single ray
    suffix = []
    for i in range(n):
        rest = cols[i:]
        rays = {primitivize(c) for c in rest}
        lo = next(r for r in rays if all(cross(r, s) >= 0 for s in rays))
        hi = next(r for r in rays if all(cross(s, r) >= 0 for s in rays))
        suffix.append((lo, hi))

    def in_cone(r, i):
        if r == (0, 0):
            return True
        if i >= n:
            return False
        lo, hi = suffix[i]
        a, b = cross(lo, r), cross(r, hi)
        if lo == hi:
            return a == 0 and lo[0] * r[0] + lo[1] * r[1] > 0
        return a >= 0 and b >= 0

    out = []
    exps = [0] * n

    def rec(i, r):
        if not in_cone(r, i):
            return
        if r == (0, 0):
            out.append(tuple(exps))
            return
        if i == n - 1:
            c = cols[i]
            # r is a nonnegative multiple of c by in_cone
            k = (r[0] // c[0]) if c[0] else (r[1] // c[1])
            if (k * c[0], k * c[1]) == r:
                exps[i] = k
                out.append(tuple(exps))
                exps[i] = 0
            return
        budget = lam[0] * r[0] + lam[1] * r[1]
        c = cols[i]
        for e in range(budget // lam_col[i], -1, -1):
            exps[i] = e
            rec(i + 1, (r[0] - e * c[0], r[1] - e * c[1]))
        exps[i] = 0

    rec(0, d)
    out.sort(key=grlex_key)
    return out


def base_variables(g: GradingMatrix) -> tuple:
    """Variables spanning the fibration ray: two or more equal columns on an extreme ray.

    The first extreme ray (counterclockwise order) is preferred.  Returns an
    empty tuple when neither end of the effective cone qualifies.
    """
    eff = effective_cone(g)
    for r in (eff.lo, eff.hi):
        on = [v for v in g.vars if g.ray(v) == r]
        if len(on) >= 2 and len({g.col(v) for v in on}) == 1:
            return tuple(on)
    return ()


# --------------------------------------------------------------------------
# linear systems

@dataclass(frozen=True, order=True)
class MonomialClass:
    """A fibre monomial with a general coefficient of degree ``coeff_deg`` divisible by ``u^u_min``."""

    fibre: Exps
    coeff_deg: int
    u_min: int = 0

    def __post_init__(self):
        if not 0 <= self.u_min <= self.coeff_deg:
            raise LinearSystemError(
                f"u_min={self.u_min} must lie between 0 and coeff_deg={self.coeff_deg}")

    @property
    def free_deg(self) -> int:
        return self.coeff_deg - self.u_min


@dataclass(frozen=True)
class LinearSystem:
    ambient: GradingMatrix
    degree: tuple
    classes: tuple
    base: tuple = ()
    cancelled: int = field(default=0, compare=False)

    def __post_init__(self):
        seen = set()
        for c in self.classes:
            if c.fibre in seen:
                raise LinearSystemError("classes must have distinct fibre monomials")
            seen.add(c.fibre)
            if class_degree(self.ambient, self.base, c) != tuple(self.degree):
                raise LinearSystemError(
                    f"class {format_monomial(c.fibre, self.ambient.vars)} has the wrong degree")

    @property
    def u(self):
        return self.base[0] if self.base else None

    def fibres(self) -> list[Exps]:
        return [c.fibre for c in self.classes]

    def get(self, fibre: Exps):
        for c in self.classes:
            if c.fibre == fibre:
                return c
        return None

    def coefficient_monomials(self, c: MonomialClass) -> Iterator[Exps]:
        """Exponent vectors (over the full variable list) of the coefficient's monomials."""
        n = self.ambient.n
        if not self.base:
            yield (0,) * n
            return
        idx = [self.ambient.index(b) for b in self.base]
        free = c.coeff_deg - c.u_min
        for combo in itertools.combinations_with_replacement(range(len(idx)), free):
            e = [0] * n
            e[idx[0]] += c.u_min
            for j in combo:
                e[idx[j]] += 1
            yield tuple(e)

    def expand(self, c: MonomialClass | None = None) -> Iterator[Exps]:
        """Every monomial a general member may contain (of one class, or all)."""
        for cl in ([c] if c is not None else self.classes):
            for coef in self.coefficient_monomials(cl):
                yield tuple(a + b for a, b in zip(coef, cl.fibre))

    def dimension(self) -> int:
        return sum(1 for _ in self.expand())

    def fmt(self, c: MonomialClass) -> str:
        return format_monomial(c.fibre, self.ambient.vars)

    def fmt_term(self, c: MonomialClass) -> str:
        """The fibre monomial with its forced ``u`` power, e.g. ``u^2*x^2*y^2``."""
        fib = self.fmt(c)
        if c.u_min == 0 or not self.base:
            return fib
        up = self.u if c.u_min == 1 else f"{self.u}^{c.u_min}"
        return up if fib == "1" else f"{up}*{fib}"

    def table(self) -> dict:
        """Classes grouped by the degree of the free part of their coefficient."""
        cols: dict[int, list] = {}
        for c in self.classes:
            cols.setdefault(c.free_deg, []).append(c)
        return dict(sorted(cols.items()))


def class_degree(g: GradingMatrix, base: Sequence[str], c: MonomialClass) -> tuple:
    d = g.degree(c.fibre)
    if base:
        b = g.col(base[0])
        d = (d[0] + c.coeff_deg * b[0], d[1] + c.coeff_deg * b[1])
    return d


def fibre_classes(g: GradingMatrix, d: Sequence[int], base=None) -> dict:
    """Map each fibre monomial of ``|O(d)|`` to the degree of its coefficient."""
    if base is None:
        base = base_variables(g)
    bidx = [g.index(b) for b in base]
    out: dict[Exps, int] = {}
    for e in enumerate_monomials(g, d):
        k = sum(e[i] for i in bidx)
        fib = tuple(0 if i in bidx else x for i, x in enumerate(e))
        out.setdefault(fib, k)
    return dict(sorted(out.items(), key=lambda kv: (kv[1], grlex_key(kv[0]))))


def build_system(g: GradingMatrix, d: Sequence[int], constraints=(), exclude=(),
                 base=None) -> LinearSystem:
    """The sub-system of ``|O(d)|`` cut out by divisibility constraints.

    ``constraints`` is an iterable of ``(fibre, u_min)`` pairs; a fibre may
    be given as an exponent vector or a string like ``"x*y*z^2"``.  Fibres
    in ``exclude`` are dropped altogether.  All other fibre monomials keep a
    general coefficient.
    """
    if base is None:
        base = base_variables(g)
    full = fibre_classes(g, d, base)

    def as_exps(m):
        return parse_monomial(m, g.vars) if isinstance(m, str) else tuple(m)

    umin = {}
    for m, i in constraints:
        fib = as_exps(m)
        if fib not in full:
            raise LinearSystemError(
                f"{format_monomial(fib, g.vars)} is not a fibre monomial of degree {tuple(d)}")
        if i > full[fib]:
            raise LinearSystemError(
                f"u_min={i} exceeds coefficient degree {full[fib]} of "
                f"{format_monomial(fib, g.vars)}")
        if i and not base:
            raise LinearSystemError("u_min constraints need base variables")
        umin[fib] = i
    drop = set()
    for m in exclude:
        fib = as_exps(m)
        if fib not in full:
            raise LinearSystemError(
                f"{format_monomial(fib, g.vars)} is not a fibre monomial of degree {tuple(d)}")
        drop.add(fib)
    classes = tuple(MonomialClass(f, k, umin.get(f, 0)) for f, k in full.items() if f not in drop)
    return LinearSystem(g, (int(d[0]), int(d[1])), classes, tuple(base))


def missing_fibres(s: LinearSystem) -> list[Exps]:
    """Fibre monomials of the complete system that ``s`` leaves out."""
    full = fibre_classes(s.ambient, s.degree, s.base)
    have = set(s.fibres())
    return [f for f in full if f not in have]


def constraint_list(s: LinearSystem) -> tuple[list, list]:
    """Express ``s`` relative to the complete system: (constraints, excluded fibres)."""
    cons = [(c.fibre, c.u_min) for c in s.classes if c.u_min]
    return cons, missing_fibres(s)


# --------------------------------------------------------------------------
# strata and base loci

@dataclass(frozen=True)
class Stratum:
    zeros: frozenset

    def __post_init__(self):
        object.__setattr__(self, "zeros", frozenset(self.zeros))
        if not self.zeros:
            raise ValueError("a stratum needs at least one vanishing variable")

    def sorted(self, g: GradingMatrix) -> tuple:
        return tuple(v for v in g.vars if v in self.zeros)

    def fmt(self, g: GradingMatrix) -> str:
        return "(" + "=".join(self.sorted(g)) + "=0)"


def admissible(m: ToricModel, zeros: Iterable[str]) -> bool:
    z = set(zeros)
    f, g = m.irrelevant
    return not (set(f) <= z or set(g) <= z)


def class_vanishes(s: LinearSystem, c: MonomialClass, zeros) -> bool:
    """Whether the general member of class ``c`` vanishes identically on ``V(zeros)``."""
    z = set(zeros)
    names = s.ambient.vars
    if any(e > 0 and names[i] in z for i, e in enumerate(c.fibre)):
        return True
    if s.base:
        if s.u in z and c.u_min >= 1:
            return True
        if set(s.base) <= z and c.coeff_deg >= 1:
            return True
    return False


def base_locus(m: ToricModel, s: LinearSystem) -> list[Stratum]:
    """Inclusion-minimal admissible coordinate strata contained in the base locus."""
    if not s.classes:
        raise LinearSystemError("empty linear system: its base locus is everything")
    _check_ambient(m.grading, s)
    names = m.grading.vars
    hits = []
    for r in range(1, len(names) + 1):
        for combo in itertools.combinations(names, r):
            z = set(combo)
            if any(h <= z for h in hits):
                continue
            if not admissible(m, z):
                continue
            if all(class_vanishes(s, c, z) for c in s.classes):
                hits.append(frozenset(z))
    return [Stratum(h) for h in hits]


@dataclass(frozen=True)
class Certificate:
    cls: MonomialClass
    variable: str

    def fmt(self, s: LinearSystem) -> str:
        return s.fmt(self.cls)


def smoothness_certificate(m: ToricModel, s: LinearSystem, st: Stratum):
    """A class linear in one stratum variable whose coefficient survives on the stratum.

    Its presence makes the general member smooth along the open part of
    the stratum.  Returns ``None`` if there is no such class, in which case
    the stratum only carries singularity candidates.
    """
    if st.zeros not in {b.zeros for b in base_locus(m, s)}:
        raise ValueError(f"{st.fmt(m.grading)} is not a base stratum")
    names = s.ambient.vars
    for c in s.classes:
        hit = [(names[i], e) for i, e in enumerate(c.fibre) if e > 0 and names[i] in st.zeros]
        if len(hit) != 1 or hit[0][1] != 1:
            continue
        w = hit[0][0]
        others = tuple(0 if names[i] == w else e for i, e in enumerate(c.fibre))
        if class_vanishes(s, MonomialClass(others, c.coeff_deg, c.u_min), st.zeros):
            continue
        return Certificate(c, w)
    return None


# --------------------------------------------------------------------------
# local charts

@dataclass(frozen=True)
class LocalChart:
    """Invariant coordinates ``w / (a^alpha b^beta)`` near a torus-fixed point."""

    ambient: GradingMatrix
    nonzero: tuple
    coords: tuple
    exponents: Mapping = field(hash=False)

    def describe(self, w: str) -> str:
        a, b = self.nonzero
        al, be = self.exponents[w]
        den = format_monomial((al, be), (a, b)) if (al >= 0 and be >= 0) else None
        if den is None:
            return f"{w}*{a}^{-al}*{b}^{-be}"
        return w if den == "1" else f"{w}/({den})"


def local_chart(g: GradingMatrix, nonzero: Sequence[str], point_stratum=None) -> LocalChart:
    a, b = nonzero
    da, db = g.col(a), g.col(b)
    det = cross(da, db)
    if abs(det) != 1:
        raise ChartError(
            f"columns of {a},{b} have determinant {det}; local quotient group of order "
            f"{abs(det)}" if det else f"columns of {a},{b} are parallel (determinant 0)", det)
    coords = tuple(v for v in g.vars if v not in (a, b))
    if point_stratum is not None:
        zeros = point_stratum.zeros if isinstance(point_stratum, Stratum) else set(point_stratum)
        if set(zeros) != set(coords):
            raise ChartError("the point stratum must consist of all variables except the chart pair")
    table = {}
    for w in coords:
        dw = g.col(w)
        # Cramer's rule, exact since det = +-1
        alpha = cross(dw, db) * det
        beta = cross(da, dw) * det
        table[w] = (alpha, beta)
    return LocalChart(g, (a, b), coords, table)


@dataclass
class SupportReport:
    coords: tuple
    min_degree: int | None
    by_degree: dict
    pure_powers: dict
    note: str | None = None

    def fmt(self, exps) -> str:
        return format_monomial(exps, self.coords)


def local_support(s: LinearSystem, chart: LocalChart, max_degree: int = 6) -> SupportReport:
    """Support of the general member in the local coordinates of ``chart``.

    Setting the two chart variables to one turns each monomial into a
    monomial in the remaining coordinates with the same exponents.
    """
    if s.ambient.vars != chart.ambient.vars or s.ambient.cols != chart.ambient.cols:
        raise LinearSystemError("chart and system live on different ambients")
    idx = [s.ambient.index(v) for v in chart.coords]
    local = {tuple(e[i] for i in idx) for e in s.expand()}
    if not local:
        return SupportReport(chart.coords, None, {}, {})
    mind = min(sum(e) for e in local)
    by_deg = {}
    for e in sorted(local, key=grlex_key):
        t = sum(e)
        if t <= max_degree:
            by_deg.setdefault(t, []).append(e)
    by_deg = dict(sorted(by_deg.items()))
    pure = {}
    for e in local:
        nz = [i for i, x in enumerate(e) if x]
        if len(nz) == 1:
            v = chart.coords[nz[0]]
            pure[v] = min(pure.get(v, e[nz[0]]), e[nz[0]])
    pure = {v: pure[v] for v in chart.coords if v in pure}
    rep = SupportReport(chart.coords, mind, by_deg, pure)
    rep.note = _e6_note(rep)
    return rep


def _e6_note(rep: SupportReport):
    quad = rep.by_degree.get(2, [])
    if len(rep.coords) != 4 or rep.min_degree != 2 or len(quad) != 1 or max(quad[0]) != 2:
        return None
    sq = rep.coords[quad[0].index(2)]
    others = {v: p for v, p in rep.pure_powers.items() if v != sq}
    powers = sorted(others.values())
    if len(powers) >= 2 and powers[:2] == [3, 4] and (len(powers) == 2 or powers[2] > 4):
        names = [v for v, p in others.items() if p in (3, 4)]
        return (f"support {sq}^2 + {names[0]}^3 + {names[1]}^4 + ... is compatible with a cE6 "
                "point (heuristic; no analytic normal form computed)")
    return None


# --------------------------------------------------------------------------
# fibrewise transforms

def fibrewise_transform(s: LinearSystem, subst: Mapping, target: GradingMatrix,
                        content: int = 0, cancel: bool = True,
                        degree=None) -> LinearSystem:
    """Substitute ``w -> u^p w`` and divide out the common power of ``u``.

    ``subst`` maps a variable to the power ``p`` of the designated base
    variable ``u`` (or to ``(new_name, p)`` to rename).  ``content`` first
    multiplies the whole equation by ``u^content``, which is how an inverse
    transform restores the power cancelled on the way out.
    """
    if not s.base:
        raise LinearSystemError("a fibrewise transform needs base variables")
    names = s.ambient.vars
    rename = {}
    power = {}
    for v, p in subst.items():
        if v not in names:
            raise LinearSystemError(f"unknown variable {v!r}")
        if isinstance(p, tuple):
            rename[v], power[v] = p[0], int(p[1])
        else:
            power[v] = int(p)
    if any(power.get(b, 0) for b in s.base):
        raise LinearSystemError("base variables cannot be rescaled")
    new_names = [rename.get(v, v) for v in names]
    if set(new_names) != set(target.vars):
        raise LinearSystemError("target grading has different variables")
    tbase = tuple(rename.get(b, b) for b in s.base)
    if set(base_variables(target)) != set(tbase):
        raise LinearSystemError("base variables do not span the fibration ray of the target")

    shifted = []
    for c in s.classes:
        sh = sum(power.get(names[i], 0) * e for i, e in enumerate(c.fibre)) + content
        i_new = c.u_min + sh
        if i_new < 0:
            raise LinearSystemError(
                f"class {s.fmt(c)} would need u^{i_new}; the substitution is not content-cancellable")
        shifted.append((c.fibre, c.coeff_deg + sh, i_new))
    common = min(i for _, _, i in shifted) if (cancel and shifted) else 0

    perm = [new_names.index(v) for v in target.vars]
    classes = []
    degs = set()
    for fib, k, i in shifted:
        nf = tuple(fib[j] for j in perm)
        cl = MonomialClass(nf, k - common, i - common)
        classes.append(cl)
        degs.add(class_degree(target, tbase, cl))
    if len(degs) > 1:
        raise LinearSystemError(f"transformed classes have different degrees {sorted(degs)}")
    deg = degs.pop() if degs else tuple(degree or (0, 0))
    if degree is not None and tuple(degree) != deg:
        raise LinearSystemError(f"transformed system has degree {deg}, expected {tuple(degree)}")
    classes.sort(key=lambda c: (c.coeff_deg, grlex_key(c.fibre)))
    return LinearSystem(target, deg, tuple(classes), tbase, cancelled=common)


def inverse_substitution(subst: Mapping) -> dict:
    inv = {}
    for v, p in subst.items():
        if isinstance(p, tuple):
            inv[p[0]] = (v, -int(p[1]))
        else:
            inv[v] = -int(p)
    return inv


# --------------------------------------------------------------------------
# random members (used for soundness checks)

def instantiate(s: LinearSystem, seed: int = 0, lo: int = 1, hi: int = 10**6) -> dict:
    """A member of ``s`` with seeded random integer coefficients, as ``{exps: coeff}``."""
    rng = random.Random(seed)
    return {e: rng.randint(lo, hi) for e in s.expand()}


def derivative(poly: Mapping, i: int) -> dict:
    out = {}
    for e, c in poly.items():
        if e[i]:
            f = list(e)
            f[i] -= 1
            out[tuple(f)] = out.get(tuple(f), 0) + c * e[i]
    return {e: c for e, c in out.items() if c}


def restrict_zero(poly: Mapping, idx: Iterable[int]) -> dict:
    idx = list(idx)
    return {e: c for e, c in poly.items() if all(e[i] == 0 for i in idx)}


def _check_ambient(g: GradingMatrix, s: LinearSystem):
    if g.vars != s.ambient.vars or g.cols != s.ambient.cols:
        raise LinearSystemError("linear system and model have different gradings")


__all__ = [
    "MonomialClass", "LinearSystem", "Stratum", "Certificate", "LocalChart", "SupportReport",
    "ChartError", "LinearSystemError", "enumerate_monomials", "base_variables",
    "fibre_classes", "build_system", "missing_fibres", "constraint_list", "admissible",
    "class_vanishes", "base_locus", "smoothness_certificate", "local_chart",
    "local_support", "fibrewise_transform", "inverse_substitution",
    "instantiate", "derivative", "restrict_zero", "format_monomial", "parse_monomial",
    "grlex_key", "GradingError",
]
