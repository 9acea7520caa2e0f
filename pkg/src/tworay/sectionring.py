"""Section rings of rays: generators, weighted projective ambients, rewriting."""
from __future__ import annotations

from collections import Counter
from math import gcd
from dataclasses import dataclass
from typing import Sequence

from .cones2d import RayZ2, cross, dot, primitivize
from .graded_toric import GradingError, GradingMatrix, effective_cone
from .monomials import LinearSystem, enumerate_monomials, format_monomial

DEFAULT_BOUND = 12


class RewriteError(ValueError):
    def __init__(self, msg, monomial=None):
        super().__init__(msg)
        self.monomial = monomial


@dataclass(frozen=True)
class Generator:
    exps: tuple
    weight: int


@dataclass(frozen=True)
class SectionRingPresentation:
    """Minimal monomial generators of ``⊕_m H^0(O(m r))`` up to weight ``degree_bound``.

    ``weight_certificate`` bounds the weight of every minimal generator, so
    the list is known to be complete once ``degree_bound`` reaches it.
    """

    grading: GradingMatrix
    ray: RayZ2
    generators: tuple
    degree_bound: int
    complete_up_to_bound: bool
    weight_certificate: int

    @property
    def complete(self) -> bool:
        return self.degree_bound >= self.weight_certificate

    def names(self) -> list[str]:
        return [format_monomial(gen.exps, self.grading.vars) for gen in self.generators]

    def __str__(self):
        w = ambient_weights(self)
        return f"P({','.join(map(str, w))}) via " + ", ".join(self.names())


def _weight_certificate(g: GradingMatrix, r: RayZ2) -> int:
    """Sum of the weights of the extreme rays of ``{e >= 0 : A e in Z_{>=0} r}``.

    Every element of the Hilbert basis of that cone is an extreme ray or has
    weight below this sum.
    """
    on, pos, neg = [], [], []
    for c in g.cols:
        s = cross(c, r)
        if s == 0:
            if dot(c, r) > 0:
                on.append(c)
        elif s > 0:
            pos.append((c, s))
        else:
            neg.append((c, -s))
    total = 0
    for c in on:
        total += abs(c[0] // r[0]) if r[0] else abs(c[1] // r[1])
    for cp, sp in pos:
        for cn, sn in neg:
            h = gcd(sp, sn)
            a, b = sn // h, sp // h
            d = (a * cp[0] + b * cn[0], a * cp[1] + b * cn[1])
            total += d[0] // r[0] if r[0] else d[1] // r[1]
    return total


def section_generators(g: GradingMatrix, r: Sequence[int], bound: int = DEFAULT_BOUND
                       ) -> SectionRingPresentation:
    """Minimal monomial generators of the section ring of the ray ``r``.

    A monomial of degree ``m r`` is a new generator exactly when no earlier
    generator divides it: the quotient would again have degree a multiple
    of ``r`` and so lie in the algebra generated so far.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    ray = primitivize(r)
    if not effective_cone(g).contains(ray):
        raise GradingError(f"ray {ray} is outside the effective cone")
    gens: list[Generator] = []
    for m in range(1, bound + 1):
        for e in enumerate_monomials(g, (m * ray.x, m * ray.y)):
            if not any(all(a >= b for a, b in zip(e, gen.exps)) for gen in gens):
                gens.append(Generator(e, m))
    cert = _weight_certificate(g, ray)
    return SectionRingPresentation(g, ray, tuple(gens), bound, True, cert)


def ambient_weights(p: SectionRingPresentation) -> list[int]:
    return sorted(gen.weight for gen in p.generators)


def weights_str(weights: Sequence[int]) -> str:
    """``P(1^9,2^3)`` style notation."""
    if len(weights) <= 6:
        return "P(" + ",".join(str(w) for w in sorted(weights)) + ")"
    c = Counter(weights)
    return "P(" + ",".join(f"{w}^{n}" if n > 1 else str(w) for w, n in sorted(c.items())) + ")"


@dataclass(frozen=True)
class RewrittenSystem:
    presentation: SectionRingPresentation
    image_degree: int
    terms: tuple  # (monomial exps, tuple of generator indices)

    def term_str(self, i: int) -> str:
        names = self.presentation.names()
        _, factors = self.terms[i]
        counts = Counter(factors)
        return "*".join(
            (f"({names[j]})" if len(names[j]) > 1 and "*" in names[j] else names[j])
            + (f"^{n}" if n > 1 else "") for j, n in sorted(counts.items()))


def _factor(e, order, gens, memo):
    if not any(e):
        return ()
    if e in memo:
        return memo[e]
    memo[e] = None
    for j in order:
        ge = gens[j].exps
        if all(a >= b for a, b in zip(e, ge)):
            rest = _factor(tuple(a - b for a, b in zip(e, ge)), order, gens, memo)
            if rest is not None:
                memo[e] = (j,) + rest
                break
    return memo[e]


def rewrite_in_generators(s: LinearSystem, p: SectionRingPresentation) -> RewrittenSystem:
    """Write every monomial of ``s`` as a product of the generators of ``p``.

    Factors are tried by descending weight and then in generator order,
    with backtracking, so the first factorization found is deterministic.
    Raises :class:`RewriteError` at the first monomial with none.
    """
    g = p.grading
    if s.ambient.vars != g.vars or s.ambient.cols != g.cols:
        raise RewriteError("system and presentation have different gradings")
    d, r = s.degree, p.ray
    if cross(d, r) != 0 or dot(d, r) <= 0:
        raise RewriteError(f"degree {tuple(d)} is not a positive multiple of the ray {r}")
    m = d[0] // r.x if r.x else d[1] // r.y
    if not p.complete and m > p.degree_bound:
        raise RewriteError(f"presentation is only known up to weight {p.degree_bound} < {m}")
    gens = p.generators
    order = sorted(range(len(gens)), key=lambda j: (-gens[j].weight, j))
    memo: dict = {}
    terms = []
    for e in s.expand():
        f = _factor(e, order, gens, memo)
        if f is None:
            raise RewriteError(
                f"{format_monomial(e, g.vars)} is not a product of the generators", e)
        if sum(gens[j].weight for j in f) != m:
            raise RewriteError(f"{format_monomial(e, g.vars)} has the wrong weight", e)
        terms.append((e, f))
    return RewrittenSystem(p, m, tuple(terms))


def wps_index(weights: Sequence[int], hyp_degree: int) -> int:
    """Fano index of a hypersurface of degree ``hyp_degree`` in ``P(weights)``."""
    return sum(weights) - hyp_degree


__all__ = [
    "Generator", "SectionRingPresentation", "RewrittenSystem", "RewriteError",
    "section_generators", "ambient_weights", "weights_str", "rewrite_in_generators",
    "wps_index", "DEFAULT_BOUND",
]
