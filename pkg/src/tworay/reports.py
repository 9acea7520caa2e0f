"""Plain-data reports for each analysis.

Every report is a JSON-serializable dict; the command line renders the
same dict as text, so both outputs carry identical information.
"""
from __future__ import annotations

import warnings

from . import game as gm
from .graded_toric import (
    MobileConeWarning, adjunction_anticanonical, anticanonical_ambient, chamber_fan,
    effective_cone, gorenstein_check, hypersurface_is_mobile_interior, k_condition,
    mobile_cone_toric, model_from_chamber,
)
from .monomials import (
    base_locus, build_system, derivative, fibrewise_transform, format_monomial, instantiate,
    local_chart, local_support, missing_fibres, restrict_zero, smoothness_certificate,
)
from .scenario import Scenario, ScenarioError, apply_transform, serialize
from .sectionring import ambient_weights, section_generators, weights_str

ASSUMPTIONS = [
    "Picard rank of the hypersurface is two (Lefschetz-type argument, not verified)",
    "the mobile cone of the hypersurface equals the toric mobile cone",
    "terminality and the Mori fibre space property are not verified",
]


def _ray(r):
    return [r[0], r[1]]


def _cone(c):
    return [_ray(c.lo), _ray(c.hi)]


def _need_hypersurface(s: Scenario):
    if not s.has_hypersurface:
        raise ScenarioError("this command needs a [hypersurface] block")


def _mobile_or_none(g):
    try:
        return _cone(mobile_cone_toric(g))
    except ValueError:
        return None  # the mobile cone degenerates to a ray or less


def describe(s: Scenario) -> dict:
    g = s.grading
    fan = chamber_fan(g)
    r1, r2 = g.rows()
    rep = {
        "command": "describe",
        "scenario": s.name,
        "grading": {"vars": list(g.vars), "row1": list(r1), "row2": list(r2)},
        "effective_cone": _cone(effective_cone(g)),
        "chamber_fan": {
            "rays": [_ray(r) for r in fan.rays],
            "multiplicity": [{"ray": _ray(r), "vars": list(fan.multiplicity[r])} for r in fan.rays],
            "chambers": [
                {"cone": _cone(c),
                 "irrelevant": [list(x) for x in model_from_chamber(g, c).irrelevant]}
                for c in fan.chambers],
        },
        "model": {"chamber": _cone(s.chamber),
                  "irrelevant": [list(x) for x in s.model().irrelevant]},
        "anticanonical_ambient": list(anticanonical_ambient(g)),
        "mobile_cone": _mobile_or_none(g),
        "hypersurface": None,
        "assumptions": list(ASSUMPTIONS),
    }
    if s.has_hypersurface:
        d = s.degree
        k = adjunction_anticanonical(g, d)
        hyp = {"degree": list(d), "anticanonical": list(k),
               "mobile_interior": hypersurface_is_mobile_interior(g, d),
               "gorenstein": gorenstein_check(g, d)}
        if k == (0, 0):
            hyp["k_condition"] = None
        else:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", MobileConeWarning)
                hyp["k_condition"] = k_condition(g, d)
        rep["hypersurface"] = hyp
    return rep


def monomials(s: Scenario, degree=None) -> dict:
    g = s.grading
    if degree is None:
        _need_hypersurface(s)
        degree = s.degree
    degree = tuple(degree)
    constrained = s.has_hypersurface and degree == tuple(s.degree)
    if constrained:
        sys_ = s.system()
    else:
        sys_ = build_system(g, degree)
    cols = []
    for free, classes in sys_.table().items():
        cols.append({"free_degree": free, "entries": [sys_.fmt_term(c) for c in classes]})
    return {
        "command": "monomials",
        "scenario": s.name,
        "degree": list(degree),
        "constrained": constrained,
        "base": list(sys_.base),
        "columns": cols,
        "fibre_count": len(sys_.classes),
        "dimension": sys_.dimension(),
        "missing": [format_monomial(f, g.vars) for f in missing_fibres(sys_)],
    }


def _certificate_verified(sys_, cert, zeros, seed) -> bool:
    """Seeded check that the derivative along the witness survives on the stratum."""
    g = sys_.ambient
    poly = instantiate(sys_, seed)
    der = derivative(poly, g.index(cert.variable))
    return bool(restrict_zero(der, [g.index(v) for v in zeros]))


def baselocus(s: Scenario, seed: int = 0) -> dict:
    _need_hypersurface(s)
    m, sys_ = s.model(), s.system()
    strata = []
    for st in base_locus(m, sys_):
        cert = smoothness_certificate(m, sys_, st)
        strata.append({
            "zeros": list(st.sorted(s.grading)),
            "certificate": sys_.fmt(cert.cls) if cert else None,
            "variable": cert.variable if cert else None,
            "verified": _certificate_verified(sys_, cert, st.zeros, seed) if cert else None,
            "status": "smooth along stratum" if cert else "singularity candidate",
        })
    return {"command": "baselocus", "scenario": s.name,
            "irrelevant": [list(x) for x in m.irrelevant], "strata": strata, "seed": seed}


def _auto_chart(s: Scenario):
    m, sys_ = s.model(), s.system()
    for st in base_locus(m, sys_):
        rest = [v for v in s.grading.vars if v not in st.zeros]
        if len(rest) == 2 and smoothness_certificate(m, sys_, st) is None:
            return tuple(rest)
    raise ScenarioError("no uncertified point stratum; pass --chart a,b")


def localchart(s: Scenario, chart=None, max_degree: int = 6) -> dict:
    _need_hypersurface(s)
    g, sys_ = s.grading, s.system()
    pair = tuple(chart) if chart else _auto_chart(s)
    ch = local_chart(g, pair)
    rep = local_support(sys_, ch, max_degree)
    return {
        "command": "localchart",
        "scenario": s.name,
        "nonzero": list(pair),
        "point": [v for v in g.vars if v not in pair],
        "coordinates": [{"var": w, "exponents": list(ch.exponents[w]), "coordinate": ch.describe(w)}
                        for w in ch.coords],
        "min_degree": rep.min_degree,
        "by_degree": {str(d): [rep.fmt(e) for e in es] for d, es in rep.by_degree.items()},
        "pure_powers": [[v, p] for v, p in rep.pure_powers.items()],
        "note": rep.note,
    }


def _crossing(step: gm.GameStep) -> dict:
    wc, rc, chk = step.crossing, step.restricted, step.check
    g = wc.grading
    return {
        "wall": _ray(wc.wall),
        "kind": wc.kind,
        "divisor": wc.divisor,
        "description": wc.describe(),
        "normalizer": [list(r) for r in wc.normalizer.rows()],
        "weights": {v: wc.weights[v] for v in g.vars},
        "wall_vars": list(wc.wall_vars),
        "restriction": {
            "result": rc.result,
            "rule": rc.rule,
            "eliminated": rc.eliminated,
            "witness": format_monomial(rc.witness.fibre, g.vars) if rc.witness else None,
            "weights": [w for w in rc.weights.values() if w != 0],
            "k_sign": rc.k_sign,
            "warning": rc.warning,
        },
        "mori": {"ok": chk.ok, "reason": chk.reason, "note": chk.note},
    }


def game(s: Scenario, full_trace: bool = False, bound: int = 12) -> dict:
    _need_hypersurface(s)
    tr = gm.run_game(s.model(), s.system(), full_trace=full_trace, bound=bound)
    verdict = {"kind": tr.verdict, "reason": tr.reason, "line": tr.verdict_line(),
               "wall": _ray(tr.steps[tr.failed_step].crossing.wall)
               if tr.failed_step is not None else None}
    end = None
    if tr.end is not None:
        e = tr.end
        end = {
            "kind": e.crossing.kind,
            "ray": _ray(e.crossing.wall),
            "divisor": e.crossing.divisor,
            "generators": [{"monomial": n, "weight": gen.weight}
                           for n, gen in zip(e.presentation.names(), e.presentation.generators)],
            "weights": e.weights,
            "ambient": weights_str(e.weights),
            "image_degree": e.image_degree,
            "index": e.index,
            "rewrite_error": e.rewrite_error,
            "rewritten_sample": [e.rewritten.term_str(i) for i in range(min(8, len(e.rewritten.terms)))]
            if e.rewritten else [],
            "description": e.describe(),
        }
    return {
        "command": "game",
        "scenario": s.name,
        "full_trace": full_trace,
        "reflected": tr.reflected,
        "anticanonical": list(tr.antican),
        "models": [{"chamber": _cone(m.chamber), "irrelevant": [list(x) for x in m.irrelevant]}
                   for m in tr.models],
        "steps": [_crossing(st) for st in tr.steps],
        "failures": [{"wall": _ray(tr.steps[i].crossing.wall), "reason": r} for i, r in tr.failures],
        "verdict": verdict,
        "end": end,
        "warnings": list(tr.warnings),
        "assumptions": list(ASSUMPTIONS),
    }


def sections(s: Scenario, ray=None, bound: int = 12) -> dict:
    g = s.grading
    rays = [ray] if ray is not None else list(chamber_fan(g).rays)
    out = []
    for r in rays:
        p = section_generators(g, r, bound)
        w = ambient_weights(p)
        item = {
            "ray": _ray(p.ray),
            "bound": bound,
            "generators": [{"monomial": n, "weight": gen.weight}
                           for n, gen in zip(p.names(), p.generators)],
            "weights": w,
            "ambient": weights_str(w),
            "complete": p.complete,
            "weight_certificate": p.weight_certificate,
            "claim": None,
        }
        claimed = s.claim("sections", p.ray)
        if claimed is not None:
            agree = sorted(claimed) == w
            item["claim"] = {
                "weights": list(claimed),
                "ambient": weights_str(claimed),
                "agrees": agree,
                "note": "claimed ambient matches the computed presentation" if agree else
                "claimed ambient differs from the computed presentation; left unreconciled",
            }
        out.append(item)
    return {"command": "sections", "scenario": s.name, "rays": out}


def transform(s: Scenario) -> dict:
    t = apply_transform(s)
    g = fibrewise_transform(s.system(), dict(s.transform.shift), s.transform.target)
    return {"command": "transform", "scenario": s.name, "degree": list(t.degree),
            "cancelled_power": g.cancelled, "output": serialize(t)}


__all__ = ["describe", "monomials", "baselocus", "localchart", "game", "sections", "transform",
           "ASSUMPTIONS"]
