"""The nine acceptance criteria, one or more tests each.

Every test carries a ``criterion`` marker; the terminal summary prints one
PASS/FAIL line per criterion.
"""
import math
import random
import warnings

import pytest

from oracles import brute_monomials
from tworay import reports
from tworay.cones2d import Cone2, cross, normalize_wall, primitivize
from tworay.game import (
    ANTIFLIP, BOUNDARY_FIBRATION, DIVISORIAL, FAILS_MORI, ISOMORPHISM_DISJOINT, K_TRIVIAL,
    NONTERMINAL, RESTRICTED_SMALL, SARKISOV_LINK, SMALL, run_game,
)
from tworay.graded_toric import (
    GradingError, GradingMatrix, adjunction_anticanonical, anticanonical_ambient, chamber_fan,
    k_condition, mobile_cone_toric, model_from_chamber,
)
from tworay.monomials import (
    LinearSystem, base_locus, build_system, enumerate_monomials, fibrewise_transform,
    inverse_substitution, local_chart, local_support, missing_fibres, parse_monomial,
    smoothness_certificate,
)
from tworay.scenario import apply_transform, builtin
from tworay.sectionring import ambient_weights, section_generators, wps_index

A = GradingMatrix.from_rows("u v x t y z", [1, 1, 0, -2, -2, -4], [0, 0, 1, 2, 1, 1])
A_PRIME = GradingMatrix.from_rows("u v x t z y", [1, 1, 0, 0, 0, -1], [0, 0, 1, 2, 1, 1])


def exps(text, g):
    return parse_monomial(text, g.vars)


def column_sets(columns, g):
    return {k: {exps(m, g) for m in ms} for k, ms in columns.items()}


# -------------------------------------------------------------------------- 1
L_TABLE = {
    0: ["x^3*z", "t^2", "x^2*y^2", "x*y*t"],
    2: ["x*y^3", "t*y^2", "x^2*y*z", "x*z*t"],
    4: ["y*z*t", "x*y^2*z", "y^4", "x^2*z^2"],
    6: ["x*y*z^2", "t*z^2", "y^3*z"],
    8: ["x*z^3", "y^2*z^2"],
    10: ["y*z^3"],
    12: ["z^4"],
}

# columns of the transformed equation: free coefficient degree -> monomials with
# their forced power of u written out
G_TABLE = {
    0: ["x^3*z", "x^2*z^2", "x*z^3", "z^4", "t^2", "x*z*t", "z^2*t", "u^2*x^2*y^2", "u*x*y*t"],
    1: ["x^2*y*z", "x*y*z^2", "y*z^3", "y*z*t"],
    2: ["x*y^2*z", "y^2*z^2", "y^2*t", "u*x*y^3"],
    3: ["y^3*z"],
    4: ["y^4"],
}


@pytest.mark.criterion(1, "monomial tables")
def test_l_table_columns():
    full = build_system(A, (-4, 4))
    got = {}
    for c in full.classes:
        got.setdefault(c.coeff_deg, set()).add(c.fibre)
    assert got == column_sets(L_TABLE, A)
    assert len(full.classes) == 19


@pytest.mark.criterion(1, "monomial tables")
def test_l_basis_dimension_matches_brute_force():
    fast = enumerate_monomials(A, (-4, 4))
    assert len(fast) == 99
    assert set(fast) == brute_monomials(A.cols, (-4, 4))
    assert build_system(A, (-4, 4)).dimension() == 99


@pytest.mark.criterion(1, "monomial tables")
def test_g_table_columns_and_missing_monomials():
    x = builtin("paper-X")
    g = fibrewise_transform(x.system(), dict(x.transform.shift), A_PRIME)
    u = A_PRIME.index("u")
    got = {}
    for c in g.classes:
        e = list(c.fibre)
        e[u] += c.u_min
        got.setdefault(c.coeff_deg - c.u_min, set()).add(tuple(e))
    assert got == column_sets(G_TABLE, A_PRIME)
    assert set(missing_fibres(g)) == {exps(m, A_PRIME) for m in ("x^4", "t*x^2", "x^3*y")}


# -------------------------------------------------------------------------- 2
@pytest.mark.criterion(2, "chamber data")
def test_chamber_rays_and_irrelevant_ideals():
    fan = chamber_fan(A)
    assert [r.as_tuple() for r in fan.rays] == [(1, 0), (0, 1), (-1, 1), (-2, 1), (-4, 1)]
    expected = [
        ({"u", "v"}, {"x", "y", "z", "t"}),
        ({"u", "v", "x"}, {"t", "y", "z"}),
        ({"u", "v", "x", "t"}, {"y", "z"}),
    ]
    for chamber, (f, g) in zip(fan.chambers, expected):
        got = model_from_chamber(A, chamber).irrelevant
        assert (set(got[0]), set(got[1])) == (f, g)


# -------------------------------------------------------------------------- 3
@pytest.mark.criterion(3, "anticanonical class and K-condition")
def test_anticanonical_and_k_condition():
    assert anticanonical_ambient(A) == (-6, 5)
    assert adjunction_anticanonical(A, (-4, 4)) == (-2, 1)
    mob = mobile_cone_toric(A)
    assert (mob.lo.as_tuple(), mob.hi.as_tuple()) == ((1, 0), (-2, 1))
    assert k_condition(A, (-4, 4)) == "holds_boundary"
    assert adjunction_anticanonical(A_PRIME, (0, 4)) == (1, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert k_condition(A_PRIME, (0, 4)) == "fails_interior"


# -------------------------------------------------------------------------- 4
@pytest.mark.criterion(4, "base locus and smoothness")
def test_base_locus_and_witnesses():
    x = builtin("paper-X")
    m, s = x.model(), x.system()
    strata = {st.zeros: st for st in base_locus(m, s)}
    assert set(strata) == {frozenset("uxyt"), frozenset("ytz")}
    line = smoothness_certificate(m, s, strata[frozenset("ytz")])
    assert line is not None and line.cls.fibre == exps("x^3*z", A) and line.variable == "z"
    assert smoothness_certificate(m, s, strata[frozenset("uxyt")]) is None


@pytest.mark.criterion(4, "base locus and smoothness")
def test_local_chart_at_the_singular_point():
    x = builtin("paper-X")
    chart = local_chart(A, ("v", "z"), point_stratum="uxty")
    assert dict(chart.exponents) == {"u": (1, 0), "x": (4, 1), "t": (6, 2), "y": (2, 1)}
    rep = local_support(x.system(), chart)
    t2 = tuple(2 if v == "t" else 0 for v in chart.coords)
    assert rep.min_degree == 2 and rep.by_degree[2] == [t2]
    assert {v: rep.pure_powers[v] for v in "txy"} == {"t": 2, "x": 3, "y": 4}


# -------------------------------------------------------------------------- 5
@pytest.mark.criterion(5, "game on X")
def test_game_on_x_first_failure():
    x = builtin("paper-X")
    tr = run_game(x.model(), x.system())
    assert tr.verdict == FAILS_MORI
    step = tr.steps[tr.failed_step]
    assert step.crossing.wall.as_tuple() == (0, 1)
    assert step.crossing.kind == SMALL
    assert step.crossing.weight_vector() == (1, 1, -2, -2, -4)
    assert step.restricted.result == RESTRICTED_SMALL
    assert step.restricted.weight_vector() == (1, 1, -2, -2)
    assert step.restricted.k_sign == ANTIFLIP
    assert step.check.reason == NONTERMINAL
    assert all(abs(w) >= 2 for w in step.restricted.extracted_weights())


@pytest.mark.criterion(5, "game on X")
def test_game_on_x_full_trace():
    x = builtin("paper-X")
    tr = run_game(x.model(), x.system(), full_trace=True)
    by_wall = {st.crossing.wall.as_tuple(): st for st in tr.steps}
    mid = by_wall[(-1, 1)]
    assert mid.crossing.weight_vector() == (1, 1, 1, -1, -3)
    assert mid.restricted.result == ISOMORPHISM_DISJOINT
    assert mid.restricted.witness.fibre == exps("t^2", A)
    end = by_wall[(-2, 1)]
    assert end.crossing.kind == DIVISORIAL and end.crossing.divisor == "z"
    assert end.check.reason == K_TRIVIAL
    assert [tr.steps[i].crossing.wall.as_tuple() for i, _ in tr.failures] == [(0, 1), (-2, 1)]
    assert tr.verdict == FAILS_MORI


# -------------------------------------------------------------------------- 6
@pytest.mark.criterion(6, "game on X'")
def test_game_on_x_prime_is_a_link():
    xp = builtin("paper-Xprime")
    tr = run_game(xp.model(), xp.system())
    assert tr.verdict == SARKISOV_LINK
    assert tr.steps[0].crossing.kind == BOUNDARY_FIBRATION
    last = tr.steps[-1].crossing
    assert last.kind == DIVISORIAL and last.divisor == "y"
    end = tr.end
    assert set(end.presentation.names()) == {"x", "z", "u*y", "v*y", "t"}
    assert sorted(end.weights) == [1, 1, 1, 1, 2]
    rw = end.rewritten
    assert rw is not None and end.rewrite_error is None
    gens = end.presentation.generators
    assert all(sum(gens[j].weight for j in f) == 4 for _, f in rw.terms)
    assert rw.image_degree == 4
    assert wps_index(end.weights, rw.image_degree) == 2


# -------------------------------------------------------------------------- 7
@pytest.mark.criterion(7, "section rings")
def test_section_ring_weights():
    assert ambient_weights(section_generators(A, (0, 1))) == [1] * 9 + [2] * 3
    assert ambient_weights(section_generators(A, (1, 0))) == [1, 1]


@pytest.mark.criterion(7, "section rings")
def test_section_ring_last_wall_is_stable_and_annotated():
    results = {b: ambient_weights(section_generators(A, (-2, 1), b)) for b in range(6, 15)}
    assert len({tuple(w) for w in results.values()}) == 1
    rep = reports.sections(builtin("paper-X"), (-2, 1))
    item = rep["rays"][0]
    assert item["claim"] is not None
    assert item["claim"]["weights"] == [1, 1, 2, 4, 6]
    assert "unreconciled" in item["claim"]["note"]


# -------------------------------------------------------------------------- 8
@pytest.mark.criterion(8, "transform round trip")
def test_transform_produces_x_prime():
    x = builtin("paper-X")
    rep = reports.transform(x)
    assert rep["cancelled_power"] == 12
    assert apply_transform(x).same_content(builtin("paper-Xprime"))


@pytest.mark.criterion(8, "transform round trip")
def test_inverse_substitution_restores_the_system():
    x = builtin("paper-X")
    s = x.system()
    sub = dict(x.transform.shift)
    g = fibrewise_transform(s, sub, A_PRIME)
    back = fibrewise_transform(g, inverse_substitution(sub), A, content=g.cancelled, cancel=False)
    assert back == s


# -------------------------------------------------------------------------- 9
def _random_pointed(rng, n):
    while True:
        cols = [(rng.randint(-4, 4), rng.randint(-4, 4)) for _ in range(n)]
        try:
            return GradingMatrix(tuple(f"x{i}" for i in range(n)), tuple(cols))
        except GradingError:
            continue


@pytest.mark.criterion(9, "property suites")
def test_enumeration_matches_brute_force_on_random_gradings():
    rng = random.Random(20240601)
    cases = 0
    while cases < 220:
        g = _random_pointed(rng, rng.randint(2, 6))
        d = (rng.randint(-12, 12), rng.randint(-12, 12))
        assert set(enumerate_monomials(g, d)) == brute_monomials(g.cols, d), (g, d)
        cases += 1


@pytest.mark.criterion(9, "property suites")
def test_normalize_wall_exhaustive():
    count = 0
    for a in range(-20, 21):
        for b in range(-20, 21):
            if (a, b) == (0, 0) or math.gcd(a, b) != 1:
                continue
            for orient in ((b, -a), (b + a, b - a), (2 * b - a, -2 * a - b)):
                if cross(orient, (a, b)) <= 0:
                    continue
                m = normalize_wall((a, b), orient)
                assert m.det() == 1
                assert m.apply((a, b)) == (0, 1)
                assert m.apply(orient)[0] > 0
                count += 1
    assert count > 1000


def _random_gl2(rng):
    while True:
        a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
        if abs(a * d - b * c) == 1:
            return a, b, c, d


def _apply(mat, v):
    a, b, c, d = mat
    return (a * v[0] + b * v[1], c * v[0] + d * v[1])


@pytest.mark.criterion(9, "property suites")
@pytest.mark.parametrize("name", ["paper-X", "paper-Xprime"])
def test_verdicts_invariant_under_change_of_basis(name):
    scn = builtin(name)
    s = scn.system()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        k0 = k_condition(scn.grading, s.degree)
    v0 = run_game(scn.model(), s).verdict
    rng = random.Random(name)
    for _ in range(50):
        mat = _random_gl2(rng)
        g = GradingMatrix(scn.grading.vars, tuple(_apply(mat, c) for c in scn.grading.cols))
        lo, hi = primitivize(_apply(mat, scn.chamber.lo)), primitivize(_apply(mat, scn.chamber.hi))
        chamber = Cone2(lo, hi) if cross(lo, hi) > 0 else Cone2(hi, lo)
        d = _apply(mat, s.degree)
        t = LinearSystem(g, d, s.classes, s.base)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            assert k_condition(g, d) == k0
        assert run_game(model_from_chamber(g, chamber), t).verdict == v0
