import math

import pytest
from hypothesis import assume, given, strategies as st

from tworay.cones2d import (
    BOUNDARY, EXTERIOR, IDENTITY, INTERIOR, Cone2, RayZ2, UnimodularMap, compare_rays,
    cone_position, cross, normalize_wall, primitivize, sort_rays,
)

small = st.integers(-30, 30)
vec = st.tuples(small, small).filter(lambda v: v != (0, 0))


def test_primitivize_examples():
    assert primitivize((-4, 2)) == RayZ2(-2, 1)
    assert primitivize((-2, 2)) == RayZ2(-1, 1)
    assert primitivize((3, 0)) == RayZ2(1, 0)
    with pytest.raises(ValueError):
        primitivize((0, 0))


def test_ray_rejects_non_primitive():
    with pytest.raises(ValueError):
        RayZ2(2, 4)


def test_compare_rays_examples():
    assert compare_rays((1, 0), (0, 1)) == -1
    assert compare_rays((-1, 1), (-2, 1)) == -1
    assert compare_rays((0, 1), (0, 1)) == 0
    with pytest.raises(ValueError):
        compare_rays((1, 0), (-1, 0))


def test_cone_position_examples():
    assert cone_position(Cone2((1, 0), (-2, 1)), (-2, 1)) == BOUNDARY
    assert cone_position(Cone2((1, 0), (-1, 1)), (1, 1)) == INTERIOR
    assert cone_position(Cone2((1, 0), (0, 1)), (-1, 2)) == EXTERIOR
    with pytest.raises(ValueError):
        cone_position(Cone2((1, 0), (0, 1)), (0, 0))


def test_cone_rejects_reflex_or_flat():
    with pytest.raises(ValueError):
        Cone2((0, 1), (1, 0))
    with pytest.raises(ValueError):
        Cone2((1, 0), (-1, 0))


def test_normalize_wall_examples():
    assert normalize_wall((-1, 1), (0, 1)).rows() == ((1, 1), (0, 1))
    assert normalize_wall((-2, 1), (-1, 1)).rows() == ((1, 2), (0, 1))
    assert normalize_wall((0, 1), (1, 0)) == IDENTITY


def test_normalize_wall_errors():
    with pytest.raises(ValueError):
        normalize_wall((2, 2), (1, 0))
    with pytest.raises(ValueError):
        normalize_wall((0, 1), (0, 3))


def test_unimodular_map_requires_det_one():
    with pytest.raises(ValueError):
        UnimodularMap(0, 1, 1, 0)
    m = UnimodularMap(2, 1, 1, 1)
    assert m.compose(m.inverse()) == IDENTITY


@given(vec, vec)
def test_normalize_wall_property(w, o):
    assume(cross(o, w) != 0)
    w = primitivize(w)
    if cross(o, w) < 0:
        o = (-o[0], -o[1])
    m = normalize_wall(w, o)
    assert m.det() == 1
    assert m.apply(w) == (0, 1)
    assert m.apply(o)[0] > 0


@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(0, 20)).filter(lambda v: v != (0, 0)
                                                                             and not (v[1] == 0 and v[0] < 0)),
                min_size=1, max_size=12))
def test_sort_rays_is_idempotent_total_order(vs):
    rays = sort_rays(vs)
    assert sort_rays(rays) == rays
    assert len(set(rays)) == len(rays)
    for a, b in zip(rays, rays[1:]):
        assert cross(a, b) > 0 and compare_rays(a, b) == -1


@given(vec, vec, vec)
def test_cone_position_partition(lo, hi, d):
    assume(cross(lo, hi) > 0)
    c = Cone2(lo, hi)
    pos = cone_position(c, d)
    assert pos in (INTERIOR, BOUNDARY, EXTERIOR)
    parallel = (cross(c.lo, d) == 0 and c.lo.x * d[0] + c.lo.y * d[1] > 0) or \
               (cross(c.hi, d) == 0 and c.hi.x * d[0] + c.hi.y * d[1] > 0)
    assert (pos == BOUNDARY) == parallel


@given(vec)
def test_primitivize_preserves_direction(v):
    r = primitivize(v)
    g = math.gcd(*v)
    assert (r.x * g, r.y * g) == tuple(v)
