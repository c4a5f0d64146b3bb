import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moebius.core import LimitExceeded, NotMember, RadiusTooSmall, distance, is_member
from moebius.complexes import (
    build_complex,
    delta_estimate,
    gromov_product,
    max_n_limit,
    r_tilde,
    ray_point,
    ray_tail_pieces,
    sample_ball_members,
    sample_members,
    sphere_points,
    tangent_dimension,
    visual_recovery_check,
)
from moebius.relations import star_relation

from conftest import (
    random_log_space,
    segment_exact,
    square_exact,
    square_float,
    star_exact,
    star_float,
)

LOG3 = math.log(3.0)


def test_star_complex_census_and_vertex():
    cx = build_complex(star_exact())
    assert len(cx.cells) == 5
    assert cx.f_vector_bounded == (1, 0)
    assert cx.f_vector_unbounded == (0, 4)
    assert cx.hasse == ((1, 0), (2, 0), (3, 0), (4, 0))
    (v,) = [c for c in cx.cells if c.dim == 0]
    assert v.witness == (Fraction(-1), 1, 1, 1)
    rays = cx.rays()
    assert sorted(c.ray_spec.center for c in rays) == [0, 1, 2, 3]
    tmins = {c.ray_spec.center: c.ray_spec.t_min for c in rays}
    assert tmins == {0: Fraction(-1), 1: 1, 2: 1, 3: 1}


def test_square_complex_census_and_side_lengths():
    cx = build_complex(square_exact())
    assert cx.f_vector_bounded == (4, 4, 1)
    assert cx.f_vector_unbounded == (0, 4, 0)
    assert len(cx.hasse) == 16
    for c in cx.cells:
        if c.dim == 1 and c.bounded:
            vs = cx.vertices_of(c)
            assert len(vs) == 2
            assert 2 * distance(vs[0].witness, vs[1].witness) == 2


def test_segment_complex_census():
    cx = build_complex(segment_exact())
    assert len(cx.cells) == 7
    assert cx.f_vector_bounded == (2, 1)
    verts = sorted(c.witness for c in cx.cells if c.dim == 0)
    assert verts == [(Fraction(-1), 1, 1, Fraction(-1)), (0, 0, 0, 0)]


def test_float_and_exact_star_have_the_same_shape():
    ce = build_complex(star_exact())
    cf = build_complex(star_float())
    assert [c.dim for c in ce.cells] == [c.dim for c in cf.cells]
    assert ce.hasse == cf.hasse
    assert r_tilde(star_float(), cf) == Fraction(LOG3)


def test_enumeration_guard(monkeypatch):
    sp = random_log_space(random.Random(1), 4)
    with pytest.raises(LimitExceeded):
        build_complex(sp, max_n=3)
    monkeypatch.setenv("MOEBIUS_MAX_N", "3")
    assert max_n_limit() == 3
    with pytest.raises(LimitExceeded):
        build_complex(sp)
    monkeypatch.delenv("MOEBIUS_MAX_N")
    assert max_n_limit(9) == 9


def test_sphere_points_of_float_star_at_radius_ten():
    sp = star_float()
    cx = build_complex(sp)
    spec = sphere_points(sp, cx, 10)
    x1 = tuple(float(v) for v in spec.points[1])
    assert x1 == (-10.0, 10.0, -10 + 2 * LOG3, -10 + 2 * LOG3)
    d = distance(spec.points[1], spec.points[2])
    assert float(d) == pytest.approx(20 - 2 * LOG3)
    g = gromov_product(spec.points[1], spec.points[2], (Fraction(0),) * 4)
    assert float(g) == pytest.approx(LOG3)
    with pytest.raises(RadiusTooSmall):
        sphere_points(sp, cx, Fraction(1, 2))


def test_visual_recovery_is_exact_for_exact_spaces():
    sp = star_exact()
    rep = visual_recovery_check(sp, 5)
    assert rep.exact and rep.max_deviation == 0.0
    rep2 = visual_recovery_check(sp, 17)
    assert {p[:2] for p in rep.products} == {p[:2] for p in rep2.products}
    assert dict((p[:2], p[2]) for p in rep.products) == dict(
        (p[:2], p[2]) for p in rep2.products)


def test_tangent_dimension_by_position():
    sp = square_exact()
    cx = build_complex(sp)
    for c in cx.cells:
        assert tangent_dimension(sp, c.witness) == c.dim
    with pytest.raises(NotMember):
        tangent_dimension(sp, (1, 1, 1, 1))


def test_ray_points_and_tail_pieces():
    sp = star_exact()
    cx = build_complex(sp)
    p = ray_point(sp, 0, 5)
    assert p == (5, -5, -5, -5)
    assert is_member(sp, p)
    assert ray_tail_pieces(sp, cx, 3) == 4


def test_sampling_stays_inside(rng):
    sp = random_log_space(rng, 5)
    cx = build_complex(sp)
    pts = sample_members(sp, cx, 60, rng)
    assert all(is_member(sp, t) for t in pts)
    rt = r_tilde(sp, cx)
    r = rt + 2
    ball = sample_ball_members(sp, cx, r, 60, rng)
    for t in ball:
        assert is_member(sp, t)
        assert max(abs(v) for v in t) <= r


def test_delta_estimates_on_the_fixtures():
    cx = build_complex(star_exact())
    assert delta_estimate(star_exact(), cx, samples=200, seed=1) == 0
    sq = square_exact()
    cxq = build_complex(sq)
    d = delta_estimate(sq, cxq, samples=400, seed=1)
    assert d > Fraction(1, 2)
    sf = square_float()
    cxf = build_complex(sf)
    df = delta_estimate(sf, cxf, samples=400, seed=1)
    assert df == pytest.approx(math.log(2.0))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 5))
def test_complex_structure_invariants(seed, n):
    """Rays are stars, one per point; dimensions stay within the bound."""
    sp = random_log_space(random.Random(seed), n)
    cx = build_complex(sp)
    rays = cx.rays()
    assert len(rays) == n
    assert sorted(c.ray_spec.center for c in rays) == list(range(n))
    for c in rays:
        assert c.relation.pairs == star_relation(n, c.ray_spec.center).pairs
    for c in cx.cells:
        assert c.dim <= n // 2
        assert is_member(sp, c.witness)
    # the face order is strict containment of relations
    by_id = {c.id: c for c in cx.cells}
    for cell_id, face_id in cx.hasse:
        assert by_id[cell_id].relation.pairs < by_id[face_id].relation.pairs
