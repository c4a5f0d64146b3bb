import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from moebius.core import LimitExceeded, NotFour, OutOfRange, SameClass, TooSmall
from moebius.complexes import build_complex
from moebius.hull import tight_span
from moebius.teich import (
    classify4,
    d_moeb,
    geodesic_point,
    is_equivalent,
    lattice_fingerprint,
    moebius_ratio,
    moebius_symmetries,
    normalize,
    phi,
    phi_inverse,
)

from conftest import (
    random_simplex_weights,
    segment_exact,
    square_exact,
    square_float,
    star_exact,
    star_float,
    tripod_metric,
)

LOG2 = math.log(2.0)
LOG3 = math.log(3.0)

BALANCED = (Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))
SQUARE = (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))


def test_normalize_fixture_minors():
    st_minor = normalize(star_exact()).minor()
    assert st_minor == pytest.approx((1 / 3, 1 / 3, 1 / 3))
    seg = normalize(segment_exact()).minor()
    assert seg[1] == seg[2]
    assert seg == pytest.approx(
        (0.15536240349696362, 0.4223187982515182, 0.4223187982515182))
    assert sum(seg) == pytest.approx(1.0)


def test_normalize_rejects_small_spaces():
    with pytest.raises(TooSmall):
        normalize(tripod_metric().d)


def test_phi_inverse_validates():
    with pytest.raises(OutOfRange):
        phi_inverse((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
    with pytest.raises(OutOfRange):
        phi_inverse((Fraction(0), Fraction(1, 2), Fraction(1, 2)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 6))
def test_phi_round_trip_is_exact(seed, m):
    w = random_simplex_weights(random.Random(seed), m)
    na = phi_inverse(w)
    assert phi(na).coordinates == tuple(w)
    assert normalize(na.rho).rho == na.rho


def test_frozen_ratio_and_distance():
    q = moebius_ratio(phi_inverse(BALANCED), phi_inverse(SQUARE))
    assert isinstance(q, Fraction) and q == 2
    assert d_moeb(phi_inverse(BALANCED), phi_inverse(SQUARE)) == pytest.approx(
        LOG2, abs=1e-12)
    assert moebius_ratio(phi_inverse(SQUARE), phi_inverse(SQUARE)) == 1
    assert is_equivalent(phi_inverse(SQUARE), phi_inverse(SQUARE))


def test_equivalence_across_modes():
    assert is_equivalent(star_exact(), star_float())
    assert not is_equivalent(star_exact(), square_exact())
    # the two square fixtures share a shape but not a class
    assert not is_equivalent(square_exact(), square_float())
    assert classify4(square_exact()).tag == classify4(square_float()).tag


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_ratio_axioms(seed):
    rng = random.Random(seed)
    xs = [phi_inverse(random_simplex_weights(rng, 4)) for _ in range(3)]
    q01 = moebius_ratio(xs[0], xs[1])
    assert q01 == moebius_ratio(xs[1], xs[0])
    assert q01 >= 1
    assert (q01 == 1) == (xs[0].rho == xs[1].rho)
    d01 = d_moeb(xs[0], xs[1])
    d12 = d_moeb(xs[1], xs[2])
    d02 = d_moeb(xs[0], xs[2])
    assert d02 <= d01 + d12 + 1e-9


def test_geodesic_is_unit_speed():
    a = phi_inverse(BALANCED)
    b = phi_inverse(SQUARE)
    d = d_moeb(a, b)
    assert geodesic_point(a, b, 0).minor() == pytest.approx(
        tuple(float(v) for v in a.minor()))
    assert geodesic_point(a, b, d).minor() == pytest.approx(
        tuple(float(v) for v in b.minor()))
    for s, t in [(0.0, d), (-1.5, 2.0), (0.3, d + 2.5), (-2.0, -0.5)]:
        gs = geodesic_point(a, b, s)
        gt = geodesic_point(a, b, t)
        assert d_moeb(gs, gt) == pytest.approx(abs(s - t), abs=1e-9)
    with pytest.raises(SameClass):
        geodesic_point(a, a, 1.0)


def test_classify4_all_seven_regions():
    o = classify4(phi_inverse(BALANCED))
    assert o.tag == "O" and o.sides == ()

    b1 = classify4(phi_inverse((Fraction(1, 6), Fraction(2, 6), Fraction(3, 6))))
    assert b1.tag == "B1"
    assert b1.sides == pytest.approx((2 * LOG3, 2 * math.log(1.5)))
    assert b1.sides[0] >= b1.sides[1]
    assert classify4(phi_inverse(
        (Fraction(3, 6), Fraction(1, 6), Fraction(2, 6)))).tag == "B2"
    assert classify4(phi_inverse(
        (Fraction(2, 6), Fraction(3, 6), Fraction(1, 6)))).tag == "B3"

    l1 = classify4(phi_inverse((Fraction(1, 5), Fraction(2, 5), Fraction(2, 5))))
    assert l1.tag == "L1" and l1.sides == pytest.approx((2 * LOG2,))
    assert classify4(phi_inverse(
        (Fraction(2, 5), Fraction(1, 5), Fraction(2, 5)))).tag == "L2"
    assert classify4(phi_inverse(
        (Fraction(2, 5), Fraction(2, 5), Fraction(1, 5)))).tag == "L3"


def test_classify4_of_the_fixture_spaces():
    assert classify4(star_exact()).tag == "O"
    seg = classify4(segment_exact())
    assert seg.tag == "L1"
    assert seg.sides == pytest.approx((2.0,))
    with pytest.raises(NotFour):
        classify4(phi_inverse(random_simplex_weights(random.Random(0), 5)))


def test_symmetry_groups_of_the_named_classes():
    syms = moebius_symmetries(star_exact())
    assert len(syms) == 24
    sq = moebius_symmetries(square_exact())
    assert len(sq) == 8
    perms = set(sq)
    assert tuple(range(4)) in perms
    for g in sq:
        inv = tuple(g.index(k) for k in range(4))
        assert inv in perms
        for h in sq:
            assert tuple(g[h[k]] for k in range(4)) in perms
    with pytest.raises(LimitExceeded):
        moebius_symmetries(star_exact(), max_m=3)


def test_lattice_fingerprint_separates_shapes():
    fp_star_e = lattice_fingerprint(build_complex(star_exact()))
    fp_star_f = lattice_fingerprint(build_complex(star_float()))
    fp_square = lattice_fingerprint(build_complex(square_exact()))
    assert fp_star_e == fp_star_f
    assert fp_star_e != fp_square
    fp_span = lattice_fingerprint(tight_span(tripod_metric()))
    assert isinstance(fp_span, str) and fp_span
    assert fp_span == lattice_fingerprint(tight_span(tripod_metric()))
