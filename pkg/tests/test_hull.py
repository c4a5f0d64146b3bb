import random
from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from scipy.optimize import linprog

from moebius.core import (
    BadDiagonal,
    CounterexampleFound,
    NotMember,
    NotPositive,
    NotSymmetric,
    ParseError,
    PreconditionViolated,
    TooSmall,
    TriangleViolation,
    distance,
)
from moebius.complexes import build_complex, r_tilde, ray_point
from moebius.hull import (
    ball_hull_check,
    hyperconvexity_witness,
    is_extremal,
    kuratowski,
    sphere_metric,
    tight_span,
    validate_metric,
)

from conftest import (
    random_metric,
    square_exact,
    star_exact,
    star_float,
    tripod_metric,
)


def test_validate_metric_rejections():
    with pytest.raises(TooSmall):
        validate_metric([[0]])
    with pytest.raises(NotSymmetric):
        validate_metric([[0, 1], [2, 0]])
    with pytest.raises(NotPositive):
        validate_metric([[0, 0], [0, 0]])
    with pytest.raises(BadDiagonal):
        validate_metric([[1, 2], [2, 0]])
    with pytest.raises(TriangleViolation):
        validate_metric([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
    with pytest.raises(ParseError):
        validate_metric([[0, 1], [1, 0, 3]])
    ok = validate_metric([[0, 1.0], [1.0, 0]], mode="float")
    assert ok.m == 2 and ok.mode == "float"


def test_tripod_span_census():
    span = tight_span(tripod_metric())
    assert span.f_vector == (4, 3)
    assert span.hasse == ((4, 0), (4, 1), (5, 1), (5, 2), (6, 1), (6, 3))
    vs = sorted(v.witness_f for v in span.vertices())
    hub = (1, 1, 1)
    assert hub in vs
    for x in range(3):
        assert kuratowski(span.metric, x) in vs
    assert len(vs) == 4


def test_two_point_span_is_a_segment():
    span = tight_span(validate_metric([[0, 3], [3, 0]]))
    assert span.f_vector == (2, 1)
    assert sorted(v.witness_f for v in span.vertices()) == [(0, 3), (3, 0)]


def test_star_sphere_span_has_a_center():
    sp = star_exact()
    cx = build_complex(sp)
    met = sphere_metric(sp, cx, 3)
    span = tight_span(met)
    assert span.f_vector == (5, 4)
    degree = {}
    for cell_id, face_id in span.hasse:
        degree[face_id] = degree.get(face_id, 0) + 1
    center = [v for v in span.vertices() if degree.get(v.id, 0) == 4]
    assert len(center) == 1
    assert center[0].witness_f == (4, 2, 2, 2)


def _extremal_oracle(met, f):
    """f is extremal iff no coordinate can strictly decrease while keeping
    f_i + f_j >= d_ij everywhere."""
    m = met.m
    d = [[float(met.d[i][j]) for j in range(m)] for i in range(m)]
    fv = [float(x) for x in f]
    for v in range(m):
        c = np.zeros(m)
        c[v] = 1.0
        a_ub, b_ub = [], []
        for i, j in combinations(range(m), 2):
            row = np.zeros(m)
            row[i] = -1.0
            row[j] = -1.0
            a_ub.append(row)
            b_ub.append(-d[i][j])
        res = linprog(c, A_ub=np.array(a_ub), b_ub=np.array(b_ub),
                      bounds=[(None, fv[k] + 1e-12) for k in range(m)],
                      method="highs")
        assert res.status == 0
        if res.fun < fv[v] - 1e-7:
            return False
    return True


def test_is_extremal_matches_lp_oracle(rng):
    met = random_metric(rng, 4)
    span = tight_span(met)
    for v in span.vertices():
        assert is_extremal(met, v.witness_f)
        assert _extremal_oracle(met, v.witness_f)
    # push a vertex up: no longer minimal
    v0 = list(span.vertices()[0].witness_f)
    v0[0] += 1
    assert not is_extremal(met, v0)
    assert not _extremal_oracle(met, v0)


def _strict_interior_lp(met, rel_pairs, zero_set):
    """Max-slack LP for the (tight pairs, zero set) candidate, via scipy.

    Variables (f_0 .. f_{m-1}, s); returns the optimal slack or None when
    the equality system is already infeasible.
    """
    m = met.m
    d = [[float(met.d[i][j]) for j in range(m)] for i in range(m)]
    c = np.zeros(m + 1)
    c[m] = -1.0
    a_eq, b_eq, a_ub, b_ub = [], [], [], []
    for i, j in combinations(range(m), 2):
        row = np.zeros(m + 1)
        row[i] = row[j] = 1.0
        if (i, j) in rel_pairs:
            a_eq.append(row)
            b_eq.append(d[i][j])
        else:
            row = -row
            row[m] = 1.0
            a_ub.append(row)
            b_ub.append(-d[i][j])
    for v in range(m):
        row = np.zeros(m + 1)
        row[v] = 1.0
        if v in zero_set:
            a_eq.append(row)
            b_eq.append(0.0)
        else:
            row = -row
            row[m] = 1.0
            a_ub.append(row)
            b_ub.append(0.0)
    res = linprog(c, A_ub=np.array(a_ub) if a_ub else None,
                  b_ub=np.array(b_ub) if b_ub else None,
                  A_eq=np.array(a_eq) if a_eq else None,
                  b_eq=np.array(b_eq) if b_eq else None,
                  bounds=[(None, None)] * m + [(None, 1.0)],
                  method="highs")
    if res.status == 2:
        return None
    assert res.status == 0
    return -res.fun


def test_span_census_against_brute_force(rng):
    """Sweep every (tight pairs, zero set) candidate with scipy and compare
    the resulting census with the library's cells.

    A candidate is a cell when its strict system has an interior point and
    every point is pinned down: covered by a tight pair or sent to zero.
    """
    met = random_metric(rng, 4)
    span = tight_span(met)
    got = {(c.relation.pairs, c.zero_set) for c in span.cells}
    assert len(got) == len(span.cells)

    plist = list(combinations(range(met.m), 2))
    expected = set()
    for rbits in range(1 << len(plist)):
        rel_pairs = frozenset(p for k, p in enumerate(plist)
                              if rbits >> k & 1)
        for zbits in range(1 << met.m):
            zero = frozenset(v for v in range(met.m) if zbits >> v & 1)
            touched = {x for p in rel_pairs for x in p} | zero
            if len(touched) < met.m:
                continue
            slack = _strict_interior_lp(met, rel_pairs, zero)
            if slack is None or slack < 1e-9:
                continue
            assert slack > 1e-6, (rel_pairs, zero, slack)
            expected.add((rel_pairs, zero))
    assert got == expected

    for c in span.cells:
        f = c.witness_f
        for i, j in combinations(range(met.m), 2):
            s = f[i] + f[j] - met.d[i][j]
            assert s == 0 if (i, j) in c.relation.pairs else s > 0
        for v in range(met.m):
            assert (f[v] == 0) == (v in c.zero_set)
        rows = [[1.0 if v in p else 0.0 for v in range(met.m)]
                for p in c.relation.pairs]
        rows += [[1.0 if u == v else 0.0 for u in range(met.m)]
                 for v in c.zero_set]
        assert c.dim == met.m - np.linalg.matrix_rank(np.array(rows))


def test_ball_hull_check_on_fixtures():
    for sp in (star_exact(), star_float()):
        cx = build_complex(sp)
        rt = r_tilde(sp, cx)
        rep = ball_hull_check(sp, cx, rt + 1, samples=25, seed=7)
        assert rep.ok, rep
        assert rep.vertices_checked >= 1
        assert rep.members_checked == 25
        assert rep.max_membership_defect <= 0
        assert rep.max_norm_excess <= 0


def test_hyperconvexity_on_a_tight_family():
    sp = star_exact()
    cx = build_complex(sp)
    p = (Fraction(-1), 1, 1, 1)
    q = ray_point(sp, 0, Fraction(3))
    d = distance(p, q)
    assert d == 4
    w = hyperconvexity_witness(sp, cx, [p, q], [d / 3, 2 * d / 3])
    assert distance(w, p) <= d / 3
    assert distance(w, q) <= 2 * d / 3
    with pytest.raises(PreconditionViolated):
        hyperconvexity_witness(sp, cx, [p, q], [1, 1])
    with pytest.raises(PreconditionViolated):
        hyperconvexity_witness(sp, cx, [p], [-1])
    with pytest.raises(NotMember):
        hyperconvexity_witness(sp, cx, [(1, 1, 1, 1)], [1])
    with pytest.raises(ParseError):
        hyperconvexity_witness(sp, cx, [], [])


def test_hyperconvexity_random_families(rng):
    sp = square_exact()
    cx = build_complex(sp)
    from moebius.complexes import sample_members
    for _ in range(5):
        centers = sample_members(sp, cx, 4, rng)
        dmax = max(distance(a, b) for a in centers for b in centers)
        radii = [dmax / 2 + Fraction(rng.randint(0, 4), 4) for _ in centers]
        w = hyperconvexity_witness(sp, cx, centers, radii)
        for c, r in zip(centers, radii):
            assert distance(w, c) <= r
