import itertools
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from moebius.core import NotAdmissible, NotMember
from moebius.relations import (
    PairRelation,
    affine_directions,
    cell_dimension,
    classify_type,
    complete_relation,
    parity_decomposition,
    relation,
    relation_of_point,
    star_relation,
    tight_pairs,
)

from conftest import random_log_space, star_exact


def all_pairs(n):
    return list(itertools.combinations(range(n), 2))


def random_relation(rng, n):
    plist = all_pairs(n)
    while True:
        chosen = [p for p in plist if rng.random() < 0.45]
        touched = {v for p in chosen for v in p}
        if len(touched) == n:
            return relation(n, chosen)


def bipartite_by_twocoloring(verts, edges):
    """Plain brute force: try every 2-coloring of the component."""
    verts = list(verts)
    for bits in itertools.product((0, 1), repeat=len(verts)):
        col = dict(zip(verts, bits))
        if all(col[i] != col[j] for i, j in edges):
            return True
    return False


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 7))
def test_parity_matches_brute_force_two_coloring(seed, n):
    rng = random.Random(seed)
    rel = random_relation(rng, n)
    comps = parity_decomposition(rel)
    covered = set()
    for comp in comps:
        edges = [p for p in rel.sorted_pairs
                 if p[0] in comp.vertices and p[1] in comp.vertices]
        assert comp.even == bipartite_by_twocoloring(comp.vertices, edges)
        if comp.even:
            col = {v: 0 for v in comp.side0}
            col.update({v: 1 for v in comp.side1})
            assert all(col[i] != col[j] for i, j in edges)
        covered.update(comp.vertices)
    assert covered == set(range(n))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(4, 7))
def test_cell_dimension_matches_sympy_nullspace(seed, n):
    """dim = n - rank of the rows e_i + e_j, computed independently."""
    rng = random.Random(seed)
    rel = random_relation(rng, n)
    rows = []
    for i, j in rel.sorted_pairs:
        v = [0] * n
        v[i] += 1
        v[j] += 1
        rows.append(v)
    rank = sympy.Matrix(rows).rank()
    assert cell_dimension(rel) == n - rank
    dirs = affine_directions(rel)
    assert len(dirs) == n - rank
    # each direction really annihilates every relation row
    for d in dirs:
        for i, j in rel.sorted_pairs:
            assert d[i] + d[j] == 0


def test_classify_type_star_and_split():
    star = star_relation(5, 2)
    ty = classify_type(star)
    assert ty.kind == "star" and ty.center == 2
    split = relation(4, [(0, 1), (2, 3)])
    ty = classify_type(split)
    assert ty.kind == "split"
    a, b = ty.split_pairs
    assert not set(a) & set(b)
    full = complete_relation(4)
    assert classify_type(full).kind == "split"
    with pytest.raises(NotAdmissible):
        classify_type(relation(4, [(0, 1), (1, 2)]))


def test_admissibility_and_dimension_guard():
    rel = relation(5, [(0, 1), (1, 2)])
    assert not rel.is_admissible()
    with pytest.raises(NotAdmissible):
        cell_dimension(rel)
    assert relation(4, [(0, 1), (2, 3)]).is_admissible()


def test_tight_pairs_at_the_star_vertex():
    sp = star_exact()
    rel = relation_of_point(sp, (Fraction(-1), 1, 1, 1))
    assert rel.pairs == complete_relation(4).pairs
    # a ray point at t = 2 is tight exactly against the hub
    rel = relation_of_point(sp, (Fraction(2), -2, -2, -2))
    assert rel.pairs == star_relation(4, 0).pairs
    with pytest.raises(NotMember):
        relation_of_point(sp, (1, 1, 1, 1))


def test_tight_pairs_tolerance_on_float_spaces(rng):
    from moebius.complexes import build_complex, sample_members

    sp = random_log_space(rng, 5, mode="float")
    cx = build_complex(sp)
    for tau in sample_members(sp, cx, 10, rng):
        rel = tight_pairs(sp, tau)
        assert rel.is_admissible()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_relation_of_sampled_member_is_its_cell(seed):
    from moebius.complexes import build_complex, sample_members

    rng = random.Random(seed)
    sp = random_log_space(rng, 4)
    cx = build_complex(sp)
    tau = sample_members(sp, cx, 1, rng)[0]
    rel = relation_of_point(sp, tau)
    assert any(c.relation.pairs == rel.pairs for c in cx.cells)
