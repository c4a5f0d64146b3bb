"""Tight spans of finite metrics and the ball-is-hull verification.

The tight span E(X) of a finite metric space X is the set of pointwise
minimal functions f with f(x) + f(y) >= d(x, y); it is the smallest
injective (hyperconvex) space containing X, with X embedded by x -> d_x.
Substituting tau = -f turns the defining inequalities into the cell shape
used everywhere else in this package, with the metric entries playing the
role of the log-weights and the extra bounds tau <= 0 standing for f >= 0,
so the same exact LP engine enumerates E(X).

One difference to the member complex: faces of E(X) can be cut by the
f >= 0 bounds, not only by pair tightness (the Kuratowski point d_x itself
has f(x) = 0). A hull cell is therefore indexed by a pair: the relation R of
tight pairs together with the zero set B of coordinates pinned to f = 0.
Dimension drops by one parameter for every even component of R touched by B.

The reconstructed member space relates back through its spheres: for
r >= r_tilde, the closed ball of radius r is isometric to the tight span of
its sphere points under f(x_i) = r - tau_i, and ball_hull_check verifies both
directions of that correspondence computationally.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    AntipodalSpace,
    BadDiagonal,
    CounterexampleFound,
    InvariantViolation,
    LimitExceeded,
    NotMember,
    NotPositive,
    NotSymmetric,
    ParseError,
    PreconditionViolated,
    TooSmall,
    TriangleViolation,
    as_fraction,
    discrepancy,
    distance,
    is_member,
    linf,
    pairs,
)
from .complexes import (
    Complex,
    max_n_limit,
    r_tilde,
    sample_ball_members,
    sphere_points,
    tight_pairs_exact,
)
from .feasibility import cell_system, reduce_equalities, solve
from .relations import PairRelation, relation

ZERO = Fraction(0)


@dataclass(frozen=True)
class FiniteMetric:
    """A validated finite metric space: m points, symmetric distance matrix,
    zero diagonal, positive off-diagonal, triangle inequality."""

    m: int
    d: tuple
    mode: str = "exact"
    tol: float = 1e-9
    labels: tuple = ()

    def d_exact(self) -> tuple:
        return tuple(tuple(as_fraction(v) for v in row) for row in self.d)

    def scale(self) -> float:
        s = 1.0
        for i, j in pairs(self.m):
            s = max(s, abs(float(self.d[i][j])))
        return s


def validate_metric(matrix, mode: str = "exact", tol: float = 1e-9,
                    labels=None) -> FiniteMetric:
    """Check the metric axioms; exact entries are checked exactly."""
    try:
        m = len(matrix)
    except TypeError:
        raise ParseError("metric must be a matrix") from None
    if m < 2:
        raise TooSmall(f"need at least 2 points, got {m}")
    for row in matrix:
        if len(row) != m:
            raise ParseError("metric matrix is not square")
    conv = as_fraction if mode == "exact" else float
    d = tuple(tuple(conv(matrix[i][j]) for j in range(m)) for i in range(m))
    eps = 0 if mode == "exact" else tol
    for i in range(m):
        if abs(d[i][i]) > eps:
            raise BadDiagonal(f"d({i},{i}) = {d[i][i]!r} is not zero")
    for i, j in pairs(m):
        if abs(d[i][j] - d[j][i]) > eps:
            raise NotSymmetric(f"d({i},{j}) != d({j},{i})")
        if not d[i][j] > 0:
            raise NotPositive(f"d({i},{j}) = {d[i][j]!r} is not positive")
    for i in range(m):
        for j in range(m):
            for k in range(m):
                if len({i, j, k}) < 3:
                    continue
                if d[i][k] > d[i][j] + d[j][k] + eps:
                    raise TriangleViolation(
                        f"d({i},{k}) > d({i},{j}) + d({j},{k})"
                    )
    if labels is None:
        labels = tuple(str(i) for i in range(m))
    return FiniteMetric(m=m, d=d, mode=mode, tol=tol, labels=tuple(labels))


def kuratowski(metric: FiniteMetric, x: int) -> tuple:
    """The distance function d_x = d(x, .) as a vector."""
    return tuple(metric.d[x])


def is_extremal(metric: FiniteMetric, f: Sequence, tol: float | None = None) -> bool:
    """Whether f is a pointwise minimal admissible function on the metric:
    nonnegative, f(x) + f(y) >= d(x, y) everywhere, and each row attains
    equality at some other point."""
    m = metric.m
    if len(f) != m:
        raise ParseError(f"f has length {len(f)}, expected {m}")
    exact = metric.mode == "exact" and all(
        isinstance(v, (Fraction, int)) for v in f
    )
    if exact:
        d = metric.d_exact()
        fv = [as_fraction(v) for v in f]
        for v in fv:
            if v < 0:
                return False
        for i, j in pairs(m):
            if fv[i] + fv[j] < d[i][j]:
                return False
        for i in range(m):
            if all(fv[i] + fv[j] != d[i][j] for j in range(m) if j != i):
                return False
        return True
    eps = (metric.tol if tol is None else tol) * metric.scale()
    d = metric.d
    fv = [float(v) for v in f]
    for v in fv:
        if v < -eps:
            return False
    for i, j in pairs(m):
        if fv[i] + fv[j] < float(d[i][j]) - eps:
            return False
    for i in range(m):
        if all(abs(fv[i] + fv[j] - float(d[i][j])) > eps for j in range(m) if j != i):
            return False
    return True


@dataclass(frozen=True)
class HullCell:
    """One cell of a tight span, indexed by tight pairs and zero set.

    witness_f is a relative-interior point in f-coordinates; dim counts the
    free parameters left after the zero set pins its components.
    """

    id: int
    relation: PairRelation
    zero_set: frozenset
    dim: int
    witness_f: tuple
    max_slack: object = None


@dataclass(frozen=True)
class TightSpan:
    """Cells of E(X) with their face lattice (everything is bounded).

    hasse lists cover pairs (cell_id, face_id) in the componentwise inclusion
    order on (relation, zero set).
    """

    metric: FiniteMetric
    cells: tuple
    hasse: tuple
    f_vector: tuple

    def vertices(self) -> tuple:
        return tuple(c for c in self.cells if c.dim == 0)


def _hull_system(dm, rel, zero_set):
    m = len(dm)
    return cell_system(
        dm, rel,
        upper_bounds=(ZERO,) * m,
        pinned=tuple((b, ZERO) for b in sorted(zero_set)),
        strict_bounds=True,
    )


def tight_span(metric: FiniteMetric, max_n: int | None = None) -> TightSpan:
    """Enumerate the cells of E(X) with the exact cell engine.

    Tight-pair relations walk by increasing pair count with superset pruning
    exactly as in the member complex. Zero sets need no walk of their own:
    positivity makes two vanishing coordinates contradict their pair bound
    outright, and a single vanishing coordinate pins the function to the
    distance row of that point, whose tight set is then forced. So the cells
    are the admissible relations with nonempty strict system (empty zero set)
    plus one vertex per point of X at its distance-row relation.
    """
    m = metric.m
    limit = max_n_limit(max_n)
    if m > limit:
        raise LimitExceeded(f"m = {m} exceeds the enumeration guard {limit}")
    dm = metric.d_exact()
    plist = sorted(pairs(m))
    pindex = {p: k for k, p in enumerate(plist)}

    # tight set of the distance row of x: all pairs through x, plus the
    # pairs its row splits additively
    row_relation = {}
    for x in range(m):
        ts = {(min(i, x), max(i, x)) for i in range(m) if i != x}
        ts.update(
            (i, j) for i, j in plist
            if i != x and j != x and dm[x][i] + dm[x][j] == dm[i][j]
        )
        row_relation[x] = frozenset(ts)

    closed: dict = {}
    # the distance rows are feasible a priori, so their tight sets certify
    # every subset before the walk begins
    witness_sets: list = []
    for x in range(m):
        if not any(row_relation[x] <= f for f in witness_sets):
            witness_sets[:] = [f for f in witness_sets
                               if not f <= row_relation[x]]
            witness_sets.append(row_relation[x])

    def note_witness(res) -> None:
        if res.witness is None:
            return
        ts = tight_pairs_exact(dm, res.witness)
        for f in witness_sets:
            if ts <= f:
                return
        witness_sets[:] = [f for f in witness_sets if not f <= ts]
        witness_sets.append(ts)

    level = []
    for p in plist:
        fs = frozenset([p])
        if m > 2 and any(fs <= f for f in witness_sets):
            closed[fs] = None
            level.append((p,))
            continue
        res = solve(_hull_system(dm, relation(m, [p]), ()))
        if res.status != "empty":
            closed[fs] = res
            note_witness(res)
            level.append((p,))
    while level:
        nxt = []
        for S in level:
            last = pindex[S[-1]]
            for k in range(last + 1, len(plist)):
                T = S + (plist[k],)
                if any(frozenset(T[:i] + T[i + 1:]) not in closed for i in range(len(T))):
                    continue
                fs = frozenset(T)
                if not relation(m, T).is_admissible() and any(
                        fs <= f for f in witness_sets):
                    closed[fs] = None
                    nxt.append(T)
                    continue
                res = solve(_hull_system(dm, relation(m, T), ()))
                if res.status != "empty":
                    closed[fs] = res
                    note_witness(res)
                    nxt.append(T)
        level = sorted(nxt)

    cells = []
    for fs in sorted(closed, key=lambda s: (len(s), sorted(s))):
        rel = PairRelation(m, fs)
        if not rel.is_admissible():
            continue
        res = closed[fs]
        if res.status == "interior":
            red = reduce_equalities(m, dm, rel.sorted_pairs)
            f = tuple(-x for x in res.witness)
            cells.append((rel, frozenset(), len(red.dirs), f, res.max_slack))
        for x in range(m):
            if fs != row_relation[x]:
                continue
            vres = solve(_hull_system(dm, rel, (x,)))
            if vres.status != "interior":
                raise InvariantViolation(
                    f"distance row of point {x} lost its vertex cell")
            f = tuple(-v for v in vres.witness)
            cells.append((rel, frozenset((x,)), 0, f, vres.max_slack))

    cells.sort(key=lambda t: (t[2], t[0].sorted_pairs, sorted(t[1])))
    hull_cells = tuple(
        HullCell(id=i, relation=rel, zero_set=zs, dim=dim, witness_f=f,
                 max_slack=slack)
        for i, (rel, zs, dim, f, slack) in enumerate(cells)
    )

    hasse = []
    for c in hull_cells:
        sup = [
            d for d in hull_cells
            if d is not c
            and c.relation.pairs <= d.relation.pairs
            and c.zero_set <= d.zero_set
        ]
        for d in sup:
            cover = True
            for e in sup:
                if e is d:
                    continue
                if (e.relation.pairs <= d.relation.pairs
                        and e.zero_set <= d.zero_set):
                    cover = False
                    break
            if cover:
                hasse.append((c.id, d.id))
    hasse.sort()

    max_dim = max((c.dim for c in hull_cells), default=0)
    fv = [0] * (max_dim + 1)
    for c in hull_cells:
        fv[c.dim] += 1

    return TightSpan(metric=metric, cells=hull_cells, hasse=tuple(hasse),
                     f_vector=tuple(fv))


def sphere_metric(space: AntipodalSpace, cx: Complex, r) -> FiniteMetric:
    """Pairwise sup distances of the sphere points at radius r, as an exact
    metric (the entries are exact in both modes)."""
    sp = sphere_points(space, cx, r)
    n = space.n
    d = [[ZERO] * n for _ in range(n)]
    for i, j in pairs(n):
        d[i][j] = d[j][i] = distance(sp.points[i], sp.points[j])
    return validate_metric(tuple(tuple(row) for row in d), mode="exact",
                           labels=space.labels)


@dataclass(frozen=True)
class BallHullReport:
    """Outcome of the ball-is-hull verification at one radius."""

    r: object
    r_tilde: object
    vertices_checked: int
    members_checked: int
    max_membership_defect: float
    max_norm_excess: float
    extremal_failures: int
    identity_failures: int
    busemann_failures: int

    @property
    def ok(self) -> bool:
        return (
            self.max_membership_defect <= 0
            and self.max_norm_excess <= 0
            and self.extremal_failures == 0
            and self.identity_failures == 0
            and self.busemann_failures == 0
        )


def ball_hull_check(space: AntipodalSpace, cx: Complex, r, samples: int = 100,
                    seed: int = 0) -> BallHullReport:
    """Verify that the closed r-ball is the injective hull of its sphere.

    Under the identification f(x_i) = r - tau_i: every vertex of the tight
    span of the sphere metric must be a ball member, every sampled ball
    member must give an extremal function, sup distances must agree on both
    sides, and the distance from a member to the i-th sphere point must be
    exactly r - tau_i. All checks run in exact arithmetic.
    """
    r = as_fraction(r)
    metric = sphere_metric(space, cx, r)
    span = tight_span(metric)
    sp = sphere_points(space, cx, r)

    membership_defect = ZERO
    norm_excess = ZERO
    verts = span.vertices()
    for v in verts:
        tau = tuple(r - as_fraction(x) for x in v.witness_f)
        if not is_member(space, tau):
            dmax = max(abs(as_fraction(x)) for x in discrepancy(space, tau))
            membership_defect = max(membership_defect, dmax)
        excess = linf(tau) - r
        if excess > norm_excess:
            norm_excess = excess

    rng = random.Random(seed)
    members = sample_ball_members(space, cx, r, samples, rng)
    extremal_failures = 0
    identity_failures = 0
    busemann_failures = 0
    prev = None
    for tau in members:
        f = tuple(r - x for x in tau)
        if not is_extremal(metric, f):
            extremal_failures += 1
        for i in range(space.n):
            if distance(tau, sp.points[i]) != f[i]:
                busemann_failures += 1
                break
        if prev is not None:
            f_prev = tuple(r - x for x in prev)
            if distance(f, f_prev) != distance(tau, prev):
                identity_failures += 1
        prev = tau

    return BallHullReport(
        r=r, r_tilde=r_tilde(space, cx),
        vertices_checked=len(verts), members_checked=len(members),
        max_membership_defect=float(membership_defect),
        max_norm_excess=float(norm_excess),
        extremal_failures=extremal_failures,
        identity_failures=identity_failures,
        busemann_failures=busemann_failures,
    )


def hyperconvexity_witness(space: AntipodalSpace, cx: Complex,
                           centers: Sequence, radii: Sequence) -> tuple:
    """A common point of the closed balls B(center_k, r_k) in the sup metric.

    Requires every center to be a member and every pairwise gap to close:
    r_i + r_j >= d(center_i, center_j). Under those conditions the theory
    guarantees a common point, so exhausting all cells without finding one
    reports CounterexampleFound (a bug signal, not a data condition). Cells
    are scanned by id and the first feasible cell provides the witness, which
    makes the result deterministic.
    """
    if len(centers) != len(radii) or not centers:
        raise ParseError("need equally many centers and radii, at least one")
    lifted_centers = []
    for k, c in enumerate(centers):
        if not is_member(space, c):
            raise NotMember(f"center {k} is not a member point")
        lifted_centers.append(tuple(as_fraction(x) for x in c))
    lifted_radii = []
    for k, rr in enumerate(radii):
        rr = as_fraction(rr)
        if rr < 0:
            raise PreconditionViolated(f"radius {k} is negative")
        lifted_radii.append(rr)
    for a in range(len(centers)):
        for b in range(a + 1, len(centers)):
            gap = distance(lifted_centers[a], lifted_centers[b])
            if lifted_radii[a] + lifted_radii[b] < gap:
                raise PreconditionViolated(
                    f"balls {a} and {b} cannot meet: r_{a} + r_{b} < distance "
                    f"({float(lifted_radii[a] + lifted_radii[b]):g} < {float(gap):g})"
                )

    if len(lifted_centers) == 1:
        return lifted_centers[0]

    n = space.n
    lo = [max(c[v] - rr for c, rr in zip(lifted_centers, lifted_radii))
          for v in range(n)]
    hi = [min(c[v] + rr for c, rr in zip(lifted_centers, lifted_radii))
          for v in range(n)]
    for c in cx.cells:
        sysm = cell_system(space, c.relation, upper_bounds=tuple(hi),
                           lower_bounds=tuple(lo))
        res = solve(sysm)
        if res.status != "empty":
            return res.witness
    raise CounterexampleFound(
        "no cell meets the common box although all pairwise gaps close"
    )
