"""The reconstructed space, assembled as an l_inf polyhedral complex.

Members tau group by their tight-pair relation; each admissible relation R
whose strict cell C(R)* is nonempty contributes one cell, the closed region
C(R). Cells ordered by reverse inclusion of relations form the face lattice:
C(R') is a face of C(R) exactly when R is contained in R'. Star relations
carry one-parameter rays going off to infinity and everything else is a
bounded polytope, so the whole space is a compact polyhedral core with one
ray attached per boundary point.

Enumeration walks relation candidates by increasing pair count and prunes
supersets of relations whose closed cell is already empty; this is sound and
complete because adding pairs only shrinks the cell. Every candidate costs
one exact LP, so the verdicts are deterministic in both modes.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    AntipodalSpace,
    DEFAULT_MAX_N,
    InvariantViolation,
    LimitExceeded,
    NotMember,
    RadiusTooSmall,
    as_fraction,
    distance,
    is_member,
    linf,
    pairs,
)
from .feasibility import FeasibilityResult, cell_system, optimize, solve
from .relations import (
    PairRelation,
    cell_dimension,
    classify_type,
    relation,
    relation_of_point,
    star_relation,
    tight_pairs,
)

ZERO = Fraction(0)

#: Sentinel standing for the empty polyhedron, a member of every complex by
#: the polyhedral-complex axioms; the constraint formula is never applied to
#: the empty relation.
EMPTY_POLYHEDRON = "empty-polyhedron"

RAY_SAMPLING_WINDOW = 10


def max_n_limit(explicit: int | None = None) -> int:
    """Resolve the enumeration size guard: explicit argument, else the
    MOEBIUS_MAX_N environment variable, else the default."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get("MOEBIUS_MAX_N")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise LimitExceeded(f"MOEBIUS_MAX_N is not an integer: {env!r}") from None
    return DEFAULT_MAX_N


@dataclass(frozen=True)
class RaySpec:
    """Ray data of a star cell: tau(t) = t at the center, -t - a_cj at j,
    valid for t >= t_min."""

    center: int
    t_min: object


@dataclass(frozen=True)
class Cell:
    """One closed cell of the complex.

    kind is 'ray' for star relations (unbounded, one parameter) and
    'polytope' for relations containing two disjoint pairs (bounded).
    The witness lies in the relative interior and realizes the relation
    exactly; it is stored as exact rationals in either mode.
    """

    id: int
    relation: PairRelation
    dim: int
    bounded: bool
    kind: str
    witness: tuple
    max_slack: object = None
    ray_spec: RaySpec | None = None


@dataclass(frozen=True)
class Complex:
    """Face-ordered cell data of one reconstructed space.

    hasse lists cover pairs (cell_id, face_id): the face's relation is a
    minimal proper superset of the cell's among enumerated relations, i.e.
    the face is one step down the closure of the cell. f_vector counts cells
    per dimension, split into bounded and unbounded. The sentinel field keeps
    the empty polyhedron that the complex axioms require as a member.
    """

    space: AntipodalSpace
    cells: tuple
    hasse: tuple
    f_vector_bounded: tuple
    f_vector_unbounded: tuple
    sentinel: object = EMPTY_POLYHEDRON

    def cell_with_relation(self, rel: PairRelation) -> Cell | None:
        for c in self.cells:
            if c.relation.pairs == rel.pairs:
                return c
        return None

    def faces_of(self, cell_id: int) -> tuple:
        return tuple(b for a, b in self.hasse if a == cell_id)

    def rays(self) -> tuple:
        return tuple(c for c in self.cells if c.kind == "ray")

    def vertices_of(self, cell: Cell) -> tuple:
        """Dimension-0 cells in the closure of the given cell."""
        return tuple(
            v for v in self.cells
            if v.dim == 0 and cell.relation.pairs <= v.relation.pairs
        )


def survey_relations(space: AntipodalSpace, max_n: int | None = None) -> dict:
    """Map every relation with nonempty closed cell to its FeasibilityResult.

    Level walk by pair count; a candidate is attempted only when all its
    one-pair-smaller subsets already proved nonempty, which is exactly the
    superset pruning the cell monotonicity allows. Inadmissible relations
    whose feasibility is already certified by the tight set of a stored
    witness map to None instead of a solved result; they can never be cells,
    so only their presence matters.
    """
    n = space.n
    limit = max_n_limit(max_n)
    if n > limit:
        raise LimitExceeded(f"n = {n} exceeds the enumeration guard {limit}")
    a = space.a_exact()
    plist = sorted(pairs(n))
    pindex = {p: k for k, p in enumerate(plist)}

    nonempty: dict = {}
    witness_sets: list = []

    def note_witness(res) -> None:
        if res.witness is None:
            return
        ts = tight_pairs_exact(a, res.witness)
        for f in witness_sets:
            if ts <= f:
                return
        witness_sets[:] = [f for f in witness_sets if not f <= ts]
        witness_sets.append(ts)

    level = []
    for p in plist:
        rel = relation(n, [p])
        res = solve(cell_system(a, rel))
        if res.status != "empty":
            nonempty[frozenset([p])] = res
            note_witness(res)
            level.append((p,))

    while level:
        nxt = []
        for S in level:
            last = pindex[S[-1]]
            for k in range(last + 1, len(plist)):
                T = S + (plist[k],)
                ok = True
                for drop in range(len(T)):
                    if frozenset(T[:drop] + T[drop + 1:]) not in nonempty:
                        ok = False
                        break
                if not ok:
                    continue
                fs = frozenset(T)
                # an earlier witness whose tight set contains T proves the
                # closed system feasible; only admissible sets need their own
                # interior verdict, so the rest skip the LP entirely
                if not relation(n, T).is_admissible() and any(
                        fs <= f for f in witness_sets):
                    nonempty[fs] = None
                    nxt.append(T)
                    continue
                res = solve(cell_system(a, relation(n, T)))
                if res.status != "empty":
                    nonempty[fs] = res
                    note_witness(res)
                    nxt.append(T)
        level = sorted(nxt)
    return nonempty


def enumerate_antipodal_relations(space: AntipodalSpace,
                                  max_n: int | None = None) -> tuple:
    """All admissible relations whose strict cell is nonempty, by increasing
    pair count and canonical pair order."""
    out = []
    for fs, res in survey_relations(space, max_n).items():
        rel = PairRelation(space.n, fs)
        if res is not None and res.status == "interior" and rel.is_admissible():
            out.append(rel)
    out.sort(key=lambda r: (len(r.pairs), r.sorted_pairs))
    return tuple(out)


def t_min_of(space: AntipodalSpace, center: int):
    """Smallest ray parameter: max over pairs j != k avoiding the center of
    (-a_cj - a_ck + a_jk) / 2. Exact."""
    a = space.a_exact()
    n = space.n
    best = None
    for j, k in pairs(n):
        if j == center or k == center:
            continue
        v = (-a[center][j] - a[center][k] + a[j][k]) / 2
        if best is None or v > best:
            best = v
    return best


def ray_point(space: AntipodalSpace, center: int, t) -> tuple:
    """Point at parameter t on the ray of the star relation at the center."""
    a = space.a_exact()
    t = as_fraction(t)
    return tuple(
        t if v == center else -t - a[center][v]
        for v in range(space.n)
    )


def build_complex(space: AntipodalSpace, max_n: int | None = None) -> Complex:
    """Enumerate the cells and assemble the face lattice.

    Raises InvariantViolation when the enumerated structure contradicts what
    the theory guarantees (wrong ray count, duplicated centers, witness not
    realizing its relation); those would indicate a bug, not bad input.
    """
    survey = survey_relations(space, max_n)
    n = space.n
    picked = []
    for fs, res in survey.items():
        rel = PairRelation(n, fs)
        if res is None or res.status != "interior" or not rel.is_admissible():
            continue
        ty = classify_type(rel)
        kind = "ray" if ty.kind == "star" else "polytope"
        picked.append((rel, res, ty, kind))

    picked.sort(key=lambda t: (cell_dimension(t[0]), 0 if t[3] == "polytope" else 1,
                               t[0].sorted_pairs))
    cells = []
    a = space.a_exact()
    for cid, (rel, res, ty, kind) in enumerate(picked):
        dim = cell_dimension(rel)
        spec = None
        if kind == "ray":
            spec = RaySpec(center=ty.center, t_min=t_min_of(space, ty.center))
        tight = tight_pairs_exact(a, res.witness)
        if tight != rel.pairs:
            raise InvariantViolation(
                f"witness of {rel.sorted_pairs} realizes {sorted(tight)} instead"
            )
        cells.append(Cell(
            id=cid, relation=rel, dim=dim, bounded=(kind == "polytope"),
            kind=kind, witness=res.witness, max_slack=res.max_slack, ray_spec=spec,
        ))

    rays = [c for c in cells if c.kind == "ray"]
    centers = sorted(c.ray_spec.center for c in rays)
    if len(rays) != n or centers != list(range(n)):
        raise InvariantViolation(
            f"expected one ray per boundary point, got centers {centers}"
        )

    hasse = []
    for c in cells:
        sup = [d for d in cells if d is not c and c.relation.pairs < d.relation.pairs]
        sup.sort(key=lambda d: len(d.relation.pairs))
        for d in sup:
            cover = True
            for e in sup:
                if e is d:
                    continue
                if c.relation.pairs < e.relation.pairs < d.relation.pairs:
                    cover = False
                    break
            if cover:
                hasse.append((c.id, d.id))
    hasse.sort()

    max_dim = max((c.dim for c in cells), default=0)
    fb = [0] * (max_dim + 1)
    fu = [0] * (max_dim + 1)
    for c in cells:
        (fb if c.bounded else fu)[c.dim] += 1

    return Complex(
        space=space, cells=tuple(cells), hasse=tuple(hasse),
        f_vector_bounded=tuple(fb), f_vector_unbounded=tuple(fu),
    )


def tight_pairs_exact(a, tau) -> frozenset:
    """Tight pairs of an exact point against the exact lifted weights."""
    n = len(a)
    out = set()
    for i, j in pairs(n):
        if as_fraction(tau[i]) + as_fraction(tau[j]) + a[i][j] == 0:
            out.add((i, j))
    return frozenset(out)


def membership(space: AntipodalSpace, tau: Sequence, tol: float | None = None) -> bool:
    """Whether tau is a member: every rescaled row maximum vanishes."""
    return is_member(space, tau, tol=tol)


def r_tilde(space: AntipodalSpace, cx: Complex):
    """Smallest radius beyond which the complex is just its n ray tails.

    Maximum of the sup norms of all bounded-cell witnesses (vertices
    included), all ray start parameters, and all -a_ij / 2. Exact.
    """
    a = space.a_exact()
    best = ZERO
    for c in cx.cells:
        if c.bounded:
            best = max(best, linf([as_fraction(x) for x in c.witness]))
        else:
            best = max(best, as_fraction(c.ray_spec.t_min))
    for i, j in pairs(space.n):
        best = max(best, -a[i][j] / 2)
    return best


@dataclass(frozen=True)
class SphereSpec:
    """One marked point per ray at sup-distance r from the basepoint."""

    r: object
    r_tilde: object
    points: tuple


def sphere_points(space: AntipodalSpace, cx: Complex, r) -> SphereSpec:
    """The n ray points at parameter r, one per boundary point.

    Requires r >= r_tilde so that the parameter equals the sup norm and the
    points realize the visual distances.
    """
    r = as_fraction(r)
    rt = r_tilde(space, cx)
    if r < rt:
        raise RadiusTooSmall(f"r = {float(r):g} is below r_tilde = {float(rt):g}")
    pts = []
    for center in range(space.n):
        p = ray_point(space, center, r)
        if linf(p) != r:
            raise InvariantViolation(
                f"ray point at parameter {float(r):g} has norm {float(linf(p)):g}"
            )
        pts.append(p)
    return SphereSpec(r=r, r_tilde=rt, points=tuple(pts))


def gromov_product(tau1: Sequence, tau2: Sequence, base: Sequence):
    """(tau1 | tau2) at the base point, in the sup metric."""
    return (distance(tau1, base) + distance(tau2, base) - distance(tau1, tau2)) / 2


@dataclass(frozen=True)
class VisualReport:
    """Outcome of the boundary-recovery check at one radius."""

    r: object
    max_deviation: float
    products: tuple       # (i, j, gromov product) for i < j
    exact: bool


def visual_recovery_check(space: AntipodalSpace, r, cx: Complex | None = None) -> VisualReport:
    """Check exp(-(x_i | x_j)) = rho(i, j) for the sphere points at radius r.

    The products are computed in exact arithmetic; in a log-domain exact
    space the deviation is exactly zero or the check fails loudly. Float
    spaces compare in the rho scale after lifting.
    """
    if cx is None:
        cx = build_complex(space)
    sp = sphere_points(space, cx, r)
    a = space.a_exact()
    prods = []
    worst = 0.0
    exact_all = True
    for i, j in pairs(space.n):
        g = gromov_product(sp.points[i], sp.points[j], (ZERO,) * space.n)
        prods.append((i, j, g))
        if -2 * g == a[i][j]:
            continue
        exact_all = False
        worst = max(worst, abs(math.exp(-float(g)) - float(space.rho(i, j))))
    return VisualReport(r=sp.r, max_deviation=(0.0 if exact_all else worst),
                        products=tuple(prods), exact=exact_all)


def _rank_of_pair_system(n: int, rel: PairRelation) -> int:
    """Rank over the rationals of the rows e_i + e_j for (i, j) in R,
    by plain Gaussian elimination (kept independent of the parity walk)."""
    rows = []
    for i, j in rel.sorted_pairs:
        v = [ZERO] * n
        v[i] = Fraction(1)
        v[j] = v[j] + Fraction(1)
        rows.append(v)
    rank = 0
    col = 0
    while col < n and rank < len(rows):
        piv = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                piv = r
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = Fraction(1) / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def tangent_dimension(space: AntipodalSpace, tau: Sequence, tol: float | None = None) -> int:
    """Dimension of the directions v with v_i + v_j = 0 on the tight pairs of
    tau: n minus the rank of that linear system. Raises NotMember off the
    space."""
    rel = relation_of_point(space, tau, tol=tol)
    return space.n - _rank_of_pair_system(space.n, rel)


# ---------------------------------------------------------------------------
# Sampling.
# ---------------------------------------------------------------------------

def _rand_fraction(rng: random.Random, den: int = 64) -> Fraction:
    return Fraction(rng.randint(0, den), den)


def _sample_in_cell(space: AntipodalSpace, cx: Complex, cell: Cell,
                    rng: random.Random, window=RAY_SAMPLING_WINDOW,
                    t_range=None) -> tuple:
    """One exact member point of the given cell.

    Bounded cells take a random rational convex combination of their
    vertices; rays take a random parameter in [t_min, t_min + window] or in
    the explicit t_range when given.
    """
    if cell.kind == "ray":
        t0 = as_fraction(cell.ray_spec.t_min)
        if t_range is not None:
            lo, hi = t_range
        else:
            lo, hi = t0, t0 + window
        t = lo + _rand_fraction(rng, 1024) * (hi - lo)
        return ray_point(space, cell.ray_spec.center, t)
    verts = cx.vertices_of(cell)
    if not verts:
        raise InvariantViolation(f"bounded cell {cell.id} has no vertices")
    weights = [Fraction(rng.randint(1, 64), 64) for _ in verts]
    total = sum(weights, start=ZERO)
    pt = [ZERO] * space.n
    for w, v in zip(weights, verts):
        for k in range(space.n):
            pt[k] = pt[k] + (w / total) * as_fraction(v.witness[k])
    return tuple(pt)


def sample_members(space: AntipodalSpace, cx: Complex, count: int,
                   rng: random.Random, window=RAY_SAMPLING_WINDOW) -> list:
    """Exact member points, cells drawn with weight dim + 1."""
    weights = [c.dim + 1 for c in cx.cells]
    cells = rng.choices(cx.cells, weights=weights, k=count)
    return [_sample_in_cell(space, cx, c, rng, window=window) for c in cells]


def sample_ball_members(space: AntipodalSpace, cx: Complex, r, count: int,
                        rng: random.Random) -> list:
    """Exact member points with sup norm at most r (requires r >= r_tilde).

    Bounded cells lie in the ball outright; rays are truncated to the
    parameter range keeping every coordinate within r.
    """
    r = as_fraction(r)
    rt = r_tilde(space, cx)
    if r < rt:
        raise RadiusTooSmall(f"r = {float(r):g} is below r_tilde = {float(rt):g}")
    a = space.a_exact()
    out = []
    weights = [c.dim + 1 for c in cx.cells]
    cells = rng.choices(cx.cells, weights=weights, k=count)
    for c in cells:
        if c.kind == "ray":
            i = c.ray_spec.center
            lo = max(as_fraction(c.ray_spec.t_min),
                     max(-r - a[i][j] for j in range(space.n) if j != i))
            pt = _sample_in_cell(space, cx, c, rng, t_range=(lo, r))
        else:
            pt = _sample_in_cell(space, cx, c, rng)
        out.append(pt)
    return out


def delta_estimate(space: AntipodalSpace, cx: Complex, samples: int, seed: int):
    """Largest four-point hyperbolicity defect over sampled member quadruples.

    For each quadruple the three pair sums d(x,y)+d(z,w) are sorted and the
    defect is (largest - second) / 2; the reported value is the maximum over
    all sampled quadruples, so the four-point inequality holds on the sample
    with exactly this delta. Deterministic for a fixed seed; exact arithmetic
    throughout, converted to float only for float spaces.
    """
    rng = random.Random(seed)
    best = ZERO
    pts = sample_members(space, cx, 4 * samples, rng)
    for q in range(samples):
        w, x, y, z = pts[4 * q: 4 * q + 4]
        s = sorted(
            (
                distance(w, x) + distance(y, z),
                distance(w, y) + distance(x, z),
                distance(w, z) + distance(x, y),
            ),
            reverse=True,
        )
        val = (s[0] - s[1]) / 2
        if val > best:
            best = val
    if space.polyhedral_exact:
        return best
    return float(best)


def ray_tail_pieces(space: AntipodalSpace, cx: Complex, r) -> int:
    """Number of connected pieces left after removing the open ball of
    radius r, verified computationally for r > r_tilde.

    Asserts that no bounded cell reaches norm r (LP probes per coordinate)
    and that each ray tail starts exactly on the sphere; the tails are then
    the n disjoint pieces and their count is returned.
    """
    r = as_fraction(r)
    rt = r_tilde(space, cx)
    if r <= rt:
        raise RadiusTooSmall(f"need r > r_tilde = {float(rt):g}")
    for c in cx.cells:
        if not c.bounded:
            continue
        sysm = cell_system(space, c.relation)
        for v in range(space.n):
            coeffs = [ZERO] * space.n
            coeffs[v] = Fraction(1)
            for sense in ("max", "min"):
                res = optimize(sysm, coeffs, sense=sense)
                if res.status != "optimal":
                    raise InvariantViolation(
                        f"bounded cell {c.id} is unbounded in coordinate {v}"
                    )
                if abs(res.value) >= r:
                    raise InvariantViolation(
                        f"bounded cell {c.id} reaches norm {float(abs(res.value)):g} >= r"
                    )
    count = 0
    for c in cx.rays():
        p = ray_point(space, c.ray_spec.center, r)
        if linf(p) != r:
            raise InvariantViolation("ray tail does not start on the sphere")
        count += 1
    return count
