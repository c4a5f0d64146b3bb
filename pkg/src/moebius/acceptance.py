"""The acceptance suite: one callable per verifiable claim about the build.

Each criterion is a self-contained computation with deterministic seeds; it
returns ok plus a human-readable detail line. The CLI `selfcheck` command and
the pytest acceptance module both run these, so a correct build has exactly
one source of truth for what "correct" means.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .complexes import (
    build_complex,
    delta_estimate,
    r_tilde,
    ray_point,
    sample_members,
    tangent_dimension,
    tight_pairs_exact,
    visual_recovery_check,
)
from .core import (
    AntipodalSpace,
    CounterexampleFound,
    as_fraction,
    distance,
    pairs,
    to_log_weights,
    validate_antipodal,
)
from .feasibility import cell_system, fourier_motzkin_feasible, solve
from .hull import ball_hull_check, hyperconvexity_witness
from .relations import PairRelation, classify_type
from .teich import (
    SimplexPoint,
    classify4,
    d_moeb,
    geodesic_point,
    moebius_ratio,
    moebius_symmetries,
    phi,
    phi_inverse,
)

ZERO = Fraction(0)


@dataclass(frozen=True)
class CriterionResult:
    name: str
    ok: bool
    seconds: float
    details: str


# ------------------------------------------------------------- generators

def random_exact_log_space(rng: random.Random, n: int) -> AntipodalSpace:
    """Random log-domain exact space: nonpositive rational weights with every
    row forced to attain 0."""
    a = [[ZERO] * n for _ in range(n)]
    for i, j in pairs(n):
        a[i][j] = a[j][i] = Fraction(-rng.randint(1, 300), 100)
    for i in range(n):
        if all(a[i][j] != 0 for j in range(n) if j != i):
            j = rng.choice([k for k in range(n) if k != i])
            a[i][j] = a[j][i] = ZERO
    return validate_antipodal(tuple(tuple(r) for r in a), mode="exact",
                              domain="log")


def random_float_log_space(rng: random.Random, n: int) -> AntipodalSpace:
    a = [[0.0] * n for _ in range(n)]
    for i, j in pairs(n):
        a[i][j] = a[j][i] = -rng.uniform(0.01, 3.0)
    for i in range(n):
        if all(a[i][j] != 0.0 for j in range(n) if j != i):
            j = rng.choice([k for k in range(n) if k != i])
            a[i][j] = a[j][i] = 0.0
    return validate_antipodal(tuple(tuple(r) for r in a), mode="float",
                              domain="log")


def random_ultrametric_space(rng: random.Random, n: int) -> AntipodalSpace:
    """Random exact ultrametric boundary: pair value = value of the deepest
    partition level separating the pair, top level 1. Rows attain 1 because
    the top split separates everything from something."""
    rho = [[ZERO] * n for _ in range(n)]

    def fill(block, level):
        if len(block) < 2:
            return
        k = 2 if len(block) == 2 or rng.random() < 0.6 else 3
        rng.shuffle(block)
        cuts = sorted(rng.sample(range(1, len(block)), k - 1)) if len(block) > k - 1 else list(range(1, k))
        parts = []
        prev = 0
        for c in cuts:
            parts.append(block[prev:c])
            prev = c
        parts.append(block[prev:])
        parts = [p for p in parts if p]
        for pa, pb in itertools.combinations(parts, 2):
            for x in pa:
                for y in pb:
                    rho[x][y] = rho[y][x] = level
        nxt = level * Fraction(rng.randint(1, 3), 4)
        for p in parts:
            fill(p, nxt)

    fill(list(range(n)), Fraction(1))
    return validate_antipodal(tuple(tuple(r) for r in rho), mode="exact",
                              domain="rho")


def random_simplex_point(rng: random.Random, m: int) -> SimplexPoint:
    k = 1 + m * (m - 3) // 2
    w = [rng.randint(1, 60) for _ in range(k)]
    s = sum(w)
    return SimplexPoint(tuple(Fraction(v, s) for v in w))


def star_space_exact() -> AntipodalSpace:
    a = [[0, 0, 0, 0], [0, 0, -2, -2], [0, -2, 0, -2], [0, -2, -2, 0]]
    return validate_antipodal(a, mode="exact", domain="log")


def square_space_exact() -> AntipodalSpace:
    """The (1/4, 1/4, 1/2) class as a rho-domain exact space."""
    rho = [[0, 1, 1, 1],
           [1, 0, Fraction(1, 4), Fraction(1, 4)],
           [1, Fraction(1, 4), 0, Fraction(1, 2)],
           [1, Fraction(1, 4), Fraction(1, 2), 0]]
    return validate_antipodal(rho, mode="exact", domain="rho")


def _admissible_relations(n: int):
    plist = sorted(pairs(n))
    out = []
    for r in range(1, len(plist) + 1):
        for combo in itertools.combinations(plist, r):
            touched = set()
            for i, j in combo:
                touched.add(i)
                touched.add(j)
            if len(touched) == n:
                out.append(PairRelation(n, frozenset(combo)))
    return out


# ------------------------------------------------------------- criteria

def crit_classify4_complex_agreement():
    """Grid over the class simplex: classifier tags match the complex shape."""
    denom = 12
    tol = 1e-9
    instances = 0
    seen = set()
    worst_time = 0.0
    for p in range(1, denom - 1):
        for q in range(1, denom - 1 - p + 1):
            r = denom - p - q
            if r < 1:
                continue
            t0 = time.monotonic()
            point = SimplexPoint((Fraction(p, denom), Fraction(q, denom),
                                  Fraction(r, denom)))
            reg = classify4(point)
            seen.add(reg.tag)
            na = phi_inverse(point)
            cx = build_complex(to_log_weights(na.to_space()))
            fb = tuple(cx.f_vector_bounded)
            while fb and fb[-1] == 0:
                fb = fb[:-1]
            rays = cx.rays()
            if len(rays) != 4:
                return False, f"{point.coordinates}: expected 4 rays, got {len(rays)}"
            bounded_edges = [c for c in cx.cells if c.bounded and c.dim == 1]

            def lengths():
                out = []
                for e in bounded_edges:
                    vs = cx.vertices_of(e)
                    if len(vs) != 2:
                        return None
                    out.append(2.0 * float(distance(vs[0].witness, vs[1].witness)))
                return sorted(out)

            if reg.tag.startswith("B"):
                if fb != (4, 4, 1):
                    return False, f"{point.coordinates}: tag {reg.tag} but bounded f-vector {fb}"
                ls = lengths()
                want = sorted([reg.sides[0], reg.sides[0], reg.sides[1], reg.sides[1]])
                if ls is None or any(abs(x - y) > tol for x, y in zip(ls, sorted(want))):
                    return False, f"{point.coordinates}: side lengths {ls} != {sorted(want)}"
            elif reg.tag.startswith("L"):
                if fb != (2, 1):
                    return False, f"{point.coordinates}: tag {reg.tag} but bounded f-vector {fb}"
                ls = lengths()
                if ls is None or abs(ls[0] - reg.sides[0]) > tol:
                    return False, f"{point.coordinates}: segment length {ls} != {reg.sides[0]}"
            else:
                if fb != (1,):
                    return False, f"{point.coordinates}: tag O but bounded f-vector {fb}"
            instances += 1
            worst_time = max(worst_time, time.monotonic() - t0)
    if instances < 50:
        return False, f"grid too small: {instances} instances"
    if seen != {"B1", "B2", "B3", "L1", "L2", "L3", "O"}:
        return False, f"regions missed: {sorted(seen)}"
    if worst_time >= 1.0:
        return False, f"slowest instance took {worst_time:.2f}s (limit 1s)"
    return True, (f"{instances} grid points, all 7 regions, complex agrees; "
                  f"slowest instance {worst_time * 1000:.0f} ms")


def crit_exact_star():
    """The hub-and-legs instance has its vertex and thresholds exactly."""
    space = star_space_exact()
    cx = build_complex(space)
    verts = [c for c in cx.cells if c.dim == 0]
    if len(verts) != 1:
        return False, f"expected 1 vertex, got {len(verts)}"
    v = verts[0].witness
    if tuple(v) != (Fraction(-1), Fraction(1), Fraction(1), Fraction(1)):
        return False, f"vertex {v} != (-1, 1, 1, 1)"
    tmins = {}
    for c in cx.rays():
        tmins[c.ray_spec.center] = c.ray_spec.t_min
    if tmins != {0: Fraction(-1), 1: Fraction(1), 2: Fraction(1), 3: Fraction(1)}:
        return False, f"ray thresholds {tmins}"
    a = space.a_exact()
    residual = max(
        abs(max(v[i] + v[j] + a[i][j] for j in range(4) if j != i))
        for i in range(4)
    )
    if residual != 0:
        return False, f"vertex residual {residual} != 0"
    return True, "vertex (-1,1,1,1), thresholds (-1,1,1,1), residual exactly 0"


def crit_ball_hull():
    """Closed balls are the tight spans of their spheres, both directions."""
    rng = random.Random(20260817)
    spaces = (
        [random_exact_log_space(rng, 4) for _ in range(8)]
        + [random_exact_log_space(rng, 5) for _ in range(7)]
        + [random_exact_log_space(rng, 6) for _ in range(3)]
        + [random_float_log_space(rng, 4) for _ in range(1)]
        + [random_float_log_space(rng, 6) for _ in range(1)]
    )
    t0 = time.monotonic()
    checked = 0
    for k, space in enumerate(spaces):
        cx = build_complex(space)
        rt = r_tilde(space, cx)
        for dr in (1, 5):
            rep = ball_hull_check(space, cx, rt + dr, samples=100,
                                  seed=1000 + k)
            if not rep.ok:
                return False, f"space {k} (n={space.n}) at r = r_tilde + {dr}: {rep}"
            checked += 1
    elapsed = time.monotonic() - t0
    if elapsed >= 30.0:
        return False, f"{checked} checks took {elapsed:.1f}s (limit 30s)"
    return True, (f"{len(spaces)} spaces x 2 radii, 100 members each, "
                  f"zero failures in {elapsed:.1f}s")


def crit_complex_axioms():
    """Face closure, intersection rule, ray census, dimension bounds."""
    rng = random.Random(4242)
    battery = [
        star_space_exact(),
        to_log_weights(square_space_exact()),
        random_exact_log_space(rng, 4),
        random_exact_log_space(rng, 5),
        random_exact_log_space(rng, 5),
        random_exact_log_space(rng, 6),
        random_float_log_space(rng, 5),
    ]
    cells_total = 0
    for space in battery:
        n = space.n
        a = space.a_exact()
        cx = build_complex(space)
        cells_total += len(cx.cells)
        by_rel = {c.relation.pairs: c for c in cx.cells}

        rays = cx.rays()
        if len(rays) != n:
            return False, f"n={n}: {len(rays)} rays instead of {n}"
        for c in rays:
            if classify_type(c.relation).kind != "star":
                return False, f"n={n}: unbounded cell {c.id} is not a star"
        for c in cx.cells:
            if c.dim > n // 2:
                return False, f"n={n}: cell {c.id} has dim {c.dim} > {n // 2}"
            td = tangent_dimension(space, c.witness)
            if td != c.dim:
                return False, (f"n={n}: cell {c.id} dim {c.dim} != tangent "
                               f"dimension {td}")

        # face closure: tightening any one slack pair of a cell lands on a
        # cell of the complex (the relation of the new witness is enumerated)
        for c in cx.cells:
            off = [p for p in pairs(n) if p not in c.relation.pairs]
            for p in off:
                rel2 = PairRelation(n, c.relation.pairs | {p})
                res = solve(cell_system(space, rel2))
                if res.status == "empty":
                    continue
                forced = tight_pairs_exact(a, res.witness)
                if forced not in by_rel:
                    return False, (f"n={n}: face of cell {c.id} through {p} "
                                   f"has relation {sorted(forced)} missing "
                                   f"from the complex")

        # intersection rule: nonempty pairwise intersections are cells,
        # and the union relation itself is a cell iff its interior shows up
        for c, d in itertools.combinations(cx.cells, 2):
            union = c.relation.pairs | d.relation.pairs
            res = solve(cell_system(space, PairRelation(n, union)))
            present = PairRelation(n, union).pairs in by_rel
            if res.status == "empty":
                if present:
                    return False, f"n={n}: cell for empty union {sorted(union)}"
                continue
            forced = tight_pairs_exact(a, res.witness)
            if forced not in by_rel:
                return False, (f"n={n}: intersection of cells {c.id},{d.id} "
                               f"is no face: relation {sorted(forced)}")
            if (res.status == "interior") != present:
                return False, (f"n={n}: union of {c.id},{d.id} antipodal="
                               f"{res.status == 'interior'} but cell present={present}")
    return True, (f"{len(battery)} spaces, {cells_total} cells: closure, "
                  "intersections, ray census, dimension bounds all hold")


def crit_oracle_equivalence():
    """The simplex engine and the eliminator agree on every admissible cell."""
    rng = random.Random(515151)
    checked = 0
    for n, count in ((4, 5), (5, 5)):
        rels = _admissible_relations(n)
        for _ in range(count):
            space = random_exact_log_space(rng, n)
            for rel in rels:
                system = cell_system(space, rel)
                res = solve(system)
                closed_fm = fourier_motzkin_feasible(system, strict=False)
                strict_fm = fourier_motzkin_feasible(system, strict=True)
                if (res.status != "empty") != closed_fm:
                    return False, (f"n={n} {rel.sorted_pairs}: closed "
                                   f"{res.status} vs eliminator {closed_fm}")
                if (res.status == "interior") != strict_fm:
                    return False, (f"n={n} {rel.sorted_pairs}: strict "
                                   f"{res.status} vs eliminator {strict_fm}")
                checked += 1
    return True, f"{checked} relation verdicts agree with the eliminator"


def crit_visual_recovery():
    """Sphere points reproduce the boundary function at every radius."""
    rng = random.Random(909090)
    spaces = [random_exact_log_space(rng, rng.choice((4, 5, 6))) for _ in range(14)]
    spaces += [random_float_log_space(rng, rng.choice((4, 5))) for _ in range(6)]
    worst = 0.0
    for k, space in enumerate(spaces):
        cx = build_complex(space)
        rt = r_tilde(space, cx)
        reports = []
        for dr in (1, 5):
            rep = visual_recovery_check(space, rt + dr, cx)
            worst = max(worst, rep.max_deviation)
            reports.append(rep)
        g1 = {(i, j): g for i, j, g in reports[0].products}
        g2 = {(i, j): g for i, j, g in reports[1].products}
        if g1 != g2:
            return False, f"space {k}: products depend on the radius"
    if worst > 1e-9:
        return False, f"max deviation {worst:.3e} > 1e-9"
    return True, (f"{len(spaces)} spaces x 2 radii: max deviation "
                  f"{worst:.1e}, products radius-independent")


def crit_hyperconvexity():
    """Pairwise-meeting ball families always admit a common point."""
    rng = random.Random(606060)
    t_families = 0
    for fam in range(50):
        n = rng.choice((4, 5))
        space = random_exact_log_space(rng, n)
        cx = build_complex(space)
        rt = r_tilde(space, cx)
        k = rng.randint(2, 5)
        centers = sample_members(space, cx, k, rng)
        radii = []
        for i, c in enumerate(centers):
            base = max(distance(c, d) for d in centers if d is not c) / 2
            radii.append(base + Fraction(rng.randint(0, 8), 4))
        try:
            w = hyperconvexity_witness(space, cx, centers, radii)
        except CounterexampleFound as e:
            return False, f"family {fam}: {e}"
        for c, r in zip(centers, radii):
            if distance(tuple(as_fraction(x) for x in w),
                        tuple(as_fraction(x) for x in c)) > r:
                return False, f"family {fam}: witness misses a ball"
        t_families += 1
    # constructed tight family: the two radii exactly split the distance
    space = star_space_exact()
    cx = build_complex(space)
    vertex = next(c for c in cx.cells if c.dim == 0).witness
    far = ray_point(space, 0, Fraction(3))
    d = distance(vertex, far)
    w = hyperconvexity_witness(space, cx, [vertex, far], [d / 3, 2 * d / 3])
    if distance(w, vertex) > d / 3 or distance(w, far) > 2 * d / 3:
        return False, "tight family: witness misses a ball"
    t_families += 1
    return True, f"{t_families} families (incl. exactly tight) all witnessed"


def crit_teich_layer():
    """Coordinates, metric axioms, the frozen distance, geodesics, counts."""
    rng = random.Random(112233)
    # round trips
    for m in (4, 5, 6):
        expect = 1 + m * (m - 3) // 2
        for _ in range(10):
            p = random_simplex_point(rng, m)
            if len(p.coordinates) != expect:
                return False, f"m={m}: coordinate count {len(p.coordinates)}"
            q = phi(phi_inverse(p))
            if q.coordinates != p.coordinates:
                return False, f"m={m}: round trip moved {p.coordinates}"
            na = phi_inverse(p)
            if phi_inverse(q).rho != na.rho:
                return False, f"m={m}: inverse round trip changed the matrix"
    # frozen distance
    d0 = d_moeb(SimplexPoint((Fraction(1, 3),) * 3),
                SimplexPoint((Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))))
    if abs(d0 - math.log(2)) > 1e-12:
        return False, f"frozen distance {d0!r} != log 2"
    # metric axioms on random triples, exact ratio arithmetic
    for k in range(100):
        m = rng.choice((4, 5))
        a, b, c = (random_simplex_point(rng, m) for _ in range(3))
        qab = moebius_ratio(a, b)
        qba = moebius_ratio(b, a)
        if qab != qba:
            return False, f"triple {k}: ratio not symmetric"
        if qab < 1:
            return False, f"triple {k}: ratio below 1"
        if (qab == 1) != (a.coordinates == b.coordinates):
            return False, f"triple {k}: zero-distance misreports equivalence"
        if moebius_ratio(a, c) > qab * moebius_ratio(b, c):
            return False, f"triple {k}: triangle inequality fails"
    # geodesic parametrization
    for pair in range(3):
        a = random_simplex_point(rng, 4)
        b = random_simplex_point(rng, 4)
        if a.coordinates == b.coordinates:
            continue
        d = d_moeb(a, b)
        for _ in range(20):
            s = rng.uniform(-5.0, d + 5.0)
            t = rng.uniform(-5.0, d + 5.0)
            ds = d_moeb(geodesic_point(a, b, s), geodesic_point(a, b, t))
            if abs(ds - abs(t - s)) > 1e-9:
                return False, f"geodesic pair {pair}: d={ds} at |t-s|={abs(t - s)}"
    return True, ("round trips exact, 100 triples satisfy the axioms, "
                  "frozen log 2, geodesics are arc length")


def crit_delta_sampling():
    """Tree shapes sample flat; the square samples thick; bound is honest."""
    rng = random.Random(3030)
    tree_points = [
        SimplexPoint((Fraction(1, 3),) * 3),
        SimplexPoint((Fraction(1, 5), Fraction(2, 5), Fraction(2, 5))),
        SimplexPoint((Fraction(2, 5), Fraction(1, 5), Fraction(2, 5))),
        SimplexPoint((Fraction(2, 5), Fraction(2, 5), Fraction(1, 5))),
    ]
    for p in tree_points:
        space = to_log_weights(phi_inverse(p).to_space())
        cx = build_complex(space)
        d = delta_estimate(space, cx, samples=300, seed=11)
        if float(abs(d)) > 1e-9:
            return False, f"tree class {p.coordinates}: delta {float(d)}"
    for k in range(3):
        space = to_log_weights(random_ultrametric_space(rng, rng.choice((4, 5, 6))))
        cx = build_complex(space)
        d = delta_estimate(space, cx, samples=300, seed=12 + k)
        if float(abs(d)) > 1e-9:
            return False, f"ultrametric {k}: delta {float(d)}"
    # the square class is genuinely thick, and the reported delta really is
    # an upper bound for the defect of every sampled quadruple
    space = to_log_weights(square_space_exact())
    cx = build_complex(space)
    samples = 10_000
    d = delta_estimate(space, cx, samples=samples, seed=13)
    if float(d) <= 0.1:
        return False, f"square delta {float(d)} <= 0.1"
    rng2 = random.Random(13)
    pts = sample_members(space, cx, 4 * samples, rng2)
    worst = ZERO
    for q in range(samples):
        w, x, y, z = pts[4 * q: 4 * q + 4]
        s = sorted([
            distance(w, x) + distance(y, z),
            distance(w, y) + distance(x, z),
            distance(w, z) + distance(x, y),
        ])
        worst = max(worst, (s[2] - s[1]) / 2)
    if float(worst) > float(d):
        return False, f"a quadruple defect {float(worst)} exceeds delta {float(d)}"
    return True, (f"trees flat to 0, square delta {float(d):.4f} > 0.1, "
                  f"bound holds on {samples} quadruples")


def crit_symmetry_groups():
    """The balanced class has full symmetry; the square class keeps 8."""
    so = moebius_symmetries(SimplexPoint((Fraction(1, 3),) * 3))
    sb = moebius_symmetries(SimplexPoint((Fraction(1, 4), Fraction(1, 4),
                                          Fraction(1, 2))))
    if len(so) != 24:
        return False, f"balanced class order {len(so)} != 24"
    if len(sb) != 8:
        return False, f"square class order {len(sb)} != 8"
    for name, group in (("balanced", so), ("square", sb)):
        gs = set(group)
        if tuple(range(4)) not in gs:
            return False, f"{name}: identity missing"
        for g in gs:
            inv = tuple(sorted(range(4), key=lambda i: g[i]))
            if inv not in gs:
                return False, f"{name}: inverse of {g} missing"
            for h in gs:
                if tuple(g[h[i]] for i in range(4)) not in gs:
                    return False, f"{name}: composition {g}*{h} missing"
    return True, "orders 24 and 8; closure and inverses verified"


CRITERIA = {
    "classify4-complex-agreement": crit_classify4_complex_agreement,
    "exact-star": crit_exact_star,
    "ball-hull": crit_ball_hull,
    "complex-axioms": crit_complex_axioms,
    "oracle-equivalence": crit_oracle_equivalence,
    "visual-recovery": crit_visual_recovery,
    "hyperconvexity": crit_hyperconvexity,
    "teich-layer": crit_teich_layer,
    "delta-sampling": crit_delta_sampling,
    "symmetry-groups": crit_symmetry_groups,
}


def run_criteria(names=None) -> list:
    """Run the requested criteria (all by default) and collect results."""
    if names is None:
        names = list(CRITERIA)
    results = []
    for name in names:
        if name not in CRITERIA:
            raise KeyError(f"unknown criterion {name!r}; "
                           f"known: {', '.join(CRITERIA)}")
        t0 = time.monotonic()
        try:
            ok, details = CRITERIA[name]()
        except Exception as e:  # a crash is a failure, not an abort
            ok, details = False, f"{type(e).__name__}: {e}"
        results.append(CriterionResult(
            name=name, ok=ok, seconds=time.monotonic() - t0, details=details,
        ))
    return results
