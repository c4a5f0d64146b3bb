"""Moebius classes of boundary data and the space of all of them.

Two antipodal functions on the same point set are Moebius equivalent when
all their cross-ratios agree; rescaling by a member point never changes
them. Each class has exactly one representative whose first row is constant
1 and whose remaining strictly-upper block sums to 1, so the block entries
identify the class with an open-simplex point of dimension m(m-3)/2. That
simplex carries a metric: the largest log-ratio of corresponding
cross-ratios. Geodesics are entrywise power interpolations, and for m = 4
every class falls into one of seven regions read off the normalized triple
(two-cell regions, segment regions, and the single star class).

Exactness follows the input: rational boundary values keep the whole layer
in Fraction arithmetic (normalization and cross-ratio ratios are rational
operations), so metric comparisons and the four-point regions are decided
exactly; the metric value itself and the region side lengths involve a log
and come back as floats.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import (
    AntipodalSpace,
    DEFAULT_TOL,
    LimitExceeded,
    NotFour,
    NotSeparating,
    OutOfRange,
    ParseError,
    SameClass,
    TooSmall,
    as_fraction,
    pairs,
)

ONE = Fraction(1)


@dataclass(frozen=True)
class NormalizedAntipodal:
    """The canonical representative of a Moebius class.

    First row and column are 1 off the diagonal; the strictly-upper entries
    outside them are positive, below 1, and sum to 1. Exact mode means every
    entry is a Fraction and comparisons against other normalized
    representatives are exact.
    """

    m: int
    rho: tuple
    mode: str = "exact"
    tol: float = DEFAULT_TOL
    labels: tuple = ()

    def minor(self) -> tuple:
        """Strictly-upper entries off the first point, row-wise."""
        return tuple(
            self.rho[i][j] for i in range(1, self.m) for j in range(i + 1, self.m)
        )

    def to_space(self) -> AntipodalSpace:
        from .core import validate_antipodal

        return validate_antipodal(
            self.rho, mode=self.mode, domain="rho", tol=self.tol,
            labels=self.labels or None,
        )


@dataclass(frozen=True)
class SimplexPoint:
    """Open-simplex coordinates of a Moebius class.

    For m boundary points the vector has length 1 + m(m-3)/2, all entries
    positive and summing to 1, ordered like the row-wise strictly-upper
    block of the normalized representative off its first point.
    """

    coordinates: tuple
    mode: str = "exact"

    @property
    def m(self) -> int:
        return _m_from_block_length(len(self.coordinates))


@dataclass(frozen=True)
class Region4:
    """Classification of a four-point class by its normalized triple.

    tags: B1/B2/B3 (one bounded two-cell; sides holds its two side lengths,
    largest first), L1/L2/L3 (bounded segment; sides holds its length), O
    (single vertex; sides empty). triple is the normalized (mu, lam, nu).
    """

    tag: str
    sides: tuple
    triple: tuple


def _m_from_block_length(length: int) -> int:
    # length = (m - 1)(m - 2) / 2
    m = (3 + math.isqrt(8 * length + 1)) // 2
    if length < 3 or (m - 1) * (m - 2) != 2 * length:
        raise ParseError(
            f"{length} coordinates do not fill the block of any m >= 4"
        )
    return m


def _rho_matrix(x, tol: float):
    """Dispatch any accepted input to (m, rho matrix, exact flag).

    Accepts a NormalizedAntipodal, an AntipodalSpace (either domain), a
    SimplexPoint, or a raw symmetric matrix with positive off-diagonal
    entries. Raw entries are exact when none of them is a float.
    """
    if isinstance(x, NormalizedAntipodal):
        return x.m, x.rho, x.mode == "exact"
    if isinstance(x, SimplexPoint):
        na = phi_inverse(x, tol=tol)
        return na.m, na.rho, na.mode == "exact"
    if isinstance(x, AntipodalSpace):
        if x.domain == "rho":
            return x.n, x.matrix, x.mode == "exact"
        rho = tuple(
            tuple(
                0.0 if i == j else math.exp(float(x.matrix[i][j]) / 2.0)
                for j in range(x.n)
            )
            for i in range(x.n)
        )
        return x.n, rho, False
    try:
        m = len(x)
        rows = [tuple(row) for row in x]
    except TypeError:
        raise ParseError(f"cannot read {type(x).__name__} as boundary data") from None
    if any(len(row) != m for row in rows):
        raise ParseError("matrix is not square")
    if m < 4:
        raise TooSmall(f"need at least 4 points, got {m}")
    exact = not any(
        isinstance(rows[i][j], float) for i, j in pairs(m)
    )
    eps = 0 if exact else tol
    conv = as_fraction if exact else float
    rho = [[conv(v) if i != j else (ZERO_OF[exact]) for j, v in enumerate(row)]
           for i, row in enumerate(rows)]
    for i, j in pairs(m):
        if abs(rho[i][j] - rho[j][i]) > eps:
            raise NotSeparating(f"rho({i},{j}) != rho({j},{i})")
        v = (rho[i][j] + rho[j][i]) / 2 if not exact else rho[i][j]
        if not v > 0:
            raise NotSeparating(f"rho({i},{j}) = {rows[i][j]!r} is not positive")
        rho[i][j] = rho[j][i] = v
    return m, tuple(tuple(row) for row in rho), exact


ZERO_OF = {True: Fraction(0), False: 0.0}


def normalize(x, tol: float = DEFAULT_TOL, labels=None) -> NormalizedAntipodal:
    """The unique class representative with unit first row and unit block sum.

    Divides each entry by its two first-point entries and rescales the
    remaining block to l1 mass 1; the result depends only on the Moebius
    class of the input. Rational input stays rational.
    """
    m, rho, exact = _rho_matrix(x, tol)
    if m < 4:
        raise TooSmall(f"need at least 4 points, got {m}")
    for i, j in pairs(m):
        if not rho[i][j] > 0:
            raise NotSeparating(f"rho({i},{j}) is not positive")
    block = {}
    for i in range(1, m):
        for j in range(i + 1, m):
            block[(i, j)] = rho[i][j] / (rho[0][i] * rho[0][j])
    total = sum(block.values())
    zero = ZERO_OF[exact]
    one = ONE if exact else 1.0
    out = [[zero] * m for _ in range(m)]
    for i in range(1, m):
        out[0][i] = out[i][0] = one
    for (i, j), v in block.items():
        out[i][j] = out[j][i] = v / total
    if labels is None and isinstance(x, AntipodalSpace):
        labels = x.labels
    return NormalizedAntipodal(
        m=m, rho=tuple(tuple(row) for row in out),
        mode="exact" if exact else "float", tol=tol,
        labels=tuple(labels) if labels else tuple(str(i) for i in range(m)),
    )


def phi(x, tol: float = DEFAULT_TOL) -> SimplexPoint:
    """Simplex coordinates of a class: the normalized block, row-wise."""
    na = x if isinstance(x, NormalizedAntipodal) else normalize(x, tol=tol)
    return SimplexPoint(coordinates=na.minor(), mode=na.mode)


def phi_inverse(p, tol: float = DEFAULT_TOL) -> NormalizedAntipodal:
    """The normalized representative with the given block coordinates."""
    coords = tuple(p.coordinates) if isinstance(p, SimplexPoint) else tuple(p)
    m = _m_from_block_length(len(coords))
    exact = not any(isinstance(v, float) for v in coords)
    conv = as_fraction if exact else float
    vals = [conv(v) for v in coords]
    for k, v in enumerate(vals):
        if not v > 0:
            raise OutOfRange(f"coordinate {k} = {coords[k]!r} is not positive")
    total = sum(vals)
    if exact:
        if total != 1:
            raise OutOfRange(f"coordinates sum to {total}, expected 1")
    elif abs(total - 1.0) > tol:
        raise OutOfRange(f"coordinates sum to {total!r}, expected 1")
    zero = ZERO_OF[exact]
    one = ONE if exact else 1.0
    rho = [[zero] * m for _ in range(m)]
    for i in range(1, m):
        rho[0][i] = rho[i][0] = one
    it = iter(vals)
    for i in range(1, m):
        for j in range(i + 1, m):
            v = next(it)
            rho[i][j] = rho[j][i] = v
    return NormalizedAntipodal(
        m=m, rho=tuple(tuple(row) for row in rho),
        mode="exact" if exact else "float", tol=tol,
        labels=tuple(str(i) for i in range(m)),
    )


def moebius_ratio(x1, x2, tol: float = DEFAULT_TOL):
    """Largest ratio of corresponding cross-ratios, scanned exhaustively.

    Always >= 1 (the quadruple scan sees every pattern together with its
    reciprocal) and equal to 1 exactly when the two inputs are Moebius
    equivalent. A Fraction when both inputs are rational, so equivalence and
    metric comparisons can be decided exactly; the metric itself is the log.
    """
    m1, r1, e1 = _rho_matrix(x1, tol)
    m2, r2, e2 = _rho_matrix(x2, tol)
    if m1 != m2:
        raise ParseError(f"point counts differ: {m1} vs {m2}")
    if m1 < 4:
        raise TooSmall(f"need at least 4 points, got {m1}")
    best = None
    for i, j, k, l in itertools.permutations(range(m1), 4):
        c1 = (r1[i][k] * r1[j][l]) / (r1[i][l] * r1[j][k])
        c2 = (r2[i][k] * r2[j][l]) / (r2[i][l] * r2[j][k])
        q = c1 / c2
        if best is None or q > best:
            best = q
    return best


def d_moeb(x1, x2, tol: float = DEFAULT_TOL) -> float:
    """Distance between Moebius classes: log of the largest cross-ratio ratio."""
    q = moebius_ratio(x1, x2, tol=tol)
    if isinstance(q, Fraction):
        return math.log(q.numerator) - math.log(q.denominator)
    return math.log(q)


def is_equivalent(x1, x2, tol: float = DEFAULT_TOL) -> bool:
    """Whether two inputs define the same Moebius class."""
    q = moebius_ratio(x1, x2, tol=tol)
    if isinstance(q, Fraction):
        return q == 1
    return math.log(q) <= tol


def geodesic_point(x0, x1, t, tol: float = DEFAULT_TOL) -> NormalizedAntipodal:
    """The point at parameter t on the geodesic line through two classes.

    Entrywise power interpolation of the normalized representatives with
    exponent t / d, followed by the block rescale that restores the
    canonical form; any real t is allowed (the line extends beyond its
    endpoints) and parameters are arc length: the distance between the
    points at s and t is |s - t|.
    """
    a = normalize(x0, tol=tol)
    b = normalize(x1, tol=tol)
    q = moebius_ratio(a, b, tol=tol)
    same = q == 1 if isinstance(q, Fraction) else math.log(q) <= tol
    if same:
        raise SameClass("the two classes coincide, no unique geodesic")
    d = math.log(q.numerator) - math.log(q.denominator) if isinstance(q, Fraction) else math.log(q)
    lam = float(t) / d
    m = a.m
    block = {}
    for i in range(1, m):
        for j in range(i + 1, m):
            block[(i, j)] = (
                float(b.rho[i][j]) ** lam * float(a.rho[i][j]) ** (1.0 - lam)
            )
    total = sum(block.values())
    rho = [[0.0] * m for _ in range(m)]
    for i in range(1, m):
        rho[0][i] = rho[i][0] = 1.0
    for (i, j), v in block.items():
        rho[i][j] = rho[j][i] = v / total
    return NormalizedAntipodal(
        m=m, rho=tuple(tuple(row) for row in rho), mode="float", tol=tol,
        labels=a.labels,
    )


def classify4(x, tol: float = DEFAULT_TOL) -> Region4:
    """Which of the seven shapes a four-point class reconstructs to.

    Reads the normalized triple (mu, lam, nu) and compares: one strictly
    dominant entry gives a two-cell region (B1 when nu dominates, B2 for mu,
    B3 for lam) with side lengths 2 log(dominant / other); a dominant equal
    pair gives a segment region (L1 when mu is the small entry, L2 for lam,
    L3 for nu) with the analogous length; the balanced triple is the single
    star class O. Exact input decides the comparisons exactly.
    """
    na = x if isinstance(x, NormalizedAntipodal) else normalize(x, tol=tol)
    if na.m != 4:
        raise NotFour(f"classification needs exactly 4 points, got {na.m}")
    mu, lam, nu = na.minor()
    if na.mode == "exact":
        def eq(u, v):
            return u == v
    else:
        def eq(u, v):
            return abs(u - v) <= tol

    def side(hi, lo):
        return 2.0 * (math.log(float(hi)) - math.log(float(lo)))

    triple = (mu, lam, nu)
    if eq(mu, lam) and eq(lam, nu):
        return Region4(tag="O", sides=(), triple=triple)
    if eq(lam, nu) and mu < lam:
        return Region4(tag="L1", sides=(side(nu, mu),), triple=triple)
    if eq(mu, nu) and lam < mu:
        return Region4(tag="L2", sides=(side(mu, lam),), triple=triple)
    if eq(mu, lam) and nu < mu:
        return Region4(tag="L3", sides=(side(mu, nu),), triple=triple)
    if not eq(nu, mu) and not eq(nu, lam) and mu < nu and lam < nu:
        s = sorted((side(nu, lam), side(nu, mu)), reverse=True)
        return Region4(tag="B1", sides=tuple(s), triple=triple)
    if not eq(mu, lam) and not eq(mu, nu) and lam < mu and nu < mu:
        s = sorted((side(mu, lam), side(mu, nu)), reverse=True)
        return Region4(tag="B2", sides=tuple(s), triple=triple)
    s = sorted((side(lam, mu), side(lam, nu)), reverse=True)
    return Region4(tag="B3", sides=tuple(s), triple=triple)


def moebius_symmetries(x, tol: float = DEFAULT_TOL, max_m: int = 8) -> tuple:
    """All relabelings that preserve the Moebius class.

    Brute force over the symmetric group: g is a symmetry when the pulled
    back function rho(g(i), g(j)) normalizes to the same representative.
    The result always contains the identity and is closed under composition
    and inverses (it is the stabilizer of the class).
    """
    m, rho, exact = _rho_matrix(x, tol)
    if m > max_m:
        raise LimitExceeded(f"m = {m} exceeds the factorial guard {max_m}")
    base = normalize(x, tol=tol)
    eps = 0.0 if exact else tol
    syms = []
    for g in itertools.permutations(range(m)):
        pulled = tuple(
            tuple(rho[g[i]][g[j]] if i != j else rho[i][j] for j in range(m))
            for i in range(m)
        )
        cand = normalize(pulled, tol=tol)
        if exact:
            ok = cand.rho == base.rho
        else:
            ok = all(
                abs(float(cand.rho[i][j]) - float(base.rho[i][j])) <= eps
                for i, j in pairs(m)
            )
        if ok:
            syms.append(g)
    return tuple(syms)


def lattice_fingerprint(cx) -> str:
    """Canonical encoding of the face lattice labeled by (dim, bounded).

    Equal strings for complexes with isomorphic labeled lattices, so the
    reconstructed shapes of two classes can be compared without reference to
    coordinates. Canonicalization is refinement with individualization,
    which is exact on the small lattices this package builds.
    """
    labels = [
        (c.dim, bool(getattr(c, "bounded", True))) for c in cx.cells
    ]
    edges = sorted(cx.hasse)
    return _canonical_digraph(labels, edges)


def _canonical_digraph(labels, edges) -> str:
    n = len(labels)
    out_adj = [[] for _ in range(n)]
    in_adj = [[] for _ in range(n)]
    for u, v in edges:
        out_adj[u].append(v)
        in_adj[v].append(u)

    order = {lab: k for k, lab in enumerate(sorted(set(labels)))}
    start = [order[lab] for lab in labels]

    def refine(colors):
        while True:
            sig = [
                (
                    colors[v],
                    tuple(sorted(colors[w] for w in out_adj[v])),
                    tuple(sorted(colors[w] for w in in_adj[v])),
                )
                for v in range(n)
            ]
            rank = {s: k for k, s in enumerate(sorted(set(sig)))}
            new = [rank[sig[v]] for v in range(n)]
            if new == colors:
                return colors
            colors = new

    def encode(colors):
        pos = {v: colors[v] for v in range(n)}
        names = ",".join(
            f"{labels[v][0]}{'b' if labels[v][1] else 'u'}"
            for v in sorted(range(n), key=lambda v: pos[v])
        )
        arcs = ";".join(
            f"{a}>{b}"
            for a, b in sorted((pos[u], pos[v]) for u, v in edges)
        )
        return f"n{n}[{names}]({arcs})"

    def search(colors):
        colors = refine(colors)
        classes: dict[int, list] = {}
        for v in range(n):
            classes.setdefault(colors[v], []).append(v)
        target = None
        for c in sorted(classes):
            if len(classes[c]) > 1:
                target = classes[c]
                break
        if target is None:
            return encode(colors)
        best = None
        for v in target:
            branch = list(colors)
            branch[v] = n + max(colors) + 1
            enc = search(branch)
            if best is None or enc < best:
                best = enc
        return best

    if n == 0:
        return "n0[]()"
    return search(start)
