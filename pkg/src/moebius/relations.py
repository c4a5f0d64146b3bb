"""Pair relations: which rescaled weights sit exactly at the antipodal bound.

A member tau of the reconstructed space determines the set of pairs (i, j)
with tau_i + tau_j + a_ij = 0. Such a set of pairs is called a relation here.
A relation is admissible when every index occurs in some pair; admissible
relations are exactly the candidate tight-pair patterns of members, and the
members sharing a pattern form one polyhedral cell.

The combinatorics of a relation R is carried by its graph on the touched
vertices. Walking the graph with alternating signs shows that along a cell
the coordinates of a component move rigidly: tau_j = s_j t + c_j with signs
s_j = +-1 alternating over edges. A component containing an odd cycle forces
its parameter, an even (bipartite) component keeps one degree of freedom, so
the dimension of a nonempty cell is the number of even components.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    AntipodalSpace,
    InvariantViolation,
    NotAdmissible,
    NotMember,
    OutOfRange,
    ParseError,
    discrepancy,
    is_member,
    pairs,
)


def _norm_pair(p) -> tuple[int, int]:
    i, j = int(p[0]), int(p[1])
    if i == j:
        raise ParseError(f"degenerate pair {(i, j)}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class PairRelation:
    """A set of index pairs on n points, normalized to i < j."""

    n: int
    pairs: frozenset

    def __post_init__(self):
        for i, j in self.pairs:
            if not (0 <= i < j < self.n):
                raise OutOfRange(f"pair {(i, j)} out of range for n = {self.n}")

    @property
    def sorted_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.pairs))

    def touched(self) -> frozenset:
        out = set()
        for i, j in self.pairs:
            out.add(i)
            out.add(j)
        return frozenset(out)

    def is_admissible(self) -> bool:
        """Every index occurs in some pair."""
        return len(self.touched()) == self.n

    def union(self, other: "PairRelation") -> "PairRelation":
        if self.n != other.n:
            raise ParseError("relations live on different point counts")
        return PairRelation(self.n, self.pairs | other.pairs)

    def issubset(self, other: "PairRelation") -> bool:
        return self.pairs <= other.pairs

    def __iter__(self):
        return iter(self.sorted_pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, p):
        return _norm_pair(p) in self.pairs


def relation(n: int, items: Iterable) -> PairRelation:
    """Build a PairRelation from any iterable of index pairs."""
    return PairRelation(n, frozenset(_norm_pair(p) for p in items))


def complete_relation(n: int) -> PairRelation:
    return PairRelation(n, frozenset(pairs(n)))


def star_relation(n: int, center: int) -> PairRelation:
    """All pairs through one vertex."""
    if not 0 <= center < n:
        raise OutOfRange(f"center {center} out of range")
    return relation(n, ((center, j) for j in range(n) if j != center))


@dataclass(frozen=True)
class ParityComponent:
    """One connected component of the relation graph.

    vertices   sorted tuple of the component's vertices
    even       True when the component is bipartite (keeps one freedom)
    side0      bipartition side containing the smallest vertex (empty if odd)
    side1      the other side (empty if odd)
    """

    vertices: tuple[int, ...]
    even: bool
    side0: tuple[int, ...]
    side1: tuple[int, ...]


def parity_decomposition(rel: PairRelation) -> tuple[ParityComponent, ...]:
    """Connected components of the relation graph with their parity.

    Components are ordered by smallest vertex. Only touched vertices appear.
    The bipartition sides come from BFS layering; an edge inside one layer
    class marks an odd cycle and switches the component to odd.
    """
    adj: dict[int, set] = {}
    for i, j in rel.pairs:
        adj.setdefault(i, set()).add(j)
        adj.setdefault(j, set()).add(i)

    seen: dict[int, int] = {}
    comps = []
    for root in sorted(adj):
        if root in seen:
            continue
        color = {root: 0}
        queue = [root]
        even = True
        while queue:
            v = queue.pop(0)
            for w in adj[v]:
                if w not in color:
                    color[w] = color[v] ^ 1
                    queue.append(w)
                elif color[w] == color[v]:
                    even = False
        verts = tuple(sorted(color))
        for v in verts:
            seen[v] = 1
        if even:
            side0 = tuple(v for v in verts if color[v] == color[verts[0]])
            side1 = tuple(v for v in verts if color[v] != color[verts[0]])
        else:
            side0 = side1 = ()
        comps.append(ParityComponent(vertices=verts, even=even, side0=side0, side1=side1))
    return tuple(comps)


def cell_dimension(rel: PairRelation) -> int:
    """Dimension of the cell carried by an admissible relation: the number of
    even components of its graph."""
    if not rel.is_admissible():
        raise NotAdmissible(f"relation does not cover all {rel.n} indices")
    return sum(1 for c in parity_decomposition(rel) if c.even)


def affine_directions(rel: PairRelation) -> tuple[tuple, ...]:
    """Spanning directions of the cell's affine hull, one vector per even
    component: +1 on the side containing the component's smallest vertex,
    -1 on the other side, 0 elsewhere."""
    if not rel.is_admissible():
        raise NotAdmissible(f"relation does not cover all {rel.n} indices")
    out = []
    for comp in parity_decomposition(rel):
        if not comp.even:
            continue
        v = [0] * rel.n
        for x in comp.side0:
            v[x] = 1
        for x in comp.side1:
            v[x] = -1
        out.append(tuple(v))
    return tuple(out)


@dataclass(frozen=True)
class RelationType:
    """Shape classification of an admissible relation.

    kind 'star':  every pair passes through one common vertex (the center);
                  the cell is a ray going off to infinity.
    kind 'split': the relation contains two vertex-disjoint pairs; the cell
                  is a bounded polytope.
    """

    kind: str
    center: int | None = None
    split_pairs: tuple | None = None


def classify_type(rel: PairRelation) -> RelationType:
    """Classify an admissible relation as 'star' or 'split'.

    The two cases are exhaustive and exclusive for admissible relations on
    n >= 4 points; a relation fitting neither would contradict the structure
    theory, so that case raises InvariantViolation.
    """
    if not rel.is_admissible():
        raise NotAdmissible(f"relation does not cover all {rel.n} indices")
    plist = rel.sorted_pairs
    common = set(plist[0])
    for p in plist[1:]:
        common &= set(p)
    if common:
        return RelationType(kind="star", center=min(common))
    for a in plist:
        for b in plist:
            if not (set(a) & set(b)):
                return RelationType(kind="split", split_pairs=(a, b))
    raise InvariantViolation(
        f"admissible relation {plist} has neither a common vertex nor a disjoint pair"
    )


def tight_pairs(space: AntipodalSpace, tau: Sequence, tol: float | None = None) -> PairRelation:
    """Pairs realizing the antipodal bound at tau (no membership check)."""
    n = space.n
    exact = space.polyhedral_exact and all(isinstance(x, (Fraction, int)) for x in tau)
    out = []
    if exact:
        a = space.matrix
        for i, j in pairs(n):
            if tau[i] + tau[j] + a[i][j] == 0:
                out.append((i, j))
    else:
        a = space.log_matrix()
        t = (space.tol if tol is None else tol) * space.scale()
        for i, j in pairs(n):
            if abs(float(tau[i] + tau[j] + a[i][j])) <= t:
                out.append((i, j))
    return relation(n, out)


def relation_of_point(space: AntipodalSpace, tau: Sequence, tol: float | None = None) -> PairRelation:
    """The tight-pair relation of a member point.

    Raises NotMember when tau fails the membership test; for members the
    result is admissible by definition of membership.
    """
    if not is_member(space, tau, tol=tol):
        d = discrepancy(space, tau)
        raise NotMember(f"discrepancy {tuple(float(x) for x in d)} is not zero")
    return tight_pairs(space, tau, tol=tol)
