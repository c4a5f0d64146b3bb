"""Antipodal boundary data and the basic operations on it.

An antipodal space is a finite set of n >= 4 boundary points together with a
symmetric function rho taking values in (0, 1] off the diagonal such that
every point sees the value 1 somewhere in its row. Everything geometric
downstream runs on the log-weights

    a_ij = log rho(i, j)^2  <=  0,

where antipodality reads ``max_j a_ij = 0`` for every row i.

Two storage domains are supported. ``rho`` keeps the values themselves and is
the natural domain for cross-ratio work; ``log`` keeps the a_ij and is the
natural domain for the polyhedral side. Exact mode stores
:class:`fractions.Fraction` entries, float mode stores binary floats. Logs of
rationals are generally irrational, so converting an exact rho-domain space to
log-weights produces a float-mode space; exact polyhedral work therefore wants
input given directly as rational log-weights.

Points of the reconstructed space are rescaling vectors tau (one coordinate
per boundary point): tau rescales the log-weights to a'_ij = tau_i + tau_j +
a_ij, and tau is a member of the space exactly when the rescaled weights are
again antipodal, i.e. when every row of a' still has maximum 0. The metric
between members is the sup norm of the coordinate difference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

DEFAULT_TOL = 1e-9

# The enumeration walk refuses point counts above this unless overridden
# (argument or MOEBIUS_MAX_N); the cell count grows superexponentially.
DEFAULT_MAX_N = 7

Scalar = object  # Fraction or float, depending on mode
Vector = tuple
Matrix = tuple   # tuple of row tuples; diagonal entries may be None in log domain


class MoebiusError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MoebiusError):
    """Malformed or out-of-contract input data (CLI exit code 2)."""


class NotSymmetric(InputError):
    pass


class BadDiagonal(InputError):
    pass


class OutOfRange(InputError):
    pass


class NotAntipodal(InputError):
    pass


class TooSmall(InputError):
    pass


class NotDistinct(InputError):
    pass


class NotSeparating(InputError):
    pass


class NotFour(InputError):
    pass


class NotAdmissible(InputError):
    pass


class NotPositive(InputError):
    pass


class TriangleViolation(InputError):
    pass


class ParseError(InputError):
    pass


class SchemaMismatch(ParseError):
    pass


class PreconditionError(MoebiusError):
    """Well-formed input that violates a mathematical precondition (exit 3)."""


class NotMember(PreconditionError):
    pass


class RadiusTooSmall(PreconditionError):
    pass


class NotMoebiusEquivalent(PreconditionError):
    pass


class SameClass(PreconditionError):
    pass


class PreconditionViolated(PreconditionError):
    pass


class LimitExceeded(MoebiusError):
    """A configured resource bound was hit (exit 4)."""


class InvariantViolation(MoebiusError):
    """A structural property that should hold was found violated (exit 5)."""


class CounterexampleFound(InvariantViolation):
    pass


def pairs(n: int) -> Iterator[tuple[int, int]]:
    """All index pairs (i, j) with i < j < n."""
    for i in range(n):
        for j in range(i + 1, n):
            yield i, j


def as_fraction(x) -> Fraction:
    """Lift a scalar to an exact Fraction. Floats lift bit-exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot lift {type(x).__name__} to Fraction")


def fmt_scalar(x, mode: str) -> str:
    """Serialize one scalar: fraction string in exact mode, 17 significant
    digits in float mode."""
    if mode == "exact":
        return str(as_fraction(x))
    return format(float(x), ".17g")


@dataclass(frozen=True)
class AntipodalSpace:
    """Validated boundary data.

    n            number of boundary points (>= 4)
    domain       'rho' (values) or 'log' (log-weights a_ij)
    mode         'exact' (Fraction entries) or 'float'
    matrix       symmetric matrix; diagonal is 0 in rho domain, None in log
    labels       point names, used only for display and serialization
    tol          comparison tolerance for float work
    """

    n: int
    domain: str
    mode: str
    matrix: Matrix
    labels: tuple[str, ...]
    tol: float = DEFAULT_TOL

    @property
    def is_exact(self) -> bool:
        return self.mode == "exact"

    @property
    def polyhedral_exact(self) -> bool:
        """Whether polyhedral computations can stay in rational arithmetic
        end to end (requires exact log-weights)."""
        return self.mode == "exact" and self.domain == "log"

    def rho(self, i: int, j: int):
        """Value rho(i, j); computed from log-weights in log domain."""
        if i == j:
            return 0.0 if self.domain == "log" or self.mode == "float" else Fraction(0)
        if self.domain == "rho":
            return self.matrix[i][j]
        return math.exp(float(self.matrix[i][j]) / 2.0)

    def a(self, i: int, j: int):
        """Log-weight a_ij = log rho(i,j)^2 for i != j."""
        if i == j:
            raise ValueError("log-weight is only defined off the diagonal")
        if self.domain == "log":
            return self.matrix[i][j]
        return 2.0 * math.log(float(self.matrix[i][j]))

    def log_matrix(self) -> Matrix:
        """Full log-weight matrix (None on the diagonal)."""
        return tuple(
            tuple(None if i == j else self.a(i, j) for j in range(self.n))
            for i in range(self.n)
        )

    def a_exact(self) -> tuple[tuple, ...]:
        """Log-weights lifted to Fractions (bit-exact for float entries).

        All polyhedral decisions run on this matrix so that feasibility
        verdicts are deterministic in either mode.
        """
        return tuple(
            tuple(Fraction(0) if i == j else as_fraction(self.a(i, j)) for j in range(self.n))
            for i in range(self.n)
        )

    def scale(self) -> float:
        """Tolerance scale: max(1, largest |a_ij|)."""
        m = 1.0
        for i, j in pairs(self.n):
            m = max(m, abs(float(self.a(i, j))))
        return m


def _check_square(matrix) -> int:
    try:
        n = len(matrix)
    except TypeError:
        raise ParseError("matrix must be a sequence of rows") from None
    for row in matrix:
        if len(row) != n:
            raise ParseError(f"matrix is not square: row of length {len(row)}, expected {n}")
    return n


def validate_antipodal(
    matrix,
    mode: str = "exact",
    domain: str = "rho",
    labels: Sequence[str] | None = None,
    tol: float = DEFAULT_TOL,
) -> AntipodalSpace:
    """Check the antipodal axioms and freeze the data into an AntipodalSpace.

    Raises TooSmall (n < 4), NotSymmetric, BadDiagonal, OutOfRange (values
    outside (0,1] resp. positive log-weights), NotAntipodal (a row whose
    maximum misses 1 resp. 0), NotDistinct (duplicate labels).
    """
    if mode not in ("exact", "float"):
        raise ParseError(f"unknown mode {mode!r}")
    if domain not in ("rho", "log"):
        raise ParseError(f"unknown domain {domain!r}")
    n = _check_square(matrix)
    if n < 4:
        raise TooSmall(f"need at least 4 boundary points, got {n}")

    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise ParseError(f"{len(labels)} labels for {n} points")
        if len(set(labels)) != n:
            raise NotDistinct("labels are not pairwise distinct")

    def conv(x, where):
        if x is None:
            return None
        if mode == "exact":
            try:
                return as_fraction(x)
            except (TypeError, ValueError, ZeroDivisionError):
                raise ParseError(f"bad exact entry at {where}: {x!r}") from None
        try:
            return float(x)
        except (TypeError, ValueError):
            raise ParseError(f"bad float entry at {where}: {x!r}") from None

    rows = tuple(
        tuple(conv(matrix[i][j], (i, j)) for j in range(n)) for i in range(n)
    )

    # Diagonal convention: rho(i,i) = 0; log-weights undefined on the diagonal
    # (None, or 0/"0" accepted and normalized to None for convenience).
    diag_ok_log = (None, 0, 0.0, Fraction(0))
    fixed = []
    for i in range(n):
        d = rows[i][i]
        if domain == "rho":
            if d is None or d != 0:
                raise BadDiagonal(f"rho diagonal entry at {i} must be 0, got {d!r}")
        else:
            if d not in diag_ok_log:
                raise BadDiagonal(f"log diagonal entry at {i} must be null, got {d!r}")
        fixed.append(
            tuple((Fraction(0) if mode == "exact" else 0.0) if i == j else rows[i][j]
                  for j in range(n)) if domain == "rho"
            else tuple(None if i == j else rows[i][j] for j in range(n))
        )
    rows = tuple(fixed)

    eps = 0.0 if mode == "exact" else tol
    for i, j in pairs(n):
        x, y = rows[i][j], rows[j][i]
        if x is None or y is None:
            raise ParseError(f"missing entry at {(i, j)}")
        if abs(x - y) > eps:
            raise NotSymmetric(f"entries {(i, j)} and {(j, i)} differ: {x!r} vs {y!r}")

    for i, j in pairs(n):
        v = rows[i][j]
        if domain == "rho":
            if v <= 0:
                raise OutOfRange(f"rho{(i, j)} = {v!r} is not positive")
            if v > 1 + eps:
                raise OutOfRange(f"rho{(i, j)} = {v!r} exceeds 1")
        else:
            if v > eps:
                raise OutOfRange(f"log-weight at {(i, j)} is positive: {v!r}")

    target = 1 if domain == "rho" else 0
    for i in range(n):
        best = max(rows[i][j] for j in range(n) if j != i)
        if abs(best - target) > eps:
            raise NotAntipodal(
                f"row {i}: maximum {best!r} does not attain {target} "
                f"(every point needs an antipode)"
            )

    return AntipodalSpace(n=n, domain=domain, mode=mode, matrix=rows, labels=labels, tol=tol)


def to_log_weights(space: AntipodalSpace) -> AntipodalSpace:
    """Convert to the log domain.

    Exact rho entries have irrational logs, so the result of converting an
    exact rho-domain space is a float-mode space.
    """
    if space.domain == "log":
        return space
    mode = "float"
    return AntipodalSpace(
        n=space.n,
        domain="log",
        mode=mode,
        matrix=space.log_matrix(),
        labels=space.labels,
        tol=space.tol,
    )


def _rho_matrix_of(arg):
    """Accept an AntipodalSpace or a plain rho matrix; return (n, lookup)."""
    if isinstance(arg, AntipodalSpace):
        return arg.n, arg.rho
    n = _check_square(arg)
    return n, (lambda i, j: arg[i][j])


def cross_ratio(rho, i: int, j: int, k: int, l: int):
    """Cross-ratio rho(i,k) rho(j,l) / (rho(i,l) rho(j,k)).

    Indices must be pairwise distinct. Exact on Fraction matrices.
    """
    if len({i, j, k, l}) != 4:
        raise NotDistinct(f"cross-ratio needs four distinct indices, got {(i, j, k, l)}")
    n, r = _rho_matrix_of(rho)
    for t in (i, j, k, l):
        if not 0 <= t < n:
            raise OutOfRange(f"index {t} out of range for n = {n}")
    num = r(i, k) * r(j, l)
    den = r(i, l) * r(j, k)
    if den == 0:
        raise OutOfRange("cross-ratio denominator vanishes")
    return num / den


def log_derivative(rho1, rho0, tol: float = DEFAULT_TOL) -> Vector:
    """Recover tau with rho1^2 = e^{tau_i + tau_j} rho0^2, if it exists.

    Works from the anchor triple: with b_xy = log(rho1(x,y)^2 / rho0(x,y)^2),

        tau_i = (b_ip + b_iq - b_pq) / 2

    for the lexicographically smallest pair p < q avoiding i; the answer is
    then verified against every pair and NotMoebiusEquivalent is raised if any
    b_ij deviates from tau_i + tau_j beyond tolerance.
    """
    n1, r1 = _rho_matrix_of(rho1)
    n0, r0 = _rho_matrix_of(rho0)
    if n1 != n0:
        raise ParseError(f"matrix sizes differ: {n1} vs {n0}")
    n = n1
    if n < 3:
        raise TooSmall("need at least 3 points to anchor the derivative")

    def b(x, y):
        v1, v0 = float(r1(x, y)), float(r0(x, y))
        if v1 <= 0 or v0 <= 0:
            raise OutOfRange(f"nonpositive value at {(x, y)}")
        return 2.0 * (math.log(v1) - math.log(v0))

    tau = []
    for i in range(n):
        p, q = [x for x in range(n) if x != i][:2]
        tau.append((b(i, p) + b(i, q) - b(p, q)) / 2.0)

    scale = 1.0
    for x, y in pairs(n):
        scale = max(scale, abs(b(x, y)))
    worst = 0.0
    for x, y in pairs(n):
        worst = max(worst, abs(tau[x] + tau[y] - b(x, y)))
    if worst > tol * scale:
        raise NotMoebiusEquivalent(
            f"pair deviation {worst:.3e} exceeds tolerance {tol * scale:.3e}"
        )
    return tuple(tau)


def visual_rescale(space: AntipodalSpace, tau: Sequence) -> Matrix:
    """Rescale by tau, staying in the space's domain.

    Log domain: a'_ij = tau_i + tau_j + a_ij (exact when everything is
    rational). Rho domain: rho'_ij = e^{(tau_i + tau_j)/2} rho_ij, a float
    matrix. The result is a plain symmetric matrix; it is antipodal again
    exactly when tau is a member (see :func:`discrepancy`).
    """
    n = space.n
    if len(tau) != n:
        raise ParseError(f"tau has length {len(tau)}, expected {n}")
    if space.domain == "log":
        out = [[None] * n for _ in range(n)]
        for i, j in pairs(n):
            v = tau[i] + tau[j] + space.matrix[i][j]
            out[i][j] = out[j][i] = v
        return tuple(tuple(row) for row in out)
    out = [[0.0] * n for _ in range(n)]
    for i, j in pairs(n):
        v = math.exp((float(tau[i]) + float(tau[j])) / 2.0) * float(space.matrix[i][j])
        out[i][j] = out[j][i] = v
    return tuple(tuple(row) for row in out)


def discrepancy(space: AntipodalSpace, tau: Sequence) -> Vector:
    """Row defects of the rescaled weights: D_i = max_{j != i} (tau_i + tau_j + a_ij).

    tau is a member of the reconstructed space iff D vanishes (every rescaled
    row maximum is 0; D_i <= 0 everywhere means the rescale is subantipodal).
    """
    n = space.n
    if len(tau) != n:
        raise ParseError(f"tau has length {len(tau)}, expected {n}")
    a = space.matrix if space.domain == "log" else space.log_matrix()
    out = []
    for i in range(n):
        out.append(max(tau[i] + tau[j] + a[i][j] for j in range(n) if j != i))
    return tuple(out)


def is_member(space: AntipodalSpace, tau: Sequence, tol: float | None = None) -> bool:
    """Whether tau belongs to the reconstructed space (discrepancy zero)."""
    d = discrepancy(space, tau)
    if space.polyhedral_exact and all(isinstance(x, (Fraction, int)) for x in tau):
        return all(x == 0 for x in d)
    t = (space.tol if tol is None else tol) * space.scale()
    return all(abs(float(x)) <= t for x in d)


def linf(v: Sequence) -> Scalar:
    """Sup norm of a coordinate vector."""
    return max(abs(x) for x in v)


def distance(t1: Sequence, t2: Sequence) -> Scalar:
    """Sup metric between two member vectors."""
    if len(t1) != len(t2):
        raise ParseError(f"vector lengths differ: {len(t1)} vs {len(t2)}")
    return max(abs(x - y) for x, y in zip(t1, t2))
