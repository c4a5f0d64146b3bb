"""Exact linear feasibility for polyhedral cells.

A relation R on the boundary points cuts out the cell

    C(R)  = { tau : tau_i + tau_j + a_ij  = 0 on R,  <= 0 off R }
    C(R)* = { tau : tau_i + tau_j + a_ij  = 0 on R,  <  0 off R }

and this module decides emptiness of both and produces witnesses. Everything
runs in exact rational arithmetic; float inputs are lifted bit-exactly first,
so feasibility verdicts are deterministic in either mode.

The solver works in two stages. The equality part tau_i + tau_j = -a_ij is a
graph system: walking a connected component of R with alternating signs
expresses every coordinate as sigma_v x + beta_v in one parameter x per
component, and an odd cycle forces the parameter. This exact propagation
either certifies inconsistency or reduces the cell to a small inequality
system in one variable per even component (plus one per uncovered index).
Strictness is then decided by one LP: maximize the auxiliary slack eps with
every tracked inequality given slack >= eps and eps <= 1, using a two-phase
simplex over Fractions with Bland's rule. Optimal eps > 0 means the relative
interior C(R)* is nonempty, eps = 0 means C(R) is nonempty but thin, and
eps < 0 or an infeasible LP means C(R) is empty.

A Fourier-Motzkin eliminator over the raw (unreduced) variables doubles as an
independent feasibility oracle for tests; it shares no code with the simplex
path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .core import (
    AntipodalSpace,
    LimitExceeded,
    NotAdmissible,
    ParseError,
    as_fraction,
    pairs,
)
from .relations import PairRelation, relation

DEFAULT_PIVOT_CAP = 10**6
_FM_ROW_CAP = 200_000

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Two-phase simplex with Bland's rule, exact arithmetic.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LPResult:
    status: str                 # 'optimal' | 'infeasible' | 'unbounded'
    x: tuple | None = None      # values of the free variables
    value: Fraction | None = None


def _pivot(rows, rhs, obj, obj_rhs, r, c):
    piv = rows[r][c]
    inv = ONE / piv
    row_r = rows[r]
    if piv != 1:
        for j, v in enumerate(row_r):
            if v:
                row_r[j] = v * inv
        rhs[r] = rhs[r] * inv
    support = [j for j, v in enumerate(row_r) if v]
    b_r = rhs[r]
    for i in range(len(rows)):
        if i == r:
            continue
        ri = rows[i]
        f = ri[c]
        if f:
            for j in support:
                ri[j] = ri[j] - f * row_r[j]
            if b_r:
                rhs[i] = rhs[i] - f * b_r
    f = obj[c]
    if f:
        for j in support:
            obj[j] = obj[j] - f * row_r[j]
        if b_r:
            obj_rhs = obj_rhs - f * b_r
    return obj_rhs


def _run_phase(rows, rhs, basis, cost, allowed, cap, iters):
    """Maximize cost over the tableau.

    Entering column by steepest reduced cost; after a run of degenerate
    pivots the rule switches to Bland's (first eligible index), whose
    anti-cycling guarantee makes the whole phase finite. Returns
    (status, obj_rhs, iters); status 'optimal' or 'unbounded'. The objective
    row stores reduced costs z_j - c_j; optimality is all >= 0.
    """
    m = len(rows)
    ncols = len(rows[0]) if m else 0
    obj = [-cost[j] for j in range(ncols)]
    obj_rhs = ZERO
    for i in range(m):
        cb = cost[basis[i]]
        if cb != 0:
            for j in range(ncols):
                obj[j] += cb * rows[i][j]
            obj_rhs += cb * rhs[i]

    stall = 0
    stall_cap = 12 + ncols
    while True:
        enter = -1
        if stall <= stall_cap:
            best_red = ZERO
            for j in range(ncols):
                if allowed[j] and obj[j] < best_red:
                    best_red = obj[j]
                    enter = j
        else:
            for j in range(ncols):
                if allowed[j] and obj[j] < 0:
                    enter = j
                    break
        if enter < 0:
            return "optimal", obj_rhs, iters
        leave = -1
        best = None
        for i in range(m):
            aij = rows[i][enter]
            if aij > 0:
                ratio = rhs[i] / aij
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            return "unbounded", obj_rhs, iters
        stall = stall + 1 if best == 0 else 0
        obj_rhs = _pivot(rows, rhs, obj, obj_rhs, leave, enter)
        basis[leave] = enter
        iters += 1
        if iters > cap:
            raise LimitExceeded(f"simplex pivot cap {cap} exceeded")


def solve_lp(objective, eq_rows, le_rows, n_vars, cap=DEFAULT_PIVOT_CAP) -> LPResult:
    """Maximize objective . x over free x subject to equality and <= rows.

    Rows are (coeffs, rhs) with exact scalars. Free variables are split as
    x = u - v with u, v >= 0; one slack per inequality; artificials only
    where no natural basic column exists.
    """
    objective = [as_fraction(c) for c in objective]
    if len(objective) != n_vars:
        raise ParseError("objective length mismatch")
    if not eq_rows and not le_rows:
        if any(c != 0 for c in objective):
            return LPResult(status="unbounded")
        return LPResult(status="optimal", x=(ZERO,) * n_vars, value=ZERO)

    n_slack = len(le_rows)
    base_cols = 2 * n_vars + n_slack
    rows = []
    rhs = []
    for coeffs, b in list(eq_rows) + list(le_rows):
        coeffs = [as_fraction(c) for c in coeffs]
        if len(coeffs) != n_vars:
            raise ParseError("row length mismatch")
        row = [ZERO] * base_cols
        for k, c in enumerate(coeffs):
            row[k] = c
            row[n_vars + k] = -c
        rows.append(row)
        rhs.append(as_fraction(b))
    for s in range(n_slack):
        rows[len(eq_rows) + s][2 * n_vars + s] = ONE

    # Normalize signs so rhs >= 0, then pick an initial basis: a slack column
    # still carrying +1 serves directly, anything else gets an artificial.
    for i in range(len(rows)):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    basis = [-1] * len(rows)
    art_cols = 0
    for i in range(len(rows)):
        j = 2 * n_vars + (i - len(eq_rows)) if i >= len(eq_rows) else -1
        if j >= 0 and rows[i][j] == 1:
            basis[i] = j
        else:
            art_cols += 1
    ncols = base_cols + art_cols
    k = base_cols
    for i in range(len(rows)):
        rows[i] = rows[i] + [ZERO] * art_cols
        if basis[i] < 0:
            rows[i][k] = ONE
            basis[i] = k
            k += 1

    iters = 0
    if art_cols:
        cost1 = [ZERO] * ncols
        for j in range(base_cols, ncols):
            cost1[j] = -ONE
        allowed = [True] * ncols
        status, obj_rhs, iters = _run_phase(rows, rhs, basis, cost1, allowed, cap, iters)
        if status != "optimal" or obj_rhs < 0:
            return LPResult(status="infeasible")
        # Drive remaining artificials out of the basis; a row that cannot be
        # pivoted is redundant and gets dropped.
        drop = []
        for i in range(len(rows)):
            if basis[i] >= base_cols:
                piv_col = -1
                for j in range(base_cols):
                    if rows[i][j] != 0:
                        piv_col = j
                        break
                if piv_col < 0:
                    drop.append(i)
                else:
                    dummy_obj = [ZERO] * ncols
                    _pivot(rows, rhs, dummy_obj, ZERO, i, piv_col)
                    basis[i] = piv_col
        for i in reversed(drop):
            del rows[i], rhs[i], basis[i]

    cost2 = [ZERO] * ncols
    for k in range(n_vars):
        cost2[k] = objective[k]
        cost2[n_vars + k] = -objective[k]
    allowed = [j < base_cols for j in range(ncols)]
    status, _, iters = _run_phase(rows, rhs, basis, cost2, allowed, cap, iters)
    if status == "unbounded":
        return LPResult(status="unbounded")

    y = [ZERO] * ncols
    for i, bcol in enumerate(basis):
        y[bcol] = rhs[i]
    x = tuple(y[k] - y[n_vars + k] for k in range(n_vars))
    value = sum((objective[k] * x[k] for k in range(n_vars)), start=ZERO)
    return LPResult(status="optimal", x=x, value=value)


# ---------------------------------------------------------------------------
# Cell systems.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CellSystem:
    """Constraint data for one cell.

    n                  number of coordinates
    a                  exact log-weight matrix (Fractions, zero diagonal)
    equalities         pairs with tau_i + tau_j + a_ij = 0
    strict_inequalities  the remaining pairs; solve tracks their slack, so the
                       same system answers both the closed (<=) and the
                       relative-interior (<) question
    upper_bounds       optional per-coordinate bounds tau_i <= b_i
    lower_bounds       optional per-coordinate bounds tau_i >= b_i (weak only;
                       used for off-center boxes)
    pinned             optional exact coordinate values (i, v), used for
                       bound-cut faces in the hull module
    strict_bounds      track slack on non-pinned upper bounds as well
    box                optional sup-norm bound |tau_i| <= box
    """

    n: int
    a: tuple
    equalities: frozenset
    strict_inequalities: frozenset
    upper_bounds: tuple | None = None
    lower_bounds: tuple | None = None
    pinned: tuple = ()
    strict_bounds: bool = False
    box: object | None = None


def cell_system(
    space_or_a,
    rel: PairRelation,
    upper_bounds=None,
    lower_bounds=None,
    pinned=(),
    strict_bounds: bool = False,
    box=None,
) -> CellSystem:
    """Assemble the CellSystem of a relation on a space (or raw log matrix)."""
    if isinstance(space_or_a, AntipodalSpace):
        n = space_or_a.n
        a = space_or_a.a_exact()
    else:
        a = tuple(tuple(ZERO if v is None else as_fraction(v) for v in row) for row in space_or_a)
        n = len(a)
    if rel.n != n:
        raise ParseError(f"relation on {rel.n} points against matrix of size {n}")
    eq = frozenset(rel.pairs)
    ineq = frozenset(p for p in pairs(n)) - eq

    def lift_bounds(bounds, name):
        if bounds is None:
            return None
        out = tuple(None if b is None else as_fraction(b) for b in bounds)
        if len(out) != n:
            raise ParseError(f"{name} length mismatch")
        return out

    pin = tuple((int(i), as_fraction(v)) for i, v in pinned)
    return CellSystem(
        n=n, a=a, equalities=eq, strict_inequalities=ineq,
        upper_bounds=lift_bounds(upper_bounds, "upper_bounds"),
        lower_bounds=lift_bounds(lower_bounds, "lower_bounds"),
        pinned=pin, strict_bounds=strict_bounds,
        box=None if box is None else as_fraction(box),
    )


@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of solve: status plus witness and best slack.

    status is 'empty', 'boundary_only' (closed cell nonempty, interior not)
    or 'interior'. witness is present unless empty; in the interior case it
    maximizes the minimum tracked slack, capped at 1, and max_slack is that
    optimum.
    """

    status: str
    witness: tuple | None = None
    max_slack: Fraction | None = None


@dataclass(frozen=True)
class Reduction:
    """Exact solution of the equality part: tau = base + sum_k x_k dirs[k].

    Directions are 0/+-1 vectors, one per remaining degree of freedom,
    ordered by their smallest supported index.
    """

    n: int
    base: tuple
    dirs: tuple


def reduce_equalities(n: int, a, eqpairs, pinned=()) -> Reduction | None:
    """Propagate tau_i + tau_j = -a_ij over the relation graph.

    Returns None when the system is inconsistent. Pinned coordinates are
    substituted afterwards and may also reveal inconsistency.
    """
    adj: dict[int, list] = {i: [] for i in range(n)}
    edges = []
    for i, j in eqpairs:
        adj[i].append(j)
        adj[j].append(i)
        edges.append((i, j))

    sigma = {}
    beta = {}
    comp_of = {}
    comp_roots = []
    for root in range(n):
        if root in sigma or not adj[root]:
            continue
        comp_roots.append(root)
        sigma[root] = ONE
        beta[root] = ZERO
        comp_of[root] = root
        queue = [root]
        while queue:
            v = queue.pop(0)
            for w in adj[v]:
                if w not in sigma:
                    sigma[w] = -sigma[v]
                    beta[w] = -a[v][w] - beta[v]
                    comp_of[w] = root
                    queue.append(w)

    forced: dict[int, Fraction] = {}
    for i, j in edges:
        # tau_i + tau_j = -a_ij with tau_v = sigma_v x + beta_v
        s = sigma[i] + sigma[j]
        c = beta[i] + beta[j] + a[i][j]
        root = comp_of[i]
        if s == 0:
            if c != 0:
                return None
        else:
            x = -c / s
            if root in forced and forced[root] != x:
                return None
            forced[root] = x

    base = [ZERO] * n
    dirs = []
    for v in range(n):
        if v in sigma:
            root = comp_of[v]
            if root in forced:
                base[v] = sigma[v] * forced[root] + beta[v]
            else:
                base[v] = beta[v]
        # untouched coordinates stay 0 in base and get a unit direction
    for root in comp_roots:
        if root in forced:
            continue
        d = [ZERO] * n
        for v in sigma:
            if comp_of[v] == root:
                d[v] = sigma[v]
        dirs.append((min(v for v in sigma if comp_of[v] == root), d))
    for v in range(n):
        if v not in sigma:
            d = [ZERO] * n
            d[v] = ONE
            dirs.append((v, d))
    dirs.sort(key=lambda t: t[0])
    dir_vecs = [list(d) for _, d in dirs]

    # Substitute pinned coordinates, eliminating one variable each or
    # checking consistency when the coordinate is already determined.
    for idx, val in pinned:
        val = as_fraction(val)
        hit = -1
        for k, d in enumerate(dir_vecs):
            if d[idx] != 0:
                hit = k
                break
        if hit < 0:
            if base[idx] != val:
                return None
            continue
        d = dir_vecs.pop(hit)
        xk = (val - base[idx]) / d[idx]
        for v in range(n):
            base[v] = base[v] + xk * d[v]

    return Reduction(n=n, base=tuple(base), dirs=tuple(tuple(d) for d in dir_vecs))


def _reduced_rows(system: CellSystem, red: Reduction):
    """Inequality rows of the reduced system.

    Returns (rows, forced_empty, zero_cap) where each row is
    (coeffs over free vars, rhs, tracked) meaning coeffs . x <= rhs, with
    tracked rows carrying the slack variable. Constant rows are folded:
    a violated constant row sets forced_empty, a tight tracked constant row
    caps the best slack at zero via zero_cap.
    """
    k = len(red.dirs)
    rows = []
    forced_empty = False
    zero_cap = False

    def emit(coeff_of, rhs, tracked):
        nonlocal forced_empty, zero_cap
        coeffs = [coeff_of(d) for d in red.dirs]
        if any(c != 0 for c in coeffs):
            rows.append((coeffs, rhs, tracked))
            return
        if rhs < 0:
            forced_empty = True
        elif rhs == 0 and tracked:
            zero_cap = True
        elif tracked:
            rows.append(([ZERO] * k, rhs, True))  # pure cap on the slack

    a = system.a
    base = red.base
    for i, j in sorted(system.strict_inequalities):
        emit(lambda d, i=i, j=j: d[i] + d[j],
             -a[i][j] - base[i] - base[j], True)
    pinned_idx = {i for i, _ in system.pinned}
    if system.upper_bounds is not None:
        for i, b in enumerate(system.upper_bounds):
            if b is None:
                continue
            tracked = system.strict_bounds and i not in pinned_idx
            emit(lambda d, i=i: d[i], as_fraction(b) - base[i], tracked)
    if system.lower_bounds is not None:
        for i, b in enumerate(system.lower_bounds):
            if b is None:
                continue
            emit(lambda d, i=i: -d[i], base[i] - as_fraction(b), False)
    if system.box is not None:
        r = as_fraction(system.box)
        for i in range(system.n):
            emit(lambda d, i=i: d[i], r - base[i], False)
            emit(lambda d, i=i: -d[i], r + base[i], False)
    return rows, forced_empty, zero_cap


def solve(system: CellSystem, cap: int = DEFAULT_PIVOT_CAP) -> FeasibilityResult:
    """Decide the cell's status and produce a witness.

    One LP answers both the closed and the strict question: maximize eps
    subject to every tracked inequality having slack >= eps and eps <= 1.
    Optimal eps > 0 gives status interior, eps = 0 boundary_only, and
    eps < 0 (or infeasibility of the equality-plus-weak part) empty.
    """
    red = reduce_equalities(system.n, system.a, sorted(system.equalities), system.pinned)
    if red is None:
        return FeasibilityResult(status="empty")
    rows, forced_empty, zero_cap = _reduced_rows(system, red)
    if forced_empty:
        return FeasibilityResult(status="empty")
    k = len(red.dirs)

    if k == 0:
        worst = None
        for coeffs, rhs, tracked in rows:
            if rhs < 0:
                return FeasibilityResult(status="empty")
            if tracked and (worst is None or rhs < worst):
                worst = rhs
        eps = ONE if worst is None else min(worst, ONE)
        if zero_cap:
            eps = ZERO
        status = "interior" if eps > 0 else "boundary_only"
        return FeasibilityResult(
            status=status, witness=red.base,
            max_slack=eps if eps > 0 else None,
        )

    le_rows = []
    for coeffs, rhs, tracked in rows:
        le_rows.append((coeffs + [ONE if tracked else ZERO], rhs))
    le_rows.append(([ZERO] * k + [ONE], ONE))  # eps <= 1
    objective = [ZERO] * k + [ONE]
    res = solve_lp(objective, [], le_rows, k + 1, cap=cap)
    if res.status == "infeasible":
        return FeasibilityResult(status="empty")
    if res.status != "optimal":
        raise LimitExceeded("slack LP reported unbounded despite the cap row")
    eps = res.value
    if zero_cap and eps > 0:
        eps = ZERO
    if eps < 0:
        return FeasibilityResult(status="empty")
    xs = res.x[:k]
    tau = list(red.base)
    for xk, d in zip(xs, red.dirs):
        for v in range(system.n):
            tau[v] = tau[v] + xk * d[v]
    witness = tuple(tau)
    if eps > 0:
        return FeasibilityResult(status="interior", witness=witness, max_slack=min(eps, ONE))
    return FeasibilityResult(status="boundary_only", witness=witness)


def optimize(system: CellSystem, coeffs, sense: str = "max",
             cap: int = DEFAULT_PIVOT_CAP) -> LPResult:
    """Optimize a linear functional of tau over the closed cell.

    Used for boundedness probes and for checking that a constraint is tight
    on a whole cell. Returns an LPResult in tau coordinates.
    """
    red = reduce_equalities(system.n, system.a, sorted(system.equalities), system.pinned)
    if red is None:
        return LPResult(status="infeasible")
    rows, forced_empty, _ = _reduced_rows(system, red)
    if forced_empty:
        return LPResult(status="infeasible")
    k = len(red.dirs)
    coeffs = [as_fraction(c) for c in coeffs]
    sign = ONE if sense == "max" else -ONE
    const = sum((c * b for c, b in zip(coeffs, red.base)), start=ZERO)
    obj = []
    for d in red.dirs:
        obj.append(sign * sum((c * d[v] for v, c in enumerate(coeffs)), start=ZERO))

    if k == 0:
        for rc, rhs, _tracked in rows:
            if rhs < 0:
                return LPResult(status="infeasible")
        return LPResult(status="optimal", x=red.base, value=const)

    le_rows = [(list(rc), rhs) for rc, rhs, _t in rows]
    res = solve_lp(obj, [], le_rows, k, cap=cap)
    if res.status != "optimal":
        return LPResult(status=res.status)
    tau = list(red.base)
    for xk, d in zip(res.x, red.dirs):
        for v in range(system.n):
            tau[v] = tau[v] + xk * d[v]
    value = sum((c * t for c, t in zip(coeffs, tau)), start=ZERO)
    return LPResult(status="optimal", x=tuple(tau), value=value)


def is_cell_nonempty(space, rel: PairRelation, cap: int = DEFAULT_PIVOT_CAP) -> bool:
    """Whether the closed cell C(R) is nonempty (admissible R only)."""
    if not rel.is_admissible():
        raise NotAdmissible(f"relation does not cover all {rel.n} indices")
    return solve(cell_system(space, rel), cap=cap).status != "empty"


def is_interior_nonempty(space, rel: PairRelation, cap: int = DEFAULT_PIVOT_CAP) -> bool:
    """Whether C(R)* is nonempty, i.e. whether R is an antipodal relation."""
    if not rel.is_admissible():
        raise NotAdmissible(f"relation does not cover all {rel.n} indices")
    return solve(cell_system(space, rel), cap=cap).status == "interior"


# ---------------------------------------------------------------------------
# Fourier-Motzkin elimination: the independent oracle.
# ---------------------------------------------------------------------------

def _fm_normalize(coeffs, rhs, strict):
    lead = None
    for c in coeffs:
        if c != 0:
            lead = abs(c)
            break
    if lead is None:
        return None
    inv = ONE / lead
    return (tuple(c * inv for c in coeffs), rhs * inv, strict)


def _fm_dedupe(rows):
    best = {}
    consts = []
    for coeffs, rhs, strict in rows:
        norm = _fm_normalize(coeffs, rhs, strict)
        if norm is None:
            consts.append((rhs, strict))
            continue
        key = norm[0]
        cur = best.get(key)
        # smaller rhs is tighter; at equal rhs the strict row wins
        if cur is None or (norm[1], not norm[2]) < (cur[0], not cur[1]):
            best[key] = (norm[1], norm[2])
    out = [(list(k), v[0], v[1]) for k, v in best.items()]
    return out, consts


def fourier_motzkin_feasible(system: CellSystem, strict: bool = False,
                             max_n: int = 6) -> bool:
    """Decide feasibility by variable elimination; no shared code with solve.

    With strict=False the inequality pairs are taken weakly (the C(R)
    question); with strict=True they are strict (the C(R)* question).
    Equalities enter as opposite pairs of weak rows. Intended for tests;
    guarded to small n because elimination can blow up.
    """
    n = system.n
    if n > max_n:
        raise LimitExceeded(f"Fourier-Motzkin guard: n = {n} > {max_n}")
    a = system.a
    rows = []  # (coeffs, rhs, strict) meaning coeffs . tau <= / < rhs

    def unit2(i, j, s=ONE):
        c = [ZERO] * n
        c[i] += s
        c[j] += s
        return c

    for i, j in sorted(system.equalities):
        rows.append((unit2(i, j), -a[i][j], False))
        rows.append(([-v for v in unit2(i, j)], a[i][j], False))
    for i, j in sorted(system.strict_inequalities):
        rows.append((unit2(i, j), -a[i][j], strict))
    pinned_idx = set()
    for idx, val in system.pinned:
        pinned_idx.add(idx)
        c = [ZERO] * n
        c[idx] = ONE
        rows.append((list(c), as_fraction(val), False))
        rows.append(([-v for v in c], -as_fraction(val), False))
    if system.upper_bounds is not None:
        for i, b in enumerate(system.upper_bounds):
            if b is None:
                continue
            c = [ZERO] * n
            c[i] = ONE
            rows.append((c, as_fraction(b), strict and system.strict_bounds
                         and i not in pinned_idx))
    if system.lower_bounds is not None:
        for i, b in enumerate(system.lower_bounds):
            if b is None:
                continue
            c = [ZERO] * n
            c[i] = -ONE
            rows.append((c, -as_fraction(b), False))
    if system.box is not None:
        r = as_fraction(system.box)
        for i in range(n):
            c = [ZERO] * n
            c[i] = ONE
            rows.append((list(c), r, False))
            rows.append(([-v for v in c], r, False))

    live = list(range(n))
    consts_all = []
    while live:
        rows, consts = _fm_dedupe(rows)
        consts_all.extend(consts)
        # eliminate the variable with the smallest pos*neg fan-out
        best_var, best_cost = None, None
        for v in live:
            p = sum(1 for c, _r, _s in rows if c[v] > 0)
            q = sum(1 for c, _r, _s in rows if c[v] < 0)
            cost = p * q - (p + q)
            if best_cost is None or cost < best_cost:
                best_var, best_cost = v, cost
        v = best_var
        pos = [(c, r, s) for c, r, s in rows if c[v] > 0]
        neg = [(c, r, s) for c, r, s in rows if c[v] < 0]
        rest = [(c, r, s) for c, r, s in rows if c[v] == 0]
        new_rows = rest
        for cp, rp, sp in pos:
            for cn, rn, sn in neg:
                # cp: x_v <= (rp - ...)/cp[v]; cn gives a lower bound
                scale_p = ONE / cp[v]
                scale_n = -ONE / cn[v]
                coeffs = [
                    (cp_k * scale_p + cn_k * scale_n)
                    for cp_k, cn_k in zip(cp, cn)
                ]
                coeffs[v] = ZERO
                rhs = rp * scale_p + rn * scale_n
                new_rows.append((coeffs, rhs, sp or sn))
                if len(new_rows) > _FM_ROW_CAP:
                    raise LimitExceeded("Fourier-Motzkin row cap exceeded")
        rows = new_rows
        live.remove(v)

    _rows, consts = _fm_dedupe(rows)
    consts_all.extend(consts)
    for rhs, is_strict in consts_all:
        if is_strict:
            if not rhs > 0:
                return False
        elif not rhs >= 0:
            return False
    return True
