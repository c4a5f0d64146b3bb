"""Command-line interface: JSON file formats, DOT export, acceptance runner.

File schemas (all JSON):

antipodal-space/v1   {schema, labels?, domain: rho|log, mode: exact|float,
                      matrix: entries as strings, diagonal "0" (rho) or null
                      (log)}
finite-metric/v1     {schema, labels?, mode, matrix: entries as strings,
                      diagonal "0"}
simplex-point/v1     {schema, mode, coordinates: entries as strings}
balls/v1             {schema, centers: [vectors], radii: [entries]}
moebius-complex/v1   {schema, n, mode, space: antipodal-space/v1, cells,
                      f_vector, hasse}; emitted by `complex`
tight-span/v1        {schema, m, mode, metric: finite-metric/v1, cells,
                      f_vector, hasse}; emitted by `hull`

Exact numbers travel as fraction strings; float entries as decimal strings
with 17 significant digits (lossless for doubles). Cell witnesses are exact
rationals in either mode, so complex round trips are bit-identical. Exit
codes: 0 ok, 2 invalid input, 3 precondition failed, 4 limits exceeded,
5 invariant violation or self-check failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .complexes import (
    Cell,
    Complex,
    RaySpec,
    build_complex,
    delta_estimate,
    max_n_limit,
    membership,
    r_tilde,
    sphere_points,
    visual_recovery_check,
)
from .core import (
    AntipodalSpace,
    DEFAULT_TOL,
    InputError,
    InvariantViolation,
    LimitExceeded,
    MoebiusError,
    ParseError,
    PreconditionError,
    SchemaMismatch,
    as_fraction,
    discrepancy,
    distance,
    is_member,
    validate_antipodal,
)
from .hull import (
    FiniteMetric,
    HullCell,
    TightSpan,
    ball_hull_check,
    hyperconvexity_witness,
    sphere_metric,
    tight_span,
    validate_metric,
)
from .relations import PairRelation, relation_of_point
from .teich import (
    SimplexPoint,
    classify4,
    d_moeb,
    geodesic_point,
    lattice_fingerprint,
    moebius_ratio,
    moebius_symmetries,
    normalize,
    phi,
    phi_inverse,
)

SPACE_SCHEMA = "antipodal-space/v1"
METRIC_SCHEMA = "finite-metric/v1"
SIMPLEX_SCHEMA = "simplex-point/v1"
BALLS_SCHEMA = "balls/v1"
COMPLEX_SCHEMA = "moebius-complex/v1"
SPAN_SCHEMA = "tight-span/v1"


# ---------------------------------------------------------------- scalars

def parse_entry(v, mode: str):
    """One numeric entry from a file, enforcing that modes do not mix:
    exact entries are fraction strings (or integers), float entries are
    decimal strings or numbers and must not look like fractions."""
    if mode == "exact":
        if isinstance(v, bool) or isinstance(v, float):
            raise ParseError(f"exact mode needs rational strings, got {v!r}")
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            try:
                return Fraction(v)
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"bad rational {v!r}: {e}") from None
        raise ParseError(f"bad exact entry {v!r}")
    if isinstance(v, bool):
        raise ParseError(f"bad float entry {v!r}")
    if isinstance(v, (int, float)):
        return float(v)
    if isinstance(v, str):
        if "/" in v:
            raise ParseError(
                f"fraction string {v!r} in a float-mode file; modes must not mix"
            )
        try:
            return float(v)
        except ValueError as e:
            raise ParseError(f"bad float {v!r}: {e}") from None
    raise ParseError(f"bad float entry {v!r}")


def emit_entry(v, mode: str):
    if mode == "exact":
        return str(as_fraction(v))
    return format(float(v), ".17g")


def emit_exact(v):
    return str(as_fraction(v))


# ---------------------------------------------------------------- space files

def parse_space(doc) -> AntipodalSpace:
    if not isinstance(doc, dict):
        raise ParseError("space file must be a JSON object")
    if doc.get("schema") != SPACE_SCHEMA:
        raise SchemaMismatch(
            f"expected schema {SPACE_SCHEMA!r}, got {doc.get('schema')!r}"
        )
    mode = doc.get("mode")
    domain = doc.get("domain")
    if mode not in ("exact", "float"):
        raise ParseError(f"bad mode {mode!r}")
    if domain not in ("rho", "log"):
        raise ParseError(f"bad domain {domain!r}")
    matrix = doc.get("matrix")
    if not isinstance(matrix, list):
        raise ParseError("matrix missing")
    zero = Fraction(0) if mode == "exact" else 0.0
    parsed = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != len(matrix):
            raise ParseError("matrix is not square")
        out = []
        for j, v in enumerate(row):
            if i == j:
                if v is not None and parse_entry(v, mode) != 0:
                    raise ParseError(f"diagonal entry ({i},{i}) must be 0 or null")
                out.append(zero)
            else:
                out.append(parse_entry(v, mode))
        parsed.append(tuple(out))
    labels = doc.get("labels")
    tol = float(doc.get("tol", DEFAULT_TOL))
    return validate_antipodal(tuple(parsed), mode=mode, domain=domain,
                              labels=labels, tol=tol)


def emit_space(space: AntipodalSpace) -> dict:
    matrix = []
    for i in range(space.n):
        row = []
        for j in range(space.n):
            if i == j:
                row.append(None if space.domain == "log" else "0")
            else:
                row.append(emit_entry(space.matrix[i][j], space.mode))
        matrix.append(row)
    return {
        "schema": SPACE_SCHEMA,
        "labels": list(space.labels),
        "domain": space.domain,
        "mode": space.mode,
        "matrix": matrix,
    }


def parse_metric(doc) -> FiniteMetric:
    if not isinstance(doc, dict):
        raise ParseError("metric file must be a JSON object")
    if doc.get("schema") != METRIC_SCHEMA:
        raise SchemaMismatch(
            f"expected schema {METRIC_SCHEMA!r}, got {doc.get('schema')!r}"
        )
    mode = doc.get("mode", "exact")
    if mode not in ("exact", "float"):
        raise ParseError(f"bad mode {mode!r}")
    matrix = doc.get("matrix")
    if not isinstance(matrix, list):
        raise ParseError("matrix missing")
    parsed = []
    for i, row in enumerate(matrix):
        if not isinstance(row, list) or len(row) != len(matrix):
            raise ParseError("matrix is not square")
        parsed.append(tuple(
            (Fraction(0) if mode == "exact" else 0.0) if i == j and v is None
            else parse_entry(v, mode)
            for j, v in enumerate(row)
        ))
    return validate_metric(tuple(parsed), mode=mode,
                           labels=doc.get("labels"))


def emit_metric(metric: FiniteMetric) -> dict:
    return {
        "schema": METRIC_SCHEMA,
        "labels": list(metric.labels),
        "mode": metric.mode,
        "matrix": [
            [emit_entry(v, metric.mode) for v in row] for row in metric.d
        ],
    }


def parse_simplex(doc) -> SimplexPoint:
    if doc.get("schema") != SIMPLEX_SCHEMA:
        raise SchemaMismatch(
            f"expected schema {SIMPLEX_SCHEMA!r}, got {doc.get('schema')!r}"
        )
    mode = doc.get("mode", "exact")
    coords = doc.get("coordinates")
    if not isinstance(coords, list):
        raise ParseError("coordinates missing")
    return SimplexPoint(
        coordinates=tuple(parse_entry(v, mode) for v in coords), mode=mode
    )


def emit_simplex(p: SimplexPoint) -> dict:
    return {
        "schema": SIMPLEX_SCHEMA,
        "mode": p.mode,
        "coordinates": [emit_entry(v, p.mode) for v in p.coordinates],
    }


def parse_teich_input(doc):
    """Teich subcommands accept either a space file or a simplex point."""
    schema = doc.get("schema") if isinstance(doc, dict) else None
    if schema == SIMPLEX_SCHEMA:
        return parse_simplex(doc)
    if schema == SPACE_SCHEMA:
        return parse_space(doc)
    raise SchemaMismatch(
        f"expected {SPACE_SCHEMA!r} or {SIMPLEX_SCHEMA!r}, got {schema!r}"
    )


# ---------------------------------------------------------------- complex files

def emit_complex(cx: Complex) -> dict:
    cells = []
    for c in cx.cells:
        cells.append({
            "id": c.id,
            "relation": [list(p) for p in c.relation.sorted_pairs],
            "dim": c.dim,
            "bounded": c.bounded,
            "kind": c.kind,
            "witness": [emit_exact(x) for x in c.witness],
            "max_slack": None if c.max_slack is None else emit_exact(c.max_slack),
            "ray": None if c.ray_spec is None else {
                "center": c.ray_spec.center,
                "t_min": emit_exact(c.ray_spec.t_min),
            },
            "faces": list(cx.faces_of(c.id)),
        })
    return {
        "schema": COMPLEX_SCHEMA,
        "n": cx.space.n,
        "mode": cx.space.mode,
        "space": emit_space(cx.space),
        "cells": cells,
        "f_vector": {
            "bounded": list(cx.f_vector_bounded),
            "unbounded": list(cx.f_vector_unbounded),
        },
        "hasse": [list(e) for e in cx.hasse],
    }


def parse_complex(doc) -> Complex:
    if doc.get("schema") != COMPLEX_SCHEMA:
        raise SchemaMismatch(
            f"expected schema {COMPLEX_SCHEMA!r}, got {doc.get('schema')!r}"
        )
    space = parse_space(doc.get("space"))
    raw_cells = doc.get("cells")
    if not isinstance(raw_cells, list):
        raise ParseError("cells missing")
    hasse = tuple(sorted(tuple(e) for e in doc.get("hasse", [])))
    cells = []
    for k, rc in enumerate(raw_cells):
        if rc.get("id") != k:
            raise ParseError(f"cell ids are not dense: position {k} has id {rc.get('id')}")
        rel = PairRelation(
            space.n, frozenset(tuple(p) for p in rc["relation"])
        )
        ray = rc.get("ray")
        spec = None
        if ray is not None:
            spec = RaySpec(center=int(ray["center"]),
                           t_min=Fraction(ray["t_min"]))
        slack = rc.get("max_slack")
        cells.append(Cell(
            id=k,
            relation=rel,
            dim=int(rc["dim"]),
            bounded=bool(rc["bounded"]),
            kind=str(rc["kind"]),
            witness=tuple(Fraction(x) for x in rc["witness"]),
            max_slack=None if slack is None else Fraction(slack),
            ray_spec=spec,
        ))
        faces = tuple(rc.get("faces", []))
        if faces != tuple(b for a, b in hasse if a == k):
            raise ParseError(f"faces of cell {k} disagree with the hasse edges")
    for a, b in hasse:
        if not (0 <= a < len(cells) and 0 <= b < len(cells)):
            raise ParseError(f"hasse edge ({a},{b}) references a missing id")
    fv = doc.get("f_vector", {})
    return Complex(
        space=space,
        cells=tuple(cells),
        hasse=hasse,
        f_vector_bounded=tuple(fv.get("bounded", ())),
        f_vector_unbounded=tuple(fv.get("unbounded", ())),
    )


def emit_span(span: TightSpan) -> dict:
    cells = []
    for c in span.cells:
        cells.append({
            "id": c.id,
            "relation": [list(p) for p in c.relation.sorted_pairs],
            "zero_set": sorted(c.zero_set),
            "dim": c.dim,
            "witness_f": [emit_exact(x) for x in c.witness_f],
            "max_slack": None if c.max_slack is None else emit_exact(c.max_slack),
        })
    return {
        "schema": SPAN_SCHEMA,
        "m": span.metric.m,
        "mode": span.metric.mode,
        "metric": emit_metric(span.metric),
        "cells": cells,
        "f_vector": list(span.f_vector),
        "hasse": [list(e) for e in span.hasse],
    }


# ---------------------------------------------------------------- DOT export

def _dot(nodes, edges, name: str) -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for nid, label in nodes:
        lines.append(f'  {nid} [label="{label}"];')
    for a, b in edges:
        lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dot_complex(cx: Complex) -> str:
    nodes = []
    for c in cx.cells:
        rel = "".join(f"({i},{j})" for i, j in c.relation.sorted_pairs)
        b = "bounded" if c.bounded else "unbounded"
        nodes.append((c.id, f"{c.dim}/{b}/{rel}"))
    return _dot(nodes, cx.hasse, "complex")


def dot_span(span: TightSpan) -> str:
    nodes = []
    for c in span.cells:
        rel = "".join(f"({i},{j})" for i, j in c.relation.sorted_pairs)
        if c.zero_set:
            rel += "z" + "".join(str(v) for v in sorted(c.zero_set))
        nodes.append((c.id, f"{c.dim}/bounded/{rel}"))
    return _dot(nodes, span.hasse, "span")


# ---------------------------------------------------------------- plumbing

def _read_doc(args):
    if args.input in (None, "-"):
        text = sys.stdin.read()
        where = "<stdin>"
    else:
        try:
            with open(args.input, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as e:
            raise ParseError(f"cannot read {args.input}: {e}") from None
        where = args.input
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{where} is not valid JSON: {e}") from None


def _read_doc_at(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParseError(f"{path} is not valid JSON: {e}") from None


def _write(args, payload):
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _resolved_max_n(args):
    env = os.environ.get("MOEBIUS_MAX_N")
    if env is not None:
        return max_n_limit(None)
    return args.max_n


def _parse_vector(text: str, mode: str):
    parts = [p.strip() for p in text.split(",") if p.strip() != ""]
    return tuple(parse_entry(p, mode) for p in parts)


def _radius(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        try:
            return float(text)
        except ValueError:
            raise ParseError(f"bad radius {text!r}") from None


def _scalar_out(v):
    if isinstance(v, Fraction):
        return str(v)
    return float(v)


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    space = parse_space(_read_doc(args))
    return {
        "ok": True,
        "n": space.n,
        "mode": space.mode,
        "domain": space.domain,
        "polyhedral_exact": space.polyhedral_exact,
        "labels": list(space.labels),
    }


def cmd_complex(args):
    space = parse_space(_read_doc(args))
    cx = build_complex(space, max_n=_resolved_max_n(args))
    if args.format == "dot":
        return dot_complex(cx)
    return emit_complex(cx)


def cmd_rays(args):
    space = parse_space(_read_doc(args))
    cx = build_complex(space, max_n=_resolved_max_n(args))
    rays = []
    for c in cx.rays():
        rays.append({
            "cell": c.id,
            "center": c.ray_spec.center,
            "label": space.labels[c.ray_spec.center],
            "t_min": emit_exact(c.ray_spec.t_min),
        })
    return {"n": space.n, "rays": rays}


def cmd_membership(args):
    space = parse_space(_read_doc(args))
    tau = _parse_vector(args.tau, space.mode)
    member = membership(space, tau, tol=args.tol)
    out = {
        "member": member,
        "discrepancy": [_scalar_out(x) for x in discrepancy(space, tau)],
    }
    if member:
        rel = relation_of_point(space, tau, tol=args.tol)
        out["relation"] = [list(p) for p in rel.sorted_pairs]
    return out


def cmd_sphere(args):
    space = parse_space(_read_doc(args))
    cx = build_complex(space, max_n=_resolved_max_n(args))
    sp = sphere_points(space, cx, _radius(args.r))
    pair_d = []
    for i in range(space.n):
        for j in range(i + 1, space.n):
            pair_d.append([i, j, emit_exact(distance(sp.points[i], sp.points[j]))])
    return {
        "r": emit_exact(sp.r),
        "r_tilde": emit_exact(sp.r_tilde),
        "points": [[emit_exact(x) for x in p] for p in sp.points],
        "pairwise": pair_d,
    }


def cmd_ball_hull_check(args):
    space = parse_space(_read_doc(args))
    cx = build_complex(space, max_n=_resolved_max_n(args))
    rep = ball_hull_check(space, cx, _radius(args.r),
                          samples=args.samples, seed=args.seed)
    doc = {
        "ok": rep.ok,
        "r": emit_exact(rep.r),
        "r_tilde": emit_exact(rep.r_tilde),
        "vertices_checked": rep.vertices_checked,
        "members_checked": rep.members_checked,
        "max_membership_defect": rep.max_membership_defect,
        "max_norm_excess": rep.max_norm_excess,
        "extremal_failures": rep.extremal_failures,
        "identity_failures": rep.identity_failures,
        "busemann_failures": rep.busemann_failures,
    }
    if not rep.ok:
        raise InvariantViolation(json.dumps(doc))
    return doc


def cmd_hull(args):
    metric = parse_metric(_read_doc(args))
    span = tight_span(metric, max_n=_resolved_max_n(args))
    if args.format == "dot":
        return dot_span(span)
    return emit_span(span)


def cmd_hyperconvex(args):
    space = parse_space(_read_doc(args))
    cx = build_complex(space, max_n=_resolved_max_n(args))
    balls = _read_doc_at(args.balls)
    if balls.get("schema") != BALLS_SCHEMA:
        raise SchemaMismatch(
            f"expected schema {BALLS_SCHEMA!r}, got {balls.get('schema')!r}"
        )
    centers = [
        tuple(parse_entry(v, space.mode) for v in c)
        for c in balls.get("centers", [])
    ]
    radii = [parse_entry(v, space.mode) for v in balls.get("radii", [])]
    w = hyperconvexity_witness(space, cx, centers, radii)
    lifted = [tuple(as_fraction(x) for x in c) for c in centers]
    return {
        "witness": [emit_exact(x) for x in w],
        "distances": [emit_exact(distance(w, c)) for c in lifted],
    }


def cmd_delta(args):
    space = parse_space(_read_doc(args))
    cx = build_complex(space, max_n=_resolved_max_n(args))
    d = delta_estimate(space, cx, samples=args.samples, seed=args.seed)
    return {
        "delta": _scalar_out(d),
        "delta_float": float(d),
        "samples": args.samples,
        "seed": args.seed,
    }


def cmd_visual_check(args):
    space = parse_space(_read_doc(args))
    cx = build_complex(space, max_n=_resolved_max_n(args))
    rep = visual_recovery_check(space, _radius(args.r), cx)
    return {
        "r": _scalar_out(rep.r),
        "exact": rep.exact,
        "max_deviation": rep.max_deviation,
        "products": [[i, j, _scalar_out(g)] for i, j, g in rep.products],
    }


def cmd_teich(args):
    doc = _read_doc(args)
    if args.teich_cmd == "fingerprint":
        # fingerprint also accepts an already-built complex file
        if isinstance(doc, dict) and doc.get("schema") == COMPLEX_SCHEMA:
            return {"fingerprint": lattice_fingerprint(parse_complex(doc))}
        from .core import to_log_weights

        na = normalize(parse_teich_input(doc), tol=args.tol)
        cx = build_complex(to_log_weights(na.to_space()),
                           max_n=_resolved_max_n(args))
        return {"fingerprint": lattice_fingerprint(cx)}
    x = parse_teich_input(doc)
    if args.teich_cmd == "normalize":
        na = normalize(x, tol=args.tol)
        return emit_space(na.to_space())
    if args.teich_cmd == "phi":
        return emit_simplex(phi(x, tol=args.tol))
    if args.teich_cmd == "dist":
        other = parse_teich_input(_read_doc_at(args.other))
        q = moebius_ratio(x, other, tol=args.tol)
        return {
            "d_moeb": d_moeb(x, other, tol=args.tol),
            "ratio": _scalar_out(q),
        }
    if args.teich_cmd == "geodesic":
        other = parse_teich_input(_read_doc_at(args.other))
        na = geodesic_point(x, other, args.t, tol=args.tol)
        return emit_space(na.to_space())
    if args.teich_cmd == "classify4":
        reg = classify4(x, tol=args.tol)
        return {
            "region": reg.tag,
            "sides": list(reg.sides),
            "triple": [_scalar_out(v) for v in reg.triple],
        }
    if args.teich_cmd == "symmetries":
        syms = moebius_symmetries(x, tol=args.tol)
        return {"order": len(syms), "permutations": [list(g) for g in syms]}
    raise ParseError(f"unknown teich subcommand {args.teich_cmd!r}")


def cmd_selfcheck(args):
    from .acceptance import run_criteria

    names = None
    if args.criteria:
        names = [s.strip() for s in args.criteria.split(",") if s.strip()]
    results = run_criteria(names)
    report = {
        "ok": all(r.ok for r in results),
        "criteria": [
            {"name": r.name, "ok": r.ok, "seconds": round(r.seconds, 3),
             "details": r.details}
            for r in results
        ],
    }
    _write(args, report)
    return 0 if report["ok"] else 5


# ---------------------------------------------------------------- parser

def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--input", help="input file (default: stdin)")
    p.add_argument("--output", help="output file (default: stdout)")
    p.add_argument("--tol", type=float, default=DEFAULT_TOL,
                   help="float-mode tolerance")
    p.add_argument("--max-n", type=int, default=None, dest="max_n",
                   help="enumeration size guard (MOEBIUS_MAX_N overrides)")
    p.add_argument("--format", choices=("json", "dot"), default="json",
                   help="output format where supported")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(
        prog="moebius",
        description="Reconstruct and inspect maximal hyperbolic spaces from "
                    "finite antipodal boundary data.",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    sub.add_parser("validate", parents=[common]).set_defaults(fn=cmd_validate)
    sub.add_parser("complex", parents=[common]).set_defaults(fn=cmd_complex)
    sub.add_parser("rays", parents=[common]).set_defaults(fn=cmd_rays)

    p = sub.add_parser("membership", parents=[common])
    p.add_argument("--tau", required=True,
                   help="comma-separated member coordinates")
    p.set_defaults(fn=cmd_membership)

    p = sub.add_parser("sphere", parents=[common])
    p.add_argument("--r", required=True, help="radius (needs r >= r_tilde)")
    p.set_defaults(fn=cmd_sphere)

    p = sub.add_parser("ball-hull-check", parents=[common])
    p.add_argument("--r", required=True, help="radius (needs r >= r_tilde)")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_ball_hull_check)

    sub.add_parser("hull", parents=[common]).set_defaults(fn=cmd_hull)

    p = sub.add_parser("hyperconvex", parents=[common])
    p.add_argument("--balls", required=True, help="balls/v1 JSON file")
    p.set_defaults(fn=cmd_hyperconvex)

    p = sub.add_parser("delta", parents=[common])
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_delta)

    p = sub.add_parser("visual-check", parents=[common])
    p.add_argument("--r", required=True)
    p.set_defaults(fn=cmd_visual_check)

    pt = sub.add_parser("teich")
    tsub = pt.add_subparsers(dest="teich_cmd", required=True)
    for name in ("normalize", "phi", "classify4", "symmetries", "fingerprint"):
        tp = tsub.add_parser(name, parents=[common])
        tp.set_defaults(fn=cmd_teich)
    tp = tsub.add_parser("dist", parents=[common])
    tp.add_argument("--other", required=True, help="second class (file)")
    tp.set_defaults(fn=cmd_teich)
    tp = tsub.add_parser("geodesic", parents=[common])
    tp.add_argument("--other", required=True, help="second class (file)")
    tp.add_argument("--t", type=float, required=True,
                    help="arc-length parameter")
    tp.set_defaults(fn=cmd_teich)

    p = sub.add_parser("selfcheck", parents=[common])
    p.add_argument("--criteria",
                   help="comma-separated subset of criterion names")
    p.set_defaults(fn=cmd_selfcheck, selfcheck=True)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if getattr(args, "selfcheck", False):
            return args.fn(args)
        payload = args.fn(args)
        _write(args, payload)
        return 0
    except InputError as e:
        _fail(e)
        return 2
    except PreconditionError as e:
        _fail(e)
        return 3
    except LimitExceeded as e:
        _fail(e)
        return 4
    except InvariantViolation as e:
        _fail(e)
        return 5


def _fail(e: MoebiusError):
    sys.stderr.write(json.dumps(
        {"error": type(e).__name__, "message": str(e)}
    ) + "\n")


if __name__ == "__main__":
    sys.exit(main())
