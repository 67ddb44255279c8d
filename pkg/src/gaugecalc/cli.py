"""Command-line interface: ``gaugecalc <command> [options]``.

Every command prints one JSON document.  Exit status 0 means a verdict was
computed (a "no" verdict included), 1 an input error, 2 an internal defect
such as a certificate that failed its replay.
"""
from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import convex, grids, io, labeling, majorization, semilattice
from .convex import DimensionError, DomainError
from .lp import CertificateError, Infeasible
from .measures import (
    ConicMeasure,
    canonicalize_measure,
    jordan,
    pair,
    pair_sublinear,
)

EXIT_OK, EXIT_INPUT, EXIT_DEFECT = 0, 1, 2
STANDARD_QUADRANT_GRID = "[[1,0],[1,1],[0,1]]"


class ReplayFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _figure(value):
    return io.parse_figure(io.load_arg(value, "figure"))


def _vector(value, what="vector"):
    return io.parse_vec(io.load_arg(value, what), what)


def _rational(value, what="value"):
    return io.parse_rat(value.strip(), what)


def _grid(value, dim=2):
    try:
        if value.strip().startswith("["):
            return [io.parse_vec(v, "grid vector") for v in io.loads(value, "grid")]
        return grids.parse_grid(value, dim)
    except io.InputError:
        raise
    except (ValueError, TypeError) as exc:
        raise io.InputError(f"grid: {exc}") from exc


def _labeling(value):
    if value == "simplest":
        return labeling.simplest_labeling()
    return io.parse_labeling(io.load_arg(value, "labeling"))


def _seed(args) -> int:
    env = os.environ.get("GAUGE_CALC_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise io.InputError(f"GAUGE_CALC_SEED must be an integer, got {env!r}") from exc
    return args.seed


# ---------------------------------------------------------------------------
# verdict encodings


def _transport_doc(cert):
    return {
        "transport": io.matrix_json(cert.t),
        "source": io.measure_json(cert.source),
        "target": io.measure_json(cert.target),
    }


def _linear_verdict(verdict, mu, nu):
    if verdict:
        return {"verdict": "yes", **_transport_doc(verdict.certificate)}
    p = verdict.separator
    return {
        "verdict": "no",
        "separator": io.sublinear_json(p),
        "integrals": {"mu": io.rat(pair_sublinear(mu, p)), "nu": io.rat(pair_sublinear(nu, p))},
    }


def _affine_verdict(verdict, mu, nu):
    if verdict:
        return {"verdict": "yes", **_transport_doc(verdict.certificate)}
    f = verdict.separator
    return {
        "verdict": "no",
        "separator": {"pieces": [{"a": io.rvec(a), "b": io.rat(b)} for a, b in f.pieces]},
        "integrals": {
            "mu": io.rat(majorization.integrate_convex(mu, f)),
            "nu": io.rat(majorization.integrate_convex(nu, f)),
        },
    }


def _check_transport_doc(doc, mu, nu, affine=False):
    cert = majorization.TransportCertificate(
        io.parse_matrix(doc["transport"]), canonicalize_measure(mu), canonicalize_measure(nu)
    )
    check = majorization.check_affine_transport if affine else majorization.check_linear_transport
    return check(cert)


def _report_doc(report):
    out = {
        "verdict": "pass" if report.passed else "fail",
        "exact": report.exact,
        "checked": len(report.checked),
    }
    if report.cells:
        out["cells"] = [
            {"delta": io.rvec(d), "pattern": labeling.pattern_name(s), "ok": ok} for d, s, ok in report.cells
        ]
    w = report.witness
    if w is not None:
        out["witness"] = {
            "direction": io.rvec(w.direction),
            "measure": io.measure_json(w.measure),
            "separator": io.sublinear_json(w.separator),
        }
        if w.pattern is not None:
            out["witness"]["pattern"] = labeling.pattern_name(w.pattern)
    return out


def _replay_witness_doc(doc):
    w = doc.get("witness")
    if doc["verdict"] == "pass":
        return w is None
    sigma = io.parse_signed_measure(w["measure"])
    p = io.parse_sublinear(w["separator"])
    pos, neg = jordan(sigma)
    return pair_sublinear(pos, p) < pair_sublinear(neg, p)


def _cert_doc(cert):
    return {
        "y": io.rvec(cert.y),
        "xs": [io.rvec(x) for x in cert.xs],
        "n": len(cert.xs),
        "family_lhs": io.rvec(cert.family_lhs),
        "family_rhs": io.rvec(cert.family_rhs),
        "lhs": io.rat(cert.lhs),
        "rhs": io.rat(cert.rhs),
    }


def _verdict_doc(v):
    if isinstance(v, semilattice.Member):
        return {"verdict": "member", "expression": v.expression.to_json(), "scope": v.scope}
    if isinstance(v, semilattice.Rejected):
        return {"verdict": "rejected", "certificate": _cert_doc(v.certificate), "scope": v.scope,
                "conclusive": v.conclusive}
    rep = v.report
    return {
        "verdict": "consistent",
        "tuples": rep["tuples"],
        "best_gap": None if rep["best_gap"] is None else io.rat(rep["best_gap"]),
        "grid_deviation": io.rat(rep["grid_deviation"]),
    }


def _parse_expr(obj):
    if "ball" in obj:
        return semilattice.ball(int(obj["ball"]))
    if "scale" in obj:
        return semilattice.scaled(io.parse_rat(obj["scale"]), _parse_expr(obj["of"]))
    for op in ("sum", "join", "meet"):
        if op in obj:
            return semilattice.Expr(op, tuple(_parse_expr(a) for a in obj[op]))
    raise io.InputError("unknown expression node")


# ---------------------------------------------------------------------------
# commands; each returns a payload dict, replays return a bool


def cmd_support(a):
    P = _figure(a.figure)
    return {"value": io.rat(convex.support(P, _vector(a.direction)))}


def cmd_gauge(a):
    P = _figure(a.figure)
    return {"value": io.rat(convex.gauge(P, _vector(a.point)))}


def replay_gauge(a, doc):
    P = _figure(a.figure)
    x = _vector(a.point)
    if doc["value"] == "inf":
        return not convex.contains_point(P, x) and convex.gauge(P, x) == convex.INF
    g = io.parse_rat(doc["value"])
    # x must lie on the boundary of g P (or be 0)
    if g == 0:
        return all(c == 0 for c in x)
    return convex.contains_point(convex.scale(P, g), x) and convex.gauge(P, x) == g


def cmd_polar(a):
    return {"figure": io.figure_json(convex.polar(_figure(a.figure)))}


def _binary(op):
    def run(a):
        figs = [_figure(f) for f in a.figure]
        if len(figs) < 1:
            raise io.InputError("need at least one --figure")
        out = figs[0]
        for F in figs[1:]:
            if not out:
                break
            out = op(out, F)
        return {"figure": io.figure_json(convex.canonicalize(out) if out else out)}

    return run


def cmd_scale(a):
    return {"figure": io.figure_json(convex.canonicalize(convex.scale(_figure(a.figure), _rational(a.factor))))}


def cmd_opnorm(a):
    A = io.parse_matrix(io.load_arg(a.matrix, "matrix"))
    return {"value": io.rat(convex.operator_norm(A, _figure(a.figure)))}


def cmd_infconv(a):
    P, Q = _figure(a.p), _figure(a.q)
    return {"value": io.rat(convex.inf_convolution(P, Q, _vector(a.point)))}


def cmd_majorize(a):
    mu = io.parse_measure(io.load_arg(a.mu, "mu"))
    nu = io.parse_measure(io.load_arg(a.nu, "nu"))
    return _linear_verdict(majorization.dominates_linear(mu, nu), mu, nu)


def replay_majorize(a, doc):
    mu = io.parse_measure(io.load_arg(a.mu, "mu"))
    nu = io.parse_measure(io.load_arg(a.nu, "nu"))
    if doc["verdict"] == "yes":
        return _check_transport_doc(doc, mu, nu)
    return majorization.separates_linear(mu, nu, io.parse_sublinear(doc["separator"]))


def cmd_affine_majorize(a):
    mu = io.parse_point_measure(io.load_arg(a.mu, "mu"))
    nu = io.parse_point_measure(io.load_arg(a.nu, "nu"))
    return _affine_verdict(majorization.dominates_affine(mu, nu), mu, nu)


def replay_affine_majorize(a, doc):
    mu = io.parse_point_measure(io.load_arg(a.mu, "mu"))
    nu = io.parse_point_measure(io.load_arg(a.nu, "nu"))
    if doc["verdict"] == "yes":
        return _check_transport_doc(doc, mu, nu, affine=True)
    f = majorization.SeparatingConvex(
        tuple((io.parse_vec(p["a"]), io.parse_rat(p["b"])) for p in doc["separator"]["pieces"])
    )
    return majorization.separates_affine(mu, nu, f)


def cmd_dualcone(a):
    sigma = io.parse_signed_measure(io.load_arg(a.sigma, "sigma"))
    pos, neg = jordan(sigma)
    return _linear_verdict(majorization.in_dual_cone(sigma), pos, neg)


def replay_dualcone(a, doc):
    sigma = io.parse_signed_measure(io.load_arg(a.sigma, "sigma"))
    pos, neg = jordan(sigma)
    if doc["verdict"] == "yes":
        return _check_transport_doc(doc, pos, neg)
    return majorization.separates_linear(pos, neg, io.parse_sublinear(doc["separator"]))


def _decompose_query(a):
    q = io.load_arg(a.query, "query")
    f = io.parse_measure(q["f"])
    g = io.parse_measure(q["g"])
    gens = [[io.parse_figure(h) for h in hs] for hs in q["generators"]]
    if "parts" in q:
        parts = [io.parse_measure(m) for m in q["parts"]]
    elif "assignment" in q:
        parts = majorization.assignments_split(g, q["assignment"], len(gens))
    else:
        raise io.InputError("query needs 'parts' or 'assignment'")
    tuples = [[io.parse_figure(h) for h in t] for t in q.get("check", [])]
    return f, g, parts, gens, tuples


def cmd_decompose(a):
    f, g, parts, gens, tuples = _decompose_query(a)
    out = majorization.decomposition_witness(f, g, parts, gens)
    if isinstance(out, Infeasible):
        return {"verdict": "infeasible", "farkas": io.rvec(out.farkas)}
    doc = {"verdict": "feasible", "parts": [io.measure_json(p) for p in out]}
    if tuples:
        doc["join_inequality"] = [majorization.check_join_inequality(f, g, t) for t in tuples]
    return doc


def replay_decompose(a, doc):
    f, g, parts, gens, _ = _decompose_query(a)
    if doc["verdict"] == "infeasible":
        return isinstance(majorization.decomposition_witness(f, g, parts, gens), Infeasible)
    fs = [io.parse_measure(m) for m in doc["parts"]]
    total = ConicMeasure((), f.dim)
    for p in fs:
        total = total + p
    if canonicalize_measure(total) != canonicalize_measure(f):
        return False
    return all(pair(fk, h) >= pair(gk, h) for fk, gk, hs in zip(fs, parts, gens) for h in hs)


def cmd_label_verify(a):
    L = _labeling(a.labeling)
    return _report_doc(labeling.verify_labeling(L, _grid(a.grid, L.dim)))


def cmd_label_planar(a):
    L = _labeling(a.labeling)
    return _report_doc(labeling.verify_labeling_planar(L, _grid(a.grid)))


def replay_label(a, doc):
    return _replay_witness_doc(doc)


def cmd_label_simplest(a):
    P = _figure(a.figure)
    x = labeling.simplest_label(P)
    return {"label": io.rvec(x), "member": convex.contains_point(P, x)}


def cmd_label_solve(a):
    cands = [io.parse_vec(u, "candidate") for u in io.load_arg(a.candidates, "candidates")]
    out = labeling.solve_labeling_system(cands, _grid(a.grid))
    if isinstance(out, Infeasible):
        return {"verdict": "infeasible", "farkas": io.rvec(out.farkas)}
    return {"verdict": "feasible", "labeling": io.labeling_json(out)}


def replay_label_solve(a, doc):
    if doc["verdict"] == "infeasible":
        cands = [io.parse_vec(u, "candidate") for u in io.load_arg(a.candidates, "candidates")]
        return isinstance(labeling.solve_labeling_system(cands, _grid(a.grid)), Infeasible)
    L = io.parse_labeling(doc["labeling"])
    return labeling.verify_labeling_planar(L, _grid(a.grid)).passed


def _family(value):
    return io.parse_family(io.load_arg(value, "family"))


def cmd_hull_member(a):
    S, F = _figure(a.figure), _family(a.family)
    grid = _grid(a.grid, S.dim) if a.grid else None
    if a.depth is None:
        v = semilattice.upper_hull_membership(S, F, a.budget, a.n_max, _seed(a), grid)
        return _verdict_doc(v)
    v, T = semilattice.hull_membership(S, F, a.depth, a.budget, a.n_max, _seed(a), grid)
    doc = _verdict_doc(v)
    doc["depth"] = a.depth
    doc["truncation_size"] = len(T.generated)
    if isinstance(v, semilattice.Member) and v.scope != "family":
        doc["truncation"] = [io.figure_json(G) for G in T.generated]
    return doc


def replay_hull_member(a, doc):
    S, F = _figure(a.figure), _family(a.family)
    if doc["verdict"] == "consistent":
        return True
    balls = F.balls
    if "truncation" in doc:
        balls = tuple(io.parse_figure(G) for G in doc["truncation"])
    elif a.depth is not None and doc.get("scope", "family") != "family":
        balls = semilattice.truncate(F, a.depth).generated
    if doc["verdict"] == "member":
        return semilattice.expression_holds(convex.canonicalize(S), balls, _parse_expr(doc["expression"]))
    c = doc["certificate"]
    cert = semilattice.make_certificate(S, balls, io.parse_vec(c["y"]), [io.parse_vec(x) for x in c["xs"]])
    return semilattice.replay_rejection(S, balls, cert) and _cert_doc(cert) == c


def cmd_hull_rep422(a):
    S, F = _figure(a.figure), _family(a.family)
    R, dev = semilattice.outer_rep_422(S, F, _grid(a.grid, S.dim))
    return {"figure": io.figure_json(R), "deviation": io.rat(dev), "equal": convex.same_figure(R, S)}


def cmd_hull_rep421(a):
    S, F = _figure(a.figure), _family(a.family)
    tuples = [[io.parse_vec(x, "tuple vector") for x in t] for t in io.load_arg(a.tuples, "tuples")]
    R, dev = semilattice.rep_421(S, F, tuples)
    return {"figure": io.figure_json(R), "deviation": io.rat(dev), "equal": convex.same_figure(R, S)}


def _meet_inputs(a):
    H = [_figure(f) for f in a.figure]
    y = _vector(a.y, "y")
    xs = [io.parse_vec(x, "x") for x in io.load_arg(a.xs, "xs")]
    return H, y, xs


def cmd_hull_decompose_meet(a):
    H, y, xs = _meet_inputs(a)
    out = semilattice.decompose_meet(H, y, xs)
    if not out:
        return {"verdict": "infeasible", "farkas": io.rvec(out.farkas), "coverage_warning": out.coverage_warning}
    return {"verdict": "feasible", "zs": [io.rvec(z) for z in out.zs]}


def replay_hull_decompose_meet(a, doc):
    H, y, xs = _meet_inputs(a)
    if doc["verdict"] == "infeasible":
        return not semilattice.decompose_meet(H, y, xs)
    dec = semilattice.MeetDecomposition(tuple(io.parse_vec(z) for z in doc["zs"]))
    return semilattice.check_meet_decomposition(H, y, xs, dec)


def cmd_hull_check541(a):
    P, Q = _figure(a.p), _figure(a.q)
    mu = io.parse_measure(io.load_arg(a.mu, "mu"))
    cands = [io.parse_vec(u, "candidate") for u in io.load_arg(a.candidates, "candidates")]
    b = semilattice.eval_541_bound(P, Q, mu, cands)
    return {
        "lhs": io.rat(b.lhs),
        "best_rhs": io.rat(b.best_rhs),
        "attained": b.attained,
        "mu1": io.measure_json(b.mu1),
        "mu2": io.measure_json(b.mu2),
    }


def replay_hull_check541(a, doc):
    P, Q = _figure(a.p), _figure(a.q)
    mu = io.parse_measure(io.load_arg(a.mu, "mu"))
    mu1, mu2 = io.parse_measure(doc["mu1"]), io.parse_measure(doc["mu2"])
    rhs = io.parse_rat(doc["best_rhs"])
    lhs = pair(mu, convex.meet_all([P, Q]))
    return (
        pair(mu1, P) + pair(mu2, Q) == rhs
        and rhs >= lhs
        and io.parse_rat(doc["lhs"]) == lhs
        and bool(majorization.dominates_linear(mu1 + mu2, mu))
    )


def cmd_canon(a):
    if a.figure:
        return {"figure": io.figure_json(convex.canonicalize(_figure(a.figure), a.method))}
    obj = io.load_arg(a.measure, "measure")
    atoms = obj.get("atoms", [])
    if atoms and "x" in atoms[0]:
        return {"measure": io.measure_json(canonicalize_measure(io.parse_point_measure(obj)))}
    return {"measure": io.measure_json(canonicalize_measure(io.parse_signed_measure(obj)))}


REPLAYS = {
    "gauge": replay_gauge,
    "majorize": replay_majorize,
    "affine-majorize": replay_affine_majorize,
    "dualcone": replay_dualcone,
    "decompose": replay_decompose,
    "label verify": replay_label,
    "label planar": replay_label,
    "label solve": replay_label_solve,
    "hull member": replay_hull_member,
    "hull decompose-meet": replay_hull_decompose_meet,
    "hull check541": replay_hull_check541,
}


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for randomized searches (GAUGE_CALC_SEED overrides)")
    common.add_argument("--output", "-o", help="write the JSON document here instead of stdout")
    common.add_argument("--replay", metavar="FILE", help="check a previously emitted document instead of computing")

    parser = argparse.ArgumentParser(prog="gaugecalc", description="Exact calculus of gauges, support functions and majorization.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, target=sub):
        p = target.add_parser(name, parents=[common], help=help)
        p.set_defaults(func=func)
        return p

    p = add("support", cmd_support, "support function value")
    p.add_argument("--figure", required=True)
    p.add_argument("--direction", required=True)
    p = add("gauge", cmd_gauge, "Minkowski functional value")
    p.add_argument("--figure", required=True)
    p.add_argument("--point", required=True)
    p = add("polar", cmd_polar, "polar figure")
    p.add_argument("--figure", required=True)
    for name, op, text in (
        ("sum", convex.minkowski_sum, "Minkowski sum"),
        ("join", convex.join, "convex hull of the union"),
        ("meet", convex.meet, "intersection"),
    ):
        p = add(name, _binary(op), text)
        p.add_argument("--figure", action="append", required=True)
    p = add("scale", cmd_scale, "dilation")
    p.add_argument("--figure", required=True)
    p.add_argument("--factor", required=True)
    p = add("opnorm", cmd_opnorm, "operator norm of a matrix on a gauge")
    p.add_argument("--figure", required=True)
    p.add_argument("--matrix", required=True)
    p = add("infconv", cmd_infconv, "infimal convolution of two support functions")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--point", required=True)
    p = add("majorize", cmd_majorize, "linear majorization of conic measures")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p = add("affine-majorize", cmd_affine_majorize, "affine majorization of point measures")
    p.add_argument("--mu", required=True)
    p.add_argument("--nu", required=True)
    p = add("dualcone", cmd_dualcone, "dual-cone membership of a signed measure")
    p.add_argument("--sigma", required=True)
    p = add("decompose", cmd_decompose, "decomposition witness over finitely generated cones")
    p.add_argument("--query", required=True)

    lab = sub.add_parser("label", help="labelings").add_subparsers(dest="label_command", required=True)
    p = add("verify", cmd_label_verify, "dual-cone criterion on a grid", lab)
    p.add_argument("--labeling", required=True, help="file, inline JSON, or 'simplest'")
    p.add_argument("--grid", default="fan:64")
    p = add("planar", cmd_label_planar, "sign-pattern criterion on a quadrant grid", lab)
    p.add_argument("--labeling", required=True)
    p.add_argument("--grid", default=STANDARD_QUADRANT_GRID)
    p = add("simplest", cmd_label_simplest, "bounding-box center label", lab)
    p.add_argument("--figure", required=True)
    p = add("solve", cmd_label_solve, "solve for labeling weights on candidate directions", lab)
    p.add_argument("--candidates", required=True)
    p.add_argument("--grid", default=STANDARD_QUADRANT_GRID)

    hull = sub.add_parser("hull", help="hulls of ball families").add_subparsers(dest="hull_command", required=True)
    p = add("member", cmd_hull_member, "hull membership verdict", hull)
    p.add_argument("--figure", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--depth", type=int, help="meet-truncation depth; omit for the join hull only")
    p.add_argument("--budget", type=int, default=200)
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--grid")
    p = add("rep422", cmd_hull_rep422, "outer representation over a direction grid", hull)
    p.add_argument("--figure", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--grid", required=True)
    p = add("rep421", cmd_hull_rep421, "outer representation over vector tuples", hull)
    p.add_argument("--figure", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--tuples", required=True)
    p = add("decompose-meet", cmd_hull_decompose_meet, "vector decomposition under a figure list", hull)
    p.add_argument("--figure", action="append", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--xs", required=True)
    p = add("check541", cmd_hull_check541, "meet pairing against its restricted dual bound", hull)
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--candidates", required=True)

    p = add("canon", cmd_canon, "canonical form of a figure or measure")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--figure")
    g.add_argument("--measure")
    p.add_argument("--method", choices=("auto", "lp"), default="auto")

    p = sub.add_parser("batch", help="run a JSON list of argument vectors")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", "-o")
    p.set_defaults(func=None)
    return parser


def _command_key(args) -> str:
    if args.command == "label":
        return f"label {args.label_command}"
    if args.command == "hull":
        return f"hull {args.hull_command}"
    return args.command


def execute(argv) -> tuple:
    """Run one command; returns ``(exit_code, json_text)`` without printing."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = EXIT_OK if exc.code == 0 else EXIT_INPUT
        return code, io.dumps(io.document({"error": "usage", "message": "invalid arguments"}))
    try:
        if args.command == "batch":
            doc = _batch(args)
        elif args.replay:
            key = _command_key(args)
            previous = io.load_arg(args.replay, "replay document")
            check = REPLAYS.get(key)
            if check is None:
                fresh = io.document(args.func(args))
                ok = fresh == previous
            else:
                ok = bool(check(args, previous))
            if not ok:
                raise ReplayFailure(f"{key}: certificate failed replay")
            doc = {"replay": "ok", "command": key}
        else:
            doc = args.func(args)
    except io.InputError as exc:
        err = {"error": "input", "message": str(exc)}
        if exc.position:
            err["position"] = {"line": exc.position[0], "column": exc.position[1]}
        return EXIT_INPUT, io.dumps(io.document(err))
    except (ReplayFailure, CertificateError) as exc:
        return EXIT_DEFECT, io.dumps(io.document({"error": "defect", "message": str(exc)}))
    except (ValueError, TypeError, KeyError, DimensionError, DomainError) as exc:
        return EXIT_INPUT, io.dumps(io.document({"error": "input", "message": f"{type(exc).__name__}: {exc}"}))
    except Exception as exc:  # anything else is a bug
        return EXIT_DEFECT, io.dumps(io.document({"error": "defect", "message": f"{type(exc).__name__}: {exc}"}))
    return EXIT_OK, io.dumps(io.document(doc))


def _batch_one(argv):
    code, text = execute(list(argv))
    return {"argv": list(argv), "exit": code, "output": io.loads(text)}


def _batch(args):
    items = io.load_arg(args.file, "batch file")
    if not isinstance(items, list) or not all(isinstance(x, list) for x in items):
        raise io.InputError("batch file must be a list of argument lists")
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_batch_one, items))
    else:
        results = [_batch_one(x) for x in items]
    return {"results": results}


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, text = execute(argv)
    out = None
    for i, a in enumerate(argv):
        if a in ("--output", "-o") and i + 1 < len(argv):
            out = argv[i + 1]
    if out and code != EXIT_INPUT:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")
    return code


if __name__ == "__main__":
    raise SystemExit(main())
