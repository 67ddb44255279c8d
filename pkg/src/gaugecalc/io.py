"""JSON documents for figures, measures, labelings, families and verdicts.

Rationals travel as strings (``"3/2"``) or integers; JSON floats are
rejected.  Output is canonical: sorted keys, no whitespace, so equal inputs
give byte-identical documents.
"""
from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

from .convex import Empty, HPolytope, VPolytope, from_hpolytope
from .labeling import Labeling
from .measures import ConicMeasure, PointMeasure, SeparatingSublinear, SignedConicMeasure
from .rational import fmt, to_rational, vec
from .semilattice import BallFamily

SCHEMA_VERSION = "1"


class InputError(ValueError):
    """Malformed input document; ``position`` is ``(line, column)`` when known."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


def _reject_float(s):
    raise InputError(f"float literal {s} refused; write rationals as strings like \"1/3\"")


def loads(text: str, where: str = "<input>"):
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise InputError(f"{where}: {exc.msg}", (exc.lineno, exc.colno)) from exc


def load_arg(value: str, where: str = None):
    """An inline JSON value, or the contents of the file it names."""
    p = Path(value)
    if p.is_file():
        return loads(p.read_text(), where or value)
    s = value.strip()
    if s[:1] in "[{\"" or s[:1].isdigit() or s[:1] == "-":
        return loads(s, where or "argument")
    raise InputError(f"no such file: {value}")


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def document(payload: dict) -> dict:
    out = dict(payload)
    out["schema_version"] = SCHEMA_VERSION
    return out


# ---------------------------------------------------------------------------
# scalars and vectors


def rat(x):
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return fmt(x)


def rvec(v):
    return [rat(c) for c in v]


def parse_rat(x, what="value"):
    if isinstance(x, float):
        raise InputError(f"{what}: floats are refused")
    try:
        return to_rational(x)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{what}: {exc}") from exc


def parse_vec(v, what="vector", dim=None):
    if not isinstance(v, list):
        raise InputError(f"{what} must be a list")
    out = tuple(parse_rat(c, what) for c in v)
    if dim is not None and len(out) != dim:
        raise InputError(f"{what} has length {len(out)}, expected {dim}")
    return out


def _need(obj, key, what):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{what} needs a {key!r} field")
    return obj[key]


# ---------------------------------------------------------------------------
# figures


def figure_json(P) -> dict:
    if isinstance(P, Empty):
        return {"type": "empty", "dim": P.dim}
    return {"type": "V", "dim": P.dim, "vertices": [rvec(v) for v in P.vertices]}


def parse_figure(obj) -> VPolytope:
    kind = obj.get("type", "V") if isinstance(obj, dict) else None
    if kind == "V":
        verts = _need(obj, "vertices", "figure")
        if not isinstance(verts, list) or not verts:
            raise InputError("figure vertices must be a nonempty list")
        dim = obj.get("dim")
        pts = [parse_vec(v, "vertex", dim) for v in verts]
        return VPolytope(pts, dim if dim is not None else len(pts[0]))
    if kind == "H":
        dim = _need(obj, "dim", "H-figure")
        facets = [(parse_vec(_need(f, "a", "facet"), "facet normal", dim), parse_rat(_need(f, "b", "facet"), "facet offset"))
                  for f in _need(obj, "facets", "H-figure")]
        P = from_hpolytope(HPolytope(facets, dim))
        if not P:
            raise InputError("H-figure is empty")
        return P
    raise InputError(f"unknown figure type {kind!r}")


# ---------------------------------------------------------------------------
# measures


def measure_json(mu) -> dict:
    key = "x" if isinstance(mu, PointMeasure) else "u"
    return {"dim": mu.dim, "atoms": [{key: rvec(u), "c": rat(c)} for u, c in mu.atoms]}


def _atoms(obj, key):
    atoms = _need(obj, "atoms", "measure")
    if not isinstance(atoms, list):
        raise InputError("measure atoms must be a list")
    dim = obj.get("dim")
    out = []
    for a in atoms:
        out.append((parse_vec(_need(a, key, "atom"), "atom", dim), parse_rat(_need(a, "c", "atom"), "atom weight")))
    if dim is None:
        if not out:
            raise InputError("an empty measure needs a 'dim' field")
        dim = len(out[0][0])
    return tuple(out), dim


def parse_measure(obj) -> ConicMeasure:
    atoms, dim = _atoms(obj, "u")
    return ConicMeasure(atoms, dim)


def parse_signed_measure(obj) -> SignedConicMeasure:
    atoms, dim = _atoms(obj, "u")
    return SignedConicMeasure(atoms, dim)


def parse_point_measure(obj) -> PointMeasure:
    atoms, dim = _atoms(obj, "x")
    return PointMeasure(atoms, dim)


def labeling_json(L: Labeling) -> dict:
    return {"dim": L.dim, "components": [measure_json(c) for c in L.components]}


def parse_labeling(obj) -> Labeling:
    comps = _need(obj, "components", "labeling")
    if not isinstance(comps, list):
        raise InputError("labeling components must be a list")
    return Labeling(tuple(parse_signed_measure(c) for c in comps), obj.get("dim"))


def family_json(F: BallFamily) -> dict:
    return {"balls": [figure_json(b) for b in F.balls]}


def parse_family(obj) -> BallFamily:
    balls = _need(obj, "balls", "family")
    if not isinstance(balls, list) or not balls:
        raise InputError("family balls must be a nonempty list")
    return BallFamily(tuple(parse_figure(b) for b in balls))


def sublinear_json(p: SeparatingSublinear) -> dict:
    return {"pieces": [rvec(y) for y in p.pieces]}


def parse_sublinear(obj) -> SeparatingSublinear:
    return SeparatingSublinear(tuple(parse_vec(y, "piece") for y in _need(obj, "pieces", "functional")))


def matrix_json(t) -> list:
    return [[rat(v) for v in row] for row in t]


def parse_matrix(obj) -> tuple:
    if not isinstance(obj, list):
        raise InputError("matrix must be a list of rows")
    return tuple(parse_vec(row, "matrix row") for row in obj)
