"""Labelings: families of signed measures whose pairings with a figure's
support function land inside the figure.

A family ``(s_1..s_N)`` is a labeling iff for every direction ``x`` the
signed measure ``e_x - sum_k x_k s_k`` lies in the dual cone of support
functions.  The checks here run that criterion on an explicit grid of
directions, so a pass is a necessary-condition verification only; reports
say so through ``exact=False``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .convex import VPolytope, contains_point, support
from .lp import CertificateError, Infeasible, LinearProgram, solve_lp
from .majorization import No, dominates_linear, in_dual_cone
from .measures import (
    ConicMeasure,
    SignedConicMeasure,
    canonicalize_measure,
    jordan,
    pair,
    pair_sublinear,
)
from .rational import is_zero, unit, vec

PATTERNS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def pattern_name(s) -> str:
    return "".join("+" if v > 0 else "-" for v in s)


@dataclass(frozen=True)
class Labeling:
    components: tuple
    dim: int = None

    def __post_init__(self):
        comps = tuple(canonicalize_measure(c.signed()) for c in self.components)
        dim = self.dim if self.dim is not None else (comps[0].dim if comps else None)
        if dim is None or len(comps) != dim:
            raise ValueError("a labeling on R^N has exactly N components")
        if any(c.dim != dim for c in comps):
            raise ValueError("component dimension mismatch")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "dim", dim)

    def scaled(self, alpha) -> "Labeling":
        return Labeling(tuple(c.scaled(alpha) for c in self.components), self.dim)


@dataclass(frozen=True)
class Witness:
    direction: tuple
    measure: SignedConicMeasure
    separator: object
    pattern: Optional[tuple] = None


@dataclass(frozen=True)
class LabelingReport:
    passed: bool
    checked: tuple
    witness: Optional[Witness] = None
    exact: bool = False
    cells: tuple = field(default=())

    def __bool__(self):
        return self.passed


def simplest_labeling() -> Labeling:
    h = Fraction(1, 2)
    comps = []
    for k in range(2):
        comps.append(SignedConicMeasure(((unit(2, k), h), (unit(2, k, -1), -h)), 2))
    return Labeling(tuple(comps), 2)


def label_of(L: Labeling, P: VPolytope) -> tuple:
    if L.dim != P.dim:
        raise ValueError(f"dimension mismatch: labeling {L.dim}, figure {P.dim}")
    return tuple(pair(c, P) for c in L.components)


def criterion_measure(L: Labeling, x) -> SignedConicMeasure:
    """``e_x - sum_k x_k s_k`` in canonical form."""
    x = vec(x)
    atoms = [(x, Fraction(1))]
    for xk, comp in zip(x, L.components):
        if xk:
            atoms.extend((u, -xk * c) for u, c in comp.atoms)
    return canonicalize_measure(SignedConicMeasure(tuple(atoms), L.dim))


def verify_labeling(L: Labeling, grid: Sequence) -> LabelingReport:
    """Run the dual-cone criterion at each grid direction; stop at the first failure."""
    dirs = [vec(x) for x in grid]
    if not dirs:
        raise ValueError("empty grid")
    if any(len(x) != L.dim for x in dirs):
        raise ValueError("grid dimension mismatch")
    if any(is_zero(x) for x in dirs):
        raise ValueError("zero direction in grid")
    checked = []
    for x in dirs:
        checked.append(x)
        sigma = criterion_measure(L, x)
        verdict = in_dual_cone(sigma)
        if isinstance(verdict, No):
            w = Witness(x, sigma, verdict.separator)
            return LabelingReport(False, tuple(checked), w)
    return LabelingReport(True, tuple(checked))


def replay_witness(report: LabelingReport) -> bool:
    """Independent check that a failing report's witness really fails."""
    w = report.witness
    if report.passed or w is None:
        return False
    pos, neg = jordan(w.measure)
    return pair_sublinear(pos, w.separator) < pair_sublinear(neg, w.separator)


def planar_query(L: Labeling, delta, pattern):
    """The dominance query for one grid cell and sign pattern.

    For signs ``s`` and ``x = (s_1 d_1, s_2 d_2)``: the left side is ``e_x``
    plus ``d_k`` times the part of ``s_k`` of sign ``-s_k``; the right side
    collects the parts of sign ``s_k``.
    """
    d = vec(delta)
    x = tuple(s * dk for s, dk in zip(pattern, d))
    left = [(x, Fraction(1))]
    right = []
    for k, comp in enumerate(L.components):
        if d[k] == 0:
            continue
        pos, neg = jordan(comp)
        same, other = (pos, neg) if pattern[k] > 0 else (neg, pos)
        left.extend((u, d[k] * c) for u, c in other.atoms)
        right.extend((u, d[k] * c) for u, c in same.atoms)
    return ConicMeasure(tuple(left), 2), ConicMeasure(tuple(right), 2)


def _check_quadrant_grid(grid):
    pts = [vec(p) for p in grid]
    if not pts:
        raise ValueError("empty grid")
    for p in pts:
        if len(p) != 2:
            raise ValueError("quadrant grid points are planar")
        if p[0] < 0 or p[1] < 0:
            raise ValueError("quadrant grid coordinates must be nonnegative")
        if is_zero(p):
            raise ValueError("zero point in quadrant grid")
    return pts


def verify_labeling_planar(L: Labeling, quadrant_grid: Sequence) -> LabelingReport:
    """Check the four sign-pattern dominance conditions on every grid point.

    All cells are evaluated; ``cells`` lists ``(delta, pattern, ok)`` and the
    witness is the first failing cell in grid order.
    """
    if L.dim != 2:
        raise ValueError("the sign-pattern criterion is planar")
    pts = _check_quadrant_grid(quadrant_grid)
    cells = []
    witness = None
    for d in pts:
        for s in PATTERNS:
            left, right = planar_query(L, d, s)
            verdict = dominates_linear(left, right)
            ok = bool(verdict)
            cells.append((d, s, ok))
            if not ok and witness is None:
                x = tuple(si * di for si, di in zip(s, d))
                sigma = canonicalize_measure(left.signed() - right)
                witness = Witness(x, sigma, verdict.separator, s)
    return LabelingReport(witness is None, tuple(pts), witness, cells=tuple(cells))


def simplest_label(P: VPolytope) -> tuple:
    """Bounding-box center ``((S(e1) - S(-e1))/2, (S(e2) - S(-e2))/2)``.

    Membership in ``P`` is checked exactly; a miss raises ``CertificateError``.
    """
    if P.dim != 2:
        raise ValueError("the simplest labeling is planar")
    point = tuple(
        (support(P, unit(2, k)) - support(P, unit(2, k, -1))) / 2 for k in range(2)
    )
    if not contains_point(P, point):
        raise CertificateError(f"simplest label {point} is outside the figure")
    return point


def solve_labeling_system(candidates: Sequence, quadrant_grid: Sequence):
    """Search for a labeling with one signed atom per candidate direction per
    component that passes :func:`verify_labeling_planar` on the grid.

    All grid cells share one LP (weights plus per-cell transport variables);
    among feasible weights the one with least total absolute weight is taken.
    Returns a :class:`Labeling` or the LP's ``Infeasible`` certificate.
    """
    cands = [vec(u) for u in candidates]
    if not cands:
        raise ValueError("need at least one candidate direction")
    if any(len(u) != 2 or is_zero(u) for u in cands):
        raise ValueError("candidates must be nonzero planar vectors")
    pts = _check_quadrant_grid(quadrant_grid)
    program, w = labeling_lp(cands, pts)
    out = solve_lp(program)
    if isinstance(out, Infeasible):
        return out
    comps = []
    for k in range(2):
        atoms = []
        for a, u in enumerate(cands):
            c = out.point[w(k, a, 1)] - out.point[w(k, a, -1)]
            if c:
                atoms.append((u, c))
        comps.append(SignedConicMeasure(tuple(atoms), 2))
    L = Labeling(tuple(comps), 2)
    if not verify_labeling_planar(L, pts):
        raise CertificateError("solved labeling fails the planar criterion")
    return L


def labeling_lp(cands, pts):
    """The joint LP behind :func:`solve_labeling_system`.

    Returns ``(program, w)`` where ``w(k, a, sign)`` is the variable index of
    the positive (``sign=1``) or negative part of component ``k``'s weight on
    candidate ``a``.
    """
    U = len(cands)

    def w(k, a, sign):  # index of the positive (+1) or negative (-1) weight
        return (k * U + a) * 2 + (0 if sign > 0 else 1)

    nw = 4 * U
    cols = []  # per cell: offset of its transport block
    nvars = nw
    cells = [(d, s) for d in pts for s in PATTERNS]
    for _ in cells:
        cols.append(nvars)
        nvars += (1 + U) * U
    cons = []
    for (d, s), off in zip(cells, cols):
        x = (s[0] * d[0], s[1] * d[1])
        left_dirs = [x] + cands

        def t(i, j):
            return off + i * U + j

        # row sums: e_x sends weight 1; candidate a on the left has weight
        # sum_k d_k * w(k, a, -s_k)
        row = [0] * nvars
        for j in range(U):
            row[t(0, j)] = 1
        cons.append((row, "==", 1))
        for a in range(U):
            row = [0] * nvars
            for j in range(U):
                row[t(1 + a, j)] = 1
            for k in range(2):
                if d[k]:
                    row[w(k, a, -s[k])] -= d[k]
            cons.append((row, "==", 0))
        # column resultants: bundle into candidate b equals (sum_k d_k w(k,b,s_k)) * u_b
        for b in range(U):
            for r in range(2):
                row = [0] * nvars
                for i, u in enumerate(left_dirs):
                    if u[r]:
                        row[t(i, b)] = u[r]
                for k in range(2):
                    if d[k] and cands[b][r]:
                        row[w(k, b, s[k])] -= d[k] * cands[b][r]
                cons.append((row, "==", 0))
    objective = [1] * nw + [0] * (nvars - nw)
    return LinearProgram(objective, cons, lower=[0] * nvars), w


def signed_quadrant_directions(quadrant_grid: Sequence) -> list:
    """All ``(s_1 d_1, s_2 d_2)`` for grid points ``d`` and sign patterns, deduplicated."""
    out = []
    for d in _check_quadrant_grid(quadrant_grid):
        for s in PATTERNS:
            x = (s[0] * d[0], s[1] * d[1])
            if x not in out:
                out.append(x)
    return out
