"""Exact polytope calculus: support functions, gauges, polars and the lattice
operations on convex figures.

Figures are rational V-polytopes.  Operations that need an H-representation
(polar, meet, facet listings) go through :mod:`gaugecalc.ddm`, which limits
them to dimension three or lower.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import ddm, linalg
from .lp import Infeasible, LinearProgram, Optimal, Unbounded, check_feasible, solve_lp
from .rational import add, dot, is_zero, smul, sub, to_rational, vec, zero

INF = math.inf


class DimensionError(ValueError):
    pass


class DomainError(ValueError):
    """An operation was applied outside its domain (e.g. gauge of a set missing 0)."""


@dataclass(frozen=True)
class VPolytope:
    """Convex hull of finitely many rational points.

    ``VPolytope([(1, 1), (-1, 1), ...])``; the vertex list is kept as given,
    call :func:`canonicalize` for the unique reduced form.
    """

    vertices: tuple
    dim: int = None

    def __post_init__(self):
        pts = tuple(vec(v) for v in self.vertices)
        if not pts:
            raise ValueError("a figure needs at least one point")
        dim = len(pts[0]) if self.dim is None else self.dim
        if dim < 1:
            raise DimensionError("dimension must be at least 1")
        if any(len(p) != dim for p in pts):
            raise DimensionError("all points must have the same dimension")
        object.__setattr__(self, "vertices", pts)
        object.__setattr__(self, "dim", dim)

    def __repr__(self):
        return f"VPolytope({[tuple(str(c) for c in v) for v in self.vertices]})"

    @cached_property
    def symmetric(self) -> bool:
        c = canonicalize(self)
        return set(c.vertices) == {tuple(-x for x in v) for v in c.vertices}

    @cached_property
    def origin_interior(self) -> bool:
        return _origin_in_interior(self.vertices, self.dim)

    def __contains__(self, x) -> bool:
        return contains_point(self, x)


@dataclass(frozen=True)
class Empty:
    """The empty intersection; falsy, so ``if meet(P, Q):`` reads naturally."""

    dim: int

    def __bool__(self):
        return False


@dataclass(frozen=True)
class HPolytope:
    """``{x : (a, x) <= b for (a, b) in facets}``."""

    facets: tuple
    dim: int = None

    def __post_init__(self):
        fs = tuple((vec(a), to_rational(b)) for a, b in self.facets)
        dim = self.dim if self.dim is not None else (len(fs[0][0]) if fs else None)
        if dim is None:
            raise DimensionError("cannot infer dimension of an empty facet list")
        if any(len(a) != dim for a, _ in fs):
            raise DimensionError("facet normals must share the ambient dimension")
        object.__setattr__(self, "facets", fs)
        object.__setattr__(self, "dim", dim)

    def contains(self, x) -> bool:
        return all(dot(a, x) <= b for a, b in self.facets)


def _check_dims(*figs):
    dims = {f.dim for f in figs}
    if len(dims) != 1:
        raise DimensionError(f"dimension mismatch: {sorted(dims)}")


def _check_vector(P, x):
    if len(x) != P.dim:
        raise DimensionError(f"vector of length {len(x)} in dimension {P.dim}")


# ---------------------------------------------------------------------------
# membership and canonical form


def _in_hull(points, x) -> bool:
    if not points:
        return False
    n = len(x)
    k = len(points)
    cons = [([p[i] for p in points], "==", x[i]) for i in range(n)]
    cons.append(([1] * k, "==", 1))
    return bool(check_feasible(cons, nvars=k, lower=[0] * k))


def contains_point(P: VPolytope, x) -> bool:
    x = vec(x)
    _check_vector(P, x)
    return _in_hull(P.vertices, x)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_2d(points):
    """Extreme points of a planar set by the monotone chain (exact)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return sorted(set(hull))


def canonicalize(P: VPolytope, method: str = "auto") -> VPolytope:
    """Drop non-extreme points and sort vertices lexicographically.

    ``method="lp"`` tests each point against the hull of the others with an
    exact LP; ``"auto"`` uses the exact monotone chain in the plane and the LP
    test elsewhere.
    """
    pts = sorted(set(P.vertices))
    if len(pts) == 1:
        return VPolytope(pts, P.dim)
    if method == "auto" and P.dim == 2:
        return VPolytope(_hull_2d(pts), 2)
    if method not in ("auto", "lp"):
        raise ValueError(f"unknown canonicalization method {method!r}")
    keep = [p for i, p in enumerate(pts) if not _in_hull(pts[:i] + pts[i + 1:], p)]
    return VPolytope(keep, P.dim)


def same_figure(P: VPolytope, Q: VPolytope) -> bool:
    _check_dims(P, Q)
    return canonicalize(P).vertices == canonicalize(Q).vertices


# ---------------------------------------------------------------------------
# support function, gauge, polar


def support(P: VPolytope, z) -> Fraction:
    z = vec(z)
    _check_vector(P, z)
    return max(dot(v, z) for v in P.vertices)


def _origin_in_interior(points, n) -> bool:
    # 0 in int conv(points)  <=>  points affinely span R^n and 0 = sum l_i p_i
    # with every l_i > 0, sum l_i = 1 (0 in the relative interior)
    if len(points) < n + 1:
        return False
    diffs = [sub(p, points[0]) for p in points[1:]]
    if linalg.rank(diffs) < n:
        return False
    k = len(points)
    # maximize s subject to l_i >= s, sum l_i = 1, sum l_i p_i = 0
    obj = [0] * k + [1]
    cons = [([p[i] for p in points] + [0], "==", 0) for i in range(n)]
    cons.append(([1] * k + [0], "==", 1))
    for i in range(k):
        row = [0] * (k + 1)
        row[i] = 1
        row[k] = -1
        cons.append((row, ">=", 0))
    out = solve_lp(LinearProgram(obj, cons, sense="max", upper=[None] * k + [1]))
    return isinstance(out, Optimal) and out.value > 0


def gauge(P: VPolytope, x):
    """Minkowski functional ``inf{l >= 0 : x in l P}``; ``math.inf`` if none."""
    x = vec(x)
    _check_vector(P, x)
    if not contains_point(P, zero(P.dim)):
        raise DomainError("gauge needs a figure containing the origin")
    if is_zero(x):
        return Fraction(0)
    k = len(P.vertices)
    # x = sum a_i v_i, a >= 0, minimize sum a_i
    cons = [([v[i] for v in P.vertices], "==", x[i]) for i in range(P.dim)]
    out = solve_lp(LinearProgram([1] * k, cons, lower=[0] * k))
    if isinstance(out, Infeasible):
        return INF
    return out.value


def to_hpolytope(P: VPolytope) -> HPolytope:
    """Irredundant facet description of ``P`` (equalities appear as facet pairs)."""
    pts = canonicalize(P).vertices
    n = P.dim
    if n > ddm.MAX_DIM:
        raise DimensionError(f"facet enumeration limited to dimension <= {ddm.MAX_DIM}")
    k = len(pts)
    c = tuple(sum((p[i] for p in pts), Fraction(0)) / k for i in range(n))
    W = [sub(p, c) for p in pts]
    facets = []
    for nrm in linalg.nullspace(W, n):
        off = dot(nrm, c)
        facets.append((nrm, off))
        facets.append((tuple(-a for a in nrm), -off))
    basis_idx = linalg.independent_subset(W)
    r = len(basis_idx)
    if r == 0:
        return HPolytope(facets, n)
    B = [W[i] for i in basis_idx]  # r vectors spanning the affine hull directions
    # choose r coordinates on which B is invertible
    cols = linalg.independent_subset([tuple(b[j] for b in B) for j in range(n)], limit=r)
    Bp = [[B[i][j] for i in range(r)] for j in cols]  # r x r, columns are basis vectors
    M = linalg.inverse(Bp)  # alpha = M @ (x - c)[cols]
    alphas = [linalg.matvec(M, [w[j] for j in cols]) for w in W]
    # facets of the full-dimensional centered set in alpha space = polar vertices
    us = ddm.enumerate_vertices(alphas, [Fraction(1)] * len(alphas))
    for u in us:
        g = [Fraction(0)] * n
        coeff = [sum((M[i][t] * u[i] for i in range(r)), Fraction(0)) for t in range(r)]
        for t, j in enumerate(cols):
            g[j] = coeff[t]
        g = tuple(g)
        facets.append((g, 1 + dot(g, c)))
    return HPolytope(facets, n)


def from_hpolytope(H: HPolytope):
    """Vertex enumeration; returns :class:`Empty` for an infeasible system."""
    normals = [a for a, _ in H.facets]
    offsets = [b for _, b in H.facets]
    try:
        pts = ddm.enumerate_vertices(normals, offsets)
    except ddm.UnboundedPolyhedron as exc:
        raise DomainError(f"H-polytope is unbounded: {exc}") from exc
    if not pts:
        return Empty(H.dim)
    # extreme rays map to extreme points, so sorting is all that is left
    return VPolytope(sorted(set(pts)), H.dim)


def polar(P: VPolytope) -> VPolytope:
    """``{x : (x, v) <= 1 for v in P}``; needs the origin in the interior."""
    if not P.origin_interior:
        raise DomainError("polar of a figure without 0 in its interior is unbounded")
    if P.dim > ddm.MAX_DIM:
        raise DimensionError(f"polar limited to dimension <= {ddm.MAX_DIM}")
    pts = canonicalize(P).vertices
    return from_hpolytope(HPolytope([(v, 1) for v in pts], P.dim))


# ---------------------------------------------------------------------------
# Minkowski structure and lattice operations


def minkowski_sum(P: VPolytope, Q: VPolytope) -> VPolytope:
    _check_dims(P, Q)
    a = canonicalize(P).vertices
    b = canonicalize(Q).vertices
    return canonicalize(VPolytope([add(v, w) for v in a for w in b], P.dim))


def join(P: VPolytope, Q: VPolytope) -> VPolytope:
    """Convex hull of the union."""
    _check_dims(P, Q)
    return canonicalize(VPolytope(P.vertices + Q.vertices, P.dim))


def meet(P: VPolytope, Q: VPolytope):
    """Intersection; :class:`Empty` when the figures are disjoint."""
    _check_dims(P, Q)
    if P.dim > ddm.MAX_DIM:
        raise DimensionError(f"meet limited to dimension <= {ddm.MAX_DIM}")
    H = to_hpolytope(P).facets + to_hpolytope(Q).facets
    return from_hpolytope(HPolytope(H, P.dim))


def meet_all(figs: Sequence[VPolytope]):
    if not figs:
        raise ValueError("meet of an empty family")
    _check_dims(*figs)
    if figs[0].dim > ddm.MAX_DIM:
        raise DimensionError(f"meet limited to dimension <= {ddm.MAX_DIM}")
    H = []
    for F in figs:
        H.extend(to_hpolytope(F).facets)
    return from_hpolytope(HPolytope(H, figs[0].dim))


def join_all(figs: Sequence[VPolytope]) -> VPolytope:
    if not figs:
        raise ValueError("join of an empty family")
    _check_dims(*figs)
    pts = tuple(v for F in figs for v in F.vertices)
    return canonicalize(VPolytope(pts, figs[0].dim))


def scale(P: VPolytope, alpha) -> VPolytope:
    alpha = to_rational(alpha)
    if alpha < 0:
        raise DomainError("dilation factor must be nonnegative")
    if alpha == 0:
        return VPolytope([zero(P.dim)], P.dim)
    return VPolytope([smul(alpha, v) for v in P.vertices], P.dim)


def operator_norm(A, P: VPolytope):
    """``sup{gauge(P, A x) : x in P}``, attained at a vertex of ``P``."""
    A = [vec(row) for row in A]
    if len(A) != P.dim or any(len(row) != P.dim for row in A):
        raise DimensionError("operator must be a square matrix of the ambient dimension")
    if not contains_point(P, zero(P.dim)):
        raise DomainError("operator norm needs a figure containing the origin")
    best = Fraction(0)
    for v in canonicalize(P).vertices:
        g = gauge(P, linalg.matvec(A, v))
        if g == INF:
            return INF
        best = max(best, g)
    return best


def inf_convolution(P: VPolytope, Q: VPolytope, x):
    """``min{S_P(x1) + S_Q(x - x1)}`` by LP; ``-math.inf`` when unbounded below."""
    _check_dims(P, Q)
    x = vec(x)
    _check_vector(P, x)
    n = P.dim
    # variables: x1 (n, free), s, r
    cons = []
    for v in P.vertices:
        cons.append((list(v) + [-1, 0], "<=", 0))
    for w in Q.vertices:
        cons.append(([-a for a in w] + [0, -1], "<=", -dot(w, x)))
    out = solve_lp(LinearProgram([0] * n + [1, 1], cons))
    if isinstance(out, Unbounded):
        return -INF
    return out.value


def contains(P: VPolytope, Q: VPolytope) -> bool:
    """Whether ``Q`` is a subset of ``P``."""
    _check_dims(P, Q)
    return all(_in_hull(P.vertices, v) for v in Q.vertices)


def support_deviation(P: VPolytope, Q: VPolytope, directions) -> Fraction:
    """Max of ``|S_P(z) - S_Q(z)|`` over the given (unnormalized) directions.

    A grid approximation of the Chebyshev distance between support functions;
    adding directions can only increase it.
    """
    _check_dims(P, Q)
    dirs = [vec(z) for z in directions]
    if not dirs:
        raise ValueError("need at least one direction")
    if any(is_zero(z) for z in dirs):
        raise ValueError("zero direction in grid")
    return max(abs(support(P, z) - support(Q, z)) for z in dirs)


def facet_normals(P: VPolytope) -> list:
    """Outer facet normals of a full-dimensional figure."""
    return [a for a, _ in to_hpolytope(P).facets]
