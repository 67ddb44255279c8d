"""Hulls of finite ball families under join, meet, sums and dilations.

Membership of a ball ``S`` in the join-closed cone generated by a family
``(S_xi)`` is decided by a tuple criterion: whenever
``sum_k S_xi(x_k) >= S_xi(y)`` for every family ball, also
``sum_k S(x_k) >= S(y)``.  A violating tuple is an exact non-membership
certificate.  The closures are infinite, so the procedures below search
finite truncations and return a three-valued verdict; ``Consistent`` is
strictly weaker than ``Member``.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .convex import (
    DomainError,
    Empty,
    VPolytope,
    canonicalize,
    facet_normals,
    gauge,
    inf_convolution,
    join_all,
    meet_all,
    minkowski_sum,
    polar,
    same_figure,
    scale,
    support,
    support_deviation,
)
from .lp import CertificateError, Infeasible, LinearProgram, Optimal, check_feasible, solve_lp
from .majorization import dominates_linear
from .measures import ConicMeasure, canonicalize_measure, pair
from .rational import add, dot, is_zero, primitive, smul, vec, zero


class DegenerateFamily(ValueError):
    """The operation needs every ball to contain the origin in its interior."""


@dataclass(frozen=True)
class BallFamily:
    """Finite family of symmetric balls.

    Symmetry is enforced; the origin-interior condition is only recorded in
    ``nondegenerate`` so that degenerate families can still be inspected.
    """

    balls: tuple
    dim: int = None

    def __post_init__(self):
        balls = tuple(canonicalize(b) for b in self.balls)
        if not balls:
            raise ValueError("a family needs at least one ball")
        dim = self.dim if self.dim is not None else balls[0].dim
        if any(b.dim != dim for b in balls):
            raise ValueError("family dimension mismatch")
        for i, b in enumerate(balls):
            if not b.symmetric:
                raise ValueError(f"family member {i} is not symmetric")
        object.__setattr__(self, "balls", balls)
        object.__setattr__(self, "dim", dim)

    @property
    def nondegenerate(self) -> bool:
        return all(b.origin_interior for b in self.balls)


def is_nondegenerate(F: BallFamily) -> bool:
    # for a finite family, bounded operator norms reduce to 0 being interior to each ball
    return F.nondegenerate


def _require_nondegenerate(F: BallFamily):
    if not F.nondegenerate:
        raise DegenerateFamily("family has a ball without 0 in its interior")


def check_sy_absorbing(F: BallFamily, y) -> bool:
    """Whether the meet of the balls ``S_xi / S_xi(y)`` has 0 in its interior."""
    y = vec(y)
    if is_zero(y):
        raise ValueError("y must be nonzero")
    scaled = []
    for b in F.balls:
        s = support(b, y)
        if s <= 0:
            return False
        scaled.append(scale(b, 1 / s))
    M = meet_all(scaled)
    return bool(M) and M.origin_interior


def n1_reduction_check(F: BallFamily) -> bool:
    """True iff all balls are positive multiples of one another."""
    base = F.balls[0]
    probe = base.vertices[0]
    s0 = support(base, probe)
    for b in F.balls[1:]:
        s = support(b, probe)
        if s <= 0 or s0 <= 0:
            return False
        if not same_figure(scale(b, s0 / s), base):
            return False
    return True


# ---------------------------------------------------------------------------
# expressions


@dataclass(frozen=True)
class Expr:
    """``op`` is ``ball`` (``index``), ``scale`` (``alpha``, one arg) or
    ``sum``/``join``/``meet`` over ``args``."""

    op: str
    args: tuple = ()
    index: Optional[int] = None
    alpha: Optional[Fraction] = None

    def evaluate(self, balls: Sequence[VPolytope]):
        if self.op == "ball":
            return balls[self.index]
        vals = [a.evaluate(balls) for a in self.args]
        if self.op == "scale":
            return scale(vals[0], self.alpha)
        if self.op == "sum":
            out = vals[0]
            for v in vals[1:]:
                out = minkowski_sum(out, v)
            return out
        if self.op == "join":
            return join_all(vals)
        if self.op == "meet":
            return meet_all(vals)
        raise ValueError(f"unknown expression operator {self.op!r}")

    def to_json(self):
        if self.op == "ball":
            return {"ball": self.index}
        if self.op == "scale":
            return {"scale": _fmt(self.alpha), "of": self.args[0].to_json()}
        return {self.op: [a.to_json() for a in self.args]}


def _fmt(x):
    from .rational import fmt

    return fmt(x)


def ball(i: int) -> Expr:
    return Expr("ball", index=i)


def scaled(alpha, e: Expr) -> Expr:
    alpha = Fraction(alpha)
    return e if alpha == 1 else Expr("scale", (e,), alpha=alpha)


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class Member:
    expression: Expr
    scope: str = "family"

    kind = "member"


@dataclass(frozen=True)
class RejectionCertificate:
    y: tuple
    xs: tuple
    family_lhs: tuple  # sum_k S_xi(x_k) for each ball
    family_rhs: tuple  # S_xi(y) for each ball
    lhs: Fraction  # sum_k S(x_k)
    rhs: Fraction  # S(y)


@dataclass(frozen=True)
class Rejected:
    certificate: RejectionCertificate
    scope: str = "family"
    conclusive: bool = True

    kind = "rejected"


@dataclass(frozen=True)
class Consistent:
    report: dict

    kind = "consistent"


def make_certificate(S: VPolytope, balls, y, xs) -> RejectionCertificate:
    y = vec(y)
    xs = tuple(vec(x) for x in xs)
    fl = tuple(sum((support(b, x) for x in xs), Fraction(0)) for b in balls)
    fr = tuple(support(b, y) for b in balls)
    return RejectionCertificate(
        y, xs, fl, fr, sum((support(S, x) for x in xs), Fraction(0)), support(S, y)
    )


def replay_rejection(S: VPolytope, balls, cert: RejectionCertificate) -> bool:
    """Recompute every value from scratch and check the violation."""
    fresh = make_certificate(S, balls, cert.y, cert.xs)
    if fresh != cert:
        return False
    return all(a >= b for a, b in zip(fresh.family_lhs, fresh.family_rhs)) and fresh.lhs < fresh.rhs


# ---------------------------------------------------------------------------
# member detection by fitting dilations


def _max_inner_scale(S: VPolytope, B: VPolytope) -> Fraction:
    """Largest ``a`` with ``a B`` inside ``S`` (``S`` has 0 in its interior)."""
    return 1 / max(gauge(S, v) for v in B.vertices)


def _min_outer_scale(S: VPolytope, B: VPolytope) -> Fraction:
    """Smallest ``a`` with ``S`` inside ``a B`` (``B`` has 0 in its interior)."""
    return max(gauge(B, v) for v in S.vertices)


def _fit_scale(S, balls):
    for i, b in enumerate(balls):
        a = _min_outer_scale(S, b)
        if a > 0 and same_figure(scale(b, a), S):
            return scaled(a, ball(i))
    return None


def _fit_join(S, balls):
    alphas = [_max_inner_scale(S, b) for b in balls]
    cand = join_all([scale(b, a) for b, a in zip(balls, alphas)])
    if same_figure(cand, S):
        keep = _prune(S, balls, alphas, join_all)
        return Expr("join", tuple(scaled(alphas[i], ball(i)) for i in keep))
    return None


def _prune(S, balls, alphas, combine):
    """Drop terms whose removal leaves the combination equal to ``S``."""
    keep = list(range(len(balls)))
    for i in range(len(balls)):
        rest = [j for j in keep if j != i]
        if rest and same_figure(combine([scale(balls[j], alphas[j]) for j in rest]), S):
            keep = rest
    return keep


def _fit_meet(S, balls):
    alphas = [_min_outer_scale(S, b) for b in balls]
    cand = meet_all([scale(b, a) for b, a in zip(balls, alphas)])
    if cand and same_figure(cand, S):
        keep = _prune(S, balls, alphas, meet_all)
        return Expr("meet", tuple(scaled(alphas[i], ball(i)) for i in keep))
    return None


def _normal_set(figs):
    out = []
    for F in figs:
        for a in facet_normals(F):
            p = primitive(a)[0]
            if p not in out:
                out.append(p)
    return out


def _fit_sum(S, balls):
    dirs = _normal_set([S, *balls])
    k = len(balls)
    cons = [([support(b, z) for b in balls], "==", support(S, z)) for z in dirs]
    out = check_feasible(cons, nvars=k, lower=[0] * k)
    if not out:
        return None
    alphas = out.point
    used = [(i, a) for i, a in enumerate(alphas) if a]
    if not used:
        return None
    expr = Expr("sum", tuple(scaled(a, ball(i)) for i, a in used))
    return expr if same_figure(expr.evaluate(balls), S) else None


def _fit(S, balls, ops):
    for op in ops:
        e = {"scale": _fit_scale, "join": _fit_join, "sum": _fit_sum, "meet": _fit_meet}[op](S, balls)
        if e is not None and same_figure(e.evaluate(balls), S):
            return e
    return None


# ---------------------------------------------------------------------------
# violating-tuple search


def _worst_y(S: VPolytope, balls, xs):
    """Maximize ``S(y)`` over ``{y : S_xi(y) <= sum_k S_xi(x_k)}``; returns ``(y, S(y))``."""
    n = S.dim
    cons = []
    for b in balls:
        bound = sum((support(b, x) for x in xs), Fraction(0))
        for w in b.vertices:
            cons.append((list(w), "<=", bound))
    best = None
    for v in sorted(S.vertices, reverse=True):
        out = solve_lp(LinearProgram(list(v), cons, sense="max"))
        if not isinstance(out, Optimal):
            raise CertificateError("worst-case LP over a bounded region did not return an optimum")
        if best is None or out.value > best[1]:
            best = (out.point, out.value)
    return best


def _try_tuple(S, balls, xs):
    xs = tuple(vec(x) for x in xs)
    if all(is_zero(x) for x in xs):
        return None, None
    y, sy = _worst_y(S, balls, xs)
    lhs = sum((support(S, x) for x in xs), Fraction(0))
    gap = sy - lhs
    if gap > 0:
        return make_certificate(S, balls, y, xs), gap
    return None, gap


def _structured_candidates(S, balls):
    out = []
    figs = [S, *balls]
    for F in figs:
        for v in sorted(F.vertices, reverse=True):
            p = primitive(v)[0]
            if p not in out:
                out.append(p)
    for p in _normal_set(figs):
        if p not in out:
            out.append(p)
    return out


def _random_vector(rng, n, radius=4):
    while True:
        v = tuple(Fraction(rng.randint(-radius, radius)) for _ in range(n))
        if not is_zero(v):
            return v


def rep_certificate(S: VPolytope, balls, grid, z):
    """Turn ``support(R, z) < S(z)`` for the representation ``R`` on ``grid``
    into a violating tuple.

    The support of a meet is an infimal convolution, so an optimal split
    ``z = sum z_x`` gives ``x_k = l_k x`` with ``l_k = max_xi S_xi(z_x)/S_xi(x)``.
    Returns a certificate or ``None``.
    """
    grid = [vec(x) for x in grid]
    n = S.dim
    m = len(grid)
    # variables: z_x (n each, free) then t_x
    nv = m * n + m
    cons = []
    for r in range(n):
        row = [0] * nv
        for i in range(m):
            row[i * n + r] = 1
        cons.append((row, "==", z[r]))
    for i, x in enumerate(grid):
        sx = support(S, x)
        for b in balls:
            c = sx / support(b, x)
            for w in b.vertices:
                row = [0] * nv
                for r in range(n):
                    row[i * n + r] = c * w[r]
                row[m * n + i] = -1
                cons.append((row, "<=", 0))
    obj = [0] * (m * n) + [1] * m
    out = solve_lp(LinearProgram(obj, cons))
    if not isinstance(out, Optimal) or out.value >= support(S, z):
        return None
    xs = []
    for i, x in enumerate(grid):
        zi = out.point[i * n:(i + 1) * n]
        if is_zero(zi):
            continue
        lam = max(support(b, zi) / support(b, x) for b in balls)
        if lam > 0:
            xs.append(smul(lam, x))
    if not xs:
        return None
    cert = make_certificate(S, balls, z, xs)
    return cert if replay_rejection(S, balls, cert) else None


def upper_hull_membership(
    S: VPolytope,
    F: BallFamily,
    search_budget: int = 200,
    n_max: int = 2,
    seed: int = 0,
    grid=None,
    scope: str = "family",
    conclusive: bool = True,
):
    """Three-valued membership in the join/sum/dilation hull of ``F``.

    Order: expression fits (``Member``), structured single-vector tuples,
    a certificate derived from the outer representation on ``grid``, then
    seeded random tuples up to ``search_budget`` with at most ``n_max`` vectors.
    """
    _require_nondegenerate(F)
    S = canonicalize(S)
    if S.dim != F.dim:
        raise ValueError("dimension mismatch between figure and family")
    if not S.origin_interior:
        raise DomainError("candidate must have 0 in its interior")
    balls = F.balls
    e = _fit(S, balls, ("scale", "sum", "join"))
    if e is not None:
        return Member(e, scope)
    log = {"tuples": 0, "best_gap": None}

    def note(gap):
        log["tuples"] += 1
        if gap is not None and (log["best_gap"] is None or gap > log["best_gap"]):
            log["best_gap"] = gap

    cands = _structured_candidates(S, balls)
    for x in cands:
        if log["tuples"] >= search_budget:
            break
        cert, gap = _try_tuple(S, balls, (x,))
        note(gap)
        if cert is not None:
            return Rejected(cert, scope, conclusive)
    if grid is None:
        grid = cands
    R = outer_representation(S, balls, grid)
    for z in _structured_candidates(R, []) + list(grid):
        if support(R, z) < support(S, z):
            cert = rep_certificate(S, balls, grid, z)
            if cert is not None:
                return Rejected(cert, scope, conclusive)
    rng = random.Random(seed)
    while log["tuples"] < search_budget:
        k = rng.randint(1, max(1, n_max))
        xs = [_random_vector(rng, S.dim) for _ in range(k)]
        cert, gap = _try_tuple(S, balls, xs)
        note(gap)
        if cert is not None:
            return Rejected(cert, scope, conclusive)
    log["grid_deviation"] = support_deviation(R, S, grid)
    return Consistent(log)


# ---------------------------------------------------------------------------
# representation formulas


def _term(S, balls, xs):
    s = sum((support(S, x) for x in xs), Fraction(0))
    parts = []
    for b in balls:
        sb = sum((support(b, x) for x in xs), Fraction(0))
        if sb <= 0:
            raise DegenerateFamily("normalizing support vanishes")
        parts.append(scale(b, 1 / sb))
    return scale(join_all(parts), s)


def outer_representation(S: VPolytope, balls, grid) -> VPolytope:
    return meet_all([_term(S, balls, (vec(x),)) for x in grid])


def outer_rep_422(S: VPolytope, F: BallFamily, grid):
    """``R = meet over x of S(x) * join_xi(S_xi / S_xi(x))``; returns ``(R, deviation)``."""
    _require_nondegenerate(F)
    grid = [vec(x) for x in grid]
    if not grid:
        raise ValueError("empty grid")
    if any(is_zero(x) for x in grid):
        raise ValueError("zero direction in grid")
    R = canonicalize(outer_representation(S, F.balls, grid))
    return R, support_deviation(R, S, grid)


def rep_421(S: VPolytope, F: BallFamily, tuples):
    """Tuple version: each term is normalized by sums of supports over a tuple."""
    _require_nondegenerate(F)
    tuples = [tuple(vec(x) for x in t) for t in tuples]
    if not tuples:
        raise ValueError("no tuples given")
    if any(all(is_zero(x) for x in t) for t in tuples):
        raise ValueError("all-zero tuple")
    R = canonicalize(meet_all([_term(S, F.balls, t) for t in tuples]))
    grid = [x for t in tuples for x in t if not is_zero(x)]
    return R, support_deviation(R, S, grid)


# ---------------------------------------------------------------------------
# meet closure


@dataclass(frozen=True)
class HullTruncation:
    base: BallFamily
    depth: int
    closure_ops: tuple
    generated: tuple
    scales: tuple = (Fraction(1, 2), Fraction(2))


def truncate(F: BallFamily, depth: int, closure_ops=("meet", "scale"), scales=(Fraction(1, 2), 2)):
    """Breadth-first closure of ``F`` under the chosen operations, ``depth`` rounds.

    ``scale`` applies each factor in ``scales``; binary operations combine
    every pair.  Results are deduplicated by canonical form, in a fixed order.
    """
    ops = tuple(op for op in ("meet", "join", "sum", "scale") if op in closure_ops)
    bad = set(closure_ops) - {"meet", "join", "sum", "scale"}
    if bad:
        raise ValueError(f"unknown closure operations {sorted(bad)}")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    scales = tuple(Fraction(a) for a in scales)
    seen = {}
    for b in F.balls:
        seen.setdefault(b.vertices, b)
    for _ in range(depth):
        cur = list(seen.values())
        new = []
        for op in ops:
            if op == "scale":
                new.extend(scale(b, a) for b in cur for a in scales)
                continue
            for P, Q in itertools.combinations(cur, 2):
                if op == "meet":
                    new.append(meet_all([P, Q]))
                elif op == "join":
                    new.append(join_all([P, Q]))
                else:
                    new.append(minkowski_sum(P, Q))
        for G in new:
            G = canonicalize(G)
            seen.setdefault(G.vertices, G)
    return HullTruncation(F, depth, ops, tuple(seen.values()), scales)


def hull_membership(
    S: VPolytope,
    F: BallFamily,
    depth: int = 1,
    search_budget: int = 200,
    n_max: int = 2,
    seed: int = 0,
    grid=None,
):
    """Membership in the hull closed under both join and meet, via a meet
    truncation of depth ``depth`` followed by the join-hull test.

    A rejection is conclusive only when the family is a set of multiples of
    one ball (then meets add nothing new); otherwise it rules out the
    truncation only and ``conclusive`` is False.
    """
    _require_nondegenerate(F)
    S = canonicalize(S)
    T = truncate(F, depth, ("meet", "scale"))
    G = BallFamily(T.generated, F.dim)
    scope = f"meet truncation depth {depth}"
    e = _fit(S, F.balls, ("scale", "meet", "join", "sum"))
    if e is not None:
        return Member(e, "family"), T
    e = _fit(S, G.balls, ("scale", "meet", "join", "sum"))
    if e is not None:
        return Member(e, scope), T
    verdict = upper_hull_membership(
        S, G, search_budget, n_max, seed, grid, scope, conclusive=n1_reduction_check(F)
    )
    return verdict, T


def expression_holds(S: VPolytope, balls, e: Expr) -> bool:
    return same_figure(e.evaluate(balls), S)


# ---------------------------------------------------------------------------
# meet decompositions


@dataclass(frozen=True)
class MeetDecomposition:
    zs: tuple


@dataclass(frozen=True)
class MeetInfeasible:
    """No decomposition exists.  ``coverage_warning`` is set when the
    necessary inequality ``sum S(x_k) >= S(y)`` nonetheless holds for every
    listed figure, i.e. the list may be too short to decide."""

    farkas: tuple
    coverage_warning: bool

    def __bool__(self):
        return False


def check_meet_decomposition(H_list, y, xs, dec: MeetDecomposition) -> bool:
    y = vec(y)
    if len(dec.zs) != len(xs):
        return False
    total = zero(len(y))
    for z in dec.zs:
        total = add(total, z)
    if total != y:
        return False
    for S in H_list:
        for z, x in zip(dec.zs, xs):
            if support(S, z) > support(S, x):
                return False
        if sum((support(S, x) for x in xs), Fraction(0)) < support(S, y):
            return False
    return True


def decompose_meet(H_list: Sequence[VPolytope], y, xs):
    """Vectors ``z_k`` with ``sum z_k = y`` and ``S(z_k) <= S(x_k)`` for every listed ``S``."""
    H_list = list(H_list)
    xs = [vec(x) for x in xs]
    y = vec(y)
    if not H_list or not xs:
        raise ValueError("need at least one figure and one vector")
    n = len(y)
    k = len(xs)
    cons = []
    for r in range(n):
        row = [0] * (n * k)
        for i in range(k):
            row[i * n + r] = 1
        cons.append((row, "==", y[r]))
    for S in H_list:
        for i, x in enumerate(xs):
            bound = support(S, x)
            for v in S.vertices:
                row = [0] * (n * k)
                row[i * n:(i + 1) * n] = v
                cons.append((row, "<=", bound))
    out = check_feasible(cons, nvars=n * k)
    if isinstance(out, Infeasible):
        holds = all(
            sum((support(S, x) for x in xs), Fraction(0)) >= support(S, y) for S in H_list
        )
        return MeetInfeasible(out.farkas, holds)
    dec = MeetDecomposition(tuple(tuple(out.point[i * n:(i + 1) * n]) for i in range(k)))
    if not check_meet_decomposition(H_list, y, xs, dec):
        raise CertificateError("meet decomposition failed replay")
    return dec


# ---------------------------------------------------------------------------
# infimal convolution identities


def infconv_identity_check(P: VPolytope, Q: VPolytope, grid) -> Fraction:
    """Max over ``grid`` of ``|inf-convolution of supports - support of the meet|``."""
    grid = [vec(x) for x in grid]
    if not grid:
        raise ValueError("empty grid")
    M = meet_all([P, Q])
    if not M:
        raise DomainError("the figures are disjoint; their meet is empty")
    return max(abs(inf_convolution(P, Q, x) - support(M, x)) for x in grid)


@dataclass(frozen=True)
class MeetBound:
    lhs: Fraction
    best_rhs: Fraction
    mu1: ConicMeasure
    mu2: ConicMeasure

    @property
    def attained(self) -> bool:
        return self.lhs == self.best_rhs


def eval_541_bound(P: VPolytope, Q: VPolytope, mu: ConicMeasure, candidate_support) -> MeetBound:
    """Compare ``pair(mu, P meet Q)`` with the least ``pair(mu1, P) + pair(mu2, Q)``
    over ``mu1 + mu2 >> mu`` supported on the candidates and the atoms of ``mu``."""
    cands = [vec(u) for u in candidate_support]
    if not cands:
        raise ValueError("empty candidate set")
    M = meet_all([P, Q])
    if not M:
        raise DomainError("the figures are disjoint; their meet is empty")
    n = P.dim
    mu = canonicalize_measure(mu)
    dirs = []
    for u in cands + [u for u, _ in mu.atoms]:
        if is_zero(u):
            raise ValueError("zero candidate direction")
        p = primitive(u)[0]
        if p not in dirs:
            dirs.append(p)
    cols = list(mu.atoms) or [(zero(n), Fraction(0))]
    U, J = len(dirs), len(cols)
    # variables: a_u, b_u, then t_{u,j}
    nv = 2 * U + U * J
    cons = []
    for i in range(U):
        row = [0] * nv
        row[i] = row[U + i] = -1
        for j in range(J):
            row[2 * U + i * J + j] = 1
        cons.append((row, "==", 0))
    for j, (v, c) in enumerate(cols):
        for r in range(n):
            row = [0] * nv
            for i, u in enumerate(dirs):
                row[2 * U + i * J + j] = u[r]
            cons.append((row, "==", c * v[r]))
    obj = [support(P, u) for u in dirs] + [support(Q, u) for u in dirs] + [0] * (U * J)
    out = solve_lp(LinearProgram(obj, cons, lower=[0] * nv))
    if not isinstance(out, Optimal):
        raise CertificateError(f"restricted bound LP returned {type(out).__name__}")
    mu1 = ConicMeasure(tuple((u, out.point[i]) for i, u in enumerate(dirs) if out.point[i]), n)
    mu2 = ConicMeasure(tuple((u, out.point[U + i]) for i, u in enumerate(dirs) if out.point[U + i]), n)
    lhs = pair(mu, M)
    if out.value < lhs or pair(mu1, P) + pair(mu2, Q) != out.value:
        raise CertificateError("restricted bound fell below the meet pairing")
    if not dominates_linear(mu1 + mu2, mu):
        raise CertificateError("restricted bound measures do not dominate mu")
    return MeetBound(lhs, out.value, mu1, mu2)
