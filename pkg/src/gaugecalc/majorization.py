"""Linear and affine majorization of finitely supported measures.

``mu >> nu`` (linear) holds when the mass of ``mu`` can be routed onto the
atoms of ``nu`` so that each target atom ``(v_j, d_j)`` receives a bundle with
resultant ``d_j v_j``.  That is a transportation LP; its solution is the
``Yes`` evidence, and its Farkas multipliers give a maximum of linear
functionals that integrates strictly less against ``mu`` than against ``nu``.
Both kinds of evidence are replayed before they are returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .convex import VPolytope, join_all, support
from .lp import CertificateError, Infeasible, check_feasible
from .measures import (
    ConicMeasure,
    PointMeasure,
    SeparatingSublinear,
    SignedConicMeasure,
    canonicalize_measure,
    jordan,
    pair,
    pair_sublinear,
    resultant,
)
from .rational import add, dot, smul, vec, zero


@dataclass(frozen=True)
class TransportCertificate:
    """Rows are source atoms, columns target atoms.

    A target measure with no atoms is represented by one null column whose
    target resultant is zero.
    """

    t: tuple
    source: object
    target: object


@dataclass(frozen=True)
class SeparatingConvex:
    """``f(x) = max_j ((a_j, x) + b_j)`` given as ``(slope, intercept)`` pieces."""

    pieces: tuple

    def __post_init__(self):
        ps = tuple((vec(a), Fraction(b)) for a, b in self.pieces)
        if not ps:
            raise ValueError("need at least one affine piece")
        object.__setattr__(self, "pieces", ps)

    def __call__(self, x) -> Fraction:
        return max(dot(a, x) + b for a, b in self.pieces)


def integrate_convex(mu: PointMeasure, f: SeparatingConvex) -> Fraction:
    return sum((c * f(x) for x, c in mu.atoms), Fraction(0))


@dataclass(frozen=True)
class Yes:
    certificate: object

    def __bool__(self):
        return True


@dataclass(frozen=True)
class No:
    separator: object

    def __bool__(self):
        return False


def _check_dims(a, b):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def _targets(nu):
    if nu.atoms:
        return list(nu.atoms)
    return [(zero(nu.dim), Fraction(0))]


def _unflatten(x, n, m):
    return tuple(tuple(x[i * m + j] for j in range(m)) for i in range(n))


# ---------------------------------------------------------------------------
# replay


def check_linear_transport(cert: TransportCertificate) -> bool:
    mu, nu = cert.source, cert.target
    targets = _targets(nu)
    t = cert.t
    if len(t) != len(mu.atoms) or any(len(row) != len(targets) for row in t):
        return False
    if any(v < 0 for row in t for v in row):
        return False
    for (u, c), row in zip(mu.atoms, t):
        if sum(row, Fraction(0)) != c:
            return False
    for j, (v, d) in enumerate(targets):
        got = zero(mu.dim)
        for (u, _), row in zip(mu.atoms, t):
            if row[j]:
                got = add(got, smul(row[j], u))
        if got != smul(d, v):
            return False
    return True


def check_affine_transport(cert: TransportCertificate) -> bool:
    mu, nu = cert.source, cert.target
    t = cert.t
    if len(t) != len(mu.atoms) or any(len(row) != len(nu.atoms) for row in t):
        return False
    if any(v < 0 for row in t for v in row):
        return False
    for (x, c), row in zip(mu.atoms, t):
        if sum(row, Fraction(0)) != c:
            return False
    for j, (q, d) in enumerate(nu.atoms):
        mass = sum((row[j] for row in t), Fraction(0))
        moment = zero(mu.dim)
        for (x, _), row in zip(mu.atoms, t):
            moment = add(moment, smul(row[j], x))
        if mass != d or moment != smul(d, q):
            return False
    return True


def separates_linear(mu, nu, p: SeparatingSublinear) -> bool:
    return pair_sublinear(mu, p) < pair_sublinear(nu, p)


def separates_affine(mu, nu, f: SeparatingConvex) -> bool:
    return integrate_convex(mu, f) < integrate_convex(nu, f)


# ---------------------------------------------------------------------------
# linear majorization


def dominates_linear(mu: ConicMeasure, nu: ConicMeasure):
    """Decide ``mu >> nu``; ``Yes(TransportCertificate)`` or ``No(SeparatingSublinear)``.

    Both measures are brought to canonical form first; the certificate refers
    to the canonical atoms.
    """
    _check_dims(mu, nu)
    mu = canonicalize_measure(mu)
    nu = canonicalize_measure(nu)
    N = mu.dim
    targets = _targets(nu)
    n, m = len(mu.atoms), len(targets)
    nv = n * m
    cons = []
    for i, (_, c) in enumerate(mu.atoms):
        row = [0] * nv
        for j in range(m):
            row[i * m + j] = 1
        cons.append((row, "==", c))
    for j, (v, d) in enumerate(targets):
        for k in range(N):
            row = [0] * nv
            for i, (u, _) in enumerate(mu.atoms):
                row[i * m + j] = u[k]
            cons.append((row, "==", d * v[k]))
    if nv == 0:
        # no transport variables at all: only possible verdict is on resultants
        return _empty_transport(mu, nu)
    out = check_feasible(cons, nvars=nv, lower=[0] * nv)
    if not isinstance(out, Infeasible):
        cert = TransportCertificate(_unflatten(out.point, n, m), mu, nu)
        if not check_linear_transport(cert):
            raise CertificateError("transport certificate failed replay")
        return Yes(cert)
    y = out.farkas
    pieces = []
    for j in range(m):
        base = n + j * N
        pieces.append(tuple(-y[base + k] for k in range(N)))
    p = SeparatingSublinear(tuple(dict.fromkeys(pieces)))
    if not separates_linear(mu, nu, p):
        raise CertificateError("Farkas-derived functional does not separate")
    return No(p)


def _empty_transport(mu, nu):
    # mu has no atoms: mu >> nu iff nu has none either
    if not nu.atoms:
        return Yes(TransportCertificate((), mu, nu))
    # p = Euclidean-free choice: the max of +-e_k pieces is positive on every nonzero atom
    N = nu.dim
    pieces = []
    for k in range(N):
        for s in (1, -1):
            pieces.append(tuple(Fraction(s if i == k else 0) for i in range(N)))
    p = SeparatingSublinear(tuple(pieces))
    if not separates_linear(mu, nu, p):
        raise CertificateError("fallback separator failed")
    return No(p)


def in_dual_cone(sigma: SignedConicMeasure):
    """Whether ``<sigma, S> >= 0`` for every support function ``S``.

    Reduces to ``sigma_+ >> sigma_-`` on the Jordan parts.
    """
    pos, neg = jordan(sigma.signed())
    return dominates_linear(pos, neg)


# ---------------------------------------------------------------------------
# affine majorization


def dominates_affine(mu: PointMeasure, nu: PointMeasure):
    """Decide affine majorization; ``Yes`` carries a mass- and barycenter-
    preserving transport, ``No`` a max-affine convex function with
    ``integral f dmu < integral f dnu``."""
    _check_dims(mu, nu)
    if not mu.atoms or not nu.atoms:
        raise ValueError("affine majorization needs nonempty measures")
    mu = canonicalize_measure(mu)
    nu = canonicalize_measure(nu)
    N = mu.dim
    if mu.mass != nu.mass:
        intercept = 1 if mu.mass < nu.mass else -1
        f = SeparatingConvex(((zero(N), intercept),))
        return No(f)
    n, m = len(mu.atoms), len(nu.atoms)
    nv = n * m
    cons = []
    for i, (_, c) in enumerate(mu.atoms):
        row = [0] * nv
        for j in range(m):
            row[i * m + j] = 1
        cons.append((row, "==", c))
    for j, (q, d) in enumerate(nu.atoms):
        row = [0] * nv
        for i in range(n):
            row[i * m + j] = 1
        cons.append((row, "==", d))
        for k in range(N):
            row = [0] * nv
            for i, (x, _) in enumerate(mu.atoms):
                row[i * m + j] = x[k]
            cons.append((row, "==", d * q[k]))
    out = check_feasible(cons, nvars=nv, lower=[0] * nv)
    if not isinstance(out, Infeasible):
        cert = TransportCertificate(_unflatten(out.point, n, m), mu, nu)
        if not check_affine_transport(cert):
            raise CertificateError("affine transport certificate failed replay")
        return Yes(cert)
    y = out.farkas
    pieces = []
    for j in range(m):
        base = n + j * (N + 1)
        kappa = y[base]
        slope = tuple(-y[base + 1 + k] for k in range(N))
        pieces.append((slope, -kappa))
    f = SeparatingConvex(tuple(dict.fromkeys(pieces)))
    if not separates_affine(mu, nu, f):
        raise CertificateError("Farkas-derived convex function does not separate")
    return No(f)


# ---------------------------------------------------------------------------
# decomposition witnesses over finitely generated cones


def decomposition_witness(
    f: ConicMeasure,
    g: ConicMeasure,
    g_parts: Sequence[ConicMeasure],
    generators: Sequence[Sequence[VPolytope]],
):
    """Split ``f`` into ``f_1..f_n`` with ``f_k(h) >= g_k(h)`` on every generator
    ``h`` of cone ``k``; returns the list of parts or ``Infeasible``.

    Checking the generators suffices for the whole cone since both sides are
    linear in ``h``.
    """
    _check_dims(f, g)
    n = len(g_parts)
    if n == 0 or n != len(generators):
        raise ValueError("need one generator list per part of g")
    if any(not gens for gens in generators):
        raise ValueError("every cone needs at least one generator")
    total = ConicMeasure((), g.dim)
    for part in g_parts:
        _check_dims(part, g)
        total = total + part
    if canonicalize_measure(total) != canonicalize_measure(g):
        raise ValueError("g_parts do not sum to g")
    f = canonicalize_measure(f)
    a = len(f.atoms)
    nv = a * n
    if nv == 0:
        ok = all(pair(g_parts[k], h) <= 0 for k in range(n) for h in generators[k])
        return [ConicMeasure((), f.dim) for _ in range(n)] if ok else Infeasible(())
    cons = []
    for i, (_, c) in enumerate(f.atoms):
        row = [0] * nv
        for k in range(n):
            row[i * n + k] = 1
        cons.append((row, "==", c))
    for k in range(n):
        for h in generators[k]:
            row = [0] * nv
            for i, (u, _) in enumerate(f.atoms):
                row[i * n + k] = support(h, u)
            cons.append((row, ">=", pair(g_parts[k], h)))
    out = check_feasible(cons, nvars=nv, lower=[0] * nv)
    if isinstance(out, Infeasible):
        return out
    parts = []
    for k in range(n):
        atoms = tuple((u, out.point[i * n + k]) for i, (u, _) in enumerate(f.atoms) if out.point[i * n + k] > 0)
        parts.append(ConicMeasure(atoms, f.dim))
    for k in range(n):
        for h in generators[k]:
            if pair(parts[k], h) < pair(g_parts[k], h):
                raise CertificateError("decomposition witness failed replay")
    return parts


def check_join_inequality(f: ConicMeasure, g: ConicMeasure, figures: Sequence[VPolytope]) -> bool:
    """``f(h_1 v ... v h_n) >= g(h_1 v ... v h_n)`` for the given figures."""
    if not figures:
        raise ValueError("need at least one figure")
    _check_dims(f, g)
    J = join_all(list(figures))
    if J.dim != f.dim:
        raise ValueError("dimension mismatch between measures and figures")
    return pair(f, J) >= pair(g, J)


def atomic_split(g: ConicMeasure) -> list:
    """The finest decomposition of ``g``: one single-atom part per atom."""
    g = canonicalize_measure(g)
    return [ConicMeasure((atom,), g.dim) for atom in g.atoms]


def assignments_split(g: ConicMeasure, assignment: Sequence[int], n: int) -> list:
    """Decomposition of ``g`` sending atom ``i`` wholly to part ``assignment[i]``."""
    g = canonicalize_measure(g)
    parts = [[] for _ in range(n)]
    for atom, k in zip(g.atoms, assignment):
        parts[k].append(atom)
    return [ConicMeasure(tuple(p), g.dim) for p in parts]


def compose_transports(first: TransportCertificate, second: TransportCertificate) -> TransportCertificate:
    """Chain ``mu >> nu`` and ``nu >> rho`` into a certificate for ``mu >> rho``.

    Source atom ``i`` sends to ``nu``-atom ``j`` the amount ``t_ij``; that
    bundle is split across ``rho`` in the proportions ``s_jk / d_j``.
    """
    mu, nu = first.source, first.target
    rho = second.target
    t, s = first.t, second.t
    if nu != second.source:
        raise ValueError("certificates do not chain")
    if not nu.atoms:
        # nu empty forces rho empty: both certificates use the null column
        return TransportCertificate(t, mu, rho)
    m = len(_targets(rho))
    out = []
    for i in range(len(mu.atoms)):
        row = [Fraction(0)] * m
        for j, (_, d) in enumerate(nu.atoms):
            if t[i][j] == 0:
                continue
            for k in range(m):
                row[k] += t[i][j] * s[j][k] / d
        out.append(tuple(row))
    return TransportCertificate(tuple(out), mu, rho)
