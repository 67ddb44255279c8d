"""Finitely supported measures on directions and on points.

A conic atom ``(u, c)`` stands for ``c`` times the Dirac mass at the direction
of ``u``.  Directions are not normalized: pairing with a positively
homogeneous ``p`` is ``c * p(u)``, so ``(2u, c)`` and ``(u, 2c)`` are the same
atom.  This keeps every coordinate rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .rational import add, dot, is_zero, primitive, smul, to_rational, vec, zero


def _atoms(atoms, signed: bool):
    out = []
    for a in atoms:
        u, c = a
        u = vec(u)
        c = to_rational(c)
        if is_zero(u):
            raise ValueError("atom at the zero direction")
        if signed:
            if c == 0:
                raise ValueError("signed atoms need a nonzero weight")
        elif c <= 0:
            raise ValueError("conic atoms need a positive weight")
        out.append((u, c))
    return tuple(out)


def _infer_dim(atoms, dim):
    if dim is None:
        if not atoms:
            raise ValueError("dimension of an empty measure must be given")
        dim = len(atoms[0][0])
    if any(len(u) != dim for u, _ in atoms):
        raise ValueError("atom dimension mismatch")
    return dim


@dataclass(frozen=True)
class ConicMeasure:
    atoms: tuple
    dim: int = None

    def __post_init__(self):
        atoms = _atoms(self.atoms, signed=False)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "dim", _infer_dim(atoms, self.dim))

    def __add__(self, other: "ConicMeasure") -> "ConicMeasure":
        _same_dim(self, other)
        return ConicMeasure(self.atoms + other.atoms, self.dim)

    def scaled(self, alpha) -> "ConicMeasure":
        alpha = to_rational(alpha)
        if alpha < 0:
            raise ValueError("negative scaling of a positive measure")
        if alpha == 0:
            return ConicMeasure((), self.dim)
        return ConicMeasure(tuple((u, alpha * c) for u, c in self.atoms), self.dim)

    def signed(self) -> "SignedConicMeasure":
        return SignedConicMeasure(self.atoms, self.dim)

    @property
    def mass(self) -> Fraction:
        return sum((c for _, c in self.atoms), Fraction(0))


@dataclass(frozen=True)
class SignedConicMeasure:
    atoms: tuple
    dim: int = None

    def __post_init__(self):
        atoms = _atoms(self.atoms, signed=True)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "dim", _infer_dim(atoms, self.dim))

    def __add__(self, other):
        _same_dim(self, other)
        return SignedConicMeasure(self.atoms + other.atoms, self.dim)

    def __neg__(self):
        return SignedConicMeasure(tuple((u, -c) for u, c in self.atoms), self.dim)

    def __sub__(self, other):
        return self + (-other.signed() if isinstance(other, ConicMeasure) else -other)

    def scaled(self, alpha) -> "SignedConicMeasure":
        alpha = to_rational(alpha)
        if alpha == 0:
            return SignedConicMeasure((), self.dim)
        return SignedConicMeasure(tuple((u, alpha * c) for u, c in self.atoms), self.dim)

    def signed(self) -> "SignedConicMeasure":
        return self


@dataclass(frozen=True)
class PointMeasure:
    """Positive masses at points of R^N (the affine setting)."""

    atoms: tuple
    dim: int = None

    def __post_init__(self):
        atoms = []
        for x, c in self.atoms:
            c = to_rational(c)
            if c <= 0:
                raise ValueError("point masses must be positive")
            atoms.append((vec(x), c))
        atoms = tuple(atoms)
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "dim", _infer_dim(atoms, self.dim))

    @property
    def mass(self) -> Fraction:
        return sum((c for _, c in self.atoms), Fraction(0))

    def barycenter(self):
        m = self.mass
        if m == 0:
            raise ValueError("barycenter of the zero measure")
        return smul(1 / m, first_moment(self))


def first_moment(mu: PointMeasure):
    out = zero(mu.dim)
    for x, c in mu.atoms:
        out = add(out, smul(c, x))
    return out


def _same_dim(a, b):
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} vs {b.dim}")


def canonicalize_measure(mu):
    """Merge atoms on a common ray, drop zero weights, sort by direction.

    Directions become primitive integer vectors; opposite rays stay distinct.
    Point measures merge atoms at equal points.
    """
    if isinstance(mu, PointMeasure):
        acc: dict = {}
        for x, c in mu.atoms:
            acc[x] = acc.get(x, Fraction(0)) + c
        return PointMeasure(tuple(sorted(acc.items())), mu.dim)
    acc = {}
    for u, c in mu.atoms:
        p, k = primitive(u)
        acc[p] = acc.get(p, Fraction(0)) + c * k
    items = tuple(sorted((p, c) for p, c in acc.items() if c != 0))
    return type(mu)(items, mu.dim)


def resultant(mu):
    """``sum c_i u_i`` (the point representing the measure on linear functionals)."""
    out = zero(mu.dim)
    for u, c in mu.atoms:
        out = add(out, smul(c, u))
    return out


def jordan(sigma: SignedConicMeasure):
    """Split into positive and negative parts after canonical merging."""
    s = canonicalize_measure(sigma.signed())
    pos = tuple((u, c) for u, c in s.atoms if c > 0)
    neg = tuple((u, -c) for u, c in s.atoms if c < 0)
    return ConicMeasure(pos, s.dim), ConicMeasure(neg, s.dim)


def pair(mu, P) -> Fraction:
    """``sum c_i S_P(u_i)`` for a (signed) conic measure and a figure."""
    from .convex import support

    if mu.dim != P.dim:
        raise ValueError(f"dimension mismatch: measure {mu.dim}, figure {P.dim}")
    return sum((c * support(P, u) for u, c in mu.atoms), Fraction(0))


@dataclass(frozen=True)
class SeparatingSublinear:
    """``p(x) = max_j (y_j, x)``; a maximum of finitely many linear functionals."""

    pieces: tuple

    def __post_init__(self):
        pieces = tuple(vec(y) for y in self.pieces)
        if not pieces:
            raise ValueError("a sublinear functional needs at least one linear piece")
        object.__setattr__(self, "pieces", pieces)

    @property
    def dim(self) -> int:
        return len(self.pieces[0])

    def __call__(self, x) -> Fraction:
        return max(dot(y, x) for y in self.pieces)


def pair_sublinear(mu, p: SeparatingSublinear) -> Fraction:
    if mu.dim != p.dim:
        raise ValueError(f"dimension mismatch: measure {mu.dim}, functional {p.dim}")
    return sum((c * p(u) for u, c in mu.atoms), Fraction(0))


def dirac(x, weight=1) -> ConicMeasure:
    return ConicMeasure(((vec(x), weight),))


def measure(atoms: Iterable, dim=None) -> ConicMeasure:
    return ConicMeasure(tuple(atoms), dim)
