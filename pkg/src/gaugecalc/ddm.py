"""Double description method for exact vertex enumeration.

A bounded polyhedron ``{x : a_i . x <= b_i}`` is homogenized to the pointed
cone ``{(x, t) : a_i . x - b_i t <= 0, t >= 0}``; its extreme rays with
``t > 0`` are the vertices.  Rays are kept as primitive integer vectors so
entries stay small, and adjacency uses the combinatorial test on zero sets.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg
from .rational import primitive

MAX_DIM = 3


class UnboundedPolyhedron(ValueError):
    pass


def _ray_value(row, r):
    return sum((a * b for a, b in zip(row, r) if a), Fraction(0))


def extreme_rays(rows):
    """Extreme rays of the pointed cone ``{y : row . y <= 0 for row in rows}``.

    Raises ``UnboundedPolyhedron`` when the rows do not span (cone not pointed).
    """
    d = len(rows[0])
    init = linalg.independent_subset(rows, limit=d)
    if len(init) < d:
        raise UnboundedPolyhedron("constraint matrix is rank deficient")
    A_I = [rows[i] for i in init]
    inv = linalg.inverse(A_I)
    # column k of -A_I^{-1} is tight on every initial row except row k
    rays = []
    for k in range(d):
        r = tuple(-inv[i][k] for i in range(d))
        z = frozenset(init[i] for i in range(d) if i != k)
        rays.append((primitive(r)[0], z))
    done = set(init)
    for idx, row in enumerate(rows):
        if idx in done:
            continue
        pos, neg, keep = [], [], []
        for r, z in rays:
            v = _ray_value(row, r)
            if v > 0:
                pos.append((r, z, v))
            elif v < 0:
                neg.append((r, z, v))
                keep.append((r, z))
            else:
                keep.append((r, z | {idx}))
        if pos:
            new = []
            for rp, zp, vp in pos:
                for rn, zn, vn in neg:
                    common = zp & zn
                    if len(common) < d - 2:
                        continue
                    if any(
                        common <= z
                        for r, z in rays
                        if r is not rp and r is not rn
                    ):
                        continue
                    comb = tuple(vp * b - vn * a for a, b in zip(rp, rn))
                    new.append((primitive(comb)[0], common | {idx}))
            keep.extend(new)
        rays = keep
        done.add(idx)
        if not rays:
            break
    return [r for r, _ in rays]


def enumerate_vertices(normals, offsets):
    """Vertices of ``{x : n_i . x <= b_i}``; empty list when infeasible."""
    if not normals:
        raise UnboundedPolyhedron("no facets")
    n = len(normals[0])
    if n > MAX_DIM:
        raise ValueError(
            f"vertex enumeration is limited to dimension <= {MAX_DIM}, got {n}"
        )
    rows = [tuple(a) + (-b,) for a, b in zip(normals, offsets)]
    rows.append(tuple([Fraction(0)] * n) + (Fraction(-1),))
    out = []
    for r in extreme_rays(rows):
        t = r[-1]
        if t == 0:
            raise UnboundedPolyhedron("polyhedron has a recession direction")
        out.append(tuple(c / t for c in r[:-1]))
    return out
