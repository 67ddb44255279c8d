"""Rational direction grids.

``fan(k)`` gives ``k`` planar directions, ``k/4`` per quadrant, evenly
indexed along the segment between consecutive axis vectors, i.e.
``(q - i, i)`` for ``i = 0..q-1`` rotated through the four quadrants.  No
direction is normalized, so every coordinate stays an integer.
"""
from __future__ import annotations

import itertools
import json
import math
from fractions import Fraction

from .rational import primitive, vec


def fan(k: int) -> list:
    if k <= 0 or k % 4:
        raise ValueError(f"fan size must be a positive multiple of 4, got {k}")
    q = k // 4
    quadrant = [primitive((Fraction(q - i), Fraction(i)))[0] for i in range(q)]
    out = []
    for turn in range(4):
        for a, b in quadrant:
            for _ in range(turn):
                a, b = -b, a
            out.append((a, b))
    return out


def lattice(dim: int, radius: int) -> list:
    """Primitive integer vectors with entries in ``[-radius, radius]``."""
    if radius < 1:
        raise ValueError("lattice radius must be at least 1")
    out = []
    for v in itertools.product(range(-radius, radius + 1), repeat=dim):
        if any(v) and math.gcd(*v) == 1:
            out.append(tuple(Fraction(c) for c in v))
    return out


def quadrant_grid(k: int) -> list:
    """``k + 1`` nonnegative planar points ``(k - i, i)``, both axes included."""
    if k < 1:
        raise ValueError("quadrant grid size must be at least 1")
    return [primitive((Fraction(k - i), Fraction(i)))[0] for i in range(k + 1)]


def parse_grid(spec, dim: int = 2) -> list:
    """Grid from a spec string (``fan:64``, ``lattice:2``, ``quadrant:4``) or a
    list of vectors (also accepted as a JSON string)."""
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("["):
            spec = json.loads(s)
        else:
            kind, _, arg = s.partition(":")
            if not arg:
                raise ValueError(f"grid spec {spec!r} needs a size, e.g. fan:64")
            n = int(arg)
            if kind == "fan":
                if dim != 2:
                    raise ValueError("fan grids are planar")
                return fan(n)
            if kind == "lattice":
                return lattice(dim, n)
            if kind == "quadrant":
                return quadrant_grid(n)
            raise ValueError(f"unknown grid generator {kind!r}")
    return [vec(v) for v in spec]
