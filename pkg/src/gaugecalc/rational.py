"""Rational scalars and vectors.

Everything in the package is exact: inputs are coerced to
:class:`fractions.Fraction` and floats are refused, since a float literal
such as ``0.1`` is almost never the rational the caller meant.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
Vector = tuple  # tuple[Fraction, ...]
RationalLike = Union[int, str, Fraction]


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {value!r}") from exc
    if isinstance(value, float):
        raise TypeError(f"float {value!r} refused; pass an int, str or Fraction")
    # numpy integers, gmpy2 mpq and the like
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def vec(values: Iterable) -> tuple:
    return tuple(to_rational(v) for v in values)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def sub(a, b) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def smul(alpha, a) -> tuple:
    return tuple(alpha * x for x in a)


def zero(n: int) -> tuple:
    return (Fraction(0),) * n


def unit(n: int, k: int, sign: int = 1) -> tuple:
    return tuple(Fraction(sign if i == k else 0) for i in range(n))


def is_zero(a) -> bool:
    return all(x == 0 for x in a)


def primitive(a) -> tuple:
    """Scale a nonzero rational vector to the primitive integer vector on its ray.

    Returns ``(p, k)`` with ``a == k * p``, ``k > 0`` and ``p`` integral with
    coprime entries.
    """
    if is_zero(a):
        raise ValueError("zero vector has no ray")
    lcm = 1
    for x in a:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in a]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    p = tuple(Fraction(v // g) for v in ints)
    return p, Fraction(g, lcm)


def fmt(x) -> str:
    """Render a rational the way the JSON formats do: ``"p/q"`` or ``"p"``."""
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    x = to_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
