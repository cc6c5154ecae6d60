"""Quadratic Hilbert symbols over Q_v and over quadratic extensions of Q_v."""
from __future__ import annotations

from ..arith import Q, prime_support, valuation
from ..errors import DegenerateInputError
from .padic import is_local_square
from .places import HALF, ZERO, InvariantValue, LocalQuadExt, Place, legendre


def _split_unit(x, p):
    v = valuation(x, p)
    x = x / p**v if v >= 0 else x * p ** (-v)
    return v, x.numerator * x.denominator


def hilbert_symbol(a, b, v) -> InvariantValue:
    """(a, b)_v as 0 or 1/2."""
    a, b = Q(a), Q(b)
    if a == 0 or b == 0:
        raise DegenerateInputError("Hilbert symbol of zero")
    v = Place.coerce(v)
    if v.is_real:
        return HALF if (a < 0 and b < 0) else ZERO
    p = v.p
    al, u = _split_unit(a, p)
    be, w = _split_unit(b, p)
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        u, w = u % 8, w % 8
        e = eps(u) * eps(w) + al * omega(w) + be * omega(u)
        return HALF if e % 2 else ZERO
    s = 1
    if al * be % 2 and p % 4 == 3:
        s = -s
    if be % 2:
        s *= legendre(u, p)
    if al % 2:
        s *= legendre(w, p)
    return HALF if s == -1 else ZERO


def candidate_places(*values) -> list[Place]:
    """{2, real} together with every prime dividing a numerator or denominator."""
    primes = prime_support(*values) | {2}
    return [Place.finite(p) for p in sorted(primes)] + [Place.real()]


def ramified_places(a, b) -> set[Place]:
    return {v for v in candidate_places(a, b) if hilbert_symbol(a, b, v)}


def is_square_at(z, v) -> bool:
    """Squareness of a nonzero rational in Q_v."""
    v = Place.coerce(v)
    z = Q(z)
    if z == 0:
        raise DegenerateInputError("zero is not a unit")
    return z > 0 if v.is_real else is_local_square(z, v.p)


def square_in_local_quad_ext(z, ext: LocalQuadExt) -> bool:
    """Is the rational z a square in the completion ext?

    For a split ext, d is a square in Q_v and the test reduces to z in Q_v^x2.
    """
    z = Q(z)
    if z == 0:
        raise DegenerateInputError("zero is not a unit")
    return is_square_at(z, ext.place) or is_square_at(z / ext.d, ext.place)


def conic_solvable_over_local_ext(a, b, ext: LocalQuadExt) -> bool:
    """Does z^2 = a x^2 + b y^2 have a nontrivial point over the completion ext?"""
    if Q(a) == 0 or Q(b) == 0:
        raise DegenerateInputError("conic with a zero coefficient")
    if not ext.is_split:
        # restriction to a quadratic extension kills the 2-torsion class (a, b)
        return True
    return not hilbert_symbol(a, b, ext.place)
