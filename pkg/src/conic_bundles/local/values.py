"""Value sets of t -> (a, c*f(t))_v over P^1(Q_v)."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..arith import Q
from ..errors import DegenerateInputError
from ..poly import Poly
from .discs import DEFAULT_MAX_DEPTH, INF, Form, PadicRing, search
from .hilbert import hilbert_symbol, is_square_at
from .places import HALF, ZERO, Place
from .real import sign_sample_points


@dataclass
class ValueSet:
    values: frozenset
    witnesses: dict = field(default_factory=dict)  # value -> t (Fraction, QuadElem or "inf")

    def __contains__(self, item):
        return item in self.values

    def sorted_values(self) -> list:
        return sorted(self.values, key=lambda x: x.half)


def chart_degree(n: int) -> int:
    """The even degree used for the chart at infinity."""
    return n + (n % 2)


def generic_point(f: Poly) -> Fraction:
    """Smallest nonnegative integer that is not a root of f."""
    t = 0
    while f(Q(t)) == 0:
        t += 1
    return Q(t)


def chatelet_symbol_at(a, c, f: Poly, t, v):
    """(a, c*f(t))_v, with t = "inf" meaning the fiber at infinity (even degree f)."""
    if t == INF:
        if f.degree % 2:
            raise DegenerateInputError("the fiber at infinity is degenerate for odd degree f")
        return hilbert_symbol(a, Q(c) * f.lead, v)
    val = Q(c) * f(Q(t))
    if val == 0:
        raise DegenerateInputError(f"t = {t} is a root of f")
    return hilbert_symbol(a, val, v)


def symbol_value_set(a, c, f: Poly, v, max_depth: int = DEFAULT_MAX_DEPTH) -> ValueSet:
    """{(a, c*f(t))_v : t in P^1(Q_v), f(t) != 0}, one witness per value."""
    a, c = Q(a), Q(c)
    if a == 0 or c == 0 or f.is_zero():
        raise DegenerateInputError("a, c and f must be nonzero")
    f = f.to_rational()
    v = Place.coerce(v)
    if is_square_at(a, v):
        return ValueSet(frozenset({ZERO}), {ZERO: generic_point(f)})
    if v.is_real:
        found = {}
        for t in sign_sample_points(f):
            found.setdefault(HALF if c * f(t) < 0 else ZERO, t)
        return ValueSet(frozenset(found), found)
    p = v.p
    g = f * c
    forms = [(Form(g), Form(g.reverse(chart_degree(f.degree))))]
    res = search(PadicRing(p), lambda z: hilbert_symbol(a, z, p), None, forms, max_depth)
    witnesses = dict(res.witnesses)
    # prefer a small finite witness when it realizes one of the values
    t0 = generic_point(f)
    v0 = hilbert_symbol(a, g(t0), p)
    if v0 not in res.values:
        raise AssertionError(f"disc search missed the value {v0} taken at t = {t0}")
    witnesses[v0] = t0
    return ValueSet(res.values, witnesses)
