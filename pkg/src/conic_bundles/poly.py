"""Dense univariate polynomials over Q or Q(sqrt d).

Coefficients are stored ascending.  The same class serves both rings: over
Q the coefficients are Fractions, over Q(sqrt d) they are QuadElems (ints
and Fractions mix freely with either).
"""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .arith import Q, QuadElem, format_quad, format_rational


def _is_zero(c) -> bool:
    return c == 0


class Poly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, QuadElem) else Q(c) for c in coeffs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def t(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots) -> "Poly":
        out = cls([1])
        for r in roots:
            out = out * cls([-r, 1])
        return out

    # -- structure ---------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def field(self) -> int | None:
        """The d of Q(sqrt d) if any coefficient lives there, else None."""
        for c in self.coeffs:
            if isinstance(c, QuadElem):
                return c.d
        return None

    def is_rational(self) -> bool:
        return all(not isinstance(c, QuadElem) or c.y == 0 for c in self.coeffs)

    def to_rational(self) -> "Poly":
        if not self.is_rational():
            raise ValueError("polynomial has irrational coefficients")
        return Poly([c.x if isinstance(c, QuadElem) else c for c in self.coeffs])

    def over(self, d: int) -> "Poly":
        """Coefficients promoted to Q(sqrt d)."""
        return Poly([c if isinstance(c, QuadElem) else QuadElem(d, c) for c in self.coeffs])

    def conj(self) -> "Poly":
        return Poly([c.conj() if isinstance(c, QuadElem) else c for c in self.coeffs])

    def monic(self) -> "Poly":
        lc = self.lead
        return Poly([c / lc for c in self.coeffs])

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == 1

    # -- arithmetic ----------------------------------------------------------
    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other])

    def __add__(self, other):
        o = self._lift(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly([1])
        for _ in range(e):
            out = out * self
        return out

    def __divmod__(self, other):
        o = self._lift(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(o.coeffs)
        if dq < 0:
            return Poly(), Poly(rem)
        quo = [Fraction(0)] * (dq + 1)
        lc = o.lead
        for k in range(dq, -1, -1):
            c = rem[k + len(o.coeffs) - 1] / lc
            quo[k] = c
            if _is_zero(c):
                continue
            for j, b in enumerate(o.coeffs):
                rem[k + j] = rem[k + j] - c * b
        return Poly(quo), Poly(rem[: len(o.coeffs) - 1])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, QuadElem)):
            return self == Poly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def shift(self, a) -> "Poly":
        """p(t + a)."""
        n = len(self.coeffs)
        out = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            apow = Fraction(1)
            for j in range(i, -1, -1):
                out[j] = out[j] + c * comb(i, j) * apow
                apow = apow * a
        return Poly(out)

    def scale(self, s) -> "Poly":
        """p(s*t)."""
        out = []
        spow = Fraction(1)
        for c in self.coeffs:
            out.append(c * spow)
            spow = spow * s
        return Poly(out)

    def reverse(self, n: int | None = None) -> "Poly":
        """t^n p(1/t) for n >= deg p (default n = deg p)."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(cs[::-1])

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if _is_zero(c):
                continue
            cs = format_quad(c) if isinstance(c, QuadElem) else format_rational(c)
            if isinstance(c, QuadElem) and c.x != 0 and c.y != 0:
                cs = f"({cs})"
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            if mono and cs == "1":
                cs = ""
            elif mono and cs == "-1":
                cs = "-"
            elif mono:
                cs += "*"
            terms.append(cs + mono)
        s = " + ".join(terms)
        return s.replace("+ -", "- ")

    def to_json(self) -> list:
        out = []
        for c in self.coeffs:
            if isinstance(c, QuadElem):
                out.append(c.to_json())
            else:
                out.append(format_rational(c))
        return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def resultant(f: Poly, g: Poly):
    """Res(f, g) by the Euclidean recursion."""
    if f.is_zero() or g.is_zero():
        return Fraction(0)
    m, n = f.degree, g.degree
    if n == 0:
        return g.lead ** m
    if m == 0:
        return f.lead ** n
    if m < n:
        sign = -1 if (m * n) % 2 else 1
        return sign * resultant(g, f)
    r = f % g
    if r.is_zero():
        return Fraction(0)
    # Res(f, g) = (-1)^{mn} lc(g)^{m - deg r} Res(g, r)
    sign = -1 if (m * n) % 2 else 1
    return sign * g.lead ** (m - r.degree) * resultant(g, r)


def discriminant(f: Poly):
    n = f.degree
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative()) / f.lead


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Yun's algorithm over a characteristic-zero field; monic parts."""
    f = f.monic()
    out = []
    a0 = poly_gcd(f, f.derivative())
    b = f.exact_div(a0) if a0.degree > 0 else f
    c = f.derivative().exact_div(a0) if a0.degree > 0 else f.derivative()
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


def is_squarefree(f: Poly) -> bool:
    return poly_gcd(f, f.derivative()).degree == 0


def parse_poly(items) -> Poly:
    return Poly([Q(str(c)) if not isinstance(c, (int, Fraction)) else c for c in items])
