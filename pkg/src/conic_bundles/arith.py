"""Exact arithmetic over Q and quadratic fields Q(sqrt d).

Rationals are ``fractions.Fraction``; the square-class machinery on top of
them (squarefree parts, prime supports) uses trial division up to a
configurable bound plus a deterministic Miller-Rabin test on the cofactor.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DegenerateInputError, FactorizationLimitError

TRIAL_DIVISION_BOUND = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Deterministic for n < 3.3e24 with the bases above.
_MR_LIMIT = 3317044064679887385961981


def Q(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    if n >= _MR_LIMIT:
        raise FactorizationLimitError(f"primality of {n} is beyond the deterministic range")
    return is_probable_prime(n)


@lru_cache(maxsize=4096)
def _factor_cached(n: int, bound: int) -> tuple:
    factors = {}
    m = n
    for q in (2, 3):
        while m % q == 0:
            factors[q] = factors.get(q, 0) + 1
            m //= q
    q = 5
    step = 2
    while q <= bound and q * q <= m:
        while m % q == 0:
            factors[q] = factors.get(q, 0) + 1
            m //= q
        q += step
        step = 6 - step
    if m > 1:
        if q * q > m or is_prime(m):
            factors[m] = factors.get(m, 0) + 1
        else:
            r = math.isqrt(m)
            if r * r == m and is_prime(r):
                factors[r] = factors.get(r, 0) + 2
            else:
                raise FactorizationLimitError(
                    f"cofactor {m} of {n} has no prime factor below {bound}"
                )
    return tuple(sorted(factors.items()))


def factor_int(n: int, bound: int = TRIAL_DIVISION_BOUND) -> dict[int, int]:
    """Prime factorization of ``|n|`` (n nonzero)."""
    n = abs(int(n))
    if n == 0:
        raise DegenerateInputError("cannot factor 0")
    return dict(_factor_cached(n, bound))


def prime_support(*values, bound: int = TRIAL_DIVISION_BOUND) -> set[int]:
    """Primes dividing a numerator or denominator of any of the values."""
    primes: set[int] = set()
    for v in values:
        v = Q(v)
        if v == 0:
            raise DegenerateInputError("zero has no prime support")
        for part in (v.numerator, v.denominator):
            primes.update(factor_int(part, bound))
    return primes


@lru_cache(maxsize=4096)
def _squarefree_int(n: int, bound: int) -> int:
    n = abs(n)
    out = 1
    m = n
    q = 2
    while q <= bound and q * q <= m:
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        if e % 2:
            out *= q
        q += 1 if q == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            return out
        if q * q > m or m < bound**3 or is_prime(m):
            # prime, or a product of two distinct primes above the bound
            return out * m
        raise FactorizationLimitError(f"cannot resolve the square class of cofactor {m}")
    return out


def squarefree_part(r, bound: int = TRIAL_DIVISION_BOUND) -> int:
    """The squarefree integer s with r/s a nonzero rational square."""
    r = Q(r)
    if r == 0:
        raise DegenerateInputError("squarefree part of zero is undefined")
    s = _squarefree_int(r.numerator * r.denominator, bound)
    return s if r > 0 else -s


def rational_sqrt(r) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None."""
    r = Q(r)
    if r < 0:
        return None
    a, b = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if a * a == r.numerator and b * b == r.denominator:
        return Fraction(a, b)
    return None


def is_square_rational(r) -> bool:
    r = Q(r)
    if r == 0:
        raise DegenerateInputError("zero is not in Q^x")
    return rational_sqrt(r) is not None


def valuation(x, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    if p < 2:
        raise ValueError(f"{p} is not a prime")
    x = Q(x)
    if x == 0:
        raise DegenerateInputError("valuation of zero")
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def normalize_discriminant(d) -> int:
    """Squarefree representative of Q(sqrt d); rejects squares."""
    s = squarefree_part(d)
    if s == 1:
        raise DegenerateInputError(f"{d} is a square; Q(sqrt {d}) is not a quadratic field")
    return s


@dataclass(frozen=True)
class QuadElem:
    """x + y*sqrt(d) with d squarefree, d != 0, 1."""

    d: int
    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", Q(self.x))
        object.__setattr__(self, "y", Q(self.y))

    @classmethod
    def sqrt_d(cls, d: int) -> "QuadElem":
        return cls(d, Fraction(0), Fraction(1))

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElem(self.d, Fraction(other), Fraction(0))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.d, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.d, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.d, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.d, self.x * o.x + self.d * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = self * o.conj()
        return QuadElem(self.d, c.x / n, c.y / n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, e: int):
        if e < 0:
            return QuadElem(self.d, 1) / (self ** (-e))
        out = QuadElem(self.d, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.d == other.d and self.x == other.x and self.y == other.y
        if isinstance(other, (int, Fraction)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.d, self.x, self.y))

    def __bool__(self):
        return self.x != 0 or self.y != 0

    def conj(self) -> "QuadElem":
        return QuadElem(self.d, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_rational(self) -> bool:
        return self.y == 0

    def __repr__(self):
        return f"QuadElem({format_quad(self)})"

    def to_json(self) -> dict:
        return {"x": format_rational(self.x), "y": format_rational(self.y), "d": str(self.d)}


def format_quad(z: QuadElem) -> str:
    if z.y == 0:
        return format_rational(z.x)
    root = f"sqrt({z.d})"
    if z.y == 1:
        ypart = root
    elif z.y == -1:
        ypart = "-" + root
    else:
        ypart = f"{format_rational(z.y)}*{root}"
    if z.x == 0:
        return ypart
    sign = "" if ypart.startswith("-") else "+"
    return f"{format_rational(z.x)}{sign}{ypart}"


def quad_norm(z) -> Fraction:
    if isinstance(z, QuadElem):
        return z.norm()
    z = Q(z)
    return z * z


def quad_sqrt(z: QuadElem) -> QuadElem | None:
    """A square root of z in Q(sqrt d), or None when z is not a square."""
    if not z:
        raise DegenerateInputError("zero is not in L^x")
    d = z.d
    if z.y == 0:
        r = rational_sqrt(z.x)
        if r is not None:
            return QuadElem(d, r)
        r = rational_sqrt(z.x / d)
        if r is not None:
            return QuadElem(d, 0, r)
        return None
    n = rational_sqrt(z.norm())
    if n is None:
        return None
    for cand in ((z.x + n) / 2, (z.x - n) / 2):
        u = rational_sqrt(cand)
        if u:
            w = QuadElem(d, u, z.y / (2 * u))
            if w * w == z:
                return w
    return None


def quad_is_square(z) -> bool:
    """Squareness in Q(sqrt d); accepts a QuadElem."""
    return quad_sqrt(z) is not None


def parse_quad(obj, d: int | None = None) -> QuadElem:
    """Parse ``{"x": "p/q", "y": "p/q", "d": n}``."""
    dd = int(obj["d"]) if "d" in obj else d
    if dd is None:
        raise ValueError("quadratic element needs a discriminant")
    if normalize_discriminant(dd) != dd:
        raise ValueError(f"discriminant {dd} is not squarefree")
    return QuadElem(dd, parse_rational(str(obj.get("x", "0"))),
                    parse_rational(str(obj.get("y", "0"))))
