"""Fixed-precision p-adic numbers p^v * u, u a unit known modulo p^N."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..arith import Q, valuation
from ..errors import DegenerateInputError, PrecisionError
from .places import legendre

DEFAULT_PRECISION = 20


def tonelli_shanks(n: int, p: int) -> int:
    """A square root of the quadratic residue n modulo the odd prime p."""
    n %= p
    if n == 0:
        return 0
    if legendre(n, p) != 1:
        raise DegenerateInputError(f"{n} is not a square mod {p}")
    if p % 4 == 3:
        return pow(n, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


@dataclass(frozen=True)
class PadicNum:
    """p^valuation * unit with unit in (Z/p^N)^x.

    Zero is represented with unit 0; its valuation is then a lower bound.
    """

    p: int
    valuation: int
    unit: int
    N: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.N < 1:
            raise PrecisionError("p-adic precision must be at least 1")
        if self.unit % self.p == 0 and self.unit != 0:
            raise ValueError("unit part must be coprime to p")

    @classmethod
    def from_rational(cls, x, p: int, N: int = DEFAULT_PRECISION) -> "PadicNum":
        x = Q(x)
        if x == 0:
            return cls(p, N, 0, N)
        v = valuation(x, p)
        num, den = x.numerator, x.denominator
        if v > 0:
            num //= p**v
        elif v < 0:
            den //= p ** (-v)
        m = p**N
        return cls(p, v, num * pow(den, -1, m) % m, N)

    @property
    def modulus(self) -> int:
        return self.p**self.N

    def is_zero(self) -> bool:
        return self.unit == 0

    def to_rational(self) -> Fraction:
        """The integer representative of the unit, times p^valuation."""
        return Fraction(self.unit) * Fraction(self.p) ** self.valuation

    def __neg__(self):
        return PadicNum(self.p, self.valuation, (-self.unit) % self.modulus, self.N)

    def __mul__(self, other: "PadicNum") -> "PadicNum":
        if self.is_zero() or other.is_zero():
            return PadicNum(self.p, self.valuation + other.valuation, 0, min(self.N, other.N))
        N = min(self.N, other.N)
        return PadicNum(self.p, self.valuation + other.valuation,
                        self.unit * other.unit % self.p**N, N)

    def __add__(self, other: "PadicNum") -> "PadicNum":
        p = self.p
        top = min(self.valuation + self.N, other.valuation + other.N)
        if self.is_zero():
            top = min(top, self.valuation)
        if other.is_zero():
            top = min(top, other.valuation)
        vmin = min(self.valuation, other.valuation)
        if top <= vmin:
            return PadicNum(p, top, 0, 1)
        m = p ** (top - vmin)
        s = 0
        for x in (self, other):
            if not x.is_zero():
                s += x.unit * p ** (x.valuation - vmin)
        s %= m
        if s == 0:
            return PadicNum(p, top, 0, 1)
        k = 0
        while s % p == 0:
            s //= p
            k += 1
        N = top - vmin - k
        return PadicNum(p, vmin + k, s % p**N, N)

    def __sub__(self, other):
        return self + (-other)

    def is_square(self) -> bool:
        if self.is_zero():
            raise DegenerateInputError("zero is not in Q_p^x")
        if self.p == 2 and self.N < 3:
            raise PrecisionError("squareness in Q_2 needs the unit modulo 8")
        if self.valuation % 2:
            return False
        if self.p == 2:
            return self.unit % 8 == 1
        return legendre(self.unit, self.p) == 1

    def sqrt(self, branch: int | None = None) -> "PadicNum":
        """A square root; for odd p, ``branch`` selects the residue of the unit part mod p.

        For p = 2 the branch is 1 or 3 (the root modulo 4) and one digit of
        precision is lost.
        """
        if not self.is_square():
            raise DegenerateInputError("not a square in Q_p")
        p, u, N = self.p, self.unit, self.N
        if p == 2:
            r = 1
            for k in range(3, N):
                if (r * r - u) % 2 ** (k + 1):
                    r += 2 ** (k - 1)
            M = max(N - 1, 1)
            r %= 2**M
            if branch is not None:
                if branch % 4 not in (1, 3):
                    raise ValueError("2-adic branch must be 1 or 3 mod 4")
                if r % 4 != branch % 4:
                    r = (-r) % 2**M
            return PadicNum(2, self.valuation // 2, r, M)
        r = tonelli_shanks(u, p)
        if branch is not None:
            if (branch * branch - u) % p:
                raise ValueError(f"{branch} is not a square root of the unit mod {p}")
            r = branch % p
        k = 1
        while k < N:
            k = min(2 * k, N)
            m = p**k
            r = (r - (r * r - u) * pow(2 * r, -1, m)) % m
        return PadicNum(p, self.valuation // 2, r, N)


def padic_is_square(x: PadicNum) -> bool:
    return x.is_square()


def padic_sqrt(x: PadicNum, branch: int | None = None) -> PadicNum:
    return x.sqrt(branch)


def is_local_square(z, p: int) -> bool:
    """Exact squareness of a nonzero rational in Q_p."""
    z = Q(z)
    if z == 0:
        raise DegenerateInputError("zero is not in Q_p^x")
    return PadicNum.from_rational(z, p, 3 if p == 2 else 1).is_square()


def sqrt_approx(d: int, p: int, N: int, branch: int | None = None) -> int:
    """Integer R with R^2 = d to p-adic precision N (d a unit square in Q_p)."""
    x = PadicNum.from_rational(d, p, N + (1 if p == 2 else 0))
    if x.valuation != 0:
        raise DegenerateInputError("sqrt_approx expects a p-adic unit")
    return x.sqrt(branch).unit
