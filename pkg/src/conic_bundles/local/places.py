"""Places of Q, local invariants in {0, 1/2}, and splitting in Q(sqrt d)."""
from __future__ import annotations

from dataclasses import dataclass

from ..arith import is_prime, normalize_discriminant
from ..errors import DegenerateInputError


@dataclass(frozen=True, order=True)
class Place:
    """A prime p, or the real place when ``p`` is None."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise DegenerateInputError(f"{self.p} is not prime")

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(int(p))

    @classmethod
    def coerce(cls, v) -> "Place":
        if isinstance(v, Place):
            return v
        if isinstance(v, str):
            v = v.strip().lower()
            if v in ("real", "inf", "infinity", "oo"):
                return cls.real()
            return cls.finite(int(v))
        return cls.finite(v)

    @property
    def is_real(self) -> bool:
        return self.p is None

    def sort_key(self):
        return (1, 0) if self.p is None else (0, self.p)

    def __str__(self):
        return "real" if self.p is None else str(self.p)

    def to_json(self):
        return "real" if self.p is None else self.p


@dataclass(frozen=True)
class InvariantValue:
    """An element of (1/2)Z/Z."""

    half: bool = False

    def __add__(self, other: "InvariantValue") -> "InvariantValue":
        return InvariantValue(self.half != other.half)

    def __bool__(self):
        return self.half

    def __str__(self):
        return "1/2" if self.half else "0"

    __repr__ = __str__

    def to_json(self) -> str:
        return str(self)

    @classmethod
    def parse(cls, text: str) -> "InvariantValue":
        if text == "0":
            return ZERO
        if text == "1/2":
            return HALF
        raise ValueError(f"not an invariant value: {text!r}")


ZERO = InvariantValue(False)
HALF = InvariantValue(True)


def sumset(a, b) -> frozenset:
    return frozenset(x + y for x in a for y in b)


def legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def splitting_type(d, v) -> str:
    """'split', 'inert' or 'ramified' for the place v in Q(sqrt d).

    At the real place a negative d gives the complex place, reported as 'ramified'.
    """
    d = normalize_discriminant(d)
    v = Place.coerce(v)
    if v.is_real:
        return "split" if d > 0 else "ramified"
    p = v.p
    if p == 2:
        if d % 4 != 1:
            return "ramified"
        return "split" if d % 8 == 1 else "inert"
    if d % p == 0:
        return "ramified"
    return "split" if legendre(d, p) == 1 else "inert"


@dataclass(frozen=True)
class LocalQuadExt:
    """The completion of Q(sqrt d) at a place above v, as an extension of Q_v."""

    place: Place
    d: int
    splitting: str

    @classmethod
    def of(cls, d, v) -> "LocalQuadExt":
        d = normalize_discriminant(d)
        v = Place.coerce(v)
        return cls(v, d, splitting_type(d, v))

    @property
    def is_split(self) -> bool:
        return self.splitting == "split"

    @property
    def degree(self) -> int:
        return 1 if self.is_split else 2
