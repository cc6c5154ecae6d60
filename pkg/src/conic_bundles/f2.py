"""Subspaces of F_2^n with vectors stored as int bitmasks (bit i = coordinate i)."""
from __future__ import annotations


def bits(mask: int, n: int) -> str:
    """Bit-string with character i equal to coordinate i."""
    return "".join("1" if mask >> i & 1 else "0" for i in range(n))


def from_bits(text: str) -> int:
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def weight(mask: int) -> int:
    return bin(mask).count("1")


def ones(n: int) -> int:
    return (1 << n) - 1


class Echelon:
    """Incremental row reduction; remembers how each stored row was formed."""

    def __init__(self):
        self.rows: dict[int, int] = {}  # pivot bit -> row

    def reduce(self, v: int) -> int:
        for piv in sorted(self.rows, reverse=True):
            if v >> piv & 1:
                v ^= self.rows[piv]
        return v

    def add(self, v: int) -> bool:
        v = self.reduce(v)
        if not v:
            return False
        self.rows[v.bit_length() - 1] = v
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(vectors) -> int:
    e = Echelon()
    for v in vectors:
        e.add(v)
    return e.rank


class F2Space:
    """A subspace V of F_2^n that contains (1,...,1), with V/(1,...,1) exposed."""

    def __init__(self, n: int, vectors):
        self.n = n
        vectors = list(vectors)
        if n and rank(vectors + [ones(n)]) != rank(vectors):
            raise ValueError("(1,...,1) must lie in V")
        e = Echelon()
        basis = []
        for v in ([ones(n)] if n else []) + vectors:
            if e.add(v):
                basis.append(v)
        self.basis = basis  # basis[0] is (1,...,1) when n > 0
        self._ech = e
        span = {0}
        for b in basis:
            span |= {x ^ b for x in span}
        self.elements = sorted(span)

    @property
    def dim(self) -> int:
        return len(self.basis) if self.n else 0

    @property
    def quotient_dim(self) -> int:
        return max(self.dim - 1, 0)

    @property
    def quotient_basis(self) -> list[int]:
        return self.basis[1:]

    def __contains__(self, v: int) -> bool:
        return self._ech.reduce(v) == 0

    def quotient_coordinates(self, v: int) -> list[int]:
        """Coordinates of v modulo (1,...,1) on the quotient basis."""
        if v not in self:
            raise ValueError("vector is not in V")
        qb = self.quotient_basis
        for combo in range(1 << len(qb)):
            w = 0
            for i, b in enumerate(qb):
                if combo >> i & 1:
                    w ^= b
            if w == v or (self.n and w ^ ones(self.n) == v):
                return [combo >> i & 1 for i in range(len(qb))]
        raise AssertionError("basis does not span V")

    def coset_representatives(self) -> list[int]:
        """One minimal-weight vector for each nonzero class of V/(1,...,1)."""
        seen = set()
        reps = []
        full = ones(self.n)
        for v in sorted(self.elements, key=lambda m: (weight(m), m)):
            key = min(v, v ^ full)
            if key == 0 or key in seen:
                continue
            seen.add(key)
            reps.append(v)
        return reps
