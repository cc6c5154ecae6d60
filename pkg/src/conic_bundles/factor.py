"""Factorization of small-degree polynomials over Q and Q(sqrt d).

Over Q: squarefree decomposition, then Zassenhaus (Cantor-Zassenhaus modulo
a good prime, Hensel lifting, exhaustive recombination).  Over Q(sqrt d):
quadratics split iff their discriminant is a square there, cubics never
split, and quartics split exactly as c * g * conj(g).
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .arith import QuadElem, normalize_discriminant, quad_sqrt, rational_sqrt, squarefree_part
from .errors import DegenerateInputError, UnsupportedError
from .poly import Poly, discriminant, squarefree_decomposition

MAX_DEGREE = 6

_rng = random.Random(0)


def set_seed(seed: int) -> None:
    """Reseed the generator used by equal-degree splitting (results are seed-independent)."""
    _rng.seed(seed)


# ---------------------------------------------------------------------------
# polynomials over F_p, as ascending lists of ints

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _gf(f: Poly, p: int) -> list[int]:
    out = []
    for c in f.coeffs:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise DegenerateInputError(f"denominator of {c} vanishes mod {p}")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return _trim(out)


def _gf_add(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _gf_sub(a, b, p):
    return _gf_add(a, [(-c) % p for c in b], p)


def _gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _gf_divmod(a, b, p):
    a = list(a)
    inv = pow(b[-1], -1, p)
    if len(a) < len(b):
        return [], a
    q = [0] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] * inv % p
        q[k] = c
        if c:
            for j, y in enumerate(b):
                a[k + j] = (a[k + j] - c * y) % p
    return _trim(q), _trim(a[: len(b) - 1])


def _gf_monic(a, p):
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def _gf_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    return _gf_monic(a, p) if a else a


def _gf_xgcd(a, b, p):
    """(g, s, t) with s*a + t*b = g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    inv = pow(r0[-1], -1, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in s0], [c * inv % p for c in t0])


def _gf_powmod(base, e, mod, p):
    out = [1]
    base = _gf_divmod(base, mod, p)[1]
    while e:
        if e & 1:
            out = _gf_divmod(_gf_mul(out, base, p), mod, p)[1]
        base = _gf_divmod(_gf_mul(base, base, p), mod, p)[1]
        e >>= 1
    return out


def _gf_deriv(a, p):
    return _trim([(i * c) % p for i, c in enumerate(a)][1:])


def _ddf(f, p):
    out = []
    h = [0, 1]
    i = 1
    while len(f) - 1 >= 2 * i:
        h = _gf_powmod(h, p, f, p)
        g = _gf_gcd(f, _gf_sub(h, [0, 1], p), p)
        if len(g) > 1:
            out.append((g, i))
            f = _gf_divmod(f, g, p)[0]
            h = _gf_divmod(h, f, p)[1]
        i += 1
    if len(f) > 1:
        out.append((_gf_monic(f, p), len(f) - 1))
    return out


def _edf(g, i, p):
    n = len(g) - 1
    if n == i:
        return [g]
    e = (p**i - 1) // 2
    while True:
        a = _trim([_rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = _gf_sub(_gf_powmod(a, e, g, p), [1], p)
        d = _gf_gcd(g, b, p)
        if 0 < len(d) - 1 < n:
            return _edf(d, i, p) + _edf(_gf_divmod(g, d, p)[0], i, p)


def _gf_factor_squarefree(f, p):
    """Monic irreducible factors of a squarefree polynomial over F_p, p odd."""
    f = _gf_monic(f, p)
    out = []
    for g, i in _ddf(f, p):
        out.extend(_edf(g, i, p))
    return out


def is_irreducible_mod_p(f: Poly, p: int) -> bool:
    """Irreducibility of f mod p via gcd(f, t^(p^i) - t) for i <= deg/2."""
    lc = Fraction(f.lead)
    if f.degree < 1:
        raise DegenerateInputError("constants are not irreducible")
    if lc.numerator % p == 0:
        raise DegenerateInputError(f"bad reduction: {p} divides the leading coefficient")
    fp = _gf(f, p)
    h = [0, 1]
    for _ in range(f.degree // 2):
        h = _gf_powmod(h, p, fp, p)
        if len(_gf_gcd(fp, _gf_sub(h, [0, 1], p), p)) > 1:
            return False
    return True


# ---------------------------------------------------------------------------
# Zassenhaus over Z

def _odd_primes():
    q = 3
    while True:
        if all(q % r for r in range(3, math.isqrt(q) + 1, 2)):
            yield q
        q += 2


def _symmetric(c: int, m: int) -> int:
    c %= m
    return c - m if c > m // 2 else c


def _hensel_pair(F, g, h, p, K):
    """Lift F = g*h (mod p, g monic) to mod p^K; F has integer coefficients."""
    _, s, t = _gf_xgcd(g, h, p)
    g, h = list(g), list(h)
    m = p
    for _ in range(1, K):
        gh = [0] * (len(g) + len(h) - 1)
        for i, x in enumerate(g):
            for j, y in enumerate(h):
                gh[i + j] += x * y
        n = max(len(F), len(gh))
        err = [((F[i] if i < len(F) else 0) - (gh[i] if i < len(gh) else 0)) for i in range(n)]
        e = _trim([(c // m) % p for c in err])
        q, r = _gf_divmod(_gf_mul(t, e, p), g, p)
        dh = _gf_add(_gf_mul(s, e, p), _gf_mul(q, h, p), p)
        mm = m * p
        g = [((g[i] if i < len(g) else 0) + m * (r[i] if i < len(r) else 0)) % mm for i in range(len(g))]
        h = [((h[i] if i < len(h) else 0) + m * (dh[i] if i < len(dh) else 0)) % mm
             for i in range(max(len(h), len(dh)))]
        m = mm
    return g, h


def _hensel_multi(F, factors, p, K):
    pk = p**K
    if len(factors) == 1:
        inv = pow(F[-1], -1, pk)
        return [[c * inv % pk for c in F]]
    lc = F[-1] % p
    rest = [lc]
    for fac in factors[1:]:
        rest = _gf_mul(rest, fac, p)
    g, H = _hensel_pair(F, factors[0], rest, p, K)
    return [g] + _hensel_multi(H, factors[1:], p, K)


def _primitive(coeffs: list[int]) -> list[int]:
    g = 0
    for c in coeffs:
        g = math.gcd(g, c)
    out = [c // g for c in coeffs]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def _divides_over_Z(F: list[int], G: list[int]):
    q, r = divmod(Poly(F), Poly(G))
    if not r.is_zero():
        return None
    if any(Fraction(c).denominator != 1 for c in q.coeffs):
        return None
    return [int(c) for c in q.coeffs]


def _zassenhaus(F: list[int]) -> list[list[int]]:
    """Irreducible factors over Z of a primitive squarefree integer polynomial."""
    n = len(F) - 1
    if n <= 1:
        return [F]
    lc = F[-1]
    best = None
    tried = 0
    for p in _odd_primes():
        if lc % p == 0:
            continue
        fp = _trim([c % p for c in F])
        if len(_gf_gcd(fp, _gf_deriv(fp, p), p)) > 1:
            continue
        facs = _gf_factor_squarefree(fp, p)
        if best is None or len(facs) < len(best[1]):
            best = (p, facs)
        tried += 1
        if len(facs) == 1 or tried >= 6:
            break
    p, facs = best
    if len(facs) == 1:
        return [F]
    norm2 = math.isqrt(sum(c * c for c in F)) + 1
    bound = 2 * abs(lc) * (2**n) * norm2
    K = 1
    while p**K <= bound:
        K += 1
    pk = p**K
    lifted = _hensel_multi(F, facs, p, K)
    out = []
    remaining = list(range(len(lifted)))
    cur = F
    size = 1
    while 2 * size <= len(remaining):
        for S in combinations(remaining, size):
            g = [cur[-1] % pk]
            for i in S:
                prod = [0] * (len(g) + len(lifted[i]) - 1)
                for a, x in enumerate(g):
                    for b, y in enumerate(lifted[i]):
                        prod[a + b] = (prod[a + b] + x * y) % pk
                g = prod
            cand = _primitive([_symmetric(c, pk) for c in g])
            quo = _divides_over_Z(cur, cand)
            if quo is not None:
                out.append(cand)
                cur = quo
                remaining = [i for i in remaining if i not in S]
                break
        else:
            size += 1
    out.append(_primitive(cur))
    return out


# ---------------------------------------------------------------------------
# public API

@dataclass(frozen=True)
class Factorization:
    content: object
    factors: tuple  # of (monic irreducible Poly, multiplicity)

    def expand(self) -> Poly:
        out = Poly([self.content])
        for g, m in self.factors:
            out = out * g**m
        return out

    def is_irreducible(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1


def _sort_key(item):
    g, m = item
    return (g.degree, m, str(g))


def factor_over_Q(f: Poly) -> Factorization:
    """Content (leading coefficient) and monic irreducible factors over Q."""
    if f.is_zero():
        raise DegenerateInputError("cannot factor the zero polynomial")
    if f.degree > MAX_DEGREE:
        raise UnsupportedError(f"degree {f.degree} exceeds the supported bound {MAX_DEGREE}")
    f = f.to_rational()
    content = f.lead
    if f.degree == 0:
        return Factorization(content, ())
    factors = []
    for part, mult in squarefree_decomposition(f):
        den = 1
        for c in part.coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        F = _primitive([int(c * den) for c in part.coeffs])
        for G in _zassenhaus(F):
            factors.append((Poly(G).monic(), mult))
    factors.sort(key=_sort_key)
    return Factorization(content, tuple(factors))


def is_irreducible_over_Q(f: Poly) -> bool:
    return f.degree >= 1 and factor_over_Q(f).is_irreducible()


def rational_roots(f: Poly) -> list[Fraction]:
    return sorted(-g[0] for g, _ in factor_over_Q(f).factors if g.degree == 1)


def conjugate_factorization(f: Poly, d: int):
    """Write a quartic f as c * g * conj(g) with g monic quadratic, irreducible over Q(sqrt d).

    Returns ``(c, g)`` or None.  Of the two conjugate choices, g is the one whose
    first nonzero sqrt(d)-coefficient (t-coefficient, then constant) is positive.
    """
    if f.degree != 4:
        raise DegenerateInputError("conjugate factorization needs a quartic")
    d = normalize_discriminant(d)
    f = f.to_rational()
    c = f.lead
    m = f.monic()
    a3, a2, a1, a0 = m[3], m[2], m[1], m[0]
    u0 = a3 / 2
    A = (a2 - u0 * u0) / 2
    candidates = []
    # sqrt(d)-part of the t-coefficient vanishes
    v0 = A
    if 2 * u0 * v0 == a1:
        v1 = rational_sqrt((v0 * v0 - a0) / d)
        if v1:
            candidates.append((u0, Fraction(0), v0, v1))
    # otherwise w = u1^2 is a root of a cubic
    V0 = Poly([A, Fraction(d, 2)])
    cubic = Poly([0, d]) * (V0 * V0 - a0) - (V0 * u0 - a1 / 2) ** 2
    if not cubic.is_zero():
        for w in rational_roots(cubic):
            u1 = rational_sqrt(w) if w > 0 else None
            if not u1:
                continue
            v0w = A + d * w / 2
            v1w = (u0 * v0w - a1 / 2) / (d * u1)
            candidates.append((u0, u1, v0w, v1w))
    for u0_, u1_, v0_, v1_ in candidates:
        g = Poly([QuadElem(d, v0_, v1_), QuadElem(d, u0_, u1_), QuadElem(d, 1)])
        if g * g.conj() != m:
            continue
        disc = g[1] * g[1] - 4 * g[0]
        if not disc or quad_sqrt(disc) is not None:
            continue
        return c, g
    return None


def quadratic_subfields(P: Poly) -> set[int]:
    """All squarefree d with Q(sqrt d) inside Q[t]/P(t), for an irreducible quartic P."""
    if P.degree != 4:
        raise DegenerateInputError("quadratic_subfields needs a quartic")
    P = P.to_rational().monic()
    if not is_irreducible_over_Q(P):
        raise DegenerateInputError(f"{P} is reducible over Q")
    Pd = P.shift(-P[3] / 4)
    p, q, r = Pd[2], Pd[1], Pd[0]
    resolvent = Poly([4 * p * r - q * q, -4 * r, -p, 1])
    cands = {squarefree_part(discriminant(P))}
    for theta in rational_roots(resolvent):
        x, y = theta * theta - 4 * r, theta - p
        for val in (x, y, x * y):
            if val != 0:
                cands.add(squarefree_part(val))
    cands.discard(1)
    return {s for s in cands if conjugate_factorization(P, s) is not None}


def factor_over_quad(f: Poly, d: int) -> Factorization:
    """Factorization over Q(sqrt d) of a polynomial over Q of degree <= 4."""
    if f.degree > 4:
        raise UnsupportedError("factorization over Q(sqrt d) is limited to degree 4")
    d = normalize_discriminant(d)
    base = factor_over_Q(f)
    out = []
    for g, mult in base.factors:
        if g.degree == 2:
            root = quad_sqrt(QuadElem(d, g[1] * g[1] - 4 * g[0]))
            if root is not None:
                b = QuadElem(d, g[1])
                for sign in (1, -1):
                    out.append((Poly([(b - sign * root) / 2, 1]), mult))
                continue
        elif g.degree == 4:
            cf = conjugate_factorization(g, d)
            if cf is not None:
                h = cf[1]
                out.append((h, mult))
                out.append((h.conj(), mult))
                continue
        out.append((g.over(d), mult))
    return Factorization(QuadElem(d, base.content), tuple(out))
