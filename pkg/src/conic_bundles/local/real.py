"""Exact real root isolation (Sturm sequences) and signs in Q(sqrt d)."""
from __future__ import annotations

from fractions import Fraction

from ..arith import QuadElem
from ..poly import Poly, poly_gcd


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sturm_chain(P: Poly) -> list[Poly]:
    chain = [P, P.derivative()]
    while chain[-1].degree > 0:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    return chain


def _variations(chain, x) -> int:
    signs = [s for s in (_sign(q(x)) for q in chain) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def isolate_real_roots(P: Poly) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals (lo, hi), each holding exactly one real root; endpoints are not roots."""
    P = P.to_rational()
    if P.degree < 1:
        return []
    g = poly_gcd(P, P.derivative())
    if g.degree > 0:
        P = P.exact_div(g)
    chain = sturm_chain(P)
    lc = P.lead
    bound = 1 + max(abs(c / lc) for c in P.coeffs[:-1])
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(chain, lo) - _variations(chain, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        k = 2
        mid = (lo + hi) / 2
        while P(mid) == 0:
            k += 1
            mid = lo + (hi - lo) / k
        stack.append((lo, mid))
        stack.append((mid, hi))
    return sorted(out)


def sign_sample_points(P: Poly) -> list[Fraction]:
    """Rational non-roots of P meeting every connected component of {x : P(x) != 0}."""
    intervals = isolate_real_roots(P)
    if not intervals:
        return [Fraction(0)]
    pts = set()
    for lo, hi in intervals:
        pts.add(lo)
        pts.add(hi)
    return sorted(pts)


def quad_sign(z, root_sign: int = 1) -> int:
    """Sign of x + y*sqrt(d) in the real embedding sending sqrt(d) to root_sign*|sqrt d|."""
    if not isinstance(z, QuadElem):
        return _sign(z)
    x, y = z.x, z.y * root_sign
    sx, sy = _sign(x), _sign(y)
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    # opposite signs: compare x^2 with d y^2
    return sx if x * x > z.d * y * y else -sx


def real_eval_sign(poly: Poly, t, root_sign: int = 1) -> int:
    return quad_sign(poly(t), root_sign)
