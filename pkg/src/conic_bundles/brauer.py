"""Singular fibers, the Brauer quotient V/(1,...,1), and its behavior under quadratic base change.

A conic bundle is described by its singular locus S: closed points P of the
affine line with residues alpha_P in k(P)^x/k(P)^x2.  V is the space of
epsilon in F_2^S with prod Nm(alpha_P)^eps_P a square; V/(1,...,1) is
Br(X)/Br_0(X).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .arith import (
    Q,
    QuadElem,
    format_quad,
    format_rational,
    is_square_rational,
    normalize_discriminant,
    quad_sqrt,
    rational_sqrt,
    squarefree_part,
)
from .errors import DegenerateInputError, UnsupportedError
from .f2 import F2Space, bits, ones, rank
from .factor import factor_over_Q, factor_over_quad, quadratic_subfields
from .poly import Poly, discriminant, is_squarefree, resultant

MAX_LOCUS = 6


def _is_square(z) -> bool:
    if isinstance(z, QuadElem):
        return quad_sqrt(z) is not None
    return is_square_rational(z)


def _fmt(z) -> str:
    return format_quad(z) if isinstance(z, QuadElem) else format_rational(z)


@dataclass(frozen=True)
class FiberDatum:
    """A singular fiber: the closed point (monic irreducible minpoly) and its residue alpha_P.

    ``alpha`` is a polynomial reduced modulo ``point``, so it names an element of k(P).
    """

    point: Poly
    alpha: Poly

    @classmethod
    def make(cls, point: Poly, alpha) -> "FiberDatum":
        if isinstance(alpha, Poly):
            a = alpha
        elif isinstance(alpha, QuadElem) and not alpha.is_rational():
            a = _quad_residue_to_poly(point, alpha)
        else:
            a = Poly([alpha.x if isinstance(alpha, QuadElem) else Q(alpha)])
        a = a % point
        if a.is_zero():
            raise DegenerateInputError(f"residue vanishes in the residue field of {point}")
        return cls(point, a)

    @property
    def degree(self) -> int:
        return self.point.degree

    def norm(self):
        """Nm_{k(P)/k}(alpha_P) = Res(P, alpha) for monic P."""
        return resultant(self.point, self.alpha)

    def alpha_is_constant(self) -> bool:
        return self.alpha.degree <= 0

    def alpha_str(self) -> str:
        if self.alpha_is_constant():
            return _fmt(self.alpha[0])
        return f"{self.alpha} mod ({self.point})"

    def to_json(self) -> dict:
        return {"point": self.point.to_json(), "alpha": self.alpha.to_json(),
                "degree": self.degree, "norm": _json_num(self.norm())}


def _json_num(z):
    return z.to_json() if isinstance(z, QuadElem) else format_rational(z)


def _quad_residue_to_poly(point: Poly, z: QuadElem) -> Poly:
    """Express x + y*sqrt(D) as a polynomial mod a quadratic point of discriminant s^2 D."""
    if point.degree != 2:
        raise DegenerateInputError("quadratic-field residues need a degree-2 point")
    b, c = point[1], point[0]
    disc = b * b - 4 * c
    D = squarefree_part(disc)
    if D != z.d:
        raise DegenerateInputError(
            f"residue lives in Q(sqrt {z.d}) but the point has residue field Q(sqrt {D})")
    s = rational_sqrt(disc / D)
    # the root tau = (-b + s sqrt D)/2 gives sqrt D = (2 tau + b)/s
    return Poly([z.x + z.y * b / s, 2 * z.y / s])


def _sqrt_in(z, d: int | None):
    """A square root of z in Q (d None) or in Q(sqrt d), or None."""
    if z == 0:
        return None
    if d is None:
        return rational_sqrt(z)
    root = quad_sqrt(z if isinstance(z, QuadElem) else QuadElem(d, z))
    return root


def _rational_value(z):
    if isinstance(z, QuadElem):
        return z.x if z.y == 0 else None
    return z


def residue_is_square(point: Poly, alpha: Poly, d: int | None = None):
    """Whether alpha is a square in F[t]/(point), F = Q or Q(sqrt d).

    Decided for degree <= 2, for constant residues in any degree, and
    otherwise when the norm is not a square.  Returns None when undecided.
    """
    n = point.degree
    if n == 1:
        return _sqrt_in((alpha % point)[0], d) is not None
    if alpha.degree <= 0 and n % 2 == 1:
        # an odd-degree extension adds no square roots
        return _sqrt_in(alpha[0], d) is not None
    if n == 2:
        # k(P) = F(sqrt D') with sqrt D' = 2 tau + b; alpha = x + y sqrt D'
        b, c = point[1] / point[2], point[0] / point[2]
        u, v = alpha[0], alpha[1]
        D = b * b - 4 * c
        x, y = u - v * b / 2, v / 2
        if y == 0:
            return _sqrt_in(x, d) is not None or _sqrt_in(x / D, d) is not None
        root = _sqrt_in(x * x - D * y * y, d)
        if root is None:
            return False
        return any(_sqrt_in((x + s) / 2, d) is not None for s in (root, -root))
    if alpha.degree <= 0 and n == 4 and point.is_rational() and _rational_value(alpha[0]) is not None:
        # q is a square in k(P)(sqrt d) iff q or q d is a square in k(P)
        q = _rational_value(alpha[0])
        P = point.to_rational()
        classes = {squarefree_part(q)} | ({squarefree_part(q * d)} if d is not None else set())
        return 1 in classes or bool(classes & quadratic_subfields(P))
    norm = resultant(point, alpha)
    if _sqrt_in(norm, d) is None:
        return False
    return None


@dataclass
class ConicBundleData:
    """Either a Chatelet surface y^2 - a z^2 = c f(t) or a list of fiber data.

    For a cubic f the fiber at infinity is singular; the locus is then
    computed on the chart t = shift + 1/s, where c f(t) = c F(s)/s^4 with
    F(s) = s^4 f(shift + 1/s) a quartic vanishing at s = 0.
    """

    kind: str
    locus: list
    a: Fraction | None = None
    c: Fraction | None = None
    f: Poly | None = None
    shift: Fraction | None = None
    label: str | None = None

    @classmethod
    def chatelet(cls, a, c, f: Poly, label=None) -> "ConicBundleData":
        a, c = Q(a), Q(c)
        if a == 0 or c == 0:
            raise DegenerateInputError("a and c must be nonzero")
        if is_square_rational(a):
            raise DegenerateInputError(f"a = {format_rational(a)} is a square")
        f = f.to_rational()
        if f.degree not in (3, 4):
            raise DegenerateInputError("f must have degree 3 or 4")
        if not is_squarefree(f):
            raise DegenerateInputError("f is not squarefree")
        shift = None
        F = f
        if f.degree == 3:
            shift = Fraction(0)
            while f(shift) == 0:
                shift += 1
            F = f.shift(shift).reverse(4)
        # points where a is a square in k(P) carry a contractible pair of lines
        locus = [FiberDatum.make(P, a) for P, _ in factor_over_Q(F).factors
                 if not residue_is_square(P, Poly([a]))]
        return cls("chatelet", locus, a, c, f, shift, label)

    @classmethod
    def general(cls, data, label=None) -> "ConicBundleData":
        locus = list(data)
        seen = set()
        for fd in locus:
            if fd.point in seen:
                raise DegenerateInputError(f"point {fd.point} listed twice")
            seen.add(fd.point)
            if fd.degree == 1 and _is_square(fd.norm()):
                raise DegenerateInputError(
                    f"residue at the rational point {fd.point} is a square (non-minimal bundle)")
        if locus and not _is_square(_product(fd.norm() for fd in locus)):
            raise DegenerateInputError("the product of residue norms is not a square")
        return cls("general", locus, label=label)

    @property
    def geometric_fiber_count(self) -> int:
        return sum(fd.degree for fd in self.locus)

    def has_rational_singular_point(self) -> bool:
        return any(fd.degree == 1 for fd in self.locus)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "locus": [fd.to_json() for fd in self.locus],
               "geometric_fiber_count": self.geometric_fiber_count}
        if self.kind == "chatelet":
            out.update({"a": format_rational(self.a), "c": format_rational(self.c),
                        "f": self.f.to_json()})
        return out


def _product(values):
    out = Fraction(1)
    for v in values:
        out = v * out
    return out


def singular_locus(X: ConicBundleData) -> list:
    return list(X.locus)


def norm_vector_space(S) -> F2Space:
    if len(S) > MAX_LOCUS:
        raise UnsupportedError(f"singular locus with {len(S)} points exceeds {MAX_LOCUS}")
    norms = [fd.norm() for fd in S]
    n = len(S)
    vecs = []
    for eps in range(1 << n):
        if _is_square(_product(norms[i] for i in range(n) if eps >> i & 1)):
            vecs.append(eps)
    return F2Space(n, vecs)


@dataclass
class BrauerGenerator:
    """A_eps = sum over eps_P = 1 of Cor (alpha_P, t - tau_P)."""

    epsilon: int
    size: int
    summands: list  # of FiberDatum

    def second_slot(self) -> Poly:
        """prod P over the summands: for a common constant residue a, A_eps = (a, this)."""
        out = Poly([1])
        for fd in self.summands:
            out = out * fd.point
        return out

    def common_constant_alpha(self):
        alphas = {fd.alpha[0] for fd in self.summands if fd.alpha_is_constant()}
        if len(alphas) == 1 and all(fd.alpha_is_constant() for fd in self.summands):
            return alphas.pop()
        return None

    def trivial_at_infinity(self) -> bool:
        # each summand is (alpha_P, t - tau_P); on the chart u = 1/t it is (alpha_P, 1 - tau_P u) up to squares
        return all(fd.point.reverse(fd.degree)(Fraction(0)) == 1 for fd in self.summands)

    def __str__(self):
        a = self.common_constant_alpha()
        if a is not None:
            return f"({_fmt(a)}, {self.second_slot()})"
        return " + ".join(f"Cor({fd.alpha_str()}, {fd.point})" for fd in self.summands)

    def to_json(self) -> dict:
        return {"epsilon": bits(self.epsilon, self.size), "description": str(self),
                "summands": [{"point": fd.point.to_json(), "alpha": fd.alpha.to_json()}
                             for fd in self.summands]}


@dataclass
class BrauerQuotient:
    space: F2Space
    generators: list

    @property
    def dimension(self) -> int:
        return self.space.quotient_dim

    def to_json(self) -> dict:
        return {"dimension": self.dimension, "ambient": self.space.n,
                "V": [bits(v, self.space.n) for v in self.space.elements],
                "generators": [g.to_json() for g in self.generators]}


def brauer_quotient(S) -> BrauerQuotient:
    S = list(S)
    space = norm_vector_space(S)
    gens = []
    for eps in space.coset_representatives():
        gens.append(BrauerGenerator(eps, len(S), [S[i] for i in range(len(S)) if eps >> i & 1]))
    return BrauerQuotient(space, gens)


@dataclass
class GaloisOrbit:
    """How one point of S behaves over Q(sqrt d)."""

    source: int
    images: list  # indices into S_L
    action: str  # "fixed" or "swapped"

    def to_json(self) -> dict:
        return {"source": self.source, "images": self.images, "action": self.action}


def base_change_locus(S, d):
    """(S_L, orbits): the locus over Q(sqrt d) with residues transported.

    Points whose residue becomes a square over L are left out of S_L; their
    orbit then has fewer (possibly no) images.
    """
    d = normalize_discriminant(d)
    S_L, orbits = [], []
    for i, fd in enumerate(S):
        if fd.point.field() is not None:
            raise DegenerateInputError("base change expects points defined over Q")
        parts = [g for g, _ in factor_over_quad(fd.point, d).factors]
        alpha_L = fd.alpha.over(d)
        if len(parts) == 1:
            images = [FiberDatum(fd.point.over(d), alpha_L)]
            action = "fixed"
        else:
            if not fd.alpha_is_constant() and fd.degree > 2:
                raise UnsupportedError(
                    f"residue transport for a non-constant residue at the splitting point {fd.point}")
            images = [FiberDatum(g, alpha_L % g) for g in parts]
            action = "swapped"
        idx = []
        for img in images:
            # a residue that became a square leaves a contractible fiber: drop it
            if residue_is_square(img.point, img.alpha, d) is True:
                continue
            idx.append(len(S_L))
            S_L.append(img)
        orbits.append(GaloisOrbit(i, idx, action))
    return S_L, orbits


@dataclass
class RestrictionData:
    d: int
    source: F2Space
    target: F2Space
    matrix: list  # rows indexed by target quotient basis, columns by source quotient basis
    surjective: bool
    injective: bool
    S_L: list
    orbits: list

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "source_dimension": self.source.quotient_dim,
            "target_dimension": self.target.quotient_dim,
            "source_basis": [bits(v, self.source.n) for v in self.source.quotient_basis],
            "target_basis": [bits(v, self.target.n) for v in self.target.quotient_basis],
            "matrix": ["".join(str(x) for x in row) for row in self.matrix],
            "surjective": self.surjective,
            "injective": self.injective,
            "locus_over_L": [fd.to_json() for fd in self.S_L],
            "galois": [o.to_json() for o in self.orbits],
        }


def restriction_map(S, d) -> RestrictionData:
    """The map V_k/(1,...,1) -> V_L/(1,...,1) sending e_P to the sum of the e_Q over Q above P."""
    S = list(S)
    d = normalize_discriminant(d)
    S_L, orbits = base_change_locus(S, d)
    Vk = norm_vector_space(S)
    VL = norm_vector_space(S_L)

    def res(eps):
        out = 0
        for o in orbits:
            if eps >> o.source & 1:
                for j in o.images:
                    out |= 1 << j
        return out

    columns = []
    for v in Vk.quotient_basis:
        w = res(v)
        if w not in VL:
            raise AssertionError("restriction left V_L; residue data inconsistent")
        columns.append(VL.quotient_coordinates(w))
    matrix = [[col[i] for col in columns] for i in range(VL.quotient_dim)]
    one_L = ones(len(S_L))
    image = [res(v) for v in Vk.quotient_basis] + ([one_L] if S_L else [])
    image_dim = rank(image) - (1 if S_L else 0)
    return RestrictionData(
        d, Vk, VL, matrix,
        surjective=image_dim == VL.quotient_dim,
        injective=image_dim == Vk.quotient_dim,
        S_L=S_L, orbits=orbits)


def _require_four(X: ConicBundleData):
    if X.geometric_fiber_count != 4:
        raise DegenerateInputError(
            f"needs exactly 4 geometric singular fibers, found {X.geometric_fiber_count}")


def classify_nonsurjective(X: ConicBundleData, d) -> str:
    """'case_i', 'case_ii' or 'not_applicable' for a four-fiber bundle over Q(sqrt d).

    case_i: one point of S splits into two conjugate degree-2 points.
    case_ii: two degree-2 points stay fixed and their residue norm, not a
    square over Q, becomes one over Q(sqrt d).
    Configurations where S_L has a degree-1 point are not classified (there
    X has L-points).
    """
    _require_four(X)
    r = restriction_map(X.locus, d)
    if r.surjective:
        return "not_applicable"
    S, S_L = X.locus, r.S_L
    if any(fd.degree == 1 for fd in S_L):
        return "not_applicable"
    if len(S) == 1 and len(S_L) == 2 and r.orbits[0].action == "swapped":
        return "case_i"
    if len(S) == 2 and len(S_L) == 2 and all(o.action == "fixed" for o in r.orbits):
        if all(fd.degree == 2 for fd in S):
            n = S[0].norm()
            if not _is_square(n) and _is_square(QuadElem(r.d, n)):
                return "case_ii"
    return "not_applicable"


def critical_extensions_four_fibers(X: ConicBundleData) -> set:
    """Quadratic d over which the restriction can fail to be surjective (at most three)."""
    _require_four(X)
    out = set()
    for fd in X.locus:
        if fd.degree == 4:
            out |= quadratic_subfields(fd.point)
        elif fd.degree == 2:
            n = fd.norm()
            if not _is_square(n):
                out.add(squarefree_part(n))
    return out


def problematic_set_M(X: ConicBundleData) -> set:
    """Squarefree d with Q(sqrt d) inside a residue field k(P) or equal to Q(sqrt beta_T)."""
    S = X.locus
    if len(S) > MAX_LOCUS:
        raise UnsupportedError(f"singular locus with {len(S)} points exceeds {MAX_LOCUS}")
    out = set()
    for fd in S:
        if fd.degree > 4:
            raise UnsupportedError("residue fields of degree above 4 are not supported")
        if fd.degree == 2:
            out.add(squarefree_part(discriminant(fd.point)))
        elif fd.degree == 4:
            out |= quadratic_subfields(fd.point)
        # degree 1 and 3 residue fields contain no quadratic subfield
    norms = [fd.norm() for fd in S]
    for k in range(1, len(S) + 1):
        for T in combinations(range(len(S)), k):
            beta = _product(norms[i] for i in T)
            if not _is_square(beta):
                out.add(squarefree_part(beta))
    return out
