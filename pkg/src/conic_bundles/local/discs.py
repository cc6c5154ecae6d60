"""Residue-disc covering of P^1 over a p-adic field.

A search problem consists of an optional locus form G and one or more value
forms H_1, H_2, ... (alternatives known to agree on the locus).  The target
is the set of symbols (a, H(t)) over parameters t with (a, G(t)) = 0.

Each disc t = c + pi^k s (s integral) carries the forms expanded in s.  A
form is *constant* on the disc when its constant term dominates every other
coefficient by the square-class margin.  Discs are refined breadth first;
a disc is dropped once it is settled or can only contribute values that
already have witnesses, and an unsettled disc past the depth cap is an error.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..arith import QuadElem, Q, valuation
from ..errors import DepthExhaustedError, PrecisionError
from ..poly import Poly
from .places import HALF, ZERO, InvariantValue

DEFAULT_MAX_DEPTH = 40
INF = "inf"


class PadicRing:
    """Z_p with rational elements (possibly approximants)."""

    def __init__(self, p: int):
        self.p = p
        self.pi = Q(p)
        self.residues = [Q(r) for r in range(p)]
        self.margin = 3 if p == 2 else 1

    def val(self, z) -> int:
        return valuation(z, self.p)

    def to_base(self, z):
        return z


class QuadLocalRing:
    """The integers of a non-split completion Q_p(sqrt d), elements exact in Q(sqrt d)."""

    def __init__(self, p: int, d: int, splitting: str):
        self.p, self.d = p, d
        self.ramified = splitting == "ramified"
        root = QuadElem.sqrt_d(d)
        one = QuadElem(d, 1)
        if p == 2:
            if not self.ramified:
                omega = (one + root) / 2
                self.pi = QuadElem(d, 2)
                self.residues = [QuadElem(d, 0), one, omega, one + omega]
            else:
                self.pi = one + root if d % 4 == 3 else root
                self.residues = [QuadElem(d, 0), one]
        elif self.ramified:
            self.pi = root
            self.residues = [QuadElem(d, r) for r in range(p)]
        else:
            self.pi = QuadElem(d, p)
            self.residues = [QuadElem(d, x, y) for x in range(p) for y in range(p)]
        e = 2 if self.ramified else 1
        self.margin = 1 + 2 * e if p == 2 else 1

    def val(self, z) -> int:
        v = valuation(z.norm() if isinstance(z, QuadElem) else Q(z) ** 2, self.p)
        return v if self.ramified else v // 2

    def to_base(self, z):
        return z.norm() if isinstance(z, QuadElem) else Q(z) ** 2


@dataclass
class Form:
    """A polynomial in the disc parameter; ``floor`` bounds the absolute error (in pi-valuation)."""

    poly: Poly
    floor: int | None = None

    def child(self, r, pi) -> "Form":
        return Form(self.poly.shift(r).scale(pi), self.floor)


@dataclass(frozen=True)
class FormClass:
    kind: str  # "const" or "unknown"
    rep: object = None


def classify(ring, form: Form) -> FormClass:
    floor = form.floor
    cs = form.poly.coeffs
    vals = []
    for b in cs:
        v = None if b == 0 else ring.val(b)
        if v is not None and floor is not None and v >= floor:
            v = None
        vals.append(v)
    if floor is not None and all(v is None for v in vals):
        raise PrecisionError("form indistinguishable from zero at the working precision")
    big = float("inf")

    def lb(v):
        if v is not None:
            return v
        return big if floor is None else floor

    v0 = vals[0] if vals else None
    if v0 is not None:
        need = v0 + ring.margin
        if all(lb(v) >= need for v in vals[1:]) and (floor is None or floor >= need):
            return FormClass("const", cs[0])
    return FormClass("unknown")


@dataclass
class Disc:
    chart: str  # "aff" or "inf"
    center: object
    level: int
    locus: Form | None
    values: list


@dataclass
class SearchResult:
    values: frozenset
    witnesses: dict = field(default_factory=dict)  # InvariantValue -> parameter t or INF
    discs_examined: int = 0


def _witness(disc: Disc):
    if disc.chart == "aff":
        return disc.center
    return INF if disc.center == 0 else 1 / disc.center


def initial_discs(ring, locus, values) -> list[Disc]:
    """``locus`` and ``values`` hold pairs (affine Form, infinity-chart Form)."""
    zero = ring.residues[0]
    aff = Disc("aff", zero, 0, locus[0] if locus else None, [v[0] for v in values])
    inf = Disc("inf", zero, 1,
               locus[1].child(zero, ring.pi) if locus else None,
               [v[1].child(zero, ring.pi) for v in values])
    return [aff, inf]


def _min_val(ring, form: Form):
    """Lower bound for the valuation of every coefficient (None if identically zero)."""
    m = None
    for b in form.poly.coeffs:
        if b == 0:
            continue
        v = ring.val(b)
        if form.floor is not None:
            v = min(v, form.floor)
        m = v if m is None else min(m, v)
    return m


def _quick_class(ring, form: Form, m, r) -> FormClass:
    """Class on the child disc s = r + pi s' read off from form(r) alone.

    Child coefficients of positive degree have valuation >= 1 + m, so the child is
    constant as soon as v(form(r)) + margin <= 1 + m.
    """
    if m is None:
        return FormClass("unknown")
    b0 = form.poly(r)
    if b0 == 0:
        return FormClass("unknown")
    v0 = ring.val(b0)
    need = v0 + ring.margin
    if need <= 1 + m and (form.floor is None or (v0 < form.floor and need <= form.floor)):
        return FormClass("const", b0)
    return FormClass("unknown")


def _decide(ring, symbol, locus_class, value_classes, found, everything):
    """'drop', ('record', value) or 'split' for a disc with the given form classes."""
    if locus_class is not None:
        if locus_class.kind == "const" and symbol(ring.to_base(locus_class.rep)):
            return "drop"
        locus_ok = locus_class.kind == "const"
    else:
        locus_ok = True
    known = {symbol(ring.to_base(vc.rep)) for vc in value_classes if vc.kind == "const"}
    if len(known) == 2:
        # alternatives disagree, so the locus is empty here
        return "drop"
    if locus_ok and known:
        return ("record", next(iter(known)))
    if (known or everything) <= found.keys():
        return "drop"
    return "split"


def search(ring, symbol, locus, values, max_depth: int = DEFAULT_MAX_DEPTH) -> SearchResult:
    """Set of symbol(H(t)) over t in P^1 with symbol(G(t)) = 0, with one witness per value.

    ``symbol`` receives ``ring.to_base(z)``, a rational.
    """
    found: dict[InvariantValue, object] = {}
    examined = 0
    everything = {ZERO, HALF}
    nxt = []
    for disc in initial_discs(ring, locus, values):
        examined += 1
        lc = classify(ring, disc.locus) if disc.locus is not None else None
        decision = _decide(ring, symbol, lc, [classify(ring, f) for f in disc.values], found, everything)
        if decision == "split":
            nxt.append(disc)
        elif decision != "drop":
            found.setdefault(decision[1], _witness(disc))
    frontier = nxt
    while frontier and not found.keys() >= everything:
        nxt = []
        for disc in frontier:
            if disc.level >= max_depth:
                raise DepthExhaustedError(
                    f"disc at level {disc.level} around {disc.center} unresolved (max_depth={max_depth})")
            lm = _min_val(ring, disc.locus) if disc.locus is not None else None
            vms = [_min_val(ring, f) for f in disc.values]
            for r in ring.residues:
                examined += 1
                center = disc.center + ring.pi**disc.level * r
                lc = _quick_class(ring, disc.locus, lm, r) if disc.locus is not None else None
                vcs = [_quick_class(ring, f, m, r) for f, m in zip(disc.values, vms)]
                decision = _decide(ring, symbol, lc, vcs, found, everything)
                child = None
                if decision == "split":
                    child = Disc(disc.chart, center, disc.level + 1,
                                 disc.locus.child(r, ring.pi) if disc.locus is not None else None,
                                 [f.child(r, ring.pi) for f in disc.values])
                    lc = classify(ring, child.locus) if child.locus is not None else None
                    vcs = [classify(ring, f) for f in child.values]
                    decision = _decide(ring, symbol, lc, vcs, found, everything)
                if decision == "split":
                    nxt.append(child)
                elif decision != "drop":
                    found.setdefault(decision[1], _witness(Disc(disc.chart, center, disc.level + 1, None, [])))
        frontier = nxt
    return SearchResult(frozenset(found), dict(found), examined)
