"""Local and adelic solvability, evaluation images, and Hasse-principle verdicts.

Everything here is about Chatelet surfaces y^2 - a z^2 = c f(t), except the
verdict cascade, which also accepts general fiber data for the rules that
only need the singular locus.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (
    Q,
    QuadElem,
    format_quad,
    format_rational,
    normalize_discriminant,
    prime_support,
    quad_sqrt,
    squarefree_part,
    valuation,
)
from .brauer import (
    ConicBundleData,
    base_change_locus,
    brauer_quotient,
    classify_nonsurjective,
    critical_extensions_four_fibers,
    problematic_set_M,
)
from .errors import ComputationLimitError, DegenerateInputError, PrecisionError, UnsupportedError
from .local import (
    DEFAULT_MAX_DEPTH,
    DEFAULT_PRECISION,
    HALF,
    INF,
    ZERO,
    InvariantValue,
    LocalQuadExt,
    Place,
    hilbert_symbol,
    is_square_at,
    ramified_places,
    splitting_type,
    square_in_local_quad_ext,
    sumset,
    symbol_value_set,
)
from .local.discs import Form, PadicRing, QuadLocalRing, search
from .local.padic import sqrt_approx
from .local.real import quad_sign, sign_sample_points
from .local.values import chart_degree, chatelet_symbol_at
from .poly import Poly, discriminant

CITATIONS = {
    "lem-degree-one-point": "a singular fiber over a degree-1 point carries a rational point",
    "local-solvability": "a variety without adelic points has no rational points",
    "thm-four-fibers": "four geometric singular fibers, with nontrivial Brauer quotient or adelic "
                       "points over the base: points over an even-degree extension exist iff adelic points do",
    "cor-avoid-three-extensions": "four fibers: outside at most three quadratic fields, the "
                                  "Brauer-Manin set is nonempty whenever adelic points exist",
    "cor-problematic-set": "any number of fibers: outside the finite set M of quadratic fields, "
                           "the Brauer-Manin set is nonempty whenever adelic points exist",
    "thm-bmo-only-obstruction": "Brauer-Manin is the only obstruction for conic bundles with at most "
                                "five geometric singular fibers (any number under Schinzel's hypothesis)",
    "thm-restricted-classes": "classes restricted from the base field never obstruct over an "
                              "even-degree extension with adelic points",
    "lem-even-degree-conic": "a conic over a local field has points over every even-degree extension",
    "cor-not-surjective": "four fibers: a non-surjective restriction is one of two explicit configurations",
    "lem-norm-product": "Br(X)/Br_0(X) is V/(1,...,1), V cut out by norm products of residues",
}


# ---------------------------------------------------------------------------
# local and adelic solvability over Q

@dataclass
class LocalSolvability:
    place: Place
    solvable: bool
    witness: object  # t with (a, c f(t))_v = 0, or None
    value_set: frozenset = frozenset()
    note: str = ""

    def to_json(self) -> dict:
        return {"place": str(self.place), "solvable": self.solvable,
                "witness": _json_param(self.witness), "value_set": _json_values(self.value_set),
                "note": self.note}


def _json_param(t):
    if t is None:
        return None
    if t == INF and isinstance(t, str):
        return INF
    if isinstance(t, QuadElem):
        return t.to_json()
    return format_rational(t)


def _json_values(vals) -> list:
    return [str(v) for v in sorted(vals, key=lambda x: x.half)]


def chatelet_local_solvable(a, c, f: Poly, v, max_depth: int = DEFAULT_MAX_DEPTH) -> LocalSolvability:
    """X(Q_v) != {} iff c f(t) is a local norm from Q_v(sqrt a) for some t in P^1(Q_v)."""
    v = Place.coerce(v)
    vs = symbol_value_set(a, c, f, v, max_depth)
    ok = ZERO in vs.values
    return LocalSolvability(v, ok, vs.witnesses.get(ZERO), vs.values)


def bad_primes(X: ConicBundleData, d: int | None = None) -> list[int]:
    f = X.f
    vals = [X.a, X.c, discriminant(f), f.lead]
    if d is not None:
        vals.append(d)
    return sorted(prime_support(*vals) | {2})


@dataclass
class AdelicReport:
    solvable: bool
    over: str
    rows: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"field": self.over, "solvable": self.solvable,
                "places": [r.to_json() for r in self.rows]}


def _require_chatelet(X: ConicBundleData):
    if X.kind != "chatelet":
        raise UnsupportedError("this computation needs a Chatelet surface")


def adelic_solvable(X: ConicBundleData, d=None, max_depth: int = DEFAULT_MAX_DEPTH) -> AdelicReport:
    """Local solvability at every place of bad reduction (of Q, or of Q(sqrt d))."""
    _require_chatelet(X)
    a, c, f = X.a, X.c, X.f
    if d is not None:
        d = normalize_discriminant(d)
    places = [Place.finite(p) for p in bad_primes(X, d)] + [Place.real()]
    rows = []
    for v in places:
        if d is not None and splitting_type(d, v) != "split":
            # the Q_v-obstruction is 2-torsion and dies over the quadratic completion
            rows.append(LocalSolvability(v, True, INF, frozenset(), "non-split: every conic has points"))
            continue
        r = chatelet_local_solvable(a, c, f, v, max_depth)
        if d is not None:
            r.note = "split: same as over Q_v"
        rows.append(r)
    name = "Q" if d is None else f"Q(sqrt({d}))"
    return AdelicReport(all(r.solvable for r in rows), name, rows)


# ---------------------------------------------------------------------------
# places of L = Q(sqrt d)

@dataclass(frozen=True)
class LPlace:
    """A place w of Q(sqrt d): the place below, its splitting, and for split places the embedding.

    ``branch`` is sqrt(d) mod p (odd p), sqrt(d) mod 4 (p = 2), or the sign of sqrt(d) (real).
    """

    below: Place
    d: int
    splitting: str
    branch: int | None = None

    @property
    def is_complex(self) -> bool:
        return self.below.is_real and self.splitting != "split"

    def __str__(self):
        root = f"sqrt({self.d})"
        if self.branch is None:
            return f"{self.below} ({self.splitting})"
        if self.below.is_real:
            return f"real ({root} {'>' if self.branch > 0 else '<'} 0)"
        mod = 4 if self.below.p == 2 else self.below.p
        return f"{self.below} ({root} = {self.branch} mod {mod})"

    def to_json(self) -> dict:
        return {"label": str(self), "below": self.below.to_json(), "splitting": self.splitting,
                "branch": self.branch}


def places_over(d, v) -> list[LPlace]:
    d = normalize_discriminant(d)
    v = Place.coerce(v)
    s = splitting_type(d, v)
    if s != "split":
        return [LPlace(v, d, s)]
    if v.is_real:
        return [LPlace(v, d, s, 1), LPlace(v, d, s, -1)]
    p = v.p
    if p == 2:
        return [LPlace(v, d, s, 1), LPlace(v, d, s, 3)]
    roots = sorted(r for r in range(1, p) if (r * r - d) % p == 0)
    return [LPlace(v, d, s, r) for r in roots]


def a_is_local_square(a, w: LPlace) -> bool:
    if w.is_complex:
        return True
    if w.splitting == "split":
        return is_square_at(a, w.below)
    return square_in_local_quad_ext(a, LocalQuadExt(w.below, w.d, w.splitting))


def _embed(poly: Poly, d: int, p: int, N: int, branch: int) -> Form:
    """Image of a polynomial over Q(sqrt d) in Q_p[t] for the embedding fixed by ``branch``."""
    R = Fraction(sqrt_approx(d, p, N, branch))
    coeffs, floor = [], None
    for c in poly.coeffs:
        if isinstance(c, QuadElem) and c.y != 0:
            coeffs.append(c.x + c.y * R)
            fl = N + valuation(c.y, p)
            floor = fl if floor is None else min(floor, fl)
        else:
            coeffs.append(c.x if isinstance(c, QuadElem) else c)
    return Form(Poly(coeffs), floor)


def _split_value(z: QuadElem | Fraction, d: int, p: int, N: int, branch: int):
    """Square class representative in Q_p of z under the embedding, from a precision-N root."""
    if not isinstance(z, QuadElem) or z.y == 0:
        return z.x if isinstance(z, QuadElem) else z
    R = Fraction(sqrt_approx(d, p, N, branch))
    approx = z.x + z.y * R
    margin = 3 if p == 2 else 1
    if approx == 0 or valuation(approx, p) + margin > N + valuation(z.y, p):
        raise PrecisionError(f"cannot fix the square class of {format_quad(z)} at precision {N}")
    return approx


# ---------------------------------------------------------------------------
# evaluation images

@dataclass
class LocalEvalReport:
    place: LPlace
    value_set: frozenset
    witnesses: dict = field(default_factory=dict)
    method: str = ""

    def to_json(self) -> dict:
        return {"place": str(self.place), "place_data": self.place.to_json(),
                "value_set": _json_values(self.value_set),
                "witnesses": [{"value": str(k), "t": _json_param(t)}
                              for k, t in sorted(self.witnesses.items(), key=lambda kv: kv[0].half)],
                "method": self.method}


def _at(poly: Poly, t, ext_degree: int | None = None):
    """poly(t), or for t = inf the constant term on the chart u = 1/t (even reversal)."""
    if isinstance(t, str):
        return poly.reverse(chart_degree(ext_degree if ext_degree is not None else poly.degree))[0]
    return poly(t)


def evaluation_symbols(h: Poly, w: LPlace, a, c, f: Poly, t, precision: int = DEFAULT_PRECISION):
    """(locus symbol, value symbol) at the parameter t: (a, c f(t))_w and (a, h(t))_w.

    This evaluates directly at t and is independent of the disc search.
    """
    a, c = Q(a), Q(c)
    d = w.d
    p = w.below.p
    fL = f.over(d) if w.splitting != "split" else f
    loc = Q(c) * _at(fL, t, f.degree) if not isinstance(t, str) else c * _at(f, t)
    val = _at(h, t)
    if loc == 0 or val == 0:
        raise DegenerateInputError(f"t = {t} is a root of the locus or of the generator")
    if w.is_complex:
        return ZERO, ZERO
    if w.below.is_real:
        ls = HALF if (a < 0 and quad_sign(loc, w.branch) < 0) else ZERO
        vs = HALF if (a < 0 and quad_sign(val, w.branch) < 0) else ZERO
        return ls, vs
    if w.splitting == "split":
        N = 2 * precision
        lz = _split_value(loc, d, p, N, w.branch)
        vz = _split_value(val, d, p, N, w.branch)
        return hilbert_symbol(a, lz, p), hilbert_symbol(a, vz, p)
    norm = lambda z: z.norm() if isinstance(z, QuadElem) else Q(z) ** 2
    return hilbert_symbol(a, norm(loc), p), hilbert_symbol(a, norm(val), p)


def _generic_param(f: Poly, h: Poly) -> Fraction:
    t = Fraction(0)
    while f(t) == 0 or h(t) == 0:
        t += 1
    return t


def evaluation_image(h: Poly, w: LPlace, a, c, f: Poly, max_depth: int = DEFAULT_MAX_DEPTH,
                     precision: int = DEFAULT_PRECISION) -> LocalEvalReport:
    """Values of inv_w (a, h(t)) over t with X_t(L_w) != {}; h divides f/lead(f) over L."""
    a, c = Q(a), Q(c)
    d = w.d
    f = f.to_rational()
    if w.is_complex or a_is_local_square(a, w):
        return LocalEvalReport(w, frozenset({ZERO}), {ZERO: INF}, "a is a square in L_w")
    cof = f.over(d).monic().exact_div(h.over(d))
    alt = cof * (c * f.lead)
    N4 = chart_degree(f.degree)
    if w.below.is_real:
        found = {}
        for t in sign_sample_points(f * (h * h.conj()).to_rational()):
            if c * f(t) < 0:
                continue  # a < 0 here, so the fiber needs c f(t) > 0
            found.setdefault(HALF if quad_sign(h(t), w.branch) < 0 else ZERO, t)
        report = LocalEvalReport(w, frozenset(found), found, "real sign analysis")
    else:
        p = w.below.p
        if w.splitting == "split":
            ring = PadicRing(p)
            loc = c * f
            locus = (Form(loc), Form(loc.reverse(N4)))
            values = []
            for g in (h, alt):
                e = _embed(g, d, p, precision, w.branch)
                er = _embed(g.reverse(chart_degree(g.degree)), d, p, precision, w.branch)
                values.append((e, er))
            sym = lambda z: hilbert_symbol(a, z, p)
        else:
            ring = QuadLocalRing(p, d, w.splitting)
            loc = (c * f).over(d)
            locus = (Form(loc), Form(loc.reverse(N4)))
            values = [(Form(g.over(d)), Form(g.over(d).reverse(chart_degree(g.degree)))) for g in (h, alt)]
            sym = lambda z: hilbert_symbol(a, z, p)
        res = search(ring, sym, locus, values, max_depth)
        report = LocalEvalReport(w, res.values, res.witnesses, "disc search")
    for val, t in report.witnesses.items():
        ls, vs = evaluation_symbols(h, w, a, c, f, t, precision)
        if ls != ZERO or vs != val:
            raise AssertionError(f"witness t = {t} at {w} does not reproduce {val}")
    return report


# ---------------------------------------------------------------------------
# Brauer-Manin obstruction over a quadratic field

@dataclass
class BMReport:
    result: str  # obstruction_present | no_obstruction | inconclusive
    d: int
    reason: str
    dimension: int | None = None
    generator: str | None = None
    places: list = field(default_factory=list)
    total: frozenset = frozenset()
    limit_reached: bool = False

    def to_json(self) -> dict:
        return {"result": self.result, "d": self.d, "reason": self.reason,
                "dimension": self.dimension, "generator": self.generator,
                "places": [r.to_json() for r in self.places],
                "total": _json_values(self.total), "limit_reached": self.limit_reached}


def bm_obstruction_quadratic(X: ConicBundleData, d, max_depth: int = DEFAULT_MAX_DEPTH,
                             precision: int = DEFAULT_PRECISION) -> BMReport:
    """Decide whether Br(X_L) obstructs the adelic points of X over L = Q(sqrt d)."""
    _require_chatelet(X)
    d = normalize_discriminant(d)
    a, c, f = X.a, X.c, X.f
    if squarefree_part(a) == d:
        return BMReport("no_obstruction", d, "a is a square in L, so X has L-points")
    if X.has_rational_singular_point():
        return BMReport("no_obstruction", d, "a degree-1 singular point gives a rational point")
    try:
        adelic = adelic_solvable(X, d, max_depth)
    except ComputationLimitError as exc:
        return BMReport("inconclusive", d, f"adelic check hit a limit: {exc}", limit_reached=True)
    if not adelic.solvable:
        raise DegenerateInputError(f"X has no adelic points over Q(sqrt({d}))")
    S_L, _ = base_change_locus(X.locus, d)
    if any(fd.degree == 1 for fd in S_L):
        return BMReport("no_obstruction", d, "a degree-1 singular point over L gives an L-point")
    bq = brauer_quotient(S_L)
    if bq.dimension == 0:
        return BMReport("no_obstruction", d, "Br(X_L)/Br_0(X_L) = 0", 0)
    if bq.dimension > 1:
        return BMReport("inconclusive", d, "more than one generator over L", bq.dimension)
    gen = bq.generators[0]
    h = gen.second_slot()
    reports = []
    total = frozenset({ZERO})
    try:
        for p in bad_primes(X, d):
            for w in places_over(d, p):
                reports.append(evaluation_image(h, w, a, c, f, max_depth, precision))
        for w in places_over(d, "real"):
            reports.append(evaluation_image(h, w, a, c, f, max_depth, precision))
    except ComputationLimitError as exc:
        return BMReport("inconclusive", d, f"local computation hit a limit: {exc}", 1, str(gen),
                        reports, limit_reached=True)
    for r in reports:
        total = sumset(total, r.value_set)
    result = "no_obstruction" if ZERO in total else "obstruction_present"
    return BMReport(result, d, "sum of local invariants over the bad places", 1, str(gen), reports, total)


# ---------------------------------------------------------------------------
# parity criterion

def parity_criterion(a, c, d) -> InvariantValue:
    """Sum of (a, c)_v over the ramified places v of (a, c) that split in Q(sqrt d)."""
    d = normalize_discriminant(d)
    total = ZERO
    for v in ramified_places(a, c):
        if splitting_type(d, v) == "split":
            total = total + hilbert_symbol(a, c, v)
    return total


# ---------------------------------------------------------------------------
# verdicts

@dataclass
class Verdict:
    conclusion: str
    citations: list
    conditionality: str = "unconditional"
    over: str = "Q"
    places: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"conclusion": self.conclusion, "citations": list(self.citations),
                "conditionality": self.conditionality, "field": self.over,
                "places": self.places, "details": self.details}


def _place_rows_from_adelic(rep: AdelicReport) -> list:
    return [{"place": str(r.place), "value_set": _json_values(r.value_set),
             "witnesses": [] if r.witness is None else [_json_param(r.witness)],
             "solvable": r.solvable, "note": r.note} for r in rep.rows]


def _place_rows_from_bm(rep: BMReport) -> list:
    return [{"place": str(r.place), "value_set": _json_values(r.value_set),
             "witnesses": [_json_param(t) for _, t in sorted(r.witnesses.items(), key=lambda kv: kv[0].half)],
             "method": r.method} for r in rep.places]


def hasse_verdict(X: ConicBundleData, d=None, max_depth: int = DEFAULT_MAX_DEPTH,
                  precision: int = DEFAULT_PRECISION) -> Verdict:
    """Rule cascade deciding the Hasse principle for X over Q or over L = Q(sqrt d)."""
    if d is not None:
        d = normalize_discriminant(d)
    name = "Q" if d is None else f"Q(sqrt({d}))"
    n = X.geometric_fiber_count
    details = {"geometric_fiber_count": n}
    if X.has_rational_singular_point():
        return Verdict("rational_point_exists", ["lem-degree-one-point"], over=name, details=details)
    places = []
    adelic_Q = None
    if X.kind == "chatelet":
        rep = adelic_solvable(X, d, max_depth)
        places = _place_rows_from_adelic(rep)
        details["adelic_points"] = rep.solvable
        if not rep.solvable:
            return Verdict("no_adelic_points", ["local-solvability"], over=name,
                           places=places, details=details)
        adelic_Q = rep.solvable if d is None else adelic_solvable(X, None, max_depth).solvable
        details["adelic_points_over_Q"] = adelic_Q
    bq = brauer_quotient(X.locus)
    details["brauer_quotient_dimension"] = bq.dimension
    conditional = "schinzel_conditional" if n > 5 else "unconditional"
    if d is None:
        if bq.dimension == 0:
            return Verdict("hasse_principle_holds_over_L", ["lem-norm-product", "thm-bmo-only-obstruction"],
                           conditional, name, places, details)
        return Verdict("inconclusive", ["lem-norm-product"], over=name, places=places, details=details)
    if n == 4 and (bq.dimension > 0 or adelic_Q):
        return Verdict("hasse_principle_holds_over_L", ["thm-four-fibers"], over=name,
                       places=places, details=details)
    if n == 4:
        critical = critical_extensions_four_fibers(X)
        details["critical_set"] = sorted(critical)
        if d not in critical:
            return Verdict("hasse_principle_holds_over_L",
                           ["cor-avoid-three-extensions", "thm-bmo-only-obstruction"],
                           over=name, places=places, details=details)
        details["case"] = classify_nonsurjective(X, d)
    else:
        M = problematic_set_M(X)
        details["problematic_set"] = sorted(M)
        if d not in M:
            return Verdict("hasse_principle_holds_over_L", ["cor-problematic-set", "thm-bmo-only-obstruction"],
                           conditional, name, places, details)
    if X.kind != "chatelet":
        return Verdict("inconclusive", ["cor-not-surjective"], over=name, places=places, details=details)
    bm = bm_obstruction_quadratic(X, d, max_depth, precision)
    details["bm"] = {"result": bm.result, "reason": bm.reason, "generator": bm.generator,
                     "total": _json_values(bm.total)}
    if bm.places:
        places = _place_rows_from_bm(bm)
    if bm.result == "obstruction_present":
        return Verdict("bm_obstruction_over_L", ["cor-not-surjective", "lem-norm-product"],
                       over=name, places=places, details=details)
    if bm.result == "no_obstruction":
        return Verdict("hasse_principle_holds_over_L", ["thm-bmo-only-obstruction"], conditional,
                       name, places, details)
    details["limit_reached"] = bm.limit_reached
    return Verdict("inconclusive", [], over=name, places=places, details=details)
