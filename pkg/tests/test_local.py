import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conic_bundles.arith import QuadElem
from conic_bundles.errors import DegenerateInputError, PrecisionError
from conic_bundles.local import (
    HALF,
    INF,
    ZERO,
    LocalQuadExt,
    PadicNum,
    Place,
    candidate_places,
    chatelet_symbol_at,
    conic_solvable_over_local_ext,
    hilbert_symbol,
    is_square_at,
    ramified_places,
    splitting_type,
    square_in_local_quad_ext,
    sumset,
    symbol_value_set,
)
from conic_bundles.local.padic import sqrt_approx, tonelli_shanks
from conic_bundles.local.real import isolate_real_roots, quad_sign, sign_sample_points
from conic_bundles.poly import Poly

from oracles import SMALL_PRIMES, brute_hilbert, rational_square_class

nonzero_rationals = st.fractions(max_denominator=40).filter(lambda x: x != 0 and abs(x) < 200)


def as_fraction(inv):
    return Fraction(1, 2) if inv.half else Fraction(0)


def test_invariant_arithmetic():
    assert HALF + HALF == ZERO
    assert str(HALF) == "1/2" and str(ZERO) == "0"
    assert sumset({ZERO, HALF}, {HALF}) == frozenset({ZERO, HALF})


def test_places_and_splitting():
    assert Place.coerce("real").is_real
    assert Place.coerce(5) == Place.finite(5)
    with pytest.raises(ValueError):
        Place.coerce(6)
    assert splitting_type(29, 5) == "split"
    assert splitting_type(29, 3) == "inert"
    assert splitting_type(29, 2) == "inert"
    assert splitting_type(29, 29) == "ramified"
    assert splitting_type(29, "real") == "split"
    assert splitting_type(-1, 2) == "ramified"
    assert splitting_type(-7, 2) == "split"
    assert splitting_type(3, 2) == "ramified"
    assert splitting_type(5, 2) == "inert"


def test_hilbert_examples():
    assert hilbert_symbol(-1, -1, "real") == HALF
    assert hilbert_symbol(-1, -1, 2) == HALF
    assert hilbert_symbol(2, 3, 3) == HALF
    assert hilbert_symbol(5, Fraction(3, 5), 3) == HALF
    assert hilbert_symbol(5, Fraction(3, 5), 5) == HALF
    assert ramified_places(5, 3) == {Place.finite(3), Place.finite(5)}
    assert ramified_places(-1, -1) == {Place.finite(2), Place.real()}
    with pytest.raises(DegenerateInputError):
        hilbert_symbol(0, 3, 3)


@settings(max_examples=200, deadline=None)
@given(nonzero_rationals, nonzero_rationals, st.sampled_from(SMALL_PRIMES[:8]))
def test_hilbert_matches_brute_force_on_rationals(a, b, p):
    assert as_fraction(hilbert_symbol(a, b, p)) == brute_hilbert(a, b, p)


@settings(max_examples=200, deadline=None)
@given(nonzero_rationals, nonzero_rationals)
def test_product_formula(a, b):
    total = ZERO
    for v in candidate_places(a, b):
        total = total + hilbert_symbol(a, b, v)
    assert total == ZERO


@settings(max_examples=200, deadline=None)
@given(nonzero_rationals, nonzero_rationals, nonzero_rationals, st.sampled_from([2, 3, 5, 7, "real"]))
def test_bilinear_and_symmetric(a, b, c, v):
    assert hilbert_symbol(a, b, v) == hilbert_symbol(b, a, v)
    assert hilbert_symbol(a, b * c, v) == hilbert_symbol(a, b, v) + hilbert_symbol(a, c, v)
    assert hilbert_symbol(a, -a, v) == ZERO


@settings(max_examples=200, deadline=None)
@given(nonzero_rationals, st.sampled_from(SMALL_PRIMES[:8]))
def test_local_squares_against_oracle(z, p):
    unit_square = rational_square_class(1, p)
    assert is_square_at(z, p) == (rational_square_class(z, p) == unit_square)


def test_local_quadratic_extensions():
    # 3 is inert in Q(sqrt 29): the unramified quadratic extension of Q_3 contains sqrt 2
    assert square_in_local_quad_ext(2, LocalQuadExt.of(29, 3))
    assert not square_in_local_quad_ext(3, LocalQuadExt.of(29, 3))
    # 5 splits in Q(sqrt -1), so the completion is Q_5 itself
    assert not square_in_local_quad_ext(2, LocalQuadExt.of(-1, 5))
    assert conic_solvable_over_local_ext(5, Fraction(3, 5), LocalQuadExt.of(29, 3))
    assert not conic_solvable_over_local_ext(5, Fraction(3, 5), LocalQuadExt.of(29, 5))


@given(st.sampled_from(SMALL_PRIMES[1:]), st.integers(1, 10**6))
def test_tonelli_shanks(p, x):
    n = x * x % p
    if n == 0:
        return
    r = tonelli_shanks(n, p)
    assert r * r % p == n


@settings(max_examples=100, deadline=None)
@given(nonzero_rationals, st.sampled_from(SMALL_PRIMES), st.integers(4, 20))
def test_padic_sqrt_of_squares(z, p, N):
    x = PadicNum.from_rational(z * z, p, N)
    r = x.sqrt()
    assert r.valuation == x.valuation // 2
    m = p ** r.N
    assert (r.unit * r.unit - x.unit) % m == 0


def test_padic_precision_and_branches():
    with pytest.raises(PrecisionError):
        PadicNum.from_rational(17, 2, 2).is_square()
    R1, R2 = sqrt_approx(29, 5, 10, 2), sqrt_approx(29, 5, 10, 3)
    assert R1 % 5 == 2 and R2 % 5 == 3
    assert (R1 * R1 - 29) % 5**10 == 0
    R = sqrt_approx(-7, 2, 12, 1)
    assert R % 4 == 1 and (R * R + 7) % 2**12 == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6).filter(lambda c: c[-1] != 0))
def test_real_root_isolation(cs):
    P = Poly(cs)
    intervals = isolate_real_roots(P)
    for lo, hi in intervals:
        assert P(lo) != 0 and P(hi) != 0
    # every sign pattern seen on a fine grid is seen at the sample points
    grid = {1 if P(Fraction(k, 8)) > 0 else -1 for k in range(-200, 201) if P(Fraction(k, 8)) != 0}
    samples = {1 if P(t) > 0 else -1 for t in sign_sample_points(P)}
    assert grid <= samples


def test_quad_sign():
    z = QuadElem(29, Fraction(7, 10), Fraction(1, 10))
    assert quad_sign(z, 1) == 1
    assert quad_sign(z, -1) == 1  # (7 - 5.38)/10 > 0
    assert quad_sign(QuadElem(2, 1, -1), 1) == -1
    assert quad_sign(QuadElem(2, 1, -1), -1) == 1


def sampled_values(a, c, f, p, rng, n=300):
    seen = set()
    for _ in range(n):
        t = Fraction(rng.randint(-60, 60), rng.choice([1, 1, 2, 3, 4, 5, 7, 9, 25]))
        y = c * f(t)
        if y != 0:
            seen.add(brute_hilbert(a, y, p))
    return seen


WORKED = (5, Fraction(3, 5), Poly([1, 0, 7, 0, 5]))


@pytest.mark.parametrize("p,expected", [(2, {ZERO}), (3, {HALF}), (5, {ZERO, HALF}), (7, {ZERO, HALF}),
                                        (29, {ZERO})])
def test_worked_value_sets(p, expected):
    a, c, f = WORKED
    vs = symbol_value_set(a, c, f, p)
    assert vs.values == frozenset(expected)
    for val, t in vs.witnesses.items():
        assert chatelet_symbol_at(a, c, f, t, p) == val
        if t != INF:
            assert brute_hilbert(a, c * f(t), p) == as_fraction(val)


def test_value_sets_contain_random_samples():
    rng = random.Random(11)
    checked = 0
    while checked < 25:
        a = rng.choice([-1, 2, 3, 5, -3, 7, 10, -2])
        c = Fraction(rng.randint(1, 12) * rng.choice([1, -1]), rng.randint(1, 3))
        f = Poly([rng.randint(-6, 6) for _ in range(4)] + [rng.choice([1, 2, 3, -1])])
        if f(0) == 0:
            continue
        p = rng.choice([2, 3, 5, 7])
        vs = symbol_value_set(a, c, f, p)
        assert {as_fraction(v) for v in vs.values} >= sampled_values(a, c, f, p, rng)
        for val, t in vs.witnesses.items():
            assert chatelet_symbol_at(a, c, f, t, p) == val
        checked += 1
