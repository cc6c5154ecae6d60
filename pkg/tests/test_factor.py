from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conic_bundles.arith import QuadElem
from conic_bundles.errors import DegenerateInputError, UnsupportedError
from conic_bundles.factor import (
    conjugate_factorization,
    factor_over_Q,
    factor_over_quad,
    is_irreducible_mod_p,
    is_irreducible_over_Q,
    quadratic_subfields,
    rational_roots,
)
from conic_bundles.poly import Poly

small = st.integers(-6, 6)
linear_or_quadratic = st.one_of(
    st.tuples(small).map(lambda c: Poly([c[0], 1])),
    st.tuples(small, small).map(lambda c: Poly([c[0], c[1], 1])),
)


def brute_rational_roots(f: Poly) -> set:
    """Candidates p/q with p | a0, q | an, by exhaustive search."""
    cs = [int(c) for c in f.coeffs]
    roots = set()
    if cs[0] == 0:
        roots.add(Fraction(0))
        return roots | brute_rational_roots(Poly(cs[1:]))
    for p in range(1, abs(cs[0]) + 1):
        if cs[0] % p:
            continue
        for q in range(1, abs(cs[-1]) + 1):
            if cs[-1] % q:
                continue
            for s in (1, -1):
                x = Fraction(s * p, q)
                if f(x) == 0:
                    roots.add(x)
    return roots


def test_worked_quartic_is_irreducible():
    f = Poly([1, 0, 7, 0, 5])
    assert is_irreducible_over_Q(f)
    assert is_irreducible_mod_p(f, 3)
    assert not is_irreducible_mod_p(f, 29)


@settings(max_examples=60, deadline=None)
@given(st.lists(linear_or_quadratic, min_size=1, max_size=3), st.integers(1, 4))
def test_factorization_expands_back(parts, k):
    f = Poly([k])
    for g in parts:
        f = f * g
    fac = factor_over_Q(f)
    assert fac.expand() == f
    assert sum(e for _, e in fac.factors) >= 1
    for g, _ in fac.factors:
        assert g.is_monic()
        # every factor of degree <= 2 is irreducible iff it has no rational root
        if g.degree == 2:
            assert not rational_roots(g)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-8, 8), min_size=2, max_size=5).filter(lambda c: c[-1] != 0 and c[0] != 0))
def test_rational_roots_against_brute_force(cs):
    f = Poly(cs)
    assert set(rational_roots(f)) == brute_rational_roots(f)


def test_factor_limits():
    with pytest.raises(UnsupportedError):
        factor_over_Q(Poly([1, 0, 0, 0, 0, 0, 0, 1]))


def test_factor_over_quadratic_field():
    f = Poly([1, 0, 7, 0, 5])
    fac = factor_over_quad(f, 29)
    assert fac.content == 5
    assert len(fac.factors) == 2
    r = QuadElem(29, Fraction(7, 10), Fraction(1, 10))
    assert Poly([r, 0, 1]) in [g for g, _ in fac.factors]
    assert len(factor_over_quad(f, 2).factors) == 1
    c, g = conjugate_factorization(f, 29)
    assert (g * g.conj()).to_rational() * c == f


def test_quadratic_subfields():
    t = Poly.t()
    assert quadratic_subfields(Poly([1, 0, 7, 0, 5])) == {29}
    assert quadratic_subfields(t**4 - 10 * t**2 + 1) == {2, 3, 6}
    assert quadratic_subfields(t**4 - 2) == {2}
    assert quadratic_subfields(Poly([1, 1, 1, 1, 1])) == {5}
    assert quadratic_subfields(t**4 + t + 1) == set()
    with pytest.raises(DegenerateInputError):
        quadratic_subfields((t * t - 2) * (t * t - 3))
