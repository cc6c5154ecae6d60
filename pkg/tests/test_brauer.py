import random
from fractions import Fraction

import pytest

from conic_bundles.arith import QuadElem
from conic_bundles.brauer import (
    ConicBundleData,
    FiberDatum,
    base_change_locus,
    brauer_quotient,
    classify_nonsurjective,
    critical_extensions_four_fibers,
    problematic_set_M,
    residue_is_square,
    restriction_map,
)
from conic_bundles.errors import DegenerateInputError
from conic_bundles.poly import Poly

from oracles import brute_V, explicit_norm, random_fiber_data

t = Poly.t()
WORKED = ConicBundleData.chatelet(5, Fraction(3, 5), Poly([1, 0, 7, 0, 5]))


def general_pair():
    # Nm(1 + sqrt 2) = -1 and Nm(2 + sqrt 5) = -1: the product is a square
    return ConicBundleData.general([
        FiberDatum.make(t * t - 2, QuadElem(2, 1, 1)),
        FiberDatum.make(t * t - 5, QuadElem(5, 2, 1)),
    ])


def test_chatelet_loci():
    assert [(str(fd.point), fd.alpha_str()) for fd in WORKED.locus] == [("t^4 + 7/5*t^2 + 1/5", "5")]
    X = ConicBundleData.chatelet(5, 1, t * (t - 1) * (t * t - 2))
    assert sorted(str(fd.point) for fd in X.locus) == ["t", "t - 1", "t^2 - 2"]
    assert X.geometric_fiber_count == 4


def test_cubic_chatelet_has_a_fiber_at_infinity():
    X = ConicBundleData.chatelet(-1, 1, Poly([1, 1, 0, 1]))
    assert X.geometric_fiber_count == 4
    assert any(fd.degree == 1 and fd.point == t for fd in X.locus)


def test_contractible_fibers_are_dropped():
    # a = 5 is a square in Q(sqrt 5): that fiber is a pair of conjugate (-1)-curves
    X = ConicBundleData.chatelet(5, 1, (t * t - 5) * (t * t - 2))
    assert [str(fd.point) for fd in X.locus] == ["t^2 - 2"]
    assert residue_is_square(t * t - 5, Poly([5]))
    assert residue_is_square(t * t - 5, Poly([6, 2]))  # (1 + sqrt 5)^2
    assert not residue_is_square(t * t - 5, Poly([3, 1]))


def test_input_validation():
    with pytest.raises(DegenerateInputError):
        ConicBundleData.chatelet(4, 1, Poly([1, 0, 0, 0, 1]))
    with pytest.raises(DegenerateInputError):
        ConicBundleData.chatelet(5, 1, (t - 1) ** 2 * (t * t + 1))
    with pytest.raises(DegenerateInputError):
        ConicBundleData.general([FiberDatum.make(t * t - 2, QuadElem(2, 1, 1))])
    with pytest.raises(DegenerateInputError):
        ConicBundleData.general([FiberDatum.make(t, 4), FiberDatum.make(t - 1, 4)])


def test_worked_quotients():
    assert brauer_quotient(WORKED.locus).dimension == 0
    S_L, orbits = base_change_locus(WORKED.locus, 29)
    assert [fd.degree for fd in S_L] == [2, 2]
    assert orbits[0].action == "swapped"
    bq = brauer_quotient(S_L)
    assert bq.dimension == 1
    assert str(bq.generators[0]) == "(5, t^2 + (7/10+1/10*sqrt(29)))"


def test_split_quartic_has_dimension_two():
    X = ConicBundleData.chatelet(3, 1, t * (t - 1) * (t + 1) * (t - 2))
    bq = brauer_quotient(X.locus)
    assert bq.dimension == 2
    assert set(bq.space.elements) == {e for e in range(16) if bin(e).count("1") % 2 == 0}


def test_brauer_quotient_against_enumeration():
    rng = random.Random(2024)
    done = 0
    while done < 60:
        data = random_fiber_data(rng)
        if data is None:
            continue
        points, alphas = data
        S = [FiberDatum.make(P, al) for P, al in zip(points, alphas)]
        V = brute_V([explicit_norm(P, al) for P, al in zip(points, alphas)])
        as_ints = {sum(e << i for i, e in enumerate(eps)) for eps in V}
        bq = brauer_quotient(S)
        assert set(bq.space.elements) == as_ints
        assert 2 ** (bq.dimension + 1) == len(V)
        if len(S) == 1:
            assert bq.dimension == 0
        done += 1


def test_base_change_examples():
    S = [FiberDatum.make(t * t - 2, 3)]
    S_L, orbits = base_change_locus(S, -1)
    assert len(S_L) == 1 and orbits[0].action == "fixed"
    S_L, orbits = base_change_locus(S, 2)
    assert sorted(str(fd.point) for fd in S_L) == ["t + sqrt(2)", "t - sqrt(2)"]
    assert orbits[0].action == "swapped"


def test_restriction_examples():
    r = restriction_map(WORKED.locus, 29)
    assert (r.source.quotient_dim, r.target.quotient_dim) == (0, 1)
    assert not r.surjective
    r = restriction_map(WORKED.locus, 2)
    assert r.surjective and r.injective
    X = general_pair()
    r = restriction_map(X.locus, -1)
    assert brauer_quotient(X.locus).dimension == 0
    assert r.target.quotient_dim == 1 and not r.surjective


def test_classification_examples():
    assert classify_nonsurjective(WORKED, 29) == "case_i"
    assert classify_nonsurjective(WORKED, 2) == "not_applicable"
    assert classify_nonsurjective(general_pair(), -1) == "case_ii"


def test_critical_and_problematic_sets():
    assert critical_extensions_four_fibers(WORKED) == {29}
    assert problematic_set_M(WORKED) == {29}
    X = ConicBundleData.chatelet(5, 1, t**4 - 10 * t**2 + 1)
    assert critical_extensions_four_fibers(X) == {2, 3, 6}
    X = ConicBundleData.chatelet(5, 1, t**4 + t + 1)
    assert critical_extensions_four_fibers(X) == set()
    assert problematic_set_M(X) == set()
    assert problematic_set_M(general_pair()) == {2, 5, -1}
    assert critical_extensions_four_fibers(general_pair()) == {-1}
    assert problematic_set_M(ConicBundleData.general([])) == set()
