import itertools

from hypothesis import given, strategies as st

from conic_bundles.f2 import F2Space, bits, from_bits, ones, rank, weight


def span(vectors):
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return out


def test_bits_roundtrip():
    assert bits(0b011, 3) == "110"
    assert from_bits("110") == 0b011
    assert weight(0b1011) == 3
    assert ones(4) == 0b1111


@given(st.integers(1, 6).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 2**n - 1), max_size=6))))
def test_rank_and_quotient(data):
    n, vecs = data
    assert 2 ** rank(vecs) == len(span(vecs))
    space = F2Space(n, vecs + [ones(n)])
    assert set(space.elements) == span(vecs + [ones(n)])
    assert space.quotient_dim == space.dim - 1
    reps = space.coset_representatives()
    assert len(reps) == 2 ** space.quotient_dim - 1
    # representatives are distinct nonzero cosets of minimal weight
    cosets = {min(r, r ^ ones(n)) for r in reps}
    assert len(cosets) == len(reps)
    for r in reps:
        assert weight(r) <= weight(r ^ ones(n))


def test_quotient_coordinates_span():
    space = F2Space(4, [0b0011, 0b1100, 0b1111])
    assert space.quotient_dim == 1
    v = space.quotient_basis[0]
    assert space.quotient_coordinates(v) == [1]
    assert space.quotient_coordinates(v ^ ones(4)) == [1]
    assert space.quotient_coordinates(ones(4)) == [0]
