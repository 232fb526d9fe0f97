from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legproj import gf2


def brute_span(rows):
    """Every XOR of a subset of ``rows``."""
    out = {0}
    for r in rows:
        out |= {x ^ r for x in out}
    return out


def brute_rank(rows):
    return len(brute_span(rows)).bit_length() - 1


vectors = st.integers(min_value=0, max_value=(1 << 7) - 1)
row_lists = st.lists(vectors, max_size=6)


def test_bits_roundtrip():
    assert gf2.from_bits("1000") == 1
    assert gf2.to_bits(1, 4) == "1000"
    assert gf2.to_bits(gf2.from_bits("0110"), 4) == "0110"
    with pytest.raises(ValueError):
        gf2.from_bits("10x")


@given(row_lists)
def test_rank_matches_brute_force(rows):
    assert gf2.rank(rows) == brute_rank(rows)


@given(row_lists, vectors)
def test_span_membership_matches_brute_force(rows, v):
    assert gf2.in_span(v, rows) == (v in brute_span(rows))


@given(row_lists, vectors)
def test_span_witness_sums_to_target(rows, v):
    w = gf2.span_witness(v, rows)
    if v not in brute_span(rows):
        assert w is None
        return
    acc = 0
    for i in w:
        acc ^= rows[i]
    assert acc == v


@given(st.lists(vectors, max_size=7))
def test_kernel_is_full_nullspace(images):
    ker = gf2.kernel(images)
    n = len(images)

    def image(x):
        out = 0
        for i in range(n):
            if x >> i & 1:
                out ^= images[i]
        return out

    assert all(image(k) == 0 for k in ker)
    assert gf2.rank(ker) == len(ker)
    zeros = sum(1 for x in range(1 << n) if image(x) == 0)
    assert zeros == 1 << len(ker)


def test_in_span_dimension_check():
    with pytest.raises(gf2.DimMismatch):
        gf2.in_span(0b10000, [0b1], dim=3)


def test_standard_form_pairs_meridian_with_longitude():
    s = gf2.SymplecticSpace.standard(2)
    m1, l1, m2, l2 = (gf2.from_bits(b) for b in ("1000", "0100", "0010", "0001"))
    assert s.pair(m1, l1) == 1 and s.pair(m2, l2) == 1
    assert s.pair(m1, m2) == 0 and s.pair(m1, l2) == 0 and s.pair(l1, l1) == 0
    assert s.genus == 2


@given(st.integers(1, 3), st.data())
def test_orthogonal_complement(g, data):
    s = gf2.SymplecticSpace.standard(g)
    a = data.draw(st.integers(1, (1 << s.dim) - 1))
    basis = gf2.orthogonal_complement(s, a)
    assert len(basis) == s.dim - 1 == gf2.rank(basis)
    assert all(s.pair(a, x) == 0 for x in basis)
    assert gf2.in_span(a, basis)
    brute = {x for x in range(1 << s.dim) if s.pair(a, x) == 0}
    assert brute_span(basis) == brute


def test_orthogonal_complement_of_zero():
    with pytest.raises(gf2.ZeroVector):
        gf2.orthogonal_complement(gf2.SymplecticSpace.standard(1), 0)


@settings(max_examples=60)
@given(row_lists, st.data())
def test_quotient_classes(ambient, data):
    amb_span = sorted(brute_span(ambient))
    kill = data.draw(st.lists(st.sampled_from(amb_span), max_size=3))
    q = gf2.quotient_classes(ambient, kill)
    ks = brute_span(kill)
    for x, y in combinations(amb_span[:12], 2):
        assert q.same_class(x, y) == ((x ^ y) in ks)
    for x in amb_span[:12]:
        assert q.reduce(x) == 0 if x in ks else q.reduce(x) != 0


def test_quotient_rejects_outside_vectors():
    q = gf2.quotient_classes([0b011], [])
    with pytest.raises(gf2.NotInAmbient):
        q.reduce(0b100)
    with pytest.raises(gf2.NotInAmbient):
        gf2.quotient_classes([0b011], [0b100])
