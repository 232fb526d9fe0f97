from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from legproj.carter import carter_surface
from legproj.gauss import GaussDiagram, canonical_form, parse, random_diagram, serialize, validate
from legproj.moves import (
    KINDS,
    R2_VARIANTS,
    MoveInstance,
    PatternMismatch,
    StaleInstance,
    _r2_insert,
    _triangles,
    applicable_moves,
    apply_move,
    fuzz_sequence,
    involved_chords,
    inverse_sites,
)
from legproj.parity import EVEN, ODD, homology_class, parities
from legproj.projection import move_parity_checks

TREFOIL = parse("X1+a,X2+b,X3+a,X1+b,X2+a,X3+b")
VTREFOIL = parse("X1+a,X2+a,X1+b,X2+b")

diagrams = st.builds(random_diagram, st.integers(0, 6), st.sampled_from((0, 1, 2)),
                     st.integers(0, 2 ** 32))


def test_r1_insert_on_empty_diagram():
    ms = applicable_moves(GaussDiagram(), ["R1L_insert"])
    assert len(ms) == 4 and {m.site for m in ms} == {(0,)}
    assert serialize(apply_move(GaussDiagram(), ms[0])) == "X1+a,K+,K-,X1+b"


def test_r1_delete_pattern_found():
    d = parse("X1+a,X2-a,K-,K+,X2-b,X1+b")
    ms = applicable_moves(d, ["R1L_delete"])
    assert [m.site for m in ms] == [(2,)]
    assert serialize(apply_move(d, ms[0])) == "X1+a,X1+b"


def brute_triangles(d):
    """Chord triples plus three disjoint adjacent-end pairs, one per chord pair."""
    ev = d.events
    n = len(ev)
    adj = [(p, (p + 1) % n) for p in range(n) if n > 1
           and all(hasattr(ev[q], "id") for q in (p, (p + 1) % n))
           and ev[p].id != ev[(p + 1) % n].id]
    out = set()
    for s1 in adj:
        for s2 in adj:
            for s3 in adj:
                if len({*s1, *s2, *s3}) != 6:
                    continue
                pairs = [frozenset((ev[p].id, ev[q].id)) for p, q in (s1, s2, s3)]
                ids = frozenset().union(*pairs)
                if len(ids) == 3 and len(set(pairs)) == 3:
                    out.add(tuple(sorted(ids)))
    return out


def test_trefoil_r3_sites():
    assert {t for t, _ in _triangles(TREFOIL)} == brute_triangles(TREFOIL) == {(1, 2, 3)}
    assert len(_triangles(TREFOIL)) == 2
    ms = applicable_moves(TREFOIL, ["R3L"])
    assert len(ms) == 2


@given(diagrams)
def test_r3_instances_are_triangles(d):
    found = {t for t, _ in _triangles(d)}
    assert found == brute_triangles(d)
    for m in applicable_moves(d, ["R3L"]):
        assert m.site in found


@settings(max_examples=40)
@given(diagrams)
def test_r2_side_rule_matches_genus_oracle(d):
    """The fast face-side test admits exactly the genus-preserving inserts."""
    admitted = {(m.site, m.variant) for m in applicable_moves(d, ["R2L_insert"])}
    g = carter_surface(d).genus
    n = len(d.events)
    gaps = range(max(n, 1))
    for var, (_, mode) in enumerate(R2_VARIANTS):
        if mode == "AB":
            sites = [(i, j) for i in gaps for j in gaps]
        elif mode == "BA":
            sites = [(i, i) for i in gaps]
        else:
            sites = [(i, j) for i in range(n) if not hasattr(d.events[i], "id") for j in range(n)]
        for i, j in sites:
            local = carter_surface(_r2_insert(d, i, j, var)).genus == g
            assert local == (((i, j), var) in admitted)


@given(diagrams, st.randoms(use_true_random=False))
def test_insert_delete_inverse(d, rnd):
    for kind in ("R1L_insert", "R2L_insert"):
        ms = applicable_moves(d, [kind])
        m = rnd.choice(ms) if ms else None
        if m is None:
            continue
        after = apply_move(d, m)
        inv = inverse_sites(d, after, m)
        assert inv in applicable_moves(after, [inv.kind])
        assert apply_move(after, inv) == d


@given(diagrams)
def test_r3_is_an_involution(d):
    for m in applicable_moves(d, ["R3L"]):
        after = apply_move(d, m)
        inv = inverse_sites(d, after, m)
        assert canonical_form(apply_move(after, inv)) == canonical_form(d)
        assert carter_surface(after).genus == carter_surface(d).genus


@given(diagrams, st.randoms(use_true_random=False))
def test_parity_axioms(d, rnd):
    for kind in KINDS:
        ms = applicable_moves(d, [kind])
        for m in rnd.sample(ms, min(3, len(ms))):
            checks = move_parity_checks(d, m)
            checks.pop("r3_equal", None)
            assert all(checks.values()), (m.describe(), checks)


def test_r3_triple_can_mix_parities():
    # A local R3 triangle on a torus with two odd crossings and one even one.
    d = parse("X1+a,X2-b,X1+b,X3+a,X2-a,X3+b")
    assert carter_surface(d).genus == 1
    (m,) = [m for m in applicable_moves(d, ["R3L"]) if m.site == (1, 2, 3)][:1]
    p = parities(d).values
    assert (p[1], p[2], p[3]) == (ODD, EVEN, ODD)
    q = parities(apply_move(d, m)).values
    assert (q[1], q[2], q[3]) == (ODD, EVEN, ODD)
    assert homology_class(d, 1) ^ homology_class(d, 2) ^ homology_class(d, 3) == 0


def test_involved_chords():
    m = applicable_moves(TREFOIL, ["R2L_insert"])[0]
    after = apply_move(TREFOIL, m)
    assert involved_chords(TREFOIL, after, m) == {4, 5}


def test_stale_and_mismatched_instances():
    m = applicable_moves(TREFOIL, ["R1L_insert"])[0]
    with pytest.raises(StaleInstance):
        apply_move(VTREFOIL, m)
    with pytest.raises(PatternMismatch):
        apply_move(TREFOIL, MoveInstance("R1L_delete", (1,), 0, TREFOIL))
    with pytest.raises(PatternMismatch):
        apply_move(TREFOIL, MoveInstance("R3L", (1, 2, 3), 9, TREFOIL))
    with pytest.raises(ValueError):
        applicable_moves(TREFOIL, ["R4"])


def test_fuzz_sequence():
    assert fuzz_sequence(TREFOIL, 0, seed=1) == []
    a = fuzz_sequence(TREFOIL, 50, seed=3)
    b = fuzz_sequence(TREFOIL, 50, seed=3)
    assert [(m.describe(), x) for m, x in a] == [(m.describe(), x) for m, x in b]
    for _, x in a:
        assert validate(x.events) == x
    kinds = {m.kind for m, _ in fuzz_sequence(TREFOIL, 60, seed=random.Random(0).randrange(99))}
    assert len(kinds) >= 3
