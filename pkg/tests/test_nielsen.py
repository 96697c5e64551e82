import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup

from conftest import bundled
from hurwitz import DATA
from hurwitz.cyclo import parse_character_table, structure_constant
from hurwitz.nielsen import (LimitExceeded, NielsenError, NielsenTuple, RawTuple,
                             count_class_systems, enumerate_23_triples,
                             enumerate_class_systems, space_for)
from hurwitz.permgroup import ClassVector, GroupError, Permutation


def class_elements(G, name):
    rep = G.cls(name).representative
    seen, todo = {rep}, [rep]
    while todo:
        x = todo.pop()
        for g in G.generators:
            y = x ^ g
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return list(seen)


def brute_force_li(G, names):
    """Generating tuples with product 1, divided by |G/Z|; sympy decides generation."""
    elems = [class_elements(G, nm) for nm in names]
    last = set(elems[-1])
    found = 0
    for combo in itertools.product(*elems[:-1]):
        prod = Permutation.identity(G.degree)
        for x in combo:
            prod = prod * x
        closing = prod.inverse()
        if closing not in last:
            continue
        H = PermutationGroup([SymPerm(list(x.images)) for x in combo])
        if H.order() == G.order:
            found += 1
    quotient = G.order // G.center_order
    assert found % quotient == 0
    return found // quotient


ORACLE = [
    ("S3", "2A,2A,2A,2A"), ("S3", "2A,3A,2A"),
    ("A4", "2A,3A,3A"), ("A4", "3A,3B,2A,2A"), ("A4", "3A,3A,3A,3A"),
    ("S4", "2A,3A,4A"), ("S4", "2B,3A,4A"), ("S4", "2B,2B,2B,2B"), ("S4", "4A,4A,2A,2B"),
    ("A5", "2A,3A,5A"), ("A5", "2A,5A,5B"), ("A5", "3A,3A,5A"), ("A5", "2A,2A,2A,3A"),
    ("L2_7", "2A,3A,7A"), ("L2_7", "3A,3A,4A"),
]


@pytest.mark.parametrize("name,cv", ORACLE)
def test_counts_match_brute_force(name, cv):
    G = bundled(name)
    vec = ClassVector.parse(G, cv)
    expected = brute_force_li(G, cv.split(","))
    assert count_class_systems(G, vec) == expected
    assert len(enumerate_class_systems(G, vec)) == expected


def test_a5_six_five_cycles_against_character_count():
    # 5-cycles of one class generate A5 unless they lie in a common C5; each of
    # the six C5 holds x, x^-1 of 5A, giving C(6,3) product-one 6-tuples
    G = bundled("A5")
    table = parse_character_table((DATA / "tables" / "A5.txt").read_text())
    all_tuples = structure_constant(table, ["5A"] * 6) * G.order
    assert all_tuples.denominator == 1
    expected = (all_tuples - 6 * 20) / G.order
    assert count_class_systems(G, ClassVector.parse(G, ",".join(["5A"] * 6))) == expected == 1015


def test_m11_total_matches_orbit_sizes():
    # sum of the M11 (11A^4) orbit sizes 3*2 + 33 + 3*198 + 864 + 2996
    M11 = bundled("M11")
    assert count_class_systems(M11, ClassVector.parse(M11, "11A,11A,11A,11A")) == 4493


def test_count_is_order_independent():
    G = bundled("A5")
    a = count_class_systems(G, ClassVector.parse(G, "2A,3A,5A,5A"))
    b = count_class_systems(G, ClassVector.parse(G, "5A,2A,5A,3A"))
    assert a == b


def random_member(G, names, rng):
    """A random generating tuple in the classes, found by rejection."""
    classes = [G.cls(n) for n in names]
    while True:
        xs = [c.representative ^ G.random_element(rng) for c in classes[:-1]]
        prod = Permutation.identity(G.degree)
        for x in xs:
            prod = prod * x
        last = prod.inverse()
        if G.class_of(last) is classes[-1] and G.generates(xs):
            return RawTuple(xs + [last])


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**9))
def test_canonical_form_is_conjugation_invariant(seed):
    G = bundled("L2_8")
    rng = random.Random(seed)
    t = random_member(G, ["7A", "7A", "7A", "2A"], rng)
    g = G.random_element(rng)
    u = RawTuple([x ^ g for x in t])
    space = space_for(G)
    a, b = space.canonicalize(t), space.canonicalize(u)
    assert a == b
    assert space.canonicalize(a.canonical) == a
    members = enumerate_class_systems(G, ClassVector.parse(G, "7A,7A,7A,2A"))
    assert a in members


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**9))
def test_canonical_batch_matches_single(seed):
    G = bundled("A5")
    rng = random.Random(seed)
    ts = [random_member(G, ["3A", "3A", "5A"], rng) for _ in range(5)]
    space = space_for(G)
    batch = space.canonical_batch(np.stack([t.array() for t in ts]))
    for row, t in zip(batch, ts):
        assert NielsenTuple.from_array(row) == space.canonicalize(t)


def test_encoding_round_trip():
    G = bundled("A5")
    t = min(enumerate_class_systems(G, ClassVector.parse(G, "2A,3A,5A")))
    again = space_for(G).tuple_from_key(bytes.fromhex(t.hex()), 3)
    assert again == t
    assert np.array_equal(again.array(), t.array())


def test_rejects_bad_tuples():
    G = bundled("S3")
    a = Permutation.parse("(1,2)", 3)
    with pytest.raises(NielsenError):
        RawTuple([a, Permutation.parse("(2,3)", 3)])
    with pytest.raises(NielsenError):
        space_for(G).canonicalize(RawTuple([a, a]))
    with pytest.raises(GroupError):
        ClassVector.parse(G, "2A,2A")


def test_limit_aborts():
    G = bundled("A5")
    with pytest.raises(LimitExceeded):
        count_class_systems(G, ClassVector.parse(G, "5A,5A,5A,5A,5A,5A"), limit=10)


def test_23_triples():
    G = bundled("L2_7")
    triples = enumerate_23_triples(G, "2A", "3A", "7A")
    assert len(triples) == 1
    s = triples[0]
    assert s[0].order() == 2 and s[1].order() == 3
    with pytest.raises(NielsenError):
        enumerate_23_triples(G, "3A", "2A", "7A")
