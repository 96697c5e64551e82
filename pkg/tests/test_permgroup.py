import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation as SymPerm
from sympy.combinatorics import PermutationGroup

from conftest import bundled
from hurwitz import DATA
from hurwitz.permgroup import (ClassVector, GroupError, Permutation, group_order,
                               is_rational_class, load_group, parse_group)

ORDERS = {
    "S3": 6, "A4": 12, "S4": 24, "A5": 60, "L2_7": 168, "L2_8": 504, "S6": 720,
    "L2_11": 660, "L2_13": 1092, "A7": 2520, "L2_16": 4080, "L3_3": 5616,
    "M11": 7920, "Sz8": 29120, "SO5_3": 51840, "M12": 95040, "L3_5": 372000,
    "M23": 10200960, "M24": 244823040,
}


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


def sympy_group(G):
    return PermutationGroup([SymPerm(list(g.images)) for g in G.generators])


def test_product_applies_left_operand_first():
    a = Permutation.parse("(1,2)", 3)
    b = Permutation.parse("(2,3)", 3)
    # 1 -> 2 under a, then 2 -> 3 under b
    assert (a * b).images[0] == 2
    assert a * b == Permutation.parse("(1,3,2)", 3)


def test_conjugation_is_inverse_first():
    x = Permutation.parse("(1,2,3)", 4)
    g = Permutation.parse("(3,4)", 4)
    assert x ^ g == g.inverse() * x * g
    assert x ^ g == Permutation.parse("(1,2,4)", 4)


def test_parse_and_cycles_round_trip():
    p = Permutation.parse("(1,5,2)(3,4)", 6)
    assert sorted(p.cycle_type()) in ([2, 3], [1, 2, 3])
    assert p.order() == 6
    assert not p.is_even()
    # cycles() is 0-based, from_cycles() takes 1-based points
    assert Permutation.from_cycles([[c + 1 for c in cyc] for cyc in p.cycles()], 6) == p


def test_rejects_non_permutation():
    with pytest.raises(GroupError):
        Permutation([0, 0, 1])


@settings(max_examples=60, deadline=None)
@given(perms(7), perms(7), perms(7))
def test_group_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == Permutation.identity(7)
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert (a ^ b) ^ c == a ^ (b * c)


@settings(max_examples=60, deadline=None)
@given(perms(8))
def test_order_matches_sympy(p):
    assert p.order() == SymPerm(list(p.images)).order()
    assert p.is_even() == SymPerm(list(p.images)).is_even


@pytest.mark.parametrize("name", [n for n in ORDERS if ORDERS[n] <= 400000])
def test_bundled_group_orders(name):
    G = bundled(name)
    assert G.order == ORDERS[name]
    assert sympy_group(G).order() == ORDERS[name]


@pytest.mark.parametrize("name", ["M23", "M24"])
def test_large_group_orders(name):
    assert bundled(name).order == ORDERS[name]


@pytest.mark.parametrize("name", ["S3", "A4", "S4", "A5", "L2_7", "L2_8", "S6"])
def test_classes_match_sympy(name):
    G = bundled(name)
    ours = sorted(c.size for c in G.conjugacy_classes())
    theirs = sorted(len(c) for c in sympy_group(G).conjugacy_classes())
    assert ours == theirs


@pytest.mark.parametrize("name", ["A7", "M11", "L3_3", "SO5_3", "Sz8", "M12"])
def test_class_equation(name):
    G = bundled(name)
    classes = G.conjugacy_classes()
    assert sum(c.size for c in classes) == G.order
    for c in classes:
        assert c.size * c.centralizer_order == G.order
        assert c.representative.order() == c.element_order
        assert G.class_of(c.representative) is c


@pytest.mark.slow
def test_class_counts_of_sporadic_groups():
    assert len(bundled("M11").conjugacy_classes()) == 10
    assert len(bundled("M12").conjugacy_classes()) == 15
    assert len(bundled("M23").conjugacy_classes()) == 17
    assert len(bundled("M24").conjugacy_classes()) == 26


def test_name_overrides():
    M24 = bundled("M24")
    assert sorted(M24.cls("12B").representative.cycle_type()) == [12, 12]
    S6 = bundled("S6")
    assert S6.class_of(Permutation.parse("(1,2)(3,4,6,5)", 6)).name == "4A"
    SO = bundled("SO5_3")
    assert [SO.cls(n).size for n in ("2A", "2B", "2C", "2D")] == [45, 270, 36, 540]


def test_class_vector_parse_and_unknown_names():
    G = bundled("M11")
    cv = ClassVector.parse(G, "11A,11A,2A")
    assert cv.m == 3 and cv.names == ["11A", "11A", "2A"]
    with pytest.raises(GroupError):
        ClassVector.parse(G, "11A,13A")


def test_rational_classes():
    M11 = bundled("M11")
    assert is_rational_class(M11, "2A")
    assert not is_rational_class(M11, "11A")
    S4 = bundled("S4")
    assert all(is_rational_class(S4, c.name) for c in S4.conjugacy_classes())


def test_center_and_generation():
    S3 = bundled("S3")
    assert S3.center_order == 1
    a = Permutation.parse("(1,2)", 3)
    b = Permutation.parse("(1,2,3)", 3)
    assert S3.generates([a, b])
    assert not S3.generates([a])
    assert bundled("M11").center_order == 1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_conjugating_element(seed):
    G = bundled("L2_8")
    rng = random.Random(seed)
    x = G.random_element(rng)
    g = G.random_element(rng)
    c = G.conjugating_element(x, x ^ g)
    assert c is not None and x ^ c == x ^ g
    cent = G.centralizer(x)
    assert len(cent) == G.class_of(x).centralizer_order
    assert all(x ^ h == x for h in cent)


def test_random_elements_lie_in_group():
    G = bundled("M12")
    rng = random.Random(1)
    for _ in range(20):
        assert G.contains(G.random_element(rng))
    assert not G.contains(Permutation.parse("(1,2)", 12))


def test_group_order_helper_and_parse():
    gens = [Permutation.parse("(1,2,3,4,5)", 5), Permutation.parse("(1,2,3)", 5)]
    assert group_order(gens) == 60
    G = parse_group("degree 3\n2 1 3\n2 3 1\n", name="S3")
    assert G.order == 6


def test_digest_is_stable():
    a = load_group(DATA / "groups" / "A5.txt")
    b = load_group(DATA / "groups" / "A5.txt")
    assert a.digest() == b.digest()
    assert a.digest() != bundled("L2_7").digest()
