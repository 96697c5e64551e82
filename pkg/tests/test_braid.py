import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bundled
from hurwitz import braid
from hurwitz.braid import (BraidWord, act, apply, beta, beta_pure, named, natural_projection,
                           parse_word, random_generating_tuple)
from hurwitz.nielsen import NielsenError, RawTuple, enumerate_class_systems
from hurwitz.permgroup import ClassVector, Permutation


def words(m, eta=False):
    letters = st.tuples(st.integers(2, m), st.sampled_from([1, -1]))
    if eta:
        letters = letters | st.tuples(st.sampled_from(["e23", "e34", "e234"]), st.sampled_from([1, -1]))
    return st.lists(letters, max_size=10).map(lambda ls: BraidWord(m, ls))


def tuple_of(T):
    return RawTuple.from_array(np.asarray(T), check=False)


def product(t):
    p = Permutation.identity(t.degree)
    for x in t:
        p = p * x
    return p


def test_generator_formula():
    rng = random.Random(3)
    T = random_generating_tuple(rng, 5, 7)
    t = tuple_of(T)
    for i in range(2, 6):
        out = tuple_of(act(T, beta(5, i)))
        a, b = t[i - 2], t[i - 1]
        assert out[i - 2] == b ^ a.inverse()
        assert out[i - 1] == a
        assert all(out[k] == t[k] for k in range(5) if k not in (i - 2, i - 1))


@settings(max_examples=50, deadline=None)
@given(words(5), words(5), st.integers(0, 10**9))
def test_action_is_a_right_action(w1, w2, seed):
    T = random_generating_tuple(random.Random(seed), 5, 7)
    assert np.array_equal(act(act(T, w1), w2), act(T, w1 * w2))
    assert np.array_equal(act(act(T, w1), w1.inverse()), T)
    assert product(tuple_of(act(T, w1))).is_identity()


@settings(max_examples=50, deadline=None)
@given(words(4, eta=True), words(4, eta=True))
def test_projection_is_a_homomorphism(w1, w2):
    assert natural_projection(w1 * w2) == natural_projection(w1) * natural_projection(w2)
    assert natural_projection(w1.inverse()) == natural_projection(w1).inverse()


@settings(max_examples=50, deadline=None)
@given(words(6), st.integers(0, 10**9))
def test_cycle_types_follow_the_projection(w, seed):
    T = random_generating_tuple(random.Random(seed), 6, 8)
    out = tuple_of(act(T, w))
    rho = natural_projection(w).images
    t = tuple_of(T)
    for i in range(6):
        assert sorted(out[rho[i]].cycle_type()) == sorted(t[i].cycle_type())


def test_pure_generators_project_trivially():
    for m in (4, 5, 6):
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                assert natural_projection(beta_pure(m, i, j)).is_identity()


@pytest.mark.parametrize("m", [4, 5, 6, 7, 8])
def test_relation_suite(m):
    report = braid.verify_relations(m, samples=20, seed=m)
    assert all(v["failed"] == 0 and v["passed"] > 0 for v in report.values()), report


@pytest.mark.parametrize("m", [4, 6, 8, 10])
def test_closed_form_suite(m):
    report = braid.verify_closed_forms(m, samples=15, seed=m)
    assert all(v["failed"] == 0 and v["passed"] > 0 for v in report.values()), report


def test_parse_word():
    w = parse_word("b2*b3^-1*B(1,3)", 4)
    assert w == beta(4, 2) * beta(4, 3).inverse() * beta_pure(4, 1, 3)
    assert parse_word("phi1^2", 4) == braid.phi(4, 1) ** 2
    assert parse_word("1", 5) == BraidWord(5)
    assert parse_word("eps^4", 4) == braid.delta(4)
    with pytest.raises(ValueError):
        parse_word("q7", 4)
    with pytest.raises(ValueError):
        parse_word("e23", 5)


def test_named_elements():
    assert str(named("beta_pure", 4, 1, 2)) == "beta_pure(1,2)"
    assert named("x", 6).word == braid.x_elem(6)
    with pytest.raises(ValueError):
        named("x", 5)
    with pytest.raises(ValueError):
        named("alpha40", 5)
    with pytest.raises(ValueError):
        named("nope", 4)


def test_apply_stays_in_the_nielsen_class_set():
    G = bundled("L2_8")
    members = enumerate_class_systems(G, ClassVector.parse(G, "7A,7A,7A,2A"))
    t = min(members)
    for w in ("B(1,2)", "B(1,3)", "B(1,4)", "b2*b3^-1", "b4^3"):
        image = apply(G, parse_word(w, 4), t)
        if natural_projection(parse_word(w, 4)).images[3] == 3:
            assert image in members


def test_tuple_maps_need_matching_classes():
    G = bundled("L2_8")
    t = min(enumerate_class_systems(G, ClassVector.parse(G, "7A,7A,7A,2A")))
    apply(G, braid.eta("23"), t)
    with pytest.raises(NielsenError):
        apply(G, braid.eta("34"), t)


def test_rejects_wrong_length():
    with pytest.raises(NielsenError):
        act(np.zeros((3, 4), dtype=np.uint8), beta(4, 2))
    with pytest.raises(ValueError):
        beta_pure(4, 3, 2)
    with pytest.raises(ValueError):
        braid.phi(5, 1)
