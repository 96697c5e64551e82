import pytest

from conftest import bundled
from hurwitz import braid, generic, orbit
from hurwitz.generic import GeneratorPair, GenericError
from hurwitz.nielsen import RawTuple, enumerate_class_systems, space_for
from hurwitz.orbit import ActionSpec
from hurwitz.permgroup import ClassVector, Permutation


def p(text, n):
    return Permutation.parse(text, n)


def l28_pair():
    return GeneratorPair(p("(2,9,4,3,5,7,6)", 9), p("(1,4,2,8,7,9,5)", 9), "artin")


def test_evaluate_words():
    a, b = p("(1,2,3)", 3), p("(1,2)", 3)
    assert generic.evaluate("abA", a, b) == a * b * a.inverse()
    assert generic.evaluate("", a, b).is_identity()
    with pytest.raises(ValueError):
        generic.evaluate("ac", a, b)


def test_pair_hypotheses():
    G = bundled("L2_8")
    pair = l28_pair()
    pair.check(G)
    with pytest.raises(GenericError):
        GeneratorPair(pair.s1, pair.s1, "artin").check(G)
    with pytest.raises(GenericError):
        GeneratorPair(pair.s1, pair.s2, "involution_product").check(G)
    with pytest.raises(GenericError):
        generic.construct_small_symmetric(G, pair)


def test_size4_on_l28():
    G = bundled("L2_8")
    con = generic.construct_size4(G, l28_pair())
    assert con.ok, con.findings
    assert con.distinct == 4
    h1 = con.raw[0]
    assert [str(x) for x in h1] == ["(2,9,4,3,5,7,6)", "(1,4,2,8,7,9,5)",
                                     "(2,9,4,3,5,7,6)", "(1,3)(2,7)(4,5)(6,8)"]
    # the constructed orbit is the small orbit of the partition
    small = orbit.partition(G, ClassVector.parse(G, "7A,7A,7A,2A"))[0]
    assert sorted(set(con.members)) == small.members


def test_every_artin_pair_gives_a_size4_orbit():
    G = bundled("L2_8")
    pairs = generic.artin_pairs(G, "7A")
    assert pairs
    for pair in pairs:
        assert generic.construct_size4(G, pair, reexpand=False).ok


def test_size40_and_size9_on_l28():
    G = bundled("L2_8")
    con = generic.construct_size40(G, l28_pair())
    assert con.ok, con.findings
    assert con.distinct == 40
    con9 = generic.construct_size9(G, l28_pair())
    assert con9.ok, con9.findings
    assert con9.distinct == 9


@pytest.mark.parametrize("positions,size,genus,order", generic.SPECIALIZATIONS)
def test_specializations_of_k1(positions, size, genus, order):
    G = bundled("L2_8")
    k1 = generic.construct_size40(G, l28_pair(), reexpand=False).raw[0]
    t, gens = generic.specialize(G, k1, positions)
    if not gens:
        pytest.fail("specialization no longer generates")
    rep = orbit.orbit_of(G, space_for(G).canonicalize(t), limit=1000)
    assert rep.size == size
    assert rep.genus == genus
    assert orbit.action_group_report(rep)["order"] == order


def test_findings_are_reported_not_raised(monkeypatch):
    G = bundled("L2_8")
    broken = dict(generic.SIZE4_PURE)
    first = next(iter(broken))
    broken[first] = list(reversed(broken[first]))
    monkeypatch.setattr(generic, "SIZE4_PURE", broken)
    con = generic.construct_size4(G, l28_pair(), reexpand=False)
    assert not con.ok
    assert any(f.check == f"action {first}" for f in con.findings)
    assert con.to_dict()["findings"]


def test_small_and_h4_on_m11():
    G = bundled("M11")
    pairs = generic.involution_pairs(G, "11A", "11A", "2A")
    assert len(pairs) == 1
    small = generic.construct_small_symmetric(G, pairs[0])
    assert small.ok, small.findings
    assert small.data["symmetric"]
    h4 = generic.construct_h4_orbit(G, pairs[0])
    assert h4.ok, h4.findings
    assert h4.data["length"] == 6 and h4.data["swap_conjugator"]


def test_small_on_so53():
    G = bundled("SO5_3")
    total = 0
    for c1, c2, d in [("10A", "10A", "2A"), ("10A", "10A", "2B")]:
        pairs = generic.involution_pairs(G, c1, c2, d)
        for pair in pairs:
            con = generic.construct_small_symmetric(G, pair)
            assert con.ok, con.findings
        total += len(pairs)
    assert total == 6


def _first_success(G, cv, variant):
    hits, fails = 0, 0
    for t in sorted(enumerate_class_systems(G, ClassVector.parse(G, cv))):
        try:
            out = generic.translate(G, t, variant)
        except GenericError:
            fails += 1
            continue
        k = generic.TRANSLATIONS[variant][1]
        assert braid.apply(G, braid.phi(4, k), out) == out
        assert RawTuple(out.entries)
        hits += 1
    return hits, fails


@pytest.mark.parametrize("variant,cv", [("f41", "2A,2A,5A,5A"), ("g41", "5A,5A,2A,2A"),
                                        ("f42", "5A,2A,5A,2A"), ("f43", "5A,2A,2A,5A")])
def test_translations_give_fixed_points(variant, cv):
    hits, _ = _first_success(bundled("A5"), cv, variant)
    assert hits > 0


def test_translation_hypotheses():
    G = bundled("A5")
    t = min(enumerate_class_systems(G, ClassVector.parse(G, "5A,5A,2A,2A")))
    with pytest.raises(GenericError):
        generic.translate(G, t, "f41")
    with pytest.raises(GenericError):
        generic.translate(G, t, "h99")


def test_hat_lift():
    G = bundled("A5")
    for t in sorted(enumerate_class_systems(G, ClassVector.parse(G, "3A,5A,2A"))):
        lift = generic.hat_lift(G, t)
        assert lift.m == 4
        assert braid.apply(G, braid.phi(4, 2), lift) == lift
    with pytest.raises(GenericError):
        generic.hat_lift(G, min(enumerate_class_systems(G, ClassVector.parse(G, "2A,3A,5A"))))


def test_lifting_conditions():
    G = bundled("A5")
    t = min(enumerate_class_systems(G, ClassVector.parse(G, "2A,3A,5A")))
    a, b, c = t.entries
    assert generic.kappa_violation([a, b, c, a, b, c]) is None
    assert generic.kappa_conditions([a, b, c, b, a, c]) == [False, False, True, True, False]
    assert generic.kappa_violation([a, b, c, b, a, c]) == 1
    with pytest.raises(GenericError):
        generic.kappa_conditions([a, b, c])


def test_size40_members_are_no_lifts():
    G = bundled("L2_8")
    con = generic.construct_size40(G, l28_pair(), reexpand=False)
    assert all(generic.kappa_violation(r) is not None for r in con.raw)


def test_alpha40_fixed_point_orbits_in_s6():
    G = bundled("S6")
    t = RawTuple([p("(1,2)(3,4,6,5)", 6), p("(1,5,6,3)", 6), p("(1,5,2)(3,4)", 6)])
    v = generic.alpha40_fixed_point(G, t)
    assert orbit.orbit_of(G, v, ActionSpec("full")).size == 216
    assert orbit.orbit_of(G, v).size == 72


def test_alpha40_needs_fourth_powers():
    G = bundled("S6")
    t = RawTuple([p("(1,2,3)", 6), p("(1,3,2)", 6), Permutation.identity(6)], check=False)
    with pytest.raises(GenericError):
        generic.alpha40_fixed_point(G, t)


def test_ar4_seed_in_s4():
    G = bundled("S4")
    v = generic.ar4_seed(G, p("(3,4)", 4), p("(2,3)", 4), p("(1,2)", 4))
    assert v.m == 7
    with pytest.raises(GenericError):
        generic.ar4_seed(G, p("(3,4)", 4), p("(1,2)", 4), p("(2,3)", 4))
