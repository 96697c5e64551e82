import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import bundled
from hurwitz import braid, orbit
from hurwitz.nielsen import NielsenError, enumerate_class_systems
from hurwitz.orbit import ActionSpec, ResourceLimit
from hurwitz.permgroup import ClassVector


def naive_orbits(G, cv, words):
    """Orbits by plain search with braid.apply, independent of the engine kernels."""
    members = enumerate_class_systems(G, cv)
    left = set(members)
    out = []
    while left:
        start = min(left)
        seen, todo = {start}, [start]
        while todo:
            t = todo.pop()
            for w in words:
                for u in (braid.apply(G, w, t), braid.apply(G, w.inverse(), t)):
                    if u not in seen:
                        seen.add(u)
                        todo.append(u)
        left -= seen
        out.append(seen)
    return sorted(out, key=len)


def pure4():
    return [braid.beta_pure(4, 1, j) for j in (2, 3, 4)]


@pytest.mark.parametrize("name,cv", [("L2_8", "7A,7A,7A,2A"), ("A5", "2A,2A,2A,3A"),
                                     ("S4", "2B,2B,2B,2B"), ("L2_7", "3A,3A,2A,2A")])
def test_partition_matches_naive_search(name, cv):
    G = bundled(name)
    vec = ClassVector.parse(G, cv)
    reports = orbit.partition(G, vec)
    naive = naive_orbits(G, vec, pure4())
    assert [r.size for r in reports] == [len(o) for o in naive]
    assert sorted(frozenset(r.members) for r in reports) == sorted(frozenset(o) for o in naive)


def test_full_action_matches_naive_search():
    G = bundled("A5")
    vec = ClassVector.parse(G, "2A,2A,3A,5A")
    reports = orbit.partition(G, vec, ActionSpec("full"))
    words = [braid.beta(4, i) for i in (2, 3, 4)]
    # the full action moves classes; collect every arrangement
    seen = set()
    sizes = []
    for r in reports:
        t = r.members[0]
        orb, todo = {t}, [t]
        while todo:
            x = todo.pop()
            for w in words:
                for u in (braid.apply(G, w, x), braid.apply(G, w.inverse(), x)):
                    if u not in orb:
                        orb.add(u)
                        todo.append(u)
        assert orb == set(r.members)
        assert not (orb & seen)
        seen |= orb
        sizes.append(len(orb))
    assert sizes == [r.size for r in reports]


def test_l28_rigid_orbit_data():
    G = bundled("L2_8")
    reports = orbit.partition(G, ClassVector.parse(G, "7A,7A,7A,2A"))
    assert [r.size for r in reports] == [4, 84]
    small = reports[0]
    assert all(small.cycle_type(g) == "(1)(3)" for g in small.generators)
    assert small.genus == 0
    assert orbit.action_group_report(small)["order"] == 12


def test_genus_formula_by_hand():
    # |Z| = 4 with three generators of type (1)(3): g = 1 - 4 + (3*4 - 3*2)/2 = 0
    rep = orbit.OrbitReport(4, ActionSpec(), 4, ["B(1,2)", "B(1,3)", "B(1,4)"],
                            {"B(1,2)": 2, "B(1,3)": 2, "B(1,4)": 2}, {}, None)
    assert orbit.genus(rep) == 0


@pytest.mark.parametrize("name,cv", [("M11", "11A,11A,11A,11A"), ("A5", "5A,5A,5A,5A"),
                                     ("L2_7", "7A,7A,7B,7B")])
def test_invariants_constant_and_genus_integral(name, cv):
    G = bundled(name)
    for r in orbit.partition(G, ClassVector.parse(G, cv)):
        assert r.genus is not None and r.genus >= 0
        sigs = {orbit.invariant_signature(G, t) for t in r.members[:50]}
        assert sigs == {r.invariant_signature}


def test_symmetric_action():
    G = bundled("L2_8")
    vec = ClassVector.parse(G, "7A,7A,7A,2A")
    reports = orbit.partition(G, vec, ActionSpec("symmetric4", "23"))
    assert sum(r.size for r in reports) == 88
    assert all(r.genus >= 0 for r in reports)
    with pytest.raises(NielsenError):
        orbit.partition(G, vec, ActionSpec("symmetric4", "34"))
    with pytest.raises(ValueError):
        ActionSpec("symmetric4")
    assert ActionSpec.parse("sym:234") == ActionSpec("symmetric4", "234")


def test_reports_do_not_depend_on_workers():
    G = bundled("M11")
    vec = ClassVector.parse(G, "11A,11A,11A,11A")
    a = orbit.report_digest(orbit.partition(G, vec, workers=1))
    b = orbit.report_digest(orbit.partition(G, vec, workers=3))
    assert a == b


def test_checkpoint_resume_matches_uninterrupted(tmp_path):
    G = bundled("M11")
    vec = ClassVector.parse(G, "11A,11A,11A,11A")
    big = orbit.partition(G, vec)[-1]
    seed = big.members[0]
    path = str(tmp_path / "ck.txt")
    with pytest.raises(ResourceLimit) as err:
        orbit.orbit_of(G, seed, member_cap=500, checkpoint=path)
    assert err.value.checkpoint == path
    header, done, frontier = orbit.read_checkpoint(path)
    assert header["cv"] == "11A,11A,11A,11A" and done and frontier
    resumed = orbit.resume(G, path)
    assert orbit.report_digest([resumed]) == orbit.report_digest([big])


def test_resume_rejects_other_group(tmp_path):
    G = bundled("M11")
    t = min(enumerate_class_systems(G, ClassVector.parse(G, "11A,11A,11A,11A")))
    path = str(tmp_path / "ck.txt")
    with pytest.raises(ResourceLimit):
        orbit.orbit_of(G, t, member_cap=1, checkpoint=path)
    with pytest.raises(NielsenError):
        orbit.resume(bundled("A5"), path)


def test_deadline_aborts():
    G = bundled("M11")
    t = orbit.partition(G, ClassVector.parse(G, "11A,11A,11A,11A"))[-1].members[0]
    with pytest.raises(ResourceLimit):
        orbit.orbit_of(G, t, deadline=time.monotonic() - 1)


@settings(max_examples=6, deadline=None)
@given(st.integers(1, 300))
def test_bounded_search_agrees_with_partition(limit):
    G = bundled("M11")
    vec = ClassVector.parse(G, "11A,11A,11A,11A")
    full = [r.size for r in orbit.partition(G, vec, with_members=False)]
    bounded = [r.size for r in orbit.bounded_orbit_search(G, vec, limit)]
    assert bounded == [s for s in full if s <= limit]


def test_orbit_limit_returns_none():
    G = bundled("M11")
    t = orbit.partition(G, ClassVector.parse(G, "11A,11A,11A,11A"))[-1].members[0]
    assert orbit.orbit_of(G, t, limit=100) is None


def test_constructed_orbit_closed_under_generators():
    G = bundled("L2_8")
    r = orbit.partition(G, ClassVector.parse(G, "7A,7A,7A,2A"))[0]
    members = set(r.members)
    for t in members:
        for w in pure4():
            assert braid.apply(G, w, t) in members


def test_action_group_probe_on_full_mode():
    G = bundled("A5")
    reports = orbit.partition(G, ClassVector.parse(G, "2A,2A,3A,5A"), ActionSpec("full"))
    probe = orbit.action_group_report(reports[0])
    assert probe["transitive"]
    assert probe["order"] % probe["pure_order"] == 0
    assert probe["pure_index"] * probe["pure_order"] == probe["order"]
