from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import bundled
from hurwitz import DATA, heuristics
from hurwitz.cyclo import parse_character_table
from hurwitz.nielsen import NielsenError, count_class_systems
from hurwitz.permgroup import ClassVector, parse_group


def test_average_order_by_class_sums():
    # (1*1 + 2*3 + 3*2) / 6 and (1 + 2*3 + 3*8) / 12
    assert heuristics.average_order(bundled("S3")) == Fraction(13, 6)
    assert heuristics.average_order(bundled("A4")) == Fraction(31, 12)
    trivial = parse_group("degree 2\n1 2\n")
    assert heuristics.average_order(trivial) == 1


def test_limit_formula():
    assert heuristics.genus_ratio_limit(bundled("S3"), 4) == Fraction(-5, 26)
    with pytest.raises(ValueError):
        heuristics.limit_from_average(Fraction(2), 3)


@given(st.fractions(min_value=1, max_value=100), st.integers(4, 40))
def test_limit_below_half_of_m_minus_3(o, m):
    lim = heuristics.limit_from_average(o, m)
    assert lim < Fraction(m - 3, 2)
    assert lim == Fraction(m - 3, 2) - Fraction(m - 1) / (2 * o)


def test_rendering_truncates_the_average():
    assert heuristics.printed_average(Fraction(3184923391, 244823040)) == Decimal("13.0090")
    assert heuristics.printed_average(Fraction(219311, 29120)) == Decimal("7.5312")
    prof = heuristics.HeuristicProfile("Sz8", Fraction(219311, 29120), {6: Fraction(0)})
    assert prof.printed_limit(6) == Decimal("1.1680")


def test_profile_notes_negative_limits():
    prof = heuristics.profile(bundled("S3"), (4, 5))
    assert prof.limits[4] < 0
    assert "negative limit for m = 4" in prof.notes
    text = heuristics.render_profiles([prof])
    assert text.splitlines()[0].startswith("m")
    assert "avg order" in text


def test_product_bound_on_s3():
    G = bundled("S3")
    cv = ClassVector.parse(G, "2A,2A,3A,2A,2A,3A")
    table = parse_character_table((DATA / "tables" / "S3.txt").read_text())
    out = heuristics.li_lower_bound(G, cv, table=table)
    assert out["splits"] == {3: 6}
    assert out["product_bound"] == 6
    li = count_class_systems(G, cv)
    assert out["product_bound"] <= li <= out["upper_bound"]


A4_VECTORS = ["3A,3A,3A,3A,3A,3A", "3A,3B,2A,3A,3B,2A", "2A,2A,3A,3B,2A,2A",
              "3A,3A,3B,3B,3A,3B", "2A,3A,3A,3A,3B,2A"]


@pytest.mark.parametrize("cv", A4_VECTORS)
def test_bounds_on_a4_six_vectors(cv):
    G = bundled("A4")
    vec = ClassVector.parse(G, cv)
    table = parse_character_table((DATA / "tables" / "A4.txt").read_text())
    out = heuristics.li_lower_bound(G, vec, table=table)
    li = count_class_systems(G, vec)
    assert out["product_bound"] <= li
    assert li <= out["upper_bound"]


def test_zero_factor_gives_zero_bound():
    G = bundled("A5")
    cv = ClassVector.parse(G, "2A,2A,2A,5A,5A,5A")
    counts = {"2A,2A,2A": 0, "5A,5A,5A": 7}
    out = heuristics.li_lower_bound(G, cv, counts=counts, compute=False)
    assert out["splits"][3] == 0


def test_missing_counts_raise():
    G = bundled("A5")
    cv = ClassVector.parse(G, "2A,2A,2A,5A,5A,5A")
    with pytest.raises(NielsenError):
        heuristics.li_lower_bound(G, cv, counts={}, compute=False)
    with pytest.raises(ValueError):
        heuristics.li_lower_bound(G, ClassVector.parse(G, "2A,3A,5A"))


def test_early_stopping_helpers():
    G = bundled("A5")
    assert heuristics.has_class_system(G, ClassVector.parse(G, "2A,3A,5A"))
    assert not heuristics.has_class_system(G, ClassVector.parse(G, "2A,2A,2A"))
    cv = ClassVector.parse(G, "5A,5A,5A,5A,5A,5A")
    assert heuristics.li_at_least(G, cv, 1015)
    assert not heuristics.li_at_least(G, cv, 1016)


def test_smallest_n0_for_a5():
    G = bundled("A5")
    n0, zeros = heuristics.smallest_n0(G, tries=300)
    assert n0 == 5
    assert ("2A", "2A", "2A") in zeros[3]
    assert heuristics.propagation_bound(G, n0, 10) == 60
    cv = ClassVector.parse(G, ",".join(["5A"] * 10))
    assert heuristics.li_at_least(G, cv, heuristics.propagation_bound(G, n0, 10))
    with pytest.raises(ValueError):
        heuristics.propagation_bound(G, 5, 9)
