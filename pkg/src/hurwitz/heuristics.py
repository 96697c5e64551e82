"""Average element order, the limiting genus ratio and lower bounds for
the number of Nielsen classes.

All arithmetic is exact; decimals appear only in the rendering helpers.
The printed average order is truncated to four places and the printed limit
is computed from that printed value, then rounded to four places.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from decimal import ROUND_DOWN, ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Mapping, Sequence

from .cyclo import CharacterTable, structure_constant
from .nielsen import NielsenError, count_class_systems, iter_solutions, space_for
from .permgroup import ClassVector, FiniteGroup, Permutation

__all__ = [
    "HeuristicProfile",
    "average_order",
    "genus_ratio_limit",
    "limit_from_average",
    "printed_average",
    "profile",
    "render_profiles",
    "li_lower_bound",
    "li_at_least",
    "has_class_system",
    "smallest_n0",
    "propagation_bound",
]

PLACES = Decimal("0.0001")


def average_order(G: FiniteGroup) -> Fraction:
    """(1/|G|) * sum over classes of order * size."""
    return Fraction(sum(c.element_order * c.size for c in G.conjugacy_classes()), G.order)


def limit_from_average(o: Fraction, m: int) -> Fraction:
    """((m-3) o - m + 1) / (2 o)."""
    if m < 4:
        raise ValueError("the limit needs m >= 4")
    o = Fraction(o)
    return ((m - 3) * o - m + 1) / (2 * o)


def genus_ratio_limit(G: FiniteGroup, m: int) -> Fraction:
    return limit_from_average(average_order(G), m)


def printed_average(o: Fraction) -> Decimal:
    """Average order truncated to four decimals."""
    return (Decimal(o.numerator) / Decimal(o.denominator)).quantize(PLACES, rounding=ROUND_DOWN)


def _round4(x: Fraction) -> Decimal:
    return (Decimal(x.numerator) / Decimal(x.denominator)).quantize(PLACES, rounding=ROUND_HALF_UP)


@dataclass
class HeuristicProfile:
    group: str
    avg_order: Fraction
    limits: dict[int, Fraction] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    @property
    def printed_average(self) -> Decimal:
        return printed_average(self.avg_order)

    def printed_limit(self, m: int) -> Decimal:
        """Limit computed from the printed average, rounded to 4 places."""
        return _round4(limit_from_average(Fraction(self.printed_average), m))

    def to_dict(self) -> dict:
        return {
            "group": self.group,
            "avg_order": str(self.avg_order),
            "avg_order_printed": str(self.printed_average),
            "limits": {str(m): str(v) for m, v in self.limits.items()},
            "limits_printed": {str(m): str(self.printed_limit(m)) for m in self.limits},
            "notes": list(self.notes),
        }


def profile(G: FiniteGroup, ms: Sequence[int] = (4, 5, 6), name: str | None = None) -> HeuristicProfile:
    o = average_order(G)
    prof = HeuristicProfile(name or G.name or "G", o)
    for m in ms:
        prof.limits[m] = limit_from_average(o, m)
        if prof.limits[m] < 0:
            prof.notes.append(f"negative limit for m = {m}")
    return prof


def render_profiles(profiles: Sequence[HeuristicProfile]) -> str:
    """Rows ``m  G  l`` grouped by m, then the printed averages."""
    ms = sorted({m for p in profiles for m in p.limits})
    width = max([len(p.group) for p in profiles] + [1])
    lines = [f"m  {'G':<{width}}  l_m,G"]
    for m in ms:
        for p in profiles:
            if m in p.limits:
                lines.append(f"{m}  {p.group:<{width}}  {p.printed_limit(m)}")
    lines.append("")
    for p in profiles:
        lines.append(f"avg order {p.group:<{width}}  {p.printed_average}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# lower bounds


def has_class_system(G: FiniteGroup, cv: ClassVector) -> bool:
    """Whether Sigma^i(cv) is nonempty (stops at the first solution)."""
    for T, _ in iter_solutions(G, cv):
        if T.shape[0]:
            return True
    return False


def li_at_least(G: FiniteGroup, cv: ClassVector, bound: int) -> bool:
    """Whether l^i(cv) >= bound, stopping as soon as this is certain.

    With trivial center every class has exactly |C_G(s_1)| tuples whose
    first entry is the pinned representative.
    """
    if bound <= 0:
        return True
    space = space_for(G)
    k = space.data(cv.classes[0]).cent.shape[0]
    total = 0
    for T, w in iter_solutions(G, cv, space):
        total += w * T.shape[0]
        if total >= bound * k:
            return True
    return False


def _count(G: FiniteGroup, names: Sequence[str], counts: Mapping | None, compute: bool) -> int:
    key = ",".join(names)
    if counts is not None and key in counts:
        return counts[key]
    if not compute:
        raise NielsenError(f"missing count for sub-vector {key}")
    return count_class_systems(G, ClassVector(G, list(names)))


def li_lower_bound(G: FiniteGroup, cv: ClassVector, counts: Mapping[str, int] | None = None,
                   table: CharacterTable | None = None, compute: bool = True) -> dict:
    """Product bound |G| l^i(C_1..C_n) l^i(C_{n+1}..C_m) maximized over the
    splittings 3 <= n <= m-3, the summed bound over all splittings, and the
    floor of the normalized structure constant when a table is given.

    ``counts`` maps comma-joined class names to l^i; missing entries are
    counted unless ``compute`` is False.
    """
    m = cv.m
    if m < 6:
        raise ValueError("the bound needs m >= 6")
    if G.center_order > 1:
        raise ValueError("the bound needs trivial center")
    names = cv.names
    per_split = {}
    for n in range(3, m - 2):
        left = _count(G, names[:n], counts, compute)
        right = _count(G, names[n:], counts, compute)
        per_split[n] = G.order * left * right
    out = {
        "product_bound": max(per_split.values()),
        "best_split": max(per_split, key=lambda n: (per_split[n], -n)),
        "splits": per_split,
        "summed_bound": sum(per_split.values()),
        "upper_bound": None,
    }
    if table is not None:
        nval = structure_constant(table, names)
        out["upper_bound"] = nval.numerator // nval.denominator
    return out


def _multisets(G: FiniteGroup, length: int):
    nontrivial = [c.name for c in G.conjugacy_classes() if c.element_order > 1]
    return itertools.combinations_with_replacement(nontrivial, length)


def _random_witness(G: FiniteGroup, names: Sequence[str], rng: random.Random, tries: int) -> bool:
    """Random search for a generating tuple in the classes; False means only
    that none was found."""
    classes = [G.cls(nm) for nm in names]
    for _ in range(tries):
        xs = [c.representative ^ G.random_element(rng) for c in classes[:-1]]
        prod = Permutation.identity(G.degree)
        for x in xs:
            prod = prod * x
        last = prod.inverse()
        if G.class_of(last).id != classes[-1].id:
            continue
        if G.generates(xs):
            return True
    return False


def smallest_n0(G: FiniteGroup, start: int = 3, stop: int = 6, seed: int = 0,
                tries: int = 2000) -> tuple[int | None, dict]:
    """Smallest n0 in [start, stop] such that every class vector of
    nontrivial classes with length n0..2 n0 - 1 has l^i >= 1.

    Since l^i does not depend on the order of the classes, one vector per
    multiset is checked.  A random witness search runs first; vectors
    without a witness are decided exhaustively.  Returns n0 (None if none
    found) and the known-zero vectors met on the way.
    """
    rng = random.Random(seed)
    zero: dict[int, list[tuple[str, ...]]] = {}
    status: dict[tuple[str, ...], bool] = {}

    def nonempty(names: tuple[str, ...]) -> bool:
        if names not in status:
            ok = _random_witness(G, names, rng, tries) or has_class_system(G, ClassVector(G, names))
            status[names] = ok
            if not ok:
                zero.setdefault(len(names), []).append(names)
        return status[names]

    for n0 in range(start, stop + 1):
        if all(nonempty(v) for length in range(n0, 2 * n0) for v in _multisets(G, length)):
            return n0, zero
    return None, zero


def propagation_bound(G: FiniteGroup, n0: int, m: int) -> int:
    """|G|^(k-1) for m = k n0 + l with 0 <= l < n0 and k >= 2."""
    k = m // n0
    if k < 2:
        raise ValueError("need m >= 2 n0")
    return G.order ** (k - 1)
