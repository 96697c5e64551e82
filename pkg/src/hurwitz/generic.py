"""Generic orbits built from a pair of generators.

Each constructor materializes a small list of tuples from words in two
elements ``s1, s2`` of G, checks the closed-form braid action recorded in the
tables below, and reports every mismatch as a structured finding rather than
raising.  Hypothesis failures (the input pair does not satisfy the required
relations) raise :class:`GenericError`.

Entries of tuples are written as strings over ``a = s1``, ``b = s2``,
``A = s1^-1``, ``B = s2^-1``, multiplied left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import braid
from .nielsen import NielsenError, NielsenTuple, RawTuple, TupleSpace, enumerate_class_systems, space_for
from .orbit import ActionSpec, cycle_lengths, cycle_type, cycle_type_string, orbit_of
from .permgroup import ClassVector, FiniteGroup, Permutation, StabilizerChain

__all__ = [
    "GenericError",
    "GeneratorPair",
    "Finding",
    "Construction",
    "evaluate",
    "involution_pairs",
    "artin_pairs",
    "construct_small_symmetric",
    "construct_h4_orbit",
    "construct_size4",
    "size4_from_23_triple",
    "translate",
    "hat_lift",
    "construct_size40",
    "construct_size9",
    "specialize",
    "alpha40_fixed_point",
    "ar4_seed",
    "kappa_conditions",
    "kappa_violation",
]


class GenericError(NielsenError):
    """The input does not satisfy a constructor's hypotheses."""


# ---------------------------------------------------------------------------
# tables

# two-element orbits and their symmetric and H4 extensions
SMALL = [
    ["a", "a", "b", "abA"],
    ["a", "baB", "b", "b"],
    ["a", "b", "a", "b"],
    ["a", "b", "Bab", "abA"],
    ["a", "b", "b", "Bab"],
    ["a", "b", "abA", "a"],
]
# images (1-based) of e_1..e_6 under the pure generators
SMALL_PURE = {
    "B(1,2)": [1, 2, 4, 3, 6, 5],
    "B(1,3)": [2, 1, 3, 4, 6, 5],
    "B(1,4)": [2, 1, 4, 3, 5, 6],
}
SMALL_SYMMETRIC = {
    "b3": [3, 4, 2, 1, 5, 6],
    "e23": [4, 3, 2, 1, 6, 5],
    "e234": [6, 5, 2, 1, 3, 4],
}
# images of e_1..e_12 under b2, b3, b4
H4_ACTION = {
    "b2": [1, 2, 11, 12, 10, 9, 7, 8, 5, 6, 4, 3],
    "b3": [3, 4, 2, 1, 5, 6, 9, 10, 8, 7, 11, 12],
    "b4": [1, 2, 6, 5, 3, 4, 7, 8, 12, 11, 9, 10],
}

# four-element orbit from an artin pair
SIZE4 = [
    ["a", "b", "a", "aba"],
    ["baB", "b", "a", "baa"],
    ["b", "a", "a", "baa"],
    ["b", "b", "a", "bba"],
]
SIZE4_PURE = {
    "B(1,2)": [2, 3, 1, 4],
    "B(1,3)": [3, 2, 4, 1],
    "B(1,4)": [4, 1, 3, 2],
}

# forty-element orbit: entries and the word carrying k_1 to k_l
SIZE40 = [
    ("a|b|a|a|b|a", ""),
    ("b|a|a|a|Aba|a", "b2"),
    ("a|baB|b|a|b|a", "b3"),
    ("a|baB|baB|b|b|a", "b3*b4"),
    ("a|b|a|abA|a|a", "b5"),
    ("b|a|a|b|a|a", "b2*b5"),
    ("a|baB|b|abA|a|a", "b3*b5"),
    ("a|b|a|a|baB|b", "b6"),
    ("b|a|a|a|AbaBa|Aba", "b2*b6"),
    ("a|baB|b|a|baB|b", "b3*b6"),
    ("a|baB|baB|b|baB|b", "b3*b4*b6"),
    ("a|b|Bab|Bab|a|Bab", "b2^2"),
    ("a|b|a|b|a|b", "b3*b2"),
    ("a|Bab|BAbaBab|a|a|Bab", "b3*b4*b2"),
    ("a|b|Bab|b|Bab|Bab", "b2*b5*b2"),
    ("a|Bab|a|b|Bab|Bab", "b3*b5*b2"),
    ("a|b|Bab|Bab|BAbaBab|a", "b2*b6*b2"),
    ("a|Bab|a|Bab|BAbaBab|a", "b3*b6*b2"),
    ("a|a|baB|a|b|a", "b3^2"),
    ("a|a|baB|abA|a|a", "b3*b5*b3"),
    ("a|a|baB|a|baB|b", "b3*b6*b3"),
    ("a|a|b|Bab|a|Bab", "b2^2*b3"),
    ("a|a|Bab|a|a|Bab", "b3*b4*b2*b3"),
    ("a|a|b|b|Bab|Bab", "b2*b5*b2*b3"),
    ("a|a|b|Bab|BAbaBab|a", "b2*b6*b2*b3"),
    ("a|b|aabAA|a|a|a", "b5*b4"),
    ("b|a|abA|a|a|a", "b2*b5*b4"),
    ("a|baB|a|baB|baB|b", "b3*b4*b6*b4"),
    ("a|Bab|Bab|BAbaBab|a|Bab", "b3*b4*b2*b4"),
    ("a|b|BabAb|Bab|Bab|Bab", "b2*b5*b2*b4"),
    ("a|a|baBabAB|baB|baB|b", "b3*b6*b3*b4"),
    ("a|a|a|b|a|Bab", "b2^2*b3*b4"),
    ("a|a|a|b|BAbaBab|a", "b2*b6*b2*b3*b4"),
    ("a|baB|baB|bbaBB|b|b", "b3*b4*b6*b5"),
    ("a|a|a|Aba|b|Bab", "b2^2*b3*b4*b5"),
    ("a|b|a|a|a|baB", "b6^2"),
    ("b|a|a|a|a|AbaBa", "b2*b6^2"),
    ("a|b|Bab|Bab|Bab|BAbaBab", "b2*b6*b2*b6"),
    ("b|aabAA|a|a|a|a", "b2*b5*b4*b3"),
    ("a|a|a|a|Aba|Bab", "b2^2*b3*b4*b5^2"),
]
SIZE40_FULL = {
    "b2": "(1,2,12)(3,13,11)(4,14,28)(5,6,15)(7,16,34)(8,9,17)(10,18,29)(26,27,30)(36,37,38)",
    "b3": "(1,3,19)(5,7,20)(8,10,21)(12,22,13)(14,23,36)(15,24,16)(17,25,18)(27,39,30)(28,38,31)",
    "b4": "(3,4,18)(5,26,7)(6,27,16)(10,11,28)(13,14,29)(15,30,34)(19,25,33)(21,31,35)(22,32,23)",
    "b5": "(1,5,18)(2,6,29)(3,7,17)(8,13,16)(9,11,34)(10,12,15)(19,20,25)(21,22,24)(32,35,40)",
    "b6": "(1,8,36)(2,9,37)(3,10,14)(4,11,29)(12,17,38)(13,18,28)(19,21,23)(22,25,31)(32,33,35)",
}
SIZE40_PURE = {
    "B(1,2)": "(1,12,2)(3,11,13)(4,28,14)(5,15,6)(7,34,16)(8,17,9)(10,29,18)(26,30,27)(36,38,37)",
    "B(1,3)": "(1,11,22)(2,19,13)(4,31,36)(5,34,24)(6,20,16)(8,29,25)(9,21,18)(23,28,37)(26,39,30)",
    "B(1,4)": "(1,10,23)(2,33,29)(3,21,36)(4,9,35)(5,39,15)(7,30,24)(8,14,19)(11,37,32)(16,20,27)",
    "B(1,5)": "(1,39,12)(3,30,22)(4,34,32)(6,29,33)(9,37,40)(13,19,27)(14,25,16)(15,23,18)(17,24,36)",
    "B(1,6)": "(2,9,40)(6,11,32)(8,12,24)(10,22,16)(13,15,21)(14,30,31)(23,27,28)(29,34,35)(36,39,38)",
    "B(2,3)": "(1,19,3)(5,20,7)(8,21,10)(12,13,22)(14,36,23)(15,16,24)(17,18,25)(27,30,39)(28,31,38)",
    "B(2,4)": "(1,33,18)(4,19,17)(6,15,39)(7,20,26)(8,35,28)(11,21,38)(12,29,23)(13,36,32)(24,34,27)",
    "B(2,5)": "(2,12,39)(3,19,26)(4,25,7)(5,18,33)(6,23,10)(8,36,40)(9,24,38)(11,27,22)(16,32,28)",
    "B(2,6)": "(1,8,40)(2,24,17)(3,6,21)(4,27,31)(5,13,32)(7,29,22)(14,23,26)(16,35,18)(37,38,39)",
    "B(3,4)": "(3,18,4)(5,7,26)(6,16,27)(10,28,11)(13,29,14)(15,34,30)(19,33,25)(21,35,31)(22,23,32)",
    "B(3,5)": "(1,3,26)(2,13,27)(4,17,5)(6,14,8)(9,15,28)(11,30,12)(20,25,33)(21,23,40)(24,32,31)",
    "B(3,6)": "(1,6,10)(2,15,18)(4,30,38)(5,29,12)(14,26,36)(19,21,40)(20,22,32)(24,35,25)(27,37,28)",
    "B(4,5)": "(1,18,5)(2,29,6)(3,17,7)(8,16,13)(9,34,11)(10,15,12)(19,25,20)(21,24,22)(32,40,35)",
    "B(4,6)": "(1,16,28)(2,34,4)(3,15,38)(5,36,13)(6,37,11)(7,14,12)(19,24,31)(20,23,22)(33,35,40)",
    "B(5,6)": "(1,36,8)(2,37,9)(3,14,10)(4,29,11)(12,38,17)(13,28,18)(19,23,21)(22,31,25)(32,35,33)",
}
# first violated lifting condition (1..5) for each k_l
SIZE40_KAPPA = {
    1: [2, 4, 9, 15, 16, 18, 20, 27, 30, 32, 33, 35, 37, 39],
    2: [5, 13, 14, 19, 26, 29, 31, 36, 40],
    3: [3, 8, 28],
    4: [1, 6, 7, 10, 12, 17, 22, 23, 24, 25, 38],
    5: [11, 21, 34],
}

# nine-element orbit of length-5 tuples
SIZE9 = [
    ("a|b|a|a|ba", ""),
    ("b|abA|a|a|ba", "B(1,2)"),
    ("Bab|a|a|b|ab", "B(1,3)"),
    ("b|a|Aba|b|ba", "B(1,4)"),
    ("Bab|a|a|a|ba", "B(1,3)*B(1,4)"),
    ("a|a|a|Aba|ab", "B(1,3)*B(1,5)"),
    ("a|a|Aba|b|ab", "B(1,4)*B(1,5)"),
    ("a|a|b|a|ab", "B(2,3)"),
    ("a|b|a|b|ab", "B(1,2)*B(2,3)"),
]
SIZE9_PURE = {
    "B(1,2)": "(1,2,5)(3,9,4)",
    "B(1,3)": "(1,3,7)(5,8,9)",
    "B(1,4)": "(1,4,8)(3,5,6)",
    "B(1,5)": "(1,2)(3,6)(4,7)(8,9)",
    "B(2,3)": "(1,8,4)(2,9,7)",
    "B(2,4)": "(1,6,9)(2,3,8)",
    "B(2,5)": "(2,5)(3,7)(4,8)(6,9)",
    "B(3,4)": "(3,4,9)(6,7,8)",
    "B(3,5)": "(1,4)(2,3)(5,9)(6,7)",
    "B(4,5)": "(1,9)(2,4)(3,5)(7,8)",
}

# merging positions of k_1 (applied in order) and the resulting orbit data
SPECIALIZATIONS = [
    ((), 40, 6, 25920),
    ((5,), 9, 0, 216),
    ((3,), 12, 0, 216),
    ((4, 4), 4, 0, 12),
    ((3, 4), 3, 0, 6),
    ((2, 3), 2, 0, 2),
]

# translations: required involution positions, generation words, output words
# (entries over 1..4 standing for s_1..s_4, conjugation written x^g)
TRANSLATIONS = {
    "f41": ((1, 2), 1),
    "g41": ((3, 4), 1),
    "f42": ((2, 4), 2),
    "f43": ((2, 3), 3),
}


# ---------------------------------------------------------------------------
# results


@dataclass
class Finding:
    """A computed value that disagrees with a closed-form expectation."""

    construction: str
    check: str
    expected: object
    observed: object

    def to_dict(self) -> dict:
        return {"construction": self.construction, "check": self.check,
                "expected": self.expected, "observed": self.observed}


@dataclass
class Construction:
    kind: str
    labels: list[str]
    raw: list[RawTuple]
    members: list[NielsenTuple]
    actions: dict[str, list[int]] = field(default_factory=dict)
    checks: dict[str, bool] = field(default_factory=dict)
    findings: list[Finding] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.findings

    @property
    def distinct(self) -> int:
        return len(set(self.members))

    def expect(self, check: str, expected, observed) -> bool:
        good = expected == observed
        self.checks[check] = good
        if not good:
            self.findings.append(Finding(self.kind, check, _plain(expected), _plain(observed)))
        return good

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "labels": self.labels,
            "members": [str(r) for r in self.raw],
            "distinct": self.distinct,
            "actions": {k: _cycles_1based(v) for k, v in self.actions.items()},
            "checks": dict(self.checks),
            "findings": [f.to_dict() for f in self.findings],
            "data": self.data,
        }


def _plain(x):
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def _cycles_1based(images: Sequence[int]) -> str:
    """Cycle notation with fixed points, e.g. ``(1)(2,3)``; unknown images
    (0) are written ``?``."""
    n = len(images)
    seen = [False] * n
    parts = []
    for s in range(n):
        if seen[s]:
            continue
        cyc = []
        x = s
        while 0 <= x < n and not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = images[x] - 1
        if x != s:
            cyc.append("?")
        parts.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(parts)


def _parse_images(text: str, n: int) -> list[int]:
    p = Permutation.parse(text, n)
    return [x + 1 for x in p.images]


# ---------------------------------------------------------------------------
# generator pairs


@dataclass(frozen=True)
class GeneratorPair:
    s1: Permutation
    s2: Permutation
    flavor: str = "involution_product"

    def check(self, G: FiniteGroup) -> None:
        s1, s2 = self.s1, self.s2
        if self.flavor == "involution_product":
            if (s1 * s2).order() != 2:
                raise GenericError("s1*s2 must be an involution")
        elif self.flavor == "artin":
            if s1 * s2 * s1 != s2 * s1 * s2:
                raise GenericError("s1*s2*s1 must equal s2*s1*s2")
            if (s1 * s2 * s1).order() != 2:
                raise GenericError("s1*s2*s1 must be an involution")
        else:
            raise GenericError(f"unknown flavor {self.flavor!r}")
        if not (G.contains(s1) and G.contains(s2)):
            raise GenericError("pair is not in the group")
        if not G.generates([s1, s2]):
            raise GenericError("pair does not generate the group")
        if G.center_order > 1:
            raise GenericError("group must have trivial center")

    def swapped(self) -> "GeneratorPair":
        return GeneratorPair(self.s2, self.s1, self.flavor)

    def same_class(self, G: FiniteGroup) -> bool:
        return G.class_of(self.s1).id == G.class_of(self.s2).id


def evaluate(word: str, s1: Permutation, s2: Permutation) -> Permutation:
    """Product of letters a, b, A, B standing for s1, s2 and their inverses."""
    letters = {"a": s1, "b": s2, "A": s1.inverse(), "B": s2.inverse()}
    out = Permutation.identity(s1.degree)
    for ch in word:
        if ch not in letters:
            raise ValueError(f"bad letter {ch!r} in {word!r}")
        out = out * letters[ch]
    return out


def _tuple(entries: Sequence[str], pair: GeneratorPair) -> RawTuple:
    return RawTuple([evaluate(w, pair.s1, pair.s2) for w in entries])


def involution_pairs(G: FiniteGroup, c1, c2, c_inv) -> list[GeneratorPair]:
    """One pair per class of Sigma^i(C1, C2, D) with D a class of
    involutions: s1, s2 are the first two entries."""
    cv = ClassVector(G, [c1, c2, c_inv])
    if cv.classes[2].element_order != 2:
        raise GenericError("third class must consist of involutions")
    return [GeneratorPair(t.entries[0], t.entries[1]) for t in sorted(enumerate_class_systems(G, cv))]


def artin_pairs(G: FiniteGroup, c) -> list[GeneratorPair]:
    """Artin pairs with s1, s2 in C, one per Nielsen class of the triple
    [s1, s2, (s1 s2)^-1]."""
    out = []
    C = G.cls(c)
    for E in G.conjugacy_classes():
        if E.element_order != 3:
            continue
        cv = ClassVector(G, [C, C, E])
        for t in sorted(enumerate_class_systems(G, cv)):
            s1, s2 = t.entries[0], t.entries[1]
            if s1 * s2 * s1 == s2 * s1 * s2 and (s1 * s2 * s1).order() == 2:
                out.append(GeneratorPair(s1, s2, "artin"))
    return out


# ---------------------------------------------------------------------------
# action tables


def _canon(G: FiniteGroup, arrs: np.ndarray) -> list[bytes]:
    return TupleSpace.keys(space_for(G).canonical_batch(arrs))


def _action(G: FiniteGroup, members: list[NielsenTuple], word: braid.BraidWord) -> list[int]:
    """1-based image labels of each member under a word; a member whose image
    has several labels maps to the first one, an image outside gives 0."""
    keys = [t.encoding for t in members]
    first = {}
    for i, k in enumerate(keys):
        first.setdefault(k, i + 1)
    T = np.stack([t.array() for t in members])
    img = _canon(G, braid.act(T, word))
    return [first.get(k, 0) for k in img]


def _check_table(con: Construction, G: FiniteGroup, name: str, word: braid.BraidWord,
                 table: Sequence[int]) -> None:
    """Compare images with a table; labels are compared by the tuples they
    name, so tables stay valid when members coincide."""
    keys = [t.encoding for t in con.members]
    T = np.stack([t.array() for t in con.members])
    img = _canon(G, braid.act(T, word))
    observed = con.actions.setdefault(name, _action(G, con.members, word))
    good = all(img[i] == keys[table[i] - 1] for i in range(len(keys)))
    con.checks[f"action {name}"] = good
    if not good:
        con.findings.append(Finding(con.kind, f"action {name}", _cycles_1based(table),
                                    _cycles_1based(observed)))


def _perm_of(images: Sequence[int]) -> np.ndarray:
    return np.asarray(images, dtype=np.int64) - 1


def _type_of(images: Sequence[int]) -> str:
    return cycle_type_string(cycle_type(_perm_of(images)))


def _count(images: Sequence[int]) -> int:
    return int(cycle_lengths(_perm_of(images)).size)


def _order(tables: Sequence[Sequence[int]]) -> int:
    N = len(tables[0])
    gens = [tuple(int(x) - 1 for x in t) for t in tables]
    return StabilizerChain(gens, N, target=math.factorial(N)).order()


def _pure_genus(m: int, size: int, counts: Sequence[int]) -> int:
    twice = 2 - 2 * size + (m - 1) * size - sum(counts)
    return twice // 2 if twice % 2 == 0 else None


def _new(kind: str, G: FiniteGroup, raw: list[RawTuple], labels: list[str]) -> Construction:
    space = space_for(G)
    members = [NielsenTuple.from_array(space.canonical_batch(r.array()[None])[0]) for r in raw]
    return Construction(kind, labels, raw, members)


def _reexpand(con: Construction, G: FiniteGroup, spec: ActionSpec, size: int,
              genus: int | None, check: str = "orbit") -> None:
    """Expand the first member with the orbit engine and compare."""
    rep = orbit_of(G, con.members[0], spec, limit=max(size, 1) * 4)
    got_size = rep.size if rep is not None else None
    con.expect(f"{check} size", size, got_size)
    if rep is not None:
        con.expect(f"{check} members", sorted(set(con.members)), rep.members)
        if genus is not None:
            con.expect(f"{check} genus", genus, rep.genus)


# ---------------------------------------------------------------------------
# orbits of length 2, 6 and 12


def construct_small_symmetric(G: FiniteGroup, pair: GeneratorPair,
                              reexpand: bool = True) -> Construction:
    """e_1..e_6 with the three two-element orbits; when s1 and s2 are
    conjugate also the six-element symmetric orbit."""
    pair.check(G)
    if pair.flavor != "involution_product":
        raise GenericError("need an involution-product pair")
    raw = [_tuple(e, pair) for e in SMALL]
    con = _new("small_symmetric", G, raw, [f"e{i}" for i in range(1, 7)])
    con.expect("distinct", 6, con.distinct)
    for name, table in SMALL_PURE.items():
        _check_table(con, G, name, braid.parse_word(name, 4), table)
    counts = {nm: _count(v) for nm, v in con.actions.items()}
    for z in range(3):
        sub = [[con.actions[nm][2 * z + r] - 2 * z for r in (0, 1)] for nm in SMALL_PURE]
        g = _pure_genus(4, 2, [_count(s) for s in sub])
        con.expect(f"Z{z + 1} genus", 0, g)
    symmetric = pair.same_class(G)
    con.data["symmetric"] = symmetric
    if symmetric:
        for name, table in SMALL_SYMMETRIC.items():
            _check_table(con, G, name, braid.parse_word(name, 4), table)
        twice = 2 - 12 + 18 - sum(_count(con.actions[n]) for n in SMALL_SYMMETRIC)
        con.expect("symmetric genus", 0, twice // 2 if twice % 2 == 0 else None)
        con.expect("symmetric action group order", 24,
                   _order([con.actions[n] for n in list(SMALL_PURE) + list(SMALL_SYMMETRIC)]))
    con.data["cycle_counts"] = counts
    if reexpand:
        for z in range(3):
            sub = Construction(con.kind, [], [], con.members[2 * z:2 * z + 2])
            _reexpand(sub, G, ActionSpec("pure"), 2, 0, check=f"Z{z + 1}")
            con.checks.update(sub.checks)
            con.findings.extend(sub.findings)
        if symmetric:
            _reexpand(con, G, ActionSpec("symmetric4", "234"), 6, 0, check="symmetric orbit")
    return con


def construct_h4_orbit(G: FiniteGroup, pair: GeneratorPair,
                       reexpand: bool = True) -> Construction:
    """e_1..e_12 (the last six from the swapped pair); an orbit of the full
    braid group of length 6 (when some element swaps s1 and s2 by
    conjugation) or 12."""
    pair.check(G)
    if not pair.same_class(G):
        raise GenericError("s1 and s2 must be conjugate")
    raw = [_tuple(e, pair) for e in SMALL] + [_tuple(e, pair.swapped()) for e in SMALL]
    con = _new("h4_orbit", G, raw, [f"e{i}" for i in range(1, 13)])
    length = con.distinct
    swap = _swap_conjugator(G, pair) is not None
    con.data["length"] = length
    con.data["swap_conjugator"] = swap
    con.expect("length", 6 if swap else 12, length)
    for name, table in H4_ACTION.items():
        _check_table(con, G, name, braid.parse_word(name, 4), table)
    if length in (6, 12):
        uniq = sorted(set(con.members))
        tabs = [_action(G, uniq, braid.parse_word(nm, 4)) for nm in H4_ACTION]
        con.expect("action group order", 24 if length == 6 else 96, _order(tabs))
    if reexpand:
        _reexpand(con, G, ActionSpec("full"), length, None)
    return con


def _swap_conjugator(G: FiniteGroup, pair: GeneratorPair) -> Permutation | None:
    """Some tau with s1^tau = s2 and s2^tau = s1."""
    pairs = [(pair.s1.images, pair.s2.images), (pair.s2.images, pair.s1.images)]
    for g in G._search(pairs):
        return Permutation(g, check=False)
    return None


# ---------------------------------------------------------------------------
# orbits of length 4 from artin pairs


def construct_size4(G: FiniteGroup, pair: GeneratorPair, reexpand: bool = True) -> Construction:
    """h_1..h_4 in Sigma^i(C, C, C, D) with D the class of s1 s2 s1."""
    if pair.flavor != "artin":
        raise GenericError("need an artin pair")
    pair.check(G)
    raw = [_tuple(e, pair) for e in SIZE4]
    con = _new("size4", G, raw, [f"h{i}" for i in range(1, 5)])
    con.expect("distinct", 4, con.distinct)
    for name, table in SIZE4_PURE.items():
        _check_table(con, G, name, braid.parse_word(name, 4), table)
    types = {nm: _type_of(v) for nm, v in con.actions.items()}
    con.expect("cycle types", {nm: "(1)(3)" for nm in SIZE4_PURE}, types)
    con.expect("genus", 0, _pure_genus(4, 4, [_count(v) for v in con.actions.values()]))
    con.expect("action group order", 12, _order(list(con.actions.values())))
    if reexpand:
        _reexpand(con, G, ActionSpec("pure"), 4, 0)
    return con


def size4_from_23_triple(G: FiniteGroup, triple: RawTuple) -> tuple[GeneratorPair, RawTuple]:
    """From [t1, t2, t3] with o(t1) = 2 and o(t2) = 3: the artin pair
    s1 = t2^2 t1, s2 = t1 t2^2 and the triple [s1, s2, (s1 s2)^-1]."""
    if triple.m != 3:
        raise GenericError("need a triple")
    t1, t2 = triple[0], triple[1]
    if t1.order() != 2 or t2.order() != 3:
        raise GenericError("need orders 2 and 3 in the first two entries")
    s1 = t2 * t2 * t1
    s2 = t1 * t2 * t2
    pair = GeneratorPair(s1, s2, "artin")
    pair.check(G)
    derived = RawTuple([s1, s2, (s1 * s2).inverse()])
    return pair, derived


# ---------------------------------------------------------------------------
# translations and the doubling lift


def translate(G: FiniteGroup, t: RawTuple | NielsenTuple, variant: str) -> NielsenTuple:
    """Map a 4-tuple with two involution entries to a fixed point of one of
    the quaternion elements."""
    if variant not in TRANSLATIONS:
        raise GenericError(f"unknown translation {variant!r}")
    s = list(t.entries) if isinstance(t, NielsenTuple) else list(t)
    if len(s) != 4:
        raise GenericError("translations need m = 4")
    invol, k = TRANSLATIONS[variant]
    for p in invol:
        if s[p - 1].order() != 2:
            raise GenericError(f"{variant} needs an involution at position {p}")
    s1, s2, s3, s4 = s
    if variant == "f41":
        gens = [s3 ^ s2, s3, s4]
        out = [s3 ^ s2, s3, s4, s4 ^ s1]
    elif variant == "g41":
        w = s4.inverse()
        gens = [s1, s1 ^ w, s2 ^ w]
        out = [s1, s1 ^ w, s2 ^ w, (s2 ^ s3.inverse()) ^ w]
    elif variant == "f42":
        gens = [s1, s3 ^ s2, s1 ^ s2]
        out = [s1, s3 ^ s2, s1 ^ s2, s3]
    else:
        gens = [s4, s1, s1 ^ s2]
        out = [s4, s1, s1 ^ s2, s4 ^ s3]
    if not G.generates(gens):
        raise GenericError(f"{variant} generation hypothesis fails")
    space = space_for(G)
    res = space.canonicalize(RawTuple(out))
    if braid.apply(G, braid.phi(4, k), res) != res:
        raise GenericError(f"{variant} output is not fixed by the quaternion element {k}")
    return res


def hat_lift(G: FiniteGroup, t: RawTuple | NielsenTuple) -> NielsenTuple:
    """[s_1..s_n, s_{n+1}] with s_{n+1}^2 = 1 -> [s_1..s_n, s_1..s_n]."""
    s = list(t.entries) if isinstance(t, NielsenTuple) else list(t)
    n = len(s) - 1
    if n < 2:
        raise GenericError("need at least three entries")
    if not (s[-1] * s[-1]).is_identity():
        raise GenericError("last entry must be trivial or an involution")
    if not G.generates(s[:n]):
        raise GenericError("the first n entries must generate the group")
    res = space_for(G).canonicalize(RawTuple(s[:n] + s[:n]))
    if braid.apply(G, braid.phi(2 * n, 2), res) != res:
        raise GenericError("lift is not fixed by the half shift")
    return res


# ---------------------------------------------------------------------------
# orbits of length 40 and 9


def kappa_conditions(t: RawTuple | NielsenTuple) -> list[bool]:
    """The five conditions for [k1..k6] to be a lift of a triple:
    k1 = k4, k2 = k5, k3 = k6, k1 k2 k3 = 1, k4 k5 k6 = 1."""
    k = list(t.entries) if isinstance(t, NielsenTuple) else list(t)
    if len(k) != 6:
        raise GenericError("need a 6-tuple")
    return [k[0] == k[3], k[1] == k[4], k[2] == k[5],
            (k[0] * k[1] * k[2]).is_identity(), (k[3] * k[4] * k[5]).is_identity()]


def kappa_violation(t: RawTuple | NielsenTuple) -> int | None:
    """Number (1..5) of the first failing lifting condition, None if all hold."""
    for i, good in enumerate(kappa_conditions(t), start=1):
        if not good:
            return i
    return None


def _tabled(kind: str, G: FiniteGroup, pair: GeneratorPair, table, m: int,
            prefix: str) -> Construction:
    raw = [_tuple(e.split("|"), pair) for e, _ in table]
    con = _new(kind, G, raw, [f"{prefix}{i}" for i in range(1, len(table) + 1)])
    con.expect("distinct", len(table), con.distinct)
    start = raw[0].array()
    words = [braid.parse_word(w, m) for _, w in table]
    reached = _canon(G, np.stack([braid.act(start, w) for w in words]))
    bad = [i + 1 for i, k in enumerate(reached) if k != con.members[i].encoding]
    con.expect("words reach members", [], bad)
    return con


def construct_size40(G: FiniteGroup, pair: GeneratorPair, reexpand: bool = True) -> Construction:
    """k_1..k_40 in Sigma^i(C^6), an orbit of both the pure and the full
    braid group on 6 strands."""
    if pair.flavor != "artin":
        raise GenericError("need an artin pair")
    pair.check(G)
    con = _tabled("size40", G, pair, SIZE40, 6, "k")
    for name, cyc in SIZE40_FULL.items():
        _check_table(con, G, name, braid.parse_word(name, 6), _parse_images(cyc, 40))
    for name, cyc in SIZE40_PURE.items():
        _check_table(con, G, name, braid.parse_word(name, 6), _parse_images(cyc, 40))
    types = {nm: _type_of(v) for nm, v in con.actions.items()}
    con.expect("cycle types", {nm: "(1)^13(3)^9" for nm in types}, types)
    z = [_count(con.actions[f"B(1,{j})"]) for j in range(2, 7)]
    con.expect("genus", 6, _pure_genus(6, 40, z))
    pure = [con.actions[nm] for nm in SIZE40_PURE]
    con.expect("action group order", 25920, _order(pure))
    con.expect("full action group order", 25920, _order([con.actions[nm] for nm in SIZE40_FULL]))
    # each listed member must violate its listed condition
    held = {c: [l for l in ls if kappa_conditions(con.raw[l - 1])[c - 1]]
            for c, ls in SIZE40_KAPPA.items()}
    con.expect("lifting conditions", {c: [] for c in SIZE40_KAPPA}, held)
    con.expect("no lifted triple", [],
               [i for i, r in enumerate(con.raw, 1) if kappa_violation(r) is None])
    if reexpand:
        _reexpand(con, G, ActionSpec("pure"), 40, 6)
        _reexpand(con, G, ActionSpec("full"), 40, None, check="full orbit")
    return con


def construct_size9(G: FiniteGroup, pair: GeneratorPair, reexpand: bool = True) -> Construction:
    """p_1..p_9, an orbit of the pure braid group on 5 strands."""
    if pair.flavor != "artin":
        raise GenericError("need an artin pair")
    pair.check(G)
    con = _tabled("size9", G, pair, SIZE9, 5, "p")
    for name, cyc in SIZE9_PURE.items():
        _check_table(con, G, name, braid.parse_word(name, 5), _parse_images(cyc, 9))
    types = {nm: _type_of(v) for nm, v in con.actions.items()}
    expected = {nm: ("(1)(2)^4" if nm.endswith(",5)") else "(1)^3(3)^2") for nm in types}
    con.expect("cycle types", expected, types)
    z = [_count(con.actions[f"B(1,{j})"]) for j in range(2, 6)]
    con.expect("genus", 0, _pure_genus(5, 9, z))
    con.expect("action group order", 216, _order(list(con.actions.values())))
    con.expect("last entry order", 3, con.raw[0][4].order())
    if reexpand:
        _reexpand(con, G, ActionSpec("pure"), 9, 0)
    return con


def specialize(G: FiniteGroup, t: RawTuple | NielsenTuple,
               positions: Sequence[int]) -> tuple[RawTuple, bool]:
    """Merge entries i, i+1 (1-based) for each i in turn; returns the merged
    tuple and whether it still generates G."""
    s = list(t.entries) if isinstance(t, NielsenTuple) else list(t)
    for i in positions:
        if not 1 <= i < len(s):
            raise GenericError(f"cannot merge at position {i} of a {len(s)}-tuple")
        s = s[:i - 1] + [s[i - 1] * s[i]] + s[i + 1:]
    return RawTuple(s), G.generates(s)


# ---------------------------------------------------------------------------
# fixed points of alpha_{4,0} and the seed from a quotient of the 4-strand
# Artin group


def alpha40_fixed_point(G: FiniteGroup, t: RawTuple) -> NielsenTuple:
    """v = [s3^(s1^2), s3^s1, s3, s3^(s1^3)] from [s1, s2, s3] with
    s1^4 = s2^4 = 1; v is fixed by alpha_{4,0} and the half shift."""
    if t.m != 3:
        raise GenericError("need a triple")
    s1, s2, s3 = t.entries
    if not ((s1 ** 4).is_identity() and (s2 ** 4).is_identity()):
        raise GenericError("need s1^4 = s2^4 = 1")
    v = [s3 ^ (s1 ** 2), s3 ^ s1, s3, s3 ^ (s1 ** 3)]
    if not G.generates(v):
        raise GenericError("the entries of v do not generate the group")
    space = space_for(G)
    res = space.canonicalize(RawTuple(v))
    if braid.apply(G, braid.alpha40(), res) != res:
        raise GenericError("v is not fixed by alpha_{4,0}")
    if braid.apply(G, braid.phi(4, 2), res) != res:
        raise GenericError("v is not fixed by the half shift")
    return res


def ar4_seed(G: FiniteGroup, s1: Permutation, s2: Permutation, s3: Permutation) -> NielsenTuple:
    """[s1, s2, s1, s2, s3, s2, (s1 s2 s3)^2] for elements satisfying the
    4-strand braid relations and (s1 s2 s3)^4 = 1."""
    if s1 * s2 * s1 != s2 * s1 * s2 or s2 * s3 * s2 != s3 * s2 * s3:
        raise GenericError("braid relations fail")
    if s1 * s3 != s3 * s1:
        raise GenericError("s1 and s3 must commute")
    c = s1 * s2 * s3
    if not (c ** 4).is_identity():
        raise GenericError("(s1 s2 s3)^4 must be trivial")
    return space_for(G).canonicalize(RawTuple([s1, s2, s1, s2, s3, s2, c * c]))
