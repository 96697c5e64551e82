"""Permutations, stabilizer chains, backtrack search and conjugacy classes.

Points are 0-based internally and 1-based in every textual format.  Products
compose left to right: ``(p * q)(i) = q(p(i))``, and conjugation is
``p ^ g = g**-1 * p * g``.

Two representations coexist.  :class:`Permutation` wraps a tuple of images
and works for any degree.  Bulk code (class trees, Nielsen tuples, orbit
search) uses *packed* permutations: ``bytes`` of length 256 whose tail is the
identity, so that composition is a single ``bytes.translate`` call.
"""

from __future__ import annotations

import hashlib
import math
import random
import string
from array import array
from collections import deque
from dataclasses import dataclass, field
from itertools import permutations as _all_perms
from operator import itemgetter
from pathlib import Path
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Permutation",
    "FiniteGroup",
    "ConjugacyClass",
    "ClassVector",
    "GroupError",
    "group_order",
    "conjugacy_classes",
    "class_of",
    "is_rational_class",
    "conjugator_to_representative",
    "load_group",
    "parse_group",
    "pack",
    "unpack",
    "pmul",
    "pinv",
    "pconj",
    "IDENT256",
]


class GroupError(ValueError):
    """Raised for invalid permutations, group files or memberships."""


# ---------------------------------------------------------------------------
# packed permutations

IDENT256 = bytes(range(256))


def pack(images: Sequence[int]) -> bytes:
    """Pack images (degree <= 256) into a 256-byte translation table."""
    return bytes(images) + IDENT256[len(images):]


def unpack(p: bytes, degree: int) -> tuple[int, ...]:
    return tuple(p[:degree])


def pmul(p: bytes, q: bytes) -> bytes:
    """Packed product: p first, then q."""
    return p.translate(q)


def pinv(p: bytes) -> bytes:
    return bytes.maketrans(p, IDENT256)


def pconj(x: bytes, g: bytes, ginv: bytes) -> bytes:
    """Packed conjugate ``g**-1 * x * g``."""
    return ginv.translate(x).translate(g)


# ---------------------------------------------------------------------------
# tuple helpers used by the chain and the backtrack search


def _mul(p: tuple, q: tuple) -> tuple:
    if len(p) == 1:
        return (q[p[0]],)
    return itemgetter(*p)(q)


def _inv(p: tuple) -> tuple:
    return tuple(sorted(range(len(p)), key=p.__getitem__))


def _is_id(p: tuple) -> bool:
    return all(i == x for i, x in enumerate(p))


def _cycle_type(p: Sequence[int]) -> tuple[int, ...]:
    n = len(p)
    seen = bytearray(n)
    lengths = []
    for i in range(n):
        if not seen[i]:
            length = 0
            j = i
            while not seen[j]:
                seen[j] = 1
                j = p[j]
                length += 1
            lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


# ---------------------------------------------------------------------------


class Permutation:
    """Immutable permutation of ``{0, ..., degree-1}``."""

    __slots__ = ("images", "_hash", "_packed")

    def __init__(self, images: Iterable[int], check: bool = True):
        images = tuple(images)
        if check and sorted(images) != list(range(len(images))):
            raise GroupError(f"not a permutation: {images}")
        self.images = images
        self._hash = None
        self._packed = None

    # construction -----------------------------------------------------
    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(range(degree), check=False)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        """Build from 1-based cycles, e.g. ``[(1, 2, 3), (4, 5)]``."""
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= degree or a in seen:
                    raise GroupError(f"bad cycle {cyc} for degree {degree}")
                seen.add(a)
            for a, b in zip(cyc, tuple(cyc[1:]) + (cyc[0],)):
                img[a - 1] = b - 1
        return cls(img, check=False)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Permutation":
        """Parse cycle notation such as ``"(1,2,3)(4,5)"`` or ``"()"``."""
        text = text.replace(" ", "")
        cycles = []
        pos = 0
        while pos < len(text):
            if text[pos] != "(":
                raise GroupError(f"cannot parse permutation {text!r}")
            end = text.index(")", pos)
            body = text[pos + 1:end]
            if body:
                cycles.append([int(tok) for tok in body.split(",")])
            pos = end + 1
        return cls.from_cycles(cycles, degree)

    @classmethod
    def from_packed(cls, p: bytes, degree: int) -> "Permutation":
        perm = cls(p[:degree], check=False)
        perm._packed = p
        return perm

    # basic protocol ---------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def packed(self) -> bytes:
        if self._packed is None:
            if self.degree > 256:
                raise GroupError("packed form needs degree <= 256")
            self._packed = pack(self.images)
        return self._packed

    def encoding(self) -> bytes:
        return bytes(self.images) if self.degree <= 256 else repr(self.images).encode()

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images)
        return self._hash

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise GroupError("degree mismatch")
        return Permutation(_mul(self.images, other.images), check=False)

    def inverse(self) -> "Permutation":
        return Permutation(_inv(self.images), check=False)

    __invert__ = inverse

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __xor__(self, g: "Permutation") -> "Permutation":
        """Conjugate ``g**-1 * self * g``."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return _is_id(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 0-based, each starting at its least point."""
        out = []
        seen = set()
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return _cycle_type(self.images)

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.degree else 1

    def is_even(self) -> bool:
        return sum(c - 1 for c in self.cycle_type()) % 2 == 0

    def fingerprint(self) -> tuple:
        """Cycle types of g and of g**p for every prime p dividing o(g)."""
        o = self.order()
        parts = [self.cycle_type()]
        for p in _prime_divisors(o):
            parts.append((p, (self ** p).cycle_type()))
        return tuple(parts)

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(a + 1) for a in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self})"


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# stabilizer chain


class _Level:
    __slots__ = ("point", "gens", "trans", "trans_inv")

    def __init__(self, point: int):
        self.point = point
        self.gens: list[tuple] = []
        self.trans: dict[int, tuple] = {}
        self.trans_inv: dict[int, tuple] = {}

    def rebuild(self, degree: int) -> None:
        ident = tuple(range(degree))
        trans = {self.point: ident}
        queue = [self.point]
        for p in queue:
            u = trans[p]
            for s in self.gens:
                q = s[p]
                if q not in trans:
                    trans[q] = _mul(u, s)
                    queue.append(q)
        self.trans = trans
        self.trans_inv = {p: _inv(u) for p, u in trans.items()}


class StabilizerChain:
    """Base and strong generating set built by Schreier-Sims.

    A randomized phase collects strong generators quickly; a deterministic
    pass then sifts every Schreier generator, so the result is exact.
    """

    def __init__(self, generators: Sequence[tuple], degree: int, seed: int = 1,
                 target: int | None = None):
        """With ``target`` set, construction stops as soon as the partial
        chain reaches that order.  The partial order is a lower bound on the
        true order, so this is exact when the target is an upper bound."""
        self.degree = degree
        self.levels: list[_Level] = []
        self.target = target
        gens = [g for g in generators if not _is_id(g)]
        self.generators = gens
        if not gens:
            return
        rng = random.Random(seed)
        for g in gens:
            self._insert(g)
        if self._reached():
            return
        self._random_phase(gens, rng)
        if self._reached():
            return
        self._deterministic_phase()

    def _reached(self) -> bool:
        return self.target is not None and self.order() >= self.target

    # -- core steps -----------------------------------------------------
    def sift(self, g: tuple, start: int = 0) -> tuple[tuple, int]:
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            p = g[lev.point]
            inv = lev.trans_inv.get(p)
            if inv is None:
                return g, i
            g = _mul(g, inv)
        return g, len(self.levels)

    def _insert(self, g: tuple, start: int = 0) -> bool:
        h, depth = self.sift(g, start)
        if _is_id(h):
            return False
        if depth == len(self.levels):
            moved = next(i for i, x in enumerate(h) if i != x)
            self.levels.append(_Level(moved))
        for j in range(start, depth + 1):
            self.levels[j].gens.append(h)
            self.levels[j].rebuild(self.degree)
        return True

    def _random_phase(self, gens: list[tuple], rng: random.Random) -> None:
        # product replacement
        state = list(gens) + [gens[i % len(gens)] for i in range(max(0, 6 - len(gens)))]
        acc = tuple(range(self.degree))
        for _ in range(30):
            state, acc = self._pr_step(state, acc, rng)
        quiet = 0
        while quiet < 24:
            state, acc = self._pr_step(state, acc, rng)
            if self._insert(acc):
                quiet = 0
                if self._reached():
                    return
            else:
                quiet += 1

    @staticmethod
    def _pr_step(state, acc, rng):
        i, j = rng.sample(range(len(state)), 2)
        if rng.random() < 0.5:
            state[i] = _mul(state[i], state[j])
        else:
            state[i] = _mul(state[j], state[i])
        acc = _mul(acc, state[i])
        return state, acc

    def _deterministic_phase(self) -> None:
        restart = True
        while restart:
            restart = False
            for i in range(len(self.levels) - 1, -1, -1):
                lev = self.levels[i]
                for p, u in list(lev.trans.items()):
                    for s in lev.gens:
                        q = s[p]
                        schreier = _mul(_mul(u, s), lev.trans_inv[q])
                        if self._insert(schreier, i + 1):
                            if self._reached():
                                return
                            restart = True
                            break
                    if restart:
                        break
                if restart:
                    break

    # -- queries ----------------------------------------------------------
    @property
    def base(self) -> list[int]:
        return [lev.point for lev in self.levels]

    def order(self) -> int:
        return math.prod(len(lev.trans) for lev in self.levels)

    def contains(self, g: tuple) -> bool:
        h, depth = self.sift(g)
        return depth == len(self.levels) and _is_id(h)

    def random_element(self, rng: random.Random) -> tuple:
        g = tuple(range(self.degree))
        for lev in reversed(self.levels):
            u = lev.trans[rng.choice(list(lev.trans))]
            g = _mul(g, u)
        return g

    def stabilizer_orbit_ids(self) -> list[list[int]]:
        """For each depth i, orbit labels of the stabilizer of base[:i]."""
        out = []
        for i in range(len(self.levels) + 1):
            gens = self.levels[i].gens if i < len(self.levels) else []
            out.append(_orbit_labels(gens, self.degree))
        return out


def _orbit_labels(gens: Sequence[Sequence[int]], degree: int) -> list[int]:
    label = [-1] * degree
    for start in range(degree):
        if label[start] >= 0:
            continue
        label[start] = start
        queue = [start]
        for p in queue:
            for s in gens:
                q = s[p]
                if label[q] < 0:
                    label[q] = start
                    queue.append(q)
    return label


# ---------------------------------------------------------------------------
# groups


class FiniteGroup:
    """A permutation group given by generators."""

    def __init__(self, generators: Sequence[Permutation], name: str | None = None,
                 degree: int | None = None):
        generators = list(generators)
        if not generators and degree is None:
            raise GroupError("need generators or a degree")
        deg = degree if degree is not None else generators[0].degree
        for g in generators:
            if g.degree != deg:
                raise GroupError("degree mismatch among generators")
        self.degree = deg
        self.generators = generators or [Permutation.identity(deg)]
        self.name = name or "G"
        self._chain: StabilizerChain | None = None
        self._classes: list[ConjugacyClass] | None = None
        self._class_by_name: dict[str, ConjugacyClass] = {}
        self._renames: dict[str, str] = {}
        self._center_order: int | None = None
        self._orbit_ids = None
        self._centralizer_cache: dict[bytes, list[Permutation]] = {}

    # -- structure ------------------------------------------------------
    @property
    def chain(self) -> StabilizerChain:
        if self._chain is None:
            self._chain = StabilizerChain([g.images for g in self.generators], self.degree)
        return self._chain

    @property
    def order(self) -> int:
        return self.chain.order()

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def contains(self, g: Permutation) -> bool:
        return g.degree == self.degree and self.chain.contains(g.images)

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.degree).encode())
        for g in self.generators:
            h.update(bytes(str(g.images), "ascii"))
        return h.hexdigest()[:16]

    def random_element(self, rng: random.Random) -> Permutation:
        return Permutation(self.chain.random_element(rng), check=False)

    def orbits(self) -> list[list[int]]:
        labels = _orbit_labels([g.images for g in self.generators], self.degree)
        groups: dict[int, list[int]] = {}
        for p, lab in enumerate(labels):
            groups.setdefault(lab, []).append(p)
        return list(groups.values())

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def elements(self) -> list[bytes]:
        """All elements as packed permutations, by closure (small groups)."""
        if self.degree > 256:
            raise GroupError("element listing needs degree <= 256")
        gens = [g.packed for g in self.generators]
        start = IDENT256
        seen = {start}
        queue = [start]
        for e in queue:
            for s in gens:
                f = e.translate(s)
                if f not in seen:
                    seen.add(f)
                    queue.append(f)
        return queue

    @property
    def center_order(self) -> int:
        if self._center_order is None:
            pairs = [(g.images, g.images) for g in self.generators]
            self._center_order = sum(1 for _ in self._search(pairs))
        return self._center_order

    def require_trivial_center(self) -> None:
        if self.center_order != 1:
            raise GroupError(f"{self.name} has nontrivial center")

    # -- backtrack search -----------------------------------------------
    def _search(self, pairs: list[tuple[tuple, tuple]]) -> Iterator[tuple]:
        """Yield every g in G with ``x ^ g == y`` for all (x, y) in pairs."""
        chain = self.chain
        n = self.degree
        for x, y in pairs:
            if _cycle_type(x) != _cycle_type(y):
                return
        if self._orbit_ids is None:
            self._orbit_ids = chain.stabilizer_orbit_ids()
        orbit_ids = self._orbit_ids
        levels = chain.levels
        k = len(levels)
        xs = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]

        def propagate(forced: dict, point: int, image: int) -> dict | None:
            if point in forced:
                return forced if forced[point] == image else None
            new = dict(forced)
            used = set(new.values())
            if image in used:
                return None
            new[point] = image
            used.add(image)
            stack = [(point, image)]
            while stack:
                p, c = stack.pop()
                for x, y in zip(xs, ys):
                    p2, c2 = x[p], y[c]
                    have = new.get(p2)
                    if have is None:
                        if c2 in used:
                            return None
                        new[p2] = c2
                        used.add(c2)
                        stack.append((p2, c2))
                    elif have != c2:
                        return None
            return new

        def rec(depth: int, h: tuple, forced: dict):
            if depth == k:
                if all(_mul(_mul(_inv(h), x), h) == y for x, y in pairs):
                    yield h
                return
            lev = levels[depth]
            b = lev.point
            next_ids = orbit_ids[depth + 1]
            for q, u in lev.trans.items():
                c = h[q]
                new_forced = propagate(forced, b, c)
                if new_forced is None:
                    continue
                new_h = _mul(u, h)
                hinv = _inv(new_h)
                ok = True
                for p, img in new_forced.items():
                    if next_ids[p] != next_ids[hinv[img]]:
                        ok = False
                        break
                if ok:
                    yield from rec(depth + 1, new_h, new_forced)

        yield from rec(0, tuple(range(n)), {})

    def conjugating_element(self, x: Permutation, y: Permutation) -> Permutation | None:
        """Some g in G with ``x ^ g == y``, or None."""
        for g in self._search([(x.images, y.images)]):
            return Permutation(g, check=False)
        return None

    def centralizer(self, x: Permutation) -> list[Permutation]:
        """All elements of C_G(x), by exhaustive backtrack."""
        key = x.encoding()
        cached = self._centralizer_cache.get(key)
        if cached is None:
            cached = [Permutation(g, check=False) for g in self._search([(x.images, x.images)])]
            self._centralizer_cache[key] = cached
        return cached

    def centralizer_order(self, x: Permutation) -> int:
        return len(self.centralizer(x))

    def generates(self, elements: Sequence[Permutation]) -> bool:
        """Whether ``elements`` generate all of G (assumed to lie in G)."""
        imgs = [e.images for e in elements]
        labels = _orbit_labels(imgs, self.degree)
        if labels != _orbit_labels([g.images for g in self.generators], self.degree):
            return False
        target = self.order
        return StabilizerChain(imgs, self.degree, target=target).order() == target

    # -- classes --------------------------------------------------------
    def conjugacy_classes(self) -> list["ConjugacyClass"]:
        if self._classes is None:
            self._classes = _compute_classes(self)
            self._apply_names()
        return self._classes

    def load_names(self, mapping: dict[str, str]) -> None:
        """Relabel classes: ``mapping[computed_name] = external_name``."""
        self._renames.update(mapping)
        if self._classes is not None:
            self._apply_names()

    def _apply_names(self) -> None:
        assert self._classes is not None
        for c in self._classes:
            c.name = self._renames.get(c.computed_name, c.computed_name)
        names = [c.name for c in self._classes]
        if len(set(names)) != len(names):
            raise GroupError("class names not unique after renaming")
        self._class_by_name = {c.name: c for c in self._classes}

    def cls(self, name_or_id) -> "ConjugacyClass":
        classes = self.conjugacy_classes()
        if isinstance(name_or_id, int):
            return classes[name_or_id]
        try:
            return self._class_by_name[name_or_id]
        except KeyError:
            raise GroupError(f"unknown class {name_or_id!r} in {self.name}") from None

    def class_of(self, g: Permutation) -> "ConjugacyClass":
        if not self.contains(g):
            raise GroupError(f"{g} is not in {self.name}")
        return self._class_of_member(g)

    def _class_of_member(self, g: Permutation) -> "ConjugacyClass":
        classes = self.conjugacy_classes()
        packed = g.packed if self.degree <= 256 else None
        for c in classes:
            if c._index is not None and packed is not None and packed in c._index:
                return c
        fp = g.fingerprint()
        candidates = [c for c in classes if c.fingerprint == fp]
        if len(candidates) == 1:
            return candidates[0]
        for c in candidates:
            if c._index is not None:
                continue  # materialized and already checked
            if self.conjugating_element(g, c.representative) is not None:
                return c
        raise GroupError("element matched no class")  # pragma: no cover

    def power_class(self, c: "ConjugacyClass", k: int) -> "ConjugacyClass":
        return self._class_of_member(c.representative ** k)


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass(eq=False)
class ConjugacyClass:
    """A conjugacy class with an optional conjugation-BFS tree.

    The tree stores, per element, the generator index and parent index of
    the BFS edge that reached it; the root is the representative.
    """

    id: int
    computed_name: str
    representative: Permutation
    size: int
    element_order: int
    centralizer_order: int
    group: FiniteGroup = field(repr=False)
    name: str = ""
    fingerprint: tuple = field(default=(), repr=False)
    _elements: list | None = field(default=None, repr=False)
    _parent: array | None = field(default=None, repr=False)
    _gen: array | None = field(default=None, repr=False)
    _index: dict | None = field(default=None, repr=False)

    @property
    def materialized(self) -> bool:
        return self._elements is not None

    def materialize(self, cap: int = 3_000_000) -> None:
        """Build the BFS tree rooted at the representative."""
        if self._elements is not None:
            return
        if self.size > cap:
            raise GroupError(f"class {self.name} has {self.size} elements, above cap {cap}")
        G = self.group
        gens = [(g.packed, pinv(g.packed)) for g in G.generators]
        root = self.representative.packed
        elements = [root]
        parent = array("l", [-1])
        gen = array("b", [-1])
        index = {root: 0}
        for pos, e in enumerate(elements):
            for gi, (s, sinv) in enumerate(gens):
                f = sinv.translate(e).translate(s)
                if f not in index:
                    index[f] = len(elements)
                    elements.append(f)
                    parent.append(pos)
                    gen.append(gi)
        if len(elements) != self.size:
            raise GroupError(f"class {self.name}: tree size {len(elements)} != {self.size}")
        self._elements, self._parent, self._gen, self._index = elements, parent, gen, index

    def elements(self) -> list[bytes]:
        self.materialize()
        return self._elements

    def contains(self, g: Permutation) -> bool:
        if self._index is not None:
            return g.packed in self._index
        return self.group.class_of(g) is self

    def conjugator_packed(self, p: bytes) -> bytes:
        """Packed tau with ``p ^ tau == representative`` (tree walk)."""
        self.materialize()
        pos = self._index.get(p)
        if pos is None:
            raise GroupError(f"element not in class {self.name}")
        G = self.group
        inv_gens = [pinv(g.packed) for g in G.generators]
        tau = IDENT256
        while pos:
            tau = tau.translate(inv_gens[self._gen[pos]])
            pos = self._parent[pos]
        return tau

    def conjugator(self, g: Permutation) -> Permutation:
        if self._elements is None and self.size > 2_000_000:
            tau = self.group.conjugating_element(g, self.representative)
            if tau is None:
                raise GroupError(f"element not in class {self.name}")
            return tau
        return Permutation.from_packed(self.conjugator_packed(g.packed), self.group.degree)

    def centralizer(self) -> list[Permutation]:
        return self.group.centralizer(self.representative)

    def __repr__(self) -> str:
        return f"<class {self.name} size={self.size} |C|={self.centralizer_order}>"


EXHAUSTIVE_LIMIT = 1_000_000


def _letters():
    for ch in string.ascii_uppercase:
        yield ch
    k = 1
    while True:
        for ch in string.ascii_uppercase:
            yield f"{ch}{k}"
        k += 1


def _compute_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    order = G.order
    found: list[tuple[Permutation, int, object]] = []   # (rep, centralizer order, tree)
    if order <= EXHAUSTIVE_LIMIT and G.degree <= 256:
        found = _classes_exhaustive(G)
    else:
        found = _classes_sampled(G)
    raw = []
    for rep, cent, tree in found:
        raw.append((rep.order(), -cent, rep.images, rep, cent, tree))
    raw.sort(key=lambda r: (r[0], r[1], r[2]))
    classes = []
    letters: dict[int, Iterator[str]] = {}
    for idx, (o, _, _, rep, cent, tree) in enumerate(raw):
        it = letters.setdefault(o, _letters())
        name = f"{o}{next(it)}"
        c = ConjugacyClass(idx, name, rep, order // cent, o, cent, G, name, rep.fingerprint())
        if tree is not None:
            c._elements, c._parent, c._gen, c._index = tree
        classes.append(c)
    if sum(c.size for c in classes) != order:
        raise GroupError("class sizes do not sum to the group order")  # pragma: no cover
    return classes


def _classes_exhaustive(G: FiniteGroup):
    elements = sorted(G.elements())
    gens = [(g.packed, pinv(g.packed)) for g in G.generators]
    assigned: set[bytes] = set()
    out = []
    for e in elements:
        if e in assigned:
            continue
        tree_el = [e]
        parent = array("l", [-1])
        gen = array("b", [-1])
        index = {e: 0}
        for pos, x in enumerate(tree_el):
            for gi, (s, sinv) in enumerate(gens):
                f = sinv.translate(x).translate(s)
                if f not in index:
                    index[f] = len(tree_el)
                    tree_el.append(f)
                    parent.append(pos)
                    gen.append(gi)
        assigned.update(tree_el)
        rep = Permutation.from_packed(e, G.degree)
        out.append((rep, len(elements) // len(tree_el), (tree_el, parent, gen, index)))
    return out


def _classes_sampled(G: FiniteGroup):
    order = G.order
    rng = random.Random(int(G.digest(), 16))
    reps: list[tuple[Permutation, int, object]] = []
    by_fp: dict[tuple, list[Permutation]] = {}
    total = 0

    def known(x: Permutation) -> bool:
        for r in by_fp.get(x.fingerprint(), []):
            if G.conjugating_element(x, r) is not None:
                return True
        return False

    def add(x: Permutation) -> None:
        nonlocal total
        cent = order if x.is_identity() else G.centralizer_order(x)
        reps.append((x, cent, None))
        by_fp.setdefault(x.fingerprint(), []).append(x)
        total += order // cent

    add(G.identity())
    while total < order:
        g = G.random_element(rng)
        o = g.order()
        for d in sorted(d for d in range(1, o + 1) if o % d == 0):
            x = g ** d
            if not known(x):
                add(x)
        if total > order:
            raise GroupError("class sampling overshoot")  # pragma: no cover
    return reps


# ---------------------------------------------------------------------------
# class vectors


class ClassVector:
    """An ordered list of classes together with its symmetry group."""

    def __init__(self, group: FiniteGroup, classes: Sequence):
        if len(classes) < 3:
            raise GroupError("class vectors need length >= 3")
        self.group = group
        self.classes = [group.cls(c) if not isinstance(c, ConjugacyClass) else c for c in classes]

    @classmethod
    def parse(cls, group: FiniteGroup, text: str) -> "ClassVector":
        return cls(group, [tok.strip() for tok in text.split(",") if tok.strip()])

    @property
    def m(self) -> int:
        return len(self.classes)

    @property
    def ids(self) -> list[int]:
        return [c.id for c in self.classes]

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.classes]

    def symmetry(self) -> list[tuple[int, ...]]:
        """All 0-based index permutations pi with C[pi(i)] == C[i]."""
        ids = self.ids
        return [pi for pi in _all_perms(range(self.m)) if all(ids[pi[i]] == ids[i] for i in range(self.m))]

    def admits(self, indices: Sequence[tuple[int, ...]]) -> bool:
        """Whether the symmetry group contains the given 1-based cycles' group."""
        ids = self.ids
        for cyc in indices:
            vals = {ids[i - 1] for i in cyc}
            if len(vals) != 1:
                return False
        return True

    def permuted(self, pi: Sequence[int]) -> "ClassVector":
        """The vector (C[pi(0)], ..., C[pi(m-1)])."""
        return ClassVector(self.group, [self.classes[pi[i]] for i in range(self.m)])

    def __eq__(self, other) -> bool:
        return isinstance(other, ClassVector) and self.ids == other.ids

    def __hash__(self) -> int:
        return hash(tuple(self.ids))

    def __str__(self) -> str:
        return ",".join(self.names)

    def __repr__(self) -> str:
        return f"ClassVector({self})"


# ---------------------------------------------------------------------------
# functional API


def group_order(generators: Sequence[Permutation]) -> int:
    if not generators:
        raise GroupError("need at least one generator")
    return FiniteGroup(generators).order


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    return G.conjugacy_classes()


def class_of(G: FiniteGroup, g: Permutation) -> int:
    return G.class_of(g).id


def is_rational_class(G: FiniteGroup, c) -> bool:
    cl = G.cls(c)
    o = cl.element_order
    return all(G.power_class(cl, k) is cl for k in range(2, o) if math.gcd(k, o) == 1)


def conjugator_to_representative(C: ConjugacyClass, g: Permutation) -> Permutation:
    return C.conjugator(g)


# ---------------------------------------------------------------------------
# file formats


def parse_group(text: str, name: str | None = None) -> FiniteGroup:
    """Parse the group file format: ``degree N`` then one image line each."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("degree"):
        raise GroupError("group file must start with 'degree N'")
    try:
        degree = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise GroupError("bad degree line") from None
    gens = []
    for lineno, ln in enumerate(lines[1:], start=2):
        try:
            img = [int(tok) - 1 for tok in ln.split()]
        except ValueError:
            raise GroupError(f"line {lineno}: non-integer image") from None
        if len(img) != degree:
            raise GroupError(f"line {lineno}: expected {degree} images, got {len(img)}")
        gens.append(Permutation(img))
    if not gens:
        raise GroupError("group file lists no generators")
    return FiniteGroup(gens, name=name)


def format_group(G: FiniteGroup) -> str:
    lines = [f"degree {G.degree}"]
    for g in G.generators:
        lines.append(" ".join(str(i + 1) for i in g.images))
    return "\n".join(lines) + "\n"


def parse_names(text: str) -> dict[str, str]:
    mapping = {}
    for lineno, ln in enumerate(text.splitlines(), start=1):
        ln = ln.strip()
        if not ln or ln.startswith("#"):
            continue
        if "=" not in ln:
            raise GroupError(f"names line {lineno}: expected computed=external")
        a, b = (s.strip() for s in ln.split("=", 1))
        mapping[a] = b
    return mapping


def load_group(path: str | Path, names: str | Path | None = None) -> FiniteGroup:
    path = Path(path)
    G = parse_group(path.read_text(), name=path.stem)
    if names is not None:
        G.load_names(parse_names(Path(names).read_text()))
    return G
