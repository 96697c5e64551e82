"""Generating m-systems, canonical forms modulo inner automorphisms, and
enumeration of Nielsen classes.

A tuple of m permutations of degree n is held as a ``uint8`` array of shape
``(m, n)``; batches have shape ``(F, m, n)``.  The canonical encoding of a
Nielsen class is the byte string of its canonical array (encoding version 1):
the first entry is conjugated to the stored representative of its class and
the remaining entries are minimized lexicographically over the centralizer of
that representative.  Because the centralizer acts freely on generating
tuples of a centerless group, the minimum is attained by a unique tuple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .permgroup import (
    ClassVector,
    ConjugacyClass,
    FiniteGroup,
    GroupError,
    IDENT256,
    Permutation,
    StabilizerChain,
    pack,
)

__all__ = [
    "ENCODING_VERSION",
    "NielsenError",
    "RawTuple",
    "NielsenTuple",
    "TupleSpace",
    "canonicalize",
    "enumerate_class_systems",
    "count_class_systems",
    "enumerate_23_triples",
    "bmul",
    "binv",
    "bconj",
]

ENCODING_VERSION = 1
MATERIALIZE_CAP = 3_000_000


class NielsenError(GroupError):
    """Invalid tuples, violated hypotheses or exceeded enumeration limits."""


class LimitExceeded(NielsenError):
    """A configured resource limit was hit."""


# ---------------------------------------------------------------------------
# batched permutation arithmetic on the last axis


def bmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product ``a * b`` (a first, then b) on broadcastable image arrays."""
    a, b = np.broadcast_arrays(a, b)
    return np.take_along_axis(b, a, axis=-1)


def binv(a: np.ndarray) -> np.ndarray:
    out = np.empty_like(a)
    idx = np.broadcast_to(np.arange(a.shape[-1], dtype=a.dtype), a.shape)
    np.put_along_axis(out, a, idx, axis=-1)
    return out


def bconj(x: np.ndarray, g: np.ndarray) -> np.ndarray:
    """``g**-1 * x * g`` elementwise over a batch."""
    return bmul(bmul(binv(g), x), g)


def conj_rows_by(T: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Conjugate every entry of every tuple in ``T`` (F, m, n) by the
    per-row elements ``g`` (F, n)."""
    gi = binv(g)
    F, m, n = T.shape
    first = np.take_along_axis(T, np.broadcast_to(gi[:, None, :], T.shape), axis=-1)
    return np.take_along_axis(np.broadcast_to(g[:, None, :], T.shape), first, axis=-1)


def _perm_array(p: Permutation | bytes | Sequence[int], n: int) -> np.ndarray:
    if isinstance(p, Permutation):
        return np.asarray(p.images, dtype=np.uint8)
    if isinstance(p, (bytes, bytearray)):
        return np.frombuffer(bytes(p[:n]), dtype=np.uint8).copy()
    return np.asarray(p, dtype=np.uint8)


def _fixed_counts(X: np.ndarray) -> np.ndarray:
    n = X.shape[-1]
    return (X == np.arange(n, dtype=X.dtype)).sum(axis=-1)


def _divisors(o: int) -> list[int]:
    return [d for d in range(1, o + 1) if o % d == 0]


# ---------------------------------------------------------------------------
# tuples


class RawTuple:
    """An m-tuple of permutations whose product is the identity."""

    def __init__(self, entries: Sequence[Permutation], check: bool = True):
        entries = list(entries)
        if not entries:
            raise NielsenError("empty tuple")
        n = entries[0].degree
        if any(e.degree != n for e in entries):
            raise NielsenError("tuple entries have different degrees")
        self.entries = entries
        if check:
            prod = entries[0]
            for e in entries[1:]:
                prod = prod * e
            if not prod.is_identity():
                raise NielsenError("tuple product is not the identity")

    @classmethod
    def from_array(cls, arr: np.ndarray, check: bool = True) -> "RawTuple":
        return cls([Permutation(row.tolist(), check=False) for row in arr], check=check)

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return self.entries[0].degree

    def array(self) -> np.ndarray:
        return np.array([e.images for e in self.entries], dtype=np.uint8)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "[" + ", ".join(str(e) for e in self.entries) + "]"

    __repr__ = __str__


@dataclass(frozen=True, order=True)
class NielsenTuple:
    """Canonical representative of a Nielsen class, keyed by its encoding."""

    encoding: bytes
    m: int
    degree: int

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "NielsenTuple":
        m, n = arr.shape
        return cls(np.ascontiguousarray(arr, dtype=np.uint8).tobytes(), m, n)

    def array(self) -> np.ndarray:
        return np.frombuffer(self.encoding, dtype=np.uint8).reshape(self.m, self.degree)

    @property
    def canonical(self) -> RawTuple:
        return RawTuple.from_array(self.array(), check=False)

    @property
    def entries(self) -> list[Permutation]:
        return self.canonical.entries

    def hex(self) -> str:
        return self.encoding.hex()

    def __str__(self) -> str:
        return str(self.canonical)


# ---------------------------------------------------------------------------
# per-group context


class _ClassData:
    __slots__ = ("cls", "rep", "cent", "cent_inv", "divisors", "signature", "ambiguous",
                 "_elements")

    def __init__(self, cls: ConjugacyClass, n: int):
        self.cls = cls
        self.rep = np.asarray(cls.representative.images, dtype=np.uint8)
        cent = cls.centralizer()
        self.cent = np.array([c.images for c in cent], dtype=np.uint8).reshape(len(cent), n)
        self.cent_inv = binv(self.cent)
        o = cls.element_order
        self.divisors = _divisors(o)
        rep = cls.representative
        self.signature = [sum(1 for i, x in enumerate((rep ** d).images) if i == x)
                          for d in self.divisors]
        self.ambiguous = False
        self._elements = None


class TupleSpace:
    """Canonicalization, class tests and generation checks for one group."""

    def __init__(self, G: FiniteGroup, materialize_cap: int = MATERIALIZE_CAP):
        if G.degree > 256:
            raise NielsenError("tuple engine supports degree <= 256")
        self.G = G
        self.n = G.degree
        self.materialize_cap = materialize_cap
        self._data: dict[int, _ClassData] = {}
        self._inverse_class: dict[int, ConjugacyClass] = {}
        self._transitive = G.is_transitive()
        self._gen_cache: dict[bytes, bool] = {}
        G.require_trivial_center()

    # -- class data -------------------------------------------------------
    def data(self, c) -> _ClassData:
        cls = self.G.cls(c) if not isinstance(c, ConjugacyClass) else c
        d = self._data.get(cls.id)
        if d is None:
            d = _ClassData(cls, self.n)
            ct = cls.representative.cycle_type()
            d.ambiguous = sum(1 for k in self.G.conjugacy_classes()
                              if k.element_order == cls.element_order
                              and k.representative.cycle_type() == ct) > 1
            self._data[cls.id] = d
        return d

    def elements(self, c) -> np.ndarray:
        """All elements of a class as a (K, n) array, in tree order."""
        d = self.data(c)
        if d._elements is None:
            if d.cls.size > self.materialize_cap:
                raise LimitExceeded(f"class {d.cls.name} has {d.cls.size} elements, "
                                    f"above the cap {self.materialize_cap}")
            d.cls.materialize(self.materialize_cap)
            n = self.n
            d._elements = np.frombuffer(b"".join(e[:n] for e in d.cls.elements()),
                                        dtype=np.uint8).reshape(d.cls.size, n)
        return d._elements

    def inverse_class(self, c) -> ConjugacyClass:
        cls = self.G.cls(c) if not isinstance(c, ConjugacyClass) else c
        inv = self._inverse_class.get(cls.id)
        if inv is None:
            inv = self.G._class_of_member(cls.representative.inverse())
            self._inverse_class[cls.id] = inv
        return inv

    def class_of_array(self, x: np.ndarray) -> ConjugacyClass:
        return self.G._class_of_member(Permutation(x.tolist(), check=False))

    # -- membership -------------------------------------------------------
    def class_mask(self, X: np.ndarray, c) -> np.ndarray:
        """Boolean mask of rows of X (K, n) lying in class c."""
        d = self.data(c)
        K = X.shape[0]
        mask = np.zeros(K, dtype=bool)
        if K == 0:
            return mask
        idx = np.nonzero(_fixed_counts(X) == d.signature[0])[0]
        if idx.size:
            Y = X[idx]
            P = Y
            o = d.divisors[-1]
            sig = dict(zip(d.divisors, d.signature))
            for k in range(2, o + 1):
                P = bmul(P, Y)
                if k in sig:
                    ok = _fixed_counts(P) == sig[k]
                    if not ok.all():
                        idx, Y, P = idx[ok], Y[ok], P[ok]
                        if not idx.size:
                            break
            mask[idx] = True
        if d.ambiguous and mask.any():
            for i in np.nonzero(mask)[0]:
                if not self.in_class_exact(X[i], d.cls):
                    mask[i] = False
        return mask

    def in_class_exact(self, x: np.ndarray, cls: ConjugacyClass) -> bool:
        if cls.size <= self.materialize_cap:
            cls.materialize(self.materialize_cap)
            return pack(x.tolist()) in cls._index
        return self.G.conjugating_element(Permutation(x.tolist(), check=False),
                                          cls.representative) is not None

    # -- generation -------------------------------------------------------
    def generates(self, arrs: Iterable[np.ndarray]) -> bool:
        gens = [tuple(a.tolist()) for a in arrs]
        if self._transitive:
            from .permgroup import _orbit_labels
            labels = _orbit_labels(gens, self.n)
            if any(x != labels[0] for x in labels):
                return False
        target = self.G.order
        return StabilizerChain(gens, self.n, target=target).order() == target

    def generates_pair_cached(self, a: np.ndarray, b: np.ndarray) -> bool:
        key = a.tobytes() + b.tobytes()
        hit = self._gen_cache.get(key)
        if hit is None:
            hit = self.generates([a, b])
            self._gen_cache[key] = hit
        return hit

    # -- canonical form ---------------------------------------------------
    def conjugator_to_rep(self, x: np.ndarray, cls: ConjugacyClass) -> np.ndarray:
        """Some tau with ``x ^ tau`` equal to the class representative."""
        if cls.size <= self.materialize_cap:
            cls.materialize(self.materialize_cap)
            return _perm_array(cls.conjugator_packed(pack(x.tolist())), self.n)
        tau = self.G.conjugating_element(Permutation(x.tolist(), check=False), cls.representative)
        if tau is None:
            raise NielsenError(f"element not in class {cls.name}")
        return _perm_array(tau, self.n)

    def to_representative(self, T: np.ndarray, cls: ConjugacyClass | None = None) -> np.ndarray:
        """Conjugate each row so that its first entry equals the representative
        of its class (``cls`` if given for all rows)."""
        T = np.array(T, dtype=np.uint8, copy=True)
        if T.shape[0] == 0:
            return T
        if cls is not None:
            rep = self.data(cls).rep
            bad = np.nonzero((T[:, 0, :] != rep).any(axis=1))[0]
        else:
            bad = range(T.shape[0])
        taus = []
        rows = []
        for i in bad:
            c = cls if cls is not None else self.class_of_array(T[i, 0])
            if cls is None and np.array_equal(T[i, 0], self.data(c).rep):
                continue
            taus.append(self.conjugator_to_rep(T[i, 0], c))
            rows.append(i)
        if rows:
            rows = np.asarray(rows)
            T[rows] = conj_rows_by(T[rows], np.array(taus, dtype=np.uint8))
        return T

    def minimize(self, T: np.ndarray, cls: ConjugacyClass | None = None) -> np.ndarray:
        """Minimize rows (first entry already a representative) over the
        centralizer of that representative."""
        F, m, n = T.shape
        if F == 0:
            return T
        if cls is None:
            groups: dict[int, list[int]] = {}
            for i in range(F):
                groups.setdefault(self.class_of_array(T[i, 0]).id, []).append(i)
            out = np.empty_like(T)
            for cid, rows in groups.items():
                rows = np.asarray(rows)
                out[rows] = self.minimize(T[rows], self.G.cls(cid))
            return out
        d = self.data(cls)
        flat = T.reshape(F, m * n)
        best = flat.copy()
        rows = np.arange(F)
        for c, ci in zip(d.cent, d.cent_inv):
            cand = c[T[:, :, ci]].reshape(F, m * n)
            diff = cand != best
            first = diff.argmax(axis=1)
            less = diff[rows, first] & (cand[rows, first] < best[rows, first])
            if less.any():
                best[less] = cand[less]
        return best.reshape(F, m, n)

    def canonical_batch(self, T: np.ndarray, cls: ConjugacyClass | None = None) -> np.ndarray:
        T = self.to_representative(T, cls)
        return self.minimize(T, cls)

    def canonicalize(self, t, check: bool = True) -> NielsenTuple:
        arr = t.array() if isinstance(t, (RawTuple, NielsenTuple)) else np.asarray(t, dtype=np.uint8)
        if check:
            raw = RawTuple.from_array(arr)            # product check
            if not self.generates(arr):
                raise NielsenError("tuple does not generate the group")
            del raw
        return NielsenTuple.from_array(self.canonical_batch(arr[None])[0])

    @staticmethod
    def keys(T: np.ndarray) -> list[bytes]:
        F = T.shape[0]
        if F == 0:
            return []
        buf = np.ascontiguousarray(T).tobytes()
        w = len(buf) // F
        return [buf[i:i + w] for i in range(0, len(buf), w)]

    def tuple_from_key(self, key: bytes, m: int) -> NielsenTuple:
        return NielsenTuple(key, m, self.n)


_SPACES: dict[int, TupleSpace] = {}


def space_for(G: FiniteGroup) -> TupleSpace:
    sp = _SPACES.get(id(G))
    if sp is None or sp.G is not G:
        sp = TupleSpace(G)
        _SPACES[id(G)] = sp
    return sp


def canonicalize(G: FiniteGroup, t: RawTuple) -> NielsenTuple:
    """Canonical representative of the Inn(G)-class of a generating tuple."""
    return space_for(G).canonicalize(t)


# ---------------------------------------------------------------------------
# enumeration


def _orbit_reps(space: TupleSpace, V: np.ndarray, d: _ClassData) -> tuple[np.ndarray, np.ndarray]:
    """Representatives of the orbits of the centralizer of the pinned
    representative on the rows of V, with orbit sizes."""
    keys = TupleSpace.keys(V)
    index = {k: i for i, k in enumerate(keys)}
    images = []
    for c, ci in zip(d.cent, d.cent_inv):
        W = c[V[:, ci]]
        images.append([index[k] for k in TupleSpace.keys(W)])
    seen = np.zeros(len(keys), dtype=bool)
    reps, sizes = [], []
    for i in range(len(keys)):
        if seen[i]:
            continue
        orb = {img[i] for img in images}
        for j in orb:
            seen[j] = True
        reps.append(i)
        sizes.append(len(orb))
    return np.asarray(reps, dtype=np.intp), np.asarray(sizes, dtype=np.int64)


def _solve_plan(space: TupleSpace, classes: list[ConjugacyClass]):
    m = len(classes)
    sizes = [c.size for c in classes]
    s = max(range(1, m), key=lambda i: (sizes[i], i))
    rotated = list(range(s + 1, m)) + list(range(0, s))
    iterated = [p for p in rotated if p != 0]
    return s, rotated, iterated


def iter_solutions(G: FiniteGroup, cv: ClassVector, space: TupleSpace | None = None,
                   limit: int | None = None) -> Iterator[tuple[np.ndarray, int]]:
    """Yield batches ``(T, weight)`` of generating tuples in Sigma(cv) with
    the first entry pinned to its class representative.

    Every tuple of that pinned set is reached through an outer-position
    representative; ``weight`` is the size of its centralizer orbit, so the
    pinned count is the weighted sum of batch sizes.
    """
    space = space or space_for(G)
    classes = cv.classes
    m = len(classes)
    if m < 3:
        raise NielsenError("class vectors need length >= 3")
    n = space.n
    d1 = space.data(classes[0])
    rep1 = d1.rep
    s, rotated, iterated = _solve_plan(space, classes)
    target = space.inverse_class(classes[s])
    ident = np.arange(n, dtype=np.uint8)

    arrays = {p: space.elements(classes[p]) for p in iterated}
    outer = iterated[0]
    inner = iterated[-1]
    if len(iterated) >= 2:
        reps, weights = _orbit_reps(space, arrays[outer], d1)
    else:
        reps, weights = None, None

    produced = 0

    def finish(chosen: dict[int, np.ndarray], V: np.ndarray, P: np.ndarray, weight: int):
        nonlocal produced
        mask = space.class_mask(P, target)
        if not mask.any():
            return None
        idx = np.nonzero(mask)[0]
        F = idx.size
        T = np.empty((F, m, n), dtype=np.uint8)
        T[:, 0, :] = rep1
        for p, x in chosen.items():
            T[:, p, :] = x
        T[:, inner, :] = V[idx]
        T[:, s, :] = binv(P[idx])
        keep = np.ones(F, dtype=bool)
        if outer != inner and space.generates_pair_cached(rep1, chosen[outer]):
            pass
        else:
            for r in range(F):
                keep[r] = space.generates(T[r])
        T = T[keep]
        if limit is not None:
            produced += T.shape[0]
            if produced > limit:
                raise LimitExceeded(f"more than {limit} pinned tuples")
        return T

    def product_before(chosen: dict[int, np.ndarray]) -> np.ndarray:
        acc = ident
        for p in rotated:
            if p == inner:
                break
            x = rep1 if p == 0 else chosen[p]
            acc = x[acc]
        return acc

    def product_after(chosen: dict[int, np.ndarray]) -> np.ndarray:
        acc = ident
        after = rotated[rotated.index(inner) + 1:]
        for p in after:
            x = rep1 if p == 0 else chosen[p]
            acc = x[acc]
        return acc

    if len(iterated) == 1:
        V = arrays[inner]
        A = product_before({})
        B = product_after({})
        P = B[V[:, A]]
        T = finish({}, V, P, 1)
        if T is not None and T.shape[0]:
            yield T, 1
        return

    middle = iterated[1:-1]
    V = arrays[inner]

    def rec(level: int, chosen: dict[int, np.ndarray], weight: int):
        if level == len(middle):
            A = product_before(chosen)
            B = product_after(chosen)
            P = B[V[:, A]]
            T = finish(chosen, V, P, weight)
            if T is not None and T.shape[0]:
                yield T, weight
            return
        p = middle[level]
        for x in arrays[p]:
            chosen[p] = x
            yield from rec(level + 1, chosen, weight)
        del chosen[p]

    for r, w in zip(reps, weights):
        yield from rec(0, {outer: arrays[outer][r]}, int(w))


def count_class_systems(G: FiniteGroup, cv: ClassVector, limit: int | None = None) -> int:
    """l^i(cv) by a weighted streaming count, without storing tuples."""
    space = space_for(G)
    total = 0
    for T, w in iter_solutions(G, cv, space, limit=limit):
        total += w * T.shape[0]
    k = space.data(cv.classes[0]).cent.shape[0]
    if total % k:
        raise NielsenError("pinned count not divisible by the centralizer order")  # pragma: no cover
    return total // k


def enumerate_keys(G: FiniteGroup, cv: ClassVector, limit: int | None = None) -> set[bytes]:
    """Canonical encodings of Sigma^i(cv)."""
    space = space_for(G)
    out: set[bytes] = set()
    c1 = cv.classes[0]
    for T, _ in iter_solutions(G, cv, space, limit=limit):
        out.update(space.keys(space.minimize(T, c1)))
    return out


def enumerate_class_systems(G: FiniteGroup, cv: ClassVector,
                            limit: int | None = None) -> set[NielsenTuple]:
    """Sigma^i(cv) as a set of canonical Nielsen tuples."""
    m = cv.m
    n = G.degree
    return {NielsenTuple(k, m, n) for k in enumerate_keys(G, cv, limit)}


def enumerate_23_triples(G: FiniteGroup, c2, c3, c) -> list[RawTuple]:
    """One canonical triple per class of Sigma^i(C2, C3, C) with C2 of
    involutions and C3 of elements of order 3."""
    C2, C3 = G.cls(c2), G.cls(c3)
    if C2.element_order != 2 or C3.element_order != 3:
        raise NielsenError("need a class of involutions and a class of order-3 elements")
    cv = ClassVector(G, [C2, C3, G.cls(c)])
    return [t.canonical for t in sorted(enumerate_class_systems(G, cv))]


def tuples_to_array(tuples: Sequence[NielsenTuple]) -> np.ndarray:
    if not tuples:
        return np.zeros((0, 0, 0), dtype=np.uint8)
    m, n = tuples[0].m, tuples[0].degree
    buf = b"".join(t.encoding for t in tuples)
    return np.frombuffer(buf, dtype=np.uint8).reshape(len(tuples), m, n).copy()
