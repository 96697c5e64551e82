"""Orbits of Nielsen classes under pure, full and symmetrized braid actions.

Orbits are found by batched breadth-first search.  The member set is the
closure of the start under the forward images of the generators (the set is
finite, so this is the orbit).  Reports are built in a separate pass over the
members sorted by encoding, so they do not depend on the search schedule.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import braid
from .nielsen import (
    ENCODING_VERSION,
    LimitExceeded,
    NielsenError,
    NielsenTuple,
    TupleSpace,
    enumerate_keys,
    space_for,
    tuples_to_array,
)
from .permgroup import ClassVector, ConjugacyClass, FiniteGroup, StabilizerChain, _orbit_labels

__all__ = [
    "ActionSpec",
    "OrbitReport",
    "ResourceLimit",
    "orbit_of",
    "partition",
    "genus",
    "invariant_signature",
    "bounded_orbit_search",
    "action_group_report",
    "cycle_type_string",
    "resume",
    "default_workers",
]

WORKERS_ENV = "HURWITZ_WORKERS"
BLOCK = 4096
MEMBER_CAP = 10_000_000
PROBE_CAP = 5000

SYMMETRIES = {
    # extra generators and the genus terms for each symmetric set
    "23": (["b3", "e23"], ["B(1,2)", "b3", "e23"]),
    "34": (["b4", "e34"], ["B(1,3)", "b4", "e34"]),
    "234": (["b3", "e23", "e234"], ["b3", "e23", "e234"]),
}
_SYM_CYCLES = {"23": [(2, 3)], "34": [(3, 4)], "234": [(2, 3, 4)]}


class ResourceLimit(LimitExceeded):
    """Raised when a search exceeds its member cap; ``checkpoint`` is the
    path of the written checkpoint file, if any."""

    def __init__(self, msg: str, checkpoint: str | None = None):
        super().__init__(msg)
        self.checkpoint = checkpoint


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# ---------------------------------------------------------------------------
# action specs


@dataclass(frozen=True)
class ActionSpec:
    mode: str = "pure"             # pure | full | symmetric4
    symmetry: str | None = None   # 23 | 34 | 234 for symmetric4

    def __post_init__(self):
        if self.mode not in ("pure", "full", "symmetric4"):
            raise ValueError(f"unknown action mode {self.mode!r}")
        if self.mode == "symmetric4" and self.symmetry not in SYMMETRIES:
            raise ValueError("symmetric4 needs symmetry 23, 34 or 234")
        if self.mode != "symmetric4" and self.symmetry is not None:
            raise ValueError("symmetry is only used by symmetric4")

    def __str__(self) -> str:
        return self.mode if self.symmetry is None else f"{self.mode}:{self.symmetry}"

    @classmethod
    def parse(cls, text: str) -> "ActionSpec":
        mode, _, sym = text.partition(":")
        if mode == "sym":
            mode = "symmetric4"
        return cls(mode, sym or None)

    def generator_names(self, m: int) -> list[str]:
        if self.mode == "full":
            return [f"b{j}" for j in range(2, m + 1)]
        if m == 4 or self.mode == "symmetric4":
            pure = [f"B(1,{j})" for j in range(2, 5)]
        else:
            pure = [f"B({i},{j})" for i in range(1, m + 1) for j in range(i + 1, m + 1)]
        if self.mode == "symmetric4":
            return pure + SYMMETRIES[self.symmetry][0]
        return pure

    def validate(self, cv: ClassVector) -> None:
        if self.mode == "symmetric4":
            if cv.m != 4:
                raise NielsenError("symmetric4 needs m = 4")
            if not cv.admits(_SYM_CYCLES[self.symmetry]):
                raise NielsenError(f"class vector {cv} lacks the symmetry {self.symmetry}")

    def fixes_first_class(self) -> bool:
        return self.mode != "full"


def _kernel(name: str) -> Callable[[np.ndarray], np.ndarray]:
    if name.startswith("B("):
        i, j = (int(x) for x in name[2:-1].split(","))
        return lambda T: braid.pure_kernel(T, i - 1, j - 1)
    if name.startswith("b"):
        j = int(name[1:])
        return lambda T: braid.full_kernel(T, j)
    return lambda T: braid.eta_kernel(T, name)


def _word(name: str, m: int) -> braid.BraidWord:
    if name.startswith("B("):
        i, j = (int(x) for x in name[2:-1].split(","))
        return braid.beta_pure(m, i, j)
    if name.startswith("b"):
        return braid.beta(m, int(name[1:]))
    return braid.eta(name)


# ---------------------------------------------------------------------------
# reports


def cycle_lengths(perm: np.ndarray) -> np.ndarray:
    """Lengths of the cycles of a permutation array, one per cycle."""
    N = perm.shape[0]
    if N == 0:
        return np.zeros(0, dtype=np.int64)
    lab = np.arange(N)
    p = perm.astype(np.int64)
    for _ in range(max(1, math.ceil(math.log2(N))) + 1):
        lab = np.minimum(lab, lab[p])
        p = p[p]
    counts = np.bincount(lab, minlength=N)
    return counts[lab == np.arange(N)]


def cycle_type(perm: np.ndarray) -> list[tuple[int, int]]:
    vals, mult = np.unique(cycle_lengths(perm), return_counts=True)
    return [(int(v), int(k)) for v, k in zip(vals, mult)]


def cycle_type_string(ct: Sequence[tuple[int, int]]) -> str:
    return "".join(f"({v})" if k == 1 else f"({v})^{k}" for v, k in ct)


@dataclass
class OrbitReport:
    size: int
    spec: ActionSpec
    m: int
    generators: list[str]
    cycle_counts: dict[str, int]
    cycle_types: dict[str, list[tuple[int, int]]]
    genus: int | None
    invariant_signature: tuple[int, int, int] | None = None
    action_group: dict | None = None
    members: list[NielsenTuple] | None = None
    images: dict[str, np.ndarray] = field(default_factory=dict, repr=False)

    @property
    def first(self) -> NielsenTuple | None:
        return self.members[0] if self.members else None

    def cycle_type(self, name: str) -> str:
        return cycle_type_string(self.cycle_types[name])

    def to_dict(self, include_members: bool = False) -> dict:
        out = {
            "size": self.size,
            "spec": str(self.spec),
            "m": self.m,
            "cycle_counts": dict(self.cycle_counts),
            "cycle_types": {k: cycle_type_string(v) for k, v in self.cycle_types.items()},
            "genus": self.genus,
            "invariant_signature": list(self.invariant_signature)
            if self.invariant_signature else None,
            "action_group": self.action_group,
        }
        if include_members and self.members is not None:
            out["members"] = [t.hex() for t in self.members]
        else:
            out["first_member"] = self.members[0].hex() if self.members else None
        return out


def genus(report: OrbitReport) -> int | None:
    """Genus of an orbit from its cycle counts; None for the full action."""
    return _genus(report.spec, report.m, report.size, report.cycle_counts)


def _genus(spec: ActionSpec, m: int, size: int, z: dict[str, int]) -> int | None:
    if spec.mode == "full":
        return None
    if spec.mode == "symmetric4":
        terms = SYMMETRIES[spec.symmetry][1]
        twice = 2 - 2 * size + 3 * size - sum(z[t] for t in terms)
    else:
        twice = 2 - 2 * size + (m - 1) * size - sum(z[f"B(1,{j})"] for j in range(2, m + 1))
    if twice % 2:
        raise NielsenError(f"non-integral genus from cycle counts {z}")
    g = twice // 2
    if g < 0:
        raise NielsenError(f"negative genus from cycle counts {z}")
    return g


# ---------------------------------------------------------------------------
# search engine


class _Engine:
    def __init__(self, G: FiniteGroup, m: int, spec: ActionSpec,
                 first_class: ConjugacyClass | None, workers: int = 1):
        self.G = G
        self.space: TupleSpace = space_for(G)
        self.m = m
        self.spec = spec
        self.names = spec.generator_names(m)
        self.kernels = [_kernel(nm) for nm in self.names]
        self.cls = first_class if spec.fixes_first_class() else None
        self.workers = max(1, workers)
        self.n = G.degree
        self.width = m * self.n

    def images(self, T: np.ndarray) -> list[np.ndarray]:
        """Canonical images of a block under every generator."""
        return [self.space.canonical_batch(k(T), self.cls) for k in self.kernels]

    def images_blocks(self, T: np.ndarray) -> list[list[np.ndarray]]:
        blocks = [T[i:i + BLOCK] for i in range(0, T.shape[0], BLOCK)]
        if self.workers == 1 or len(blocks) == 1:
            return [self.images(b) for b in blocks]
        with ThreadPoolExecutor(self.workers) as ex:
            return list(ex.map(self.images, blocks))

    def to_array(self, keys: Sequence[bytes]) -> np.ndarray:
        if not keys:
            return np.zeros((0, self.m, self.n), dtype=np.uint8)
        return np.frombuffer(b"".join(keys), dtype=np.uint8).reshape(
            len(keys), self.m, self.n).copy()

    def closure(self, start: Iterable[bytes], limit: int | None = None,
                member_cap: int = MEMBER_CAP, known: Sequence[bytes] = (),
                checkpoint: str | None = None, header: dict | None = None,
                deadline: float | None = None):
        """Breadth-first closure.  Returns (members in discovery order, images)
        where images[g][i] is the index of the image of member i, or None if
        the size exceeded ``limit``."""
        index: dict[bytes, int] = {}
        members: list[bytes] = []
        for k in itertools.chain(known, start):
            if k not in index:
                index[k] = len(members)
                members.append(k)
        images = [[] for _ in self.names]
        head = len(set(known))
        while head < len(members):
            end = min(len(members), head + BLOCK * self.workers)
            over_cap = member_cap is not None and len(members) > member_cap
            late = deadline is not None and time.monotonic() > deadline
            if over_cap or late:
                path = None
                if checkpoint:
                    write_checkpoint(checkpoint, header or {}, members[:head], members[head:])
                    path = checkpoint
                why = f"the member cap {member_cap}" if over_cap else "the time limit"
                raise ResourceLimit(f"orbit search exceeded {why}", path)
            T = self.to_array(members[head:end])
            for block_imgs in self.images_blocks(T):
                for g, arr in enumerate(block_imgs):
                    col = images[g]
                    for key in TupleSpace.keys(arr):
                        idx = index.get(key)
                        if idx is None:
                            idx = len(members)
                            index[key] = idx
                            members.append(key)
                        col.append(idx)
            head = end
            if limit is not None and len(members) > limit:
                return None
        return members, [np.asarray(c, dtype=np.int64) for c in images]


def _report(engine: _Engine, members: list[bytes], images: list[np.ndarray],
            with_members: bool = True, signature: bool = True) -> OrbitReport:
    order = sorted(range(len(members)), key=members.__getitem__)
    order = np.asarray(order, dtype=np.int64)
    rank = np.empty_like(order)
    rank[order] = np.arange(len(order))
    sorted_keys = [members[i] for i in order]
    perms = {}
    for nm, img in zip(engine.names, images):
        perms[nm] = rank[img[order]]
    counts = {nm: int(cycle_lengths(p).size) for nm, p in perms.items()}
    types = {nm: cycle_type(p) for nm, p in perms.items()}
    size = len(members)
    rep = OrbitReport(
        size=size, spec=engine.spec, m=engine.m, generators=list(engine.names),
        cycle_counts=counts, cycle_types=types,
        genus=_genus(engine.spec, engine.m, size, counts),
        images=perms,
    )
    m, n = engine.m, engine.n
    if with_members:
        rep.members = [NielsenTuple(k, m, n) for k in sorted_keys]
    if signature and m == 4 and engine.spec.mode == "pure":
        sigs = _signatures(engine.G, engine.to_array(sorted_keys))
        if len(set(sigs)) != 1:
            raise NielsenError("invariant signature is not constant on the orbit")
        rep.invariant_signature = sigs[0]
    return rep


def _signatures(G: FiniteGroup, T: np.ndarray) -> list[tuple[int, int, int]]:
    space = space_for(G)
    keys = TupleSpace.keys(T)
    cols = []
    for k in (1, 2, 3):
        word = braid.phi(4, k)
        out = []
        for i in range(0, T.shape[0], BLOCK):
            img = space.canonical_batch(braid.act(T[i:i + BLOCK], word))
            out.extend(TupleSpace.keys(img))
        cols.append([1 if a == b else -1 for a, b in zip(out, keys)])
    return list(zip(*cols))


def invariant_signature(G: FiniteGroup, t: NielsenTuple) -> tuple[int, int, int]:
    """Signs of the fixed-point invariants of the three quaternion elements."""
    if t.m != 4:
        raise NielsenError("invariant signature needs m = 4")
    return _signatures(G, t.array()[None])[0]


def _first_class(G: FiniteGroup, t: NielsenTuple) -> ConjugacyClass:
    return space_for(G).class_of_array(t.array()[0])


def _cv_of(G: FiniteGroup, t: NielsenTuple) -> ClassVector:
    space = space_for(G)
    return ClassVector(G, [space.class_of_array(r) for r in t.array()])


def orbit_of(G: FiniteGroup, t: NielsenTuple, spec: ActionSpec = ActionSpec(),
             limit: int | None = None, workers: int | None = None,
             member_cap: int = MEMBER_CAP, checkpoint: str | None = None,
             with_members: bool = True, deadline: float | None = None) -> OrbitReport | None:
    """Orbit of one Nielsen class.  Returns None when ``limit`` is set and
    the orbit is larger than it."""
    cv = _cv_of(G, t)
    spec.validate(cv)
    space = space_for(G)
    arr = space.canonical_batch(t.array()[None])[0]
    start = arr.tobytes()
    engine = _Engine(G, t.m, spec, cv.classes[0], workers or default_workers())
    header = _header(G, cv, spec)
    res = engine.closure([start], limit=limit, member_cap=member_cap,
                         checkpoint=checkpoint, header=header, deadline=deadline)
    if res is None:
        return None
    return _report(engine, *res, with_members=with_members)


def _space_keys(G: FiniteGroup, cv: ClassVector, spec: ActionSpec) -> set[bytes]:
    """The set acted on: Sigma(cv), or for the full action the union over
    the distinct rearrangements of cv."""
    if spec.mode != "full":
        return enumerate_keys(G, cv)
    keys: set[bytes] = set()
    seen = set()
    for pi in itertools.permutations(range(cv.m)):
        ids = tuple(cv.ids[i] for i in pi)
        if ids in seen:
            continue
        seen.add(ids)
        keys |= enumerate_keys(G, cv.permuted(pi))
    return keys


def partition(G: FiniteGroup, cv: ClassVector, spec: ActionSpec = ActionSpec(),
              workers: int | None = None, with_members: bool = True,
              keys: set[bytes] | None = None) -> list[OrbitReport]:
    """All orbits on the Nielsen classes of cv, sorted by size then first
    member encoding."""
    spec.validate(cv)
    if keys is None:
        keys = _space_keys(G, cv, spec)
    engine = _Engine(G, cv.m, spec, cv.classes[0], workers or default_workers())
    remaining = sorted(keys)
    done: set[bytes] = set()
    reports = []
    for k in remaining:
        if k in done:
            continue
        members, images = engine.closure([k])
        done.update(members)
        reports.append(_report(engine, members, images, with_members=with_members))
    if sum(r.size for r in reports) != len(keys):
        raise NielsenError("orbits do not cover the Nielsen classes")
    reports.sort(key=lambda r: (r.size, _min_key(r)))
    return reports


def _min_key(r: OrbitReport) -> bytes:
    return r.members[0].encoding if r.members else b""


def bounded_orbit_search(G: FiniteGroup, cv: ClassVector, limit: int,
                         spec: ActionSpec = ActionSpec(), workers: int | None = None,
                         keys: set[bytes] | None = None) -> list[OrbitReport]:
    """All orbits of size at most ``limit``.  Tuples are visited in encoding
    order; every class reached from an aborted expansion lies in a large
    orbit and is skipped."""
    if cv.m != 4:
        raise NielsenError("bounded search needs m = 4")
    spec.validate(cv)
    if limit <= 0:
        return []
    if keys is None:
        keys = _space_keys(G, cv, spec)
    engine = _Engine(G, cv.m, spec, cv.classes[0], workers or default_workers())
    skip: set[bytes] = set()
    reports = []
    for k in sorted(keys):
        if k in skip:
            continue
        res = _bounded_closure(engine, k, limit)
        if res is None:
            continue
        members, images, seen = res
        skip.update(seen)
        if images is not None:
            reports.append(_report(engine, members, images))
    reports.sort(key=lambda r: (r.size, _min_key(r)))
    return reports


def _bounded_closure(engine: _Engine, start: bytes, limit: int):
    index = {start: 0}
    members = [start]
    images = [[] for _ in engine.names]
    head = 0
    while head < len(members):
        T = engine.to_array(members[head:head + BLOCK])
        head += T.shape[0]
        for g, arr in enumerate(engine.images(T)):
            for key in TupleSpace.keys(arr):
                idx = index.get(key)
                if idx is None:
                    idx = len(members)
                    index[key] = idx
                    members.append(key)
                images[g].append(idx)
        if len(members) > limit:
            return members, None, members
    return members, [np.asarray(c, dtype=np.int64) for c in images], members


# ---------------------------------------------------------------------------
# action group probes


def _compose(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Apply p then q."""
    return q[p]


def _inverse(p: np.ndarray) -> np.ndarray:
    out = np.empty_like(p)
    out[p] = np.arange(p.shape[0])
    return out


def _group_order(perms: Sequence[np.ndarray], N: int) -> int:
    gens = [tuple(int(x) for x in p) for p in perms]
    all_even = all((N - cycle_lengths(p).size) % 2 == 0 for p in perms)
    bound = math.factorial(N) // (2 if all_even and N > 1 else 1)
    return StabilizerChain(gens, N, target=bound).order()


def word_permutation(report: OrbitReport, word: braid.BraidWord) -> np.ndarray:
    """Permutation of the sorted members induced by a word in the report's
    full-mode generators (b2..bm) or, for m = 4 pure words, by B(1,j)."""
    N = report.size
    p = np.arange(N)
    for g, e in word.letters:
        nm = g if isinstance(g, str) else f"b{g}"
        if nm not in report.images:
            raise NielsenError(f"generator {nm} not available in this report")
        img = report.images[nm]
        p = _compose(p, img if e == 1 else _inverse(img))
    return p


def action_group_report(report: OrbitReport, cap: int = PROBE_CAP) -> dict:
    """Order, transitivity and parity probes of the permutation group
    generated by the generator images on the orbit."""
    N = report.size
    if N > cap:
        raise ResourceLimit(f"orbit of size {N} exceeds the probe cap {cap}")
    perms = [report.images[nm] for nm in report.generators]
    parity = {nm: ("even" if (N - report.cycle_counts[nm]) % 2 == 0 else "odd")
              for nm in report.generators}
    labels = _orbit_labels([p.tolist() for p in perms], N)
    out = {
        "order": _group_order(perms, N),
        "transitive": len(set(labels)) == 1,
        "parity": parity,
    }
    if report.spec.mode == "full":
        pure = [word_permutation(report, braid.beta_pure(report.m, i, j))
                for i in range(1, report.m + 1) for j in range(i + 1, report.m + 1)]
        pure_order = _group_order(pure, N)
        out["pure_order"] = pure_order
        out["pure_index"] = out["order"] // pure_order
    report.action_group = out
    return out


# ---------------------------------------------------------------------------
# checkpoints


def _header(G: FiniteGroup, cv: ClassVector, spec: ActionSpec) -> dict:
    return {"group": G.digest(), "cv": str(cv), "spec": str(spec),
            "encoding": ENCODING_VERSION, "m": cv.m, "degree": G.degree}


def write_checkpoint(path: str, header: dict, done: Sequence[bytes],
                     frontier: Sequence[bytes]) -> None:
    lines = ["# " + json.dumps(header, sort_keys=False)]
    lines += [k.hex() for k in done]
    lines.append("---")
    lines += [k.hex() for k in frontier]
    Path(path).write_text("\n".join(lines) + "\n")


def read_checkpoint(path: str) -> tuple[dict, list[bytes], list[bytes]]:
    text = Path(path).read_text().splitlines()
    if not text or not text[0].startswith("# "):
        raise NielsenError("checkpoint has no header")
    header = json.loads(text[0][2:])
    try:
        cut = text.index("---")
    except ValueError:
        raise NielsenError("checkpoint has no frontier section") from None
    done = [bytes.fromhex(ln) for ln in text[1:cut] if ln]
    frontier = [bytes.fromhex(ln) for ln in text[cut + 1:] if ln]
    return header, done, frontier


def resume(G: FiniteGroup, path: str, workers: int | None = None,
           member_cap: int = MEMBER_CAP, deadline: float | None = None) -> OrbitReport:
    """Continue an orbit search from a checkpoint.  Images are recomputed
    for all members in the report pass."""
    header, done, frontier = read_checkpoint(path)
    if header.get("group") != G.digest():
        raise NielsenError("checkpoint was written for a different group")
    if header.get("encoding") != ENCODING_VERSION:
        raise NielsenError("checkpoint uses another encoding version")
    cv = ClassVector.parse(G, header["cv"])
    spec = ActionSpec.parse(header["spec"])
    engine = _Engine(G, cv.m, spec, cv.classes[0], workers or default_workers())
    members, _ = engine.closure(frontier, known=done, member_cap=member_cap,
                                checkpoint=path, header=header, deadline=deadline)
    # the closure above only extended from the frontier; recompute all images
    members = sorted(set(members))
    index = {k: i for i, k in enumerate(members)}
    T = engine.to_array(members)
    images = [[] for _ in engine.names]
    for block in engine.images_blocks(T):
        for g, arr in enumerate(block):
            images[g].extend(index[k] for k in TupleSpace.keys(arr))
    return _report(engine, members, [np.asarray(c) for c in images])


def report_digest(reports: Sequence[OrbitReport]) -> str:
    """Hash of all report fields and members, for schedule comparisons."""
    h = hashlib.sha256()
    for r in reports:
        h.update(json.dumps(r.to_dict(include_members=True)).encode())
    return h.hexdigest()
