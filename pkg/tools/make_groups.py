"""Regenerate the permutation-group data files under src/hurwitz/data/groups.

Each group is built from a standard construction and its order is checked
before the file is written.  Run: ``python tools/make_groups.py``.
"""

from __future__ import annotations

import itertools
from pathlib import Path

from hurwitz.permgroup import FiniteGroup, Permutation, format_group

OUT = Path(__file__).resolve().parents[1] / "src" / "hurwitz" / "data" / "groups"


def cyc(text: str, n: int) -> Permutation:
    return Permutation.parse(text, n)


def from_action(points: list, maps) -> list[Permutation]:
    index = {p: i for i, p in enumerate(points)}
    return [Permutation([index[f(p)] for p in points]) for f in maps]


# finite fields ---------------------------------------------------------------


class GF2k:
    """GF(2^k) with elements as ints, multiplication modulo a fixed polynomial."""

    def __init__(self, k: int, poly: int):
        self.k, self.poly, self.q = k, poly, 1 << k

    def mul(self, a: int, b: int) -> int:
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if a & self.q:
                a ^= self.poly
        return r

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def inv(self, a: int) -> int:
        return self.pow(a, self.q - 2)


def psl2_prime(p: int) -> list[Permutation]:
    pts = list(range(p)) + ["inf"]

    def t(x):
        return "inf" if x == "inf" else (x + 1) % p

    def s(x):
        if x == "inf":
            return 0
        if x == 0:
            return "inf"
        return (-pow(x, p - 2, p)) % p

    return from_action(pts, [t, s])


def psl2_even(F: GF2k) -> list[Permutation]:
    pts = list(range(F.q)) + ["inf"]
    w = 2  # the class of x, a primitive element for the chosen polynomials

    def t(x):
        return "inf" if x == "inf" else x ^ 1

    def s(x):
        if x == "inf":
            return 0
        if x == 0:
            return "inf"
        return F.inv(x)

    def d(x):
        return "inf" if x == "inf" else F.mul(w, x)

    return from_action(pts, [t, s, d])


def psl3_prime(p: int) -> list[Permutation]:
    pts = []
    for v in itertools.product(range(p), repeat=3):
        if any(v):
            lead = next(x for x in v if x)
            inv = pow(lead, p - 2, p)
            w = tuple(x * inv % p for x in v)
            if w not in pts:
                pts.append(w)

    def norm(v):
        lead = next(x for x in v if x)
        inv = pow(lead, p - 2, p)
        return tuple(x * inv % p for x in v)

    def elem(i, j):
        def f(v):
            w = list(v)
            w[i] = (w[i] + w[j]) % p
            return norm(w)
        return f

    return from_action(pts, [elem(0, 1), elem(1, 0), elem(1, 2), elem(2, 1)])


def weyl_e6() -> list[Permutation]:
    """W(E6) acting on the 27 weights in the orbit of a minuscule weight."""
    cartan = [
        [2, -1, 0, 0, 0, 0],
        [-1, 2, -1, 0, 0, 0],
        [0, -1, 2, -1, 0, -1],
        [0, 0, -1, 2, -1, 0],
        [0, 0, 0, -1, 2, 0],
        [0, 0, -1, 0, 0, 2],
    ]

    def refl(i):
        def f(w):
            c = w[i]
            return tuple(w[j] - c * cartan[i][j] for j in range(6))
        return f

    start = (1, 0, 0, 0, 0, 0)
    orbit = [start]
    for w in orbit:
        for i in range(6):
            u = refl(i)(w)
            if u not in orbit:
                orbit.append(u)
    return from_action(sorted(orbit), [refl(i) for i in range(6)])


def suzuki8() -> list[Permutation]:
    """Sz(8) on the 65 points of its ovoid."""
    F = GF2k(3, 0b1011)
    theta = lambda x: F.pow(x, 4)  # noqa: E731  x -> x^(2^(m+1)), m = 1
    pts = [(a, b) for a in range(8) for b in range(8)] + ["inf"]

    def f(a, b):
        return F.mul(F.mul(a, a), theta(a)) ^ F.mul(a, b) ^ theta(b)

    def trans(c, d):
        def g(pt):
            if pt == "inf":
                return pt
            a, b = pt
            return (a ^ c, b ^ d ^ F.mul(a, theta(c)))
        return g

    def torus(k):
        def g(pt):
            if pt == "inf":
                return pt
            a, b = pt
            return (F.mul(k, a), F.mul(F.mul(k, theta(k)), b))
        return g

    def swap(pt):
        if pt == "inf":
            return (0, 0)
        if pt == (0, 0):
            return "inf"
        a, b = pt
        inv = F.inv(f(a, b))
        return (F.mul(b, inv), F.mul(a, inv))

    return from_action(pts, [trans(1, 0), trans(0, 1), torus(2), swap])


def symmetric(n: int) -> list[Permutation]:
    return [cyc("(" + ",".join(map(str, range(1, n + 1))) + ")", n), cyc("(1,2)", n)]


def alternating(n: int) -> list[Permutation]:
    if n == 3:
        return [cyc("(1,2,3)", 3)]
    return [cyc(f"({','.join(map(str, range(1, 4)))})", n),
            cyc("(" + ",".join(map(str, range(2 if n % 2 == 0 else 1, n + 1))) + ")", n)]


M23_B = "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)"
CYC23 = "(" + ",".join(map(str, range(1, 24))) + ")"

GROUPS = {
    # name: (generators, order)
    "S3": (symmetric(3), 6),
    "S4": (symmetric(4), 24),
    "A4": (alternating(4), 12),
    "A5": (alternating(5), 60),
    "S6": (symmetric(6), 720),
    "A7": (alternating(7), 2520),
    "L2_7": (psl2_prime(7), 168),
    "L2_8": ([cyc("(2,9,4,3,5,7,6)", 9), cyc("(1,4,2,8,7,9,5)", 9)], 504),
    "L2_11": (psl2_prime(11), 660),
    "L2_13": (psl2_prime(13), 1092),
    "L2_16": (psl2_even(GF2k(4, 0b10011)), 4080),
    "L3_3": (psl3_prime(3), 5616),
    "L3_5": (psl3_prime(5), 372000),
    "SO5_3": (weyl_e6(), 51840),
    "Sz8": (suzuki8(), 29120),
    "M11": ([cyc("(2,10)(4,11)(5,7)(8,9)", 11), cyc("(1,4,3,8)(2,5,6,9)", 11)], 7920),
    "M12": ([cyc("(1,2,3,4,5,6,7,8,9,10,11)", 12), cyc("(3,7,11,8)(4,10,5,6)", 12),
             cyc("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12)], 95040),
    "M23": ([cyc(CYC23, 23), cyc(M23_B, 23)], 10200960),
    "M24": ([cyc(CYC23, 24), cyc(M23_B, 24),
             cyc("(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)", 24)],
            244823040),
}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, (gens, order) in GROUPS.items():
        G = FiniteGroup(gens, name=name)
        if G.order != order:
            raise SystemExit(f"{name}: order {G.order}, expected {order}")
        (OUT / f"{name}.txt").write_text(format_group(G))
        print(f"{name}: degree {G.degree}, order {G.order}")


if __name__ == "__main__":
    main()
