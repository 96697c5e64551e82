"""Exact cyclotomic numbers, character tables and structure constants.

A :class:`Cyclotomic` of conductor ``N`` is a rational combination of powers
of ``z = exp(2*pi*i/N)``.  Values are kept in a canonical basis: writing
``N = prod p**e`` and splitting an exponent by the Chinese remainder theorem,
each prime-power component ``k_p`` is reduced below ``phi(p**e)`` using
``1 + x**(p**(e-1)) + ... + x**((p-1)*p**(e-1)) = 0``.  Two values are equal
exactly when their canonical term maps agree.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

__all__ = [
    "Cyclotomic",
    "CharacterTable",
    "CharTableError",
    "E",
    "parse_cyclotomic",
    "parse_character_table",
    "structure_constant",
    "floor_bound_check",
]


class CharTableError(ValueError):
    """Raised on malformed tables, bad tokens or failed orthogonality."""


def _factor(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


@lru_cache(maxsize=None)
def _root_mean(n: int) -> Fraction:
    """Tr(zeta_n) / [Q(zeta_n):Q] = mu(n) / phi(n)."""
    f = _factor(n)
    if any(e > 1 for _, e in f):
        return Fraction(0)
    phi = 1
    for p, _ in f:
        phi *= p - 1
    return Fraction((-1) ** len(f), phi)


@lru_cache(maxsize=None)
def _crt_data(n: int):
    """Prime-power moduli of n with CRT idempotent multipliers."""
    parts = []
    for p, e in _factor(n):
        q = p ** e
        r = n // q
        parts.append((p, e, q, r * pow(r, -1, q)))
    return tuple(parts)


@lru_cache(maxsize=200_000)
def _reduce_monomial(n: int, k: int) -> tuple[tuple[int, int], ...]:
    """Canonical expansion of z_n**k as ((exponent, sign), ...)."""
    k %= n
    terms = [(0, 1)]  # partial exponents combined via CRT multipliers
    for p, e, q, mult in _crt_data(n):
        kp = k % q
        low = q // p
        phi = q - low
        if kp < phi:
            choices = [(kp, 1)]
        else:
            r = kp - phi
            choices = [(i * low + r, -1) for i in range(p - 1)]
        terms = [((a + c * mult) % n, s * t) for a, s in terms for c, t in choices]
    return tuple(terms)


class Cyclotomic:
    """Exact element of a cyclotomic field."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int = 1, terms: dict[int, Fraction] | None = None, _canonical=False):
        if n < 1:
            raise CharTableError("conductor must be positive")
        self.n = n
        if terms is None:
            self.terms: dict[int, Fraction] = {}
        elif _canonical:
            self.terms = terms
        else:
            self.terms = {}
            for k, c in terms.items():
                self._add_monomial(k, Fraction(c))

    def _add_monomial(self, k: int, c: Fraction) -> None:
        if not c:
            return
        for e, s in _reduce_monomial(self.n, k):
            v = self.terms.get(e, 0) + s * c
            if v:
                self.terms[e] = v
            else:
                self.terms.pop(e, None)

    # constructors ------------------------------------------------------
    @classmethod
    def rational(cls, q) -> "Cyclotomic":
        q = Fraction(q)
        return cls(1, {0: q} if q else {}, _canonical=True)

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclotomic":
        return cls(n, {k % n: Fraction(1)})

    # field plumbing ---------------------------------------------------------
    def lift(self, m: int) -> "Cyclotomic":
        if m % self.n:
            raise CharTableError(f"cannot lift conductor {self.n} to {m}")
        if m == self.n:
            return self
        f = m // self.n
        return Cyclotomic(m, {k * f: c for k, c in self.terms.items()})

    @staticmethod
    def _coerce(x) -> "Cyclotomic":
        if isinstance(x, Cyclotomic):
            return x
        if isinstance(x, (int, Fraction)):
            return Cyclotomic.rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Cyclotomic")

    def _common(self, other):
        other = self._coerce(other)
        m = math.lcm(self.n, other.n)
        return self.lift(m), other.lift(m), m

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other) -> "Cyclotomic":
        a, b, m = self._common(other)
        terms = dict(a.terms)
        for k, c in b.terms.items():
            v = terms.get(k, 0) + c
            if v:
                terms[k] = v
            else:
                terms.pop(k, None)
        return Cyclotomic(m, terms, _canonical=True)

    __radd__ = __add__

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.n, {k: -c for k, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other) -> "Cyclotomic":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Cyclotomic":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if other.is_rational():
            q = other.rational_value()
            return Cyclotomic(self.n, {k: c * q for k, c in self.terms.items() if c * q}, _canonical=True)
        if self.is_rational():
            return other * self
        a, b, m = self._common(other)
        out = Cyclotomic(m)
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                out._add_monomial(k1 + k2, c1 * c2)
        return out

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Cyclotomic":
        other = self._coerce(other)
        if not other.is_rational():
            raise CharTableError("division only by rationals")
        q = other.rational_value()
        if not q:
            raise ZeroDivisionError("division by zero")
        return self * (1 / q)

    def __pow__(self, k: int) -> "Cyclotomic":
        if k < 0:
            raise CharTableError("negative powers unsupported")
        out = Cyclotomic.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "Cyclotomic":
        return Cyclotomic(self.n, {(-k) % self.n: c for k, c in self.terms.items()})

    def galois(self, j: int) -> "Cyclotomic":
        """Image under z -> z**j (j coprime to the conductor)."""
        if math.gcd(j, self.n) != 1:
            raise CharTableError("Galois exponent must be coprime to the conductor")
        return Cyclotomic(self.n, {(k * j) % self.n: c for k, c in self.terms.items()})

    # queries -------------------------------------------------------------------
    def is_rational(self) -> bool:
        return not self.terms or set(self.terms) == {0}

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise CharTableError(f"{self} is not rational")
        return self.terms.get(0, Fraction(0))

    def complex_value(self) -> complex:
        z = complex(math.cos(2 * math.pi / self.n), math.sin(2 * math.pi / self.n))
        return sum(float(c) * z ** k for k, c in self.terms.items()) if self.terms else 0j

    def __eq__(self, other) -> bool:
        try:
            a, b, _ = self._common(other)
        except TypeError:
            return NotImplemented
        return a.terms == b.terms

    def __hash__(self) -> int:
        # the normalized trace does not depend on the field the value is written in
        mean = sum((c * _root_mean(self.n // math.gcd(k, self.n)) for k, c in self.terms.items()),
                   Fraction(0))
        return hash(mean)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.rational_value())
        parts = []
        for k in sorted(self.terms):
            c = self.terms[k]
            mono = "1" if k == 0 else (f"E({self.n})" if k == 1 else f"E({self.n})^{k}")
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return "+".join(parts).replace("+-", "-")

    __repr__ = __str__


def E(n: int) -> Cyclotomic:
    """The primitive n-th root of unity exp(2*pi*i/n)."""
    return Cyclotomic.root(n, 1)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?
        (?:E\((?P<n>\d+)\)(?:\^(?P<k>-?\d+))?)?\s*""",
    re.X,
)


def parse_cyclotomic(token: str) -> Cyclotomic:
    """Parse tokens like ``3``, ``-1/2``, ``E(7)^3+E(7)^5`` or ``2*E(8)``."""
    text = token.replace(" ", "")
    if not text:
        raise CharTableError("empty value token")
    pos = 0
    total = Cyclotomic.rational(0)
    while pos < len(text):
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos or (m.group("coef") is None and m.group("n") is None):
            raise CharTableError(f"cannot parse value token {token!r}")
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        if m.group("n"):
            n = int(m.group("n"))
            k = int(m.group("k") or 1)
            total = total + Cyclotomic.root(n, k) * coef
        else:
            total = total + coef
        pos = m.end()
    return total


# ---------------------------------------------------------------------------
# character tables


@dataclass
class CharacterTable:
    class_names: list[str]
    class_sizes: list[int]
    element_orders: list[int]
    characters: list[list[Cyclotomic]]

    @property
    def order(self) -> int:
        return sum(self.class_sizes)

    @property
    def centralizer_orders(self) -> list[int]:
        return [self.order // s for s in self.class_sizes]

    def index(self, name: str) -> int:
        try:
            return self.class_names.index(name)
        except ValueError:
            raise CharTableError(f"unknown class {name!r}") from None

    @property
    def center_order(self) -> int:
        # Z(G) is the union of classes where some faithful-enough test holds:
        # |chi(g)| = chi(1) for every chi exactly on central elements.
        count = 0
        for j, size in enumerate(self.class_sizes):
            if size == 1 and all((row[j] * row[j].conjugate()) == row[0] * row[0] for row in self.characters):
                count += 1
        return count

    def verify(self) -> None:
        """Exact row and column orthogonality; raises on failure."""
        h = len(self.class_names)
        if len(self.characters) != h:
            raise CharTableError(f"{len(self.characters)} characters for {h} classes")
        if self.class_names[0] and self.class_sizes[0] != 1:
            raise CharTableError("first class must be the identity")
        cent = self.centralizer_orders
        conj = [[v.conjugate() for v in row] for row in self.characters]
        for j in range(h):
            s = Cyclotomic.rational(0)
            for row, crow in zip(self.characters, conj):
                s = s + row[j] * crow[j]
            if s != cent[j]:
                raise CharTableError(f"column orthogonality fails at class {self.class_names[j]}: {s}")
        for a, row in enumerate(self.characters):
            d = row[0]
            if not d.is_rational() or d.rational_value() <= 0 or d.rational_value().denominator != 1:
                raise CharTableError(f"character {a + 1}: degree must be a positive integer")
            for b in range(a, len(self.characters)):
                s = Cyclotomic.rational(0)
                for j in range(h):
                    s = s + row[j] * conj[b][j] * self.class_sizes[j]
                want = self.order if a == b else 0
                if s != want:
                    raise CharTableError(f"row orthogonality fails for characters {a + 1},{b + 1}")


def parse_character_table(text: str, verify: bool = True) -> CharacterTable:
    names = sizes = orders = None
    rows: list[list[Cyclotomic]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("classes:"):
                names = line.split(":", 1)[1].split()
            elif line.startswith("sizes:"):
                sizes = [int(t) for t in line.split(":", 1)[1].split()]
            elif line.startswith("orders:"):
                orders = [int(t) for t in line.split(":", 1)[1].split()]
            else:
                if names is None:
                    raise CharTableError("character row before 'classes:' header")
                toks = line.split()
                if len(toks) != len(names):
                    raise CharTableError(f"row has {len(toks)} values, expected {len(names)}")
                rows.append([parse_cyclotomic(t) for t in toks])
        except CharTableError as exc:
            raise CharTableError(f"line {lineno}: {exc}") from None
        except ValueError as exc:
            raise CharTableError(f"line {lineno}: {exc}") from None
    if names is None or sizes is None or orders is None:
        raise CharTableError("missing classes/sizes/orders header")
    if not len(names) == len(sizes) == len(orders):
        raise CharTableError("header lengths differ")
    table = CharacterTable(names, sizes, orders, rows)
    if verify:
        table.verify()
    return table


def structure_constant(table: CharacterTable, classes: Sequence[str]) -> Fraction:
    """Normalized structure constant n(C_1, ..., C_m), exact."""
    m = len(classes)
    if m < 3:
        raise CharTableError("structure constants need m >= 3")
    idx = [table.index(c) for c in classes]
    cent = table.centralizer_orders
    total = Cyclotomic.rational(0)
    for row in table.characters:
        prod = Cyclotomic.rational(1)
        for j in idx:
            if not row[j]:
                prod = Cyclotomic.rational(0)
                break
            prod = prod * row[j]
        if prod:
            total = total + prod / row[0].rational_value() ** (m - 2)
    if not total.is_rational():
        raise CharTableError("structure constant is not rational; table corrupt")
    value = Fraction(table.center_order * table.order ** (m - 2), math.prod(cent[j] for j in idx))
    value *= total.rational_value()
    if value < 0:
        raise CharTableError("negative structure constant; table corrupt")
    return value


def floor_bound_check(n_value: Fraction, li_value: int) -> bool:
    """True iff l^i <= floor(n)."""
    return li_value <= math.floor(Fraction(n_value))
