"""Arithmetic in finite fields GF(p^n), polynomial-basis representation.

Elements are residues of GF(p)[x] modulo a fixed monic irreducible polynomial
of degree n.  A polynomial is stored as its coefficient tuple in ascending
degree order, so the element c0 + c1*x + ... + c_{n-1}*x^{n-1} is the tuple
(c0, c1, ..., c_{n-1}).  The canonical modulus for make_field(p, n) is the
lexicographically smallest monic irreducible of degree n, coefficients
compared low-degree first.

Every element also has a canonical index sum(c_i * p^i) in [0, q); index 0 is
zero and index 1 is one.  Dense index-level operation tables (used heavily by
the matrix-group layer) are exposed on FieldSpec for q up to 4096.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

TABLE_LIMIT = 4096
DEGREE_LIMIT = 8


def is_prime(m: int) -> bool:
    """Trial-division primality check, adequate for desk-scale p."""
    if m < 2:
        return False
    if m < 4:
        return True
    if m % 2 == 0:
        return False
    f = 3
    while f * f <= m:
        if m % f == 0:
            return False
        f += 2
    return True


def _poly_trim(c: tuple[int, ...]) -> tuple[int, ...]:
    k = len(c)
    while k > 0 and c[k - 1] == 0:
        k -= 1
    return c[:k]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(tuple(out))


def _poly_mod(a: tuple[int, ...], m: tuple[int, ...], p: int) -> tuple[int, ...]:
    """Remainder of a modulo the monic polynomial m."""
    r = list(a)
    dm = len(m) - 1
    while len(_poly_trim(tuple(r))) - 1 >= dm:
        r = list(_poly_trim(tuple(r)))
        d = len(r) - 1
        lead = r[-1] % p
        for i in range(dm + 1):
            r[d - dm + i] = (r[d - dm + i] - lead * m[i]) % p
        r = r[:-1]
    return _poly_trim(tuple(r))


def _poly_divmod(
    a: tuple[int, ...], b: tuple[int, ...], p: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Quotient and remainder for division by b (b monic not required)."""
    r = list(_poly_trim(a))
    db = len(_poly_trim(b)) - 1
    bb = _poly_trim(b)
    inv_lead = _mod_inverse(bb[-1], p)
    q = [0] * max(len(r) - db, 1)
    while len(r) - 1 >= db and r:
        d = len(r) - 1
        c = (r[-1] * inv_lead) % p
        q[d - db] = c
        for i in range(db + 1):
            r[d - db + i] = (r[d - db + i] - c * bb[i]) % p
        while r and r[-1] == 0:
            r.pop()
    return _poly_trim(tuple(q)), _poly_trim(tuple(r))


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Irreducibility of a monic polynomial over GF(p).

    Degree 1 is always irreducible.  Otherwise reject on any root in GF(p),
    then trial-divide by every monic polynomial of degree 2..deg/2 (roots
    already cover the degree-1 divisors).
    """
    deg = len(coeffs) - 1
    if deg == 1:
        return True
    for r in range(p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * r + c) % p
        if acc == 0:
            return False
    for d in range(2, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            divisor = tail + (1,)
            _, rem = _poly_divmod(coeffs, divisor, p)
            if not rem:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A finite field GF(p^n) with a fixed monic irreducible modulus.

    modulus holds n+1 coefficients in ascending degree order; the leading
    coefficient is 1.  Instances are immutable, hashable, and value-compared.
    """

    p: int
    n: int
    modulus: tuple[int, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError("not prime")
        if not (1 <= self.n <= DEGREE_LIMIT):
            raise ValueError("degree unsupported")
        m = tuple(int(c) % self.p for c in self.modulus)
        if len(m) != self.n + 1 or m[-1] != 1:
            raise ValueError("modulus must be monic of degree n")
        if not _is_irreducible(m, self.p):
            raise ValueError("modulus is reducible")
        object.__setattr__(self, "modulus", m)

    @property
    def q(self) -> int:
        return self.p**self.n

    def elem(self, coeffs) -> FieldElem:
        c = tuple(int(x) % self.p for x in coeffs)
        if len(c) != self.n:
            raise ValueError("coefficient length mismatch")
        return FieldElem(self, c)

    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.n)

    def one(self) -> FieldElem:
        return FieldElem(self, (1,) + (0,) * (self.n - 1))

    def x(self) -> FieldElem:
        """The residue of the indeterminate x (reduced mod the modulus when n == 1)."""
        if self.n == 1:
            return FieldElem(self, ((-self.modulus[0]) % self.p,))
        return FieldElem(self, (0, 1) + (0,) * (self.n - 2))

    def index(self, a: FieldElem) -> int:
        """Canonical index sum(c_i * p^i) in [0, q)."""
        acc = 0
        for c in reversed(a.coeffs):
            acc = acc * self.p + c
        return acc

    def from_index(self, i: int) -> FieldElem:
        if not (0 <= i < self.q):
            raise ValueError("index out of range")
        coeffs = []
        for _ in range(self.n):
            coeffs.append(i % self.p)
            i //= self.p
        return FieldElem(self, tuple(coeffs))

    def elements(self) -> list[FieldElem]:
        return [self.from_index(i) for i in range(self.q)]

    def _require_tables(self) -> None:
        if self.q > TABLE_LIMIT:
            raise ValueError(f"field tables unavailable above q={TABLE_LIMIT}")

    @cached_property
    def add_table(self) -> np.ndarray:
        """(q, q) int32 table of index-level addition."""
        self._require_tables()
        q, p, n = self.q, self.p, self.n
        digits = np.zeros((q, n), np.int64)
        idx = np.arange(q)
        for k in range(n):
            digits[:, k] = idx % p
            idx = idx // p
        summed = (digits[:, None, :] + digits[None, :, :]) % p
        weights = p ** np.arange(n)
        return (summed * weights).sum(axis=2).astype(np.int32)

    @cached_property
    def neg_table(self) -> np.ndarray:
        self._require_tables()
        out = np.empty(self.q, np.int32)
        for i in range(self.q):
            out[i] = self.index(-self.from_index(i))
        return out

    @cached_property
    def mul_table(self) -> np.ndarray:
        """(q, q) int32 table of index-level multiplication."""
        self._require_tables()
        q = self.q
        out = np.empty((q, q), np.int32)
        elems = self.elements()
        for i in range(q):
            a = elems[i]
            row = [self.index(a * elems[j]) for j in range(q)]
            out[i] = row
        return out

    @cached_property
    def inv_table(self) -> np.ndarray:
        """(q,) int32 table of index-level inversion; entry 0 is -1."""
        self._require_tables()
        out = np.full(self.q, -1, np.int32)
        for i in range(1, self.q):
            out[i] = self.index(inv(self.from_index(i)))
        return out

    def to_json(self) -> dict:
        return {"p": self.p, "n": self.n, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(d: dict) -> FieldSpec:
        return FieldSpec(int(d["p"]), int(d["n"]), tuple(int(c) for c in d["modulus"]))

    def __repr__(self) -> str:
        return f"GF({self.q})"


@dataclass(frozen=True)
class FieldElem:
    """An element of a FieldSpec, value-compared by coefficient sequence."""

    field: FieldSpec
    coeffs: tuple[int, ...]

    def _check(self, other: FieldElem) -> None:
        if self.field != other.field:
            raise ValueError("field mismatch")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        p = self.field.p
        return FieldElem(
            self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self) -> FieldElem:
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, other: FieldElem) -> FieldElem:
        return self + (-other)

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        f = self.field
        prod = _poly_mul(self.coeffs, other.coeffs, f.p)
        red = _poly_mod(prod, f.modulus, f.p)
        return FieldElem(f, red + (0,) * (f.n - len(red)))

    def __pow__(self, k: int) -> FieldElem:
        if k < 0:
            return inv(self) ** (-k)
        acc = self.field.one()
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __repr__(self) -> str:
        if self.field.n == 1:
            return str(self.coeffs[0])
        return str(list(self.coeffs))


def add(a: FieldElem, b: FieldElem) -> FieldElem:
    return a + b


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    return a * b


def neg(a: FieldElem) -> FieldElem:
    return -a


def pow(a: FieldElem, k: int) -> FieldElem:  # noqa: A001 - matches the op name
    return a**k


def _mod_inverse(a: int, p: int) -> int:
    """Inverse of a nonzero residue mod prime p (square and multiply)."""
    acc, base, k = 1, a % p, p - 2
    while k:
        if k & 1:
            acc = (acc * base) % p
        base = (base * base) % p
        k >>= 1
    return acc


def inv(a: FieldElem) -> FieldElem:
    """Multiplicative inverse by the extended Euclidean algorithm."""
    if a.is_zero():
        raise ValueError("zero has no inverse")
    f = a.field
    p = f.p
    # invariant: r_i = s_i * a  (mod modulus), up to the discarded t_i terms
    r0, r1 = f.modulus, _poly_trim(a.coeffs)
    s0, s1 = (), (1,)
    while r1:
        qq, rem = _poly_divmod(r0, r1, p)
        r0, r1 = r1, rem
        qs = _poly_mul(qq, s1, p)
        width = max(len(s0), len(qs))
        s0e = s0 + (0,) * (width - len(s0))
        qse = qs + (0,) * (width - len(qs))
        s0, s1 = s1, _poly_trim(tuple((x - y) % p for x, y in zip(s0e, qse)))
    # r0 is now the gcd, a nonzero constant; divide it out of s0
    c_inv = _mod_inverse(r0[0], p)
    red = _poly_mod(tuple((c * c_inv) % p for c in s0), f.modulus, p)
    return FieldElem(f, red + (0,) * (f.n - len(red)))


@lru_cache(maxsize=None)
def make_field(p: int, n: int = 1) -> FieldSpec:
    """GF(p^n) with the lexicographically smallest monic irreducible modulus.

    Candidate moduli are scanned in ascending lexicographic order of the
    coefficient tuple (c0, c1, ..., c_{n-1}), low degree compared first, and
    the first irreducible wins.  p must be prime and 1 <= n <= 8.
    """
    if not is_prime(p):
        raise ValueError("not prime")
    if not (1 <= n <= DEGREE_LIMIT):
        raise ValueError("degree unsupported")
    for tail in itertools.product(range(p), repeat=n):
        cand = tail + (1,)
        if _is_irreducible(cand, p):
            return FieldSpec(p, n, cand)
    raise AssertionError("no irreducible polynomial found")  # unreachable
