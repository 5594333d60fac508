"""Standard small-group constructors and the order-24 rival catalog.

Descriptors name a construction: cyclic/dihedral/dicyclic atoms (labeled by
group ORDER, so D24 and Dic24 both have 24 elements), symmetric/alternating
permutation groups, direct products, and semidirect products of a cyclic
normal factor by exponent actions.  The string grammar handled by
parse_descriptor:

    C24            cyclic of order 24 (Z24 accepted too)
    D8, Dic12, Q8  dihedral / dicyclic by order (Q8 = Dic8)
    S4, A5         symmetric / alternating on n letters
    C2xC12         direct product ('x' at top level)
    semidirect(C5,C4,x^2)        generator of C4 maps x to x^2
    semidirect(C3,D8,x^-1,x)     one exponent per generator of D8
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .groups import Group, is_isomorphic

ORDER_LIMIT = 4096


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str  # cyclic|dihedral|dicyclic|symmetric|alternating|direct|semidirect
    n: int = 0
    parts: tuple = ()  # direct factors, or (normal, complement) for semidirect
    action: tuple = ()  # exponent per complement generator

    def to_string(self) -> str:
        if self.kind == "cyclic":
            return f"C{self.n}"
        if self.kind == "dihedral":
            return f"D{self.n}"
        if self.kind == "dicyclic":
            return f"Dic{self.n}"
        if self.kind == "symmetric":
            return f"S{self.n}"
        if self.kind == "alternating":
            return f"A{self.n}"
        if self.kind == "direct":
            return "x".join(p.to_string() for p in self.parts)
        acts = ",".join(_exp_str(e) for e in self.action)
        return f"semidirect({self.parts[0].to_string()},{self.parts[1].to_string()},{acts})"

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.kind in ("cyclic", "dihedral", "dicyclic", "symmetric", "alternating"):
            out["n"] = self.n
        if self.parts:
            out["parts"] = [p.to_json() for p in self.parts]
        if self.action:
            out["action"] = list(self.action)
        return out


def _exp_str(e: int) -> str:
    return f"x^{e}" if e != 1 else "x"


def parse_descriptor(text: str) -> GroupDescriptor:
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty descriptor")
    parts = _split_top(s, "x")
    if len(parts) > 1:
        return GroupDescriptor("direct", parts=tuple(parse_descriptor(p) for p in parts))
    if s.startswith("semidirect(") and s.endswith(")"):
        args = _split_top(s[len("semidirect(") : -1], ",")
        if len(args) < 3:
            raise ValueError(f"semidirect needs normal, complement, action: {text!r}")
        normal = parse_descriptor(args[0])
        complement = parse_descriptor(args[1])
        action = tuple(_parse_exp(a) for a in args[2:])
        return GroupDescriptor("semidirect", parts=(normal, complement), action=action)
    for prefix, kind in (
        ("Dic", "dicyclic"),
        ("C", "cyclic"),
        ("Z", "cyclic"),
        ("D", "dihedral"),
        ("Q", "dicyclic"),
        ("S", "symmetric"),
        ("A", "alternating"),
    ):
        if s.startswith(prefix) and s[len(prefix) :].isdigit():
            return GroupDescriptor(kind, n=int(s[len(prefix) :]))
    raise ValueError(f"cannot parse group descriptor {text!r}")


def _split_top(s: str, sep: str) -> list[str]:
    out, depth, cur = [], 0, []
    for ch in s:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


def _parse_exp(a: str) -> int:
    if a == "x":
        return 1
    if a.startswith("x^"):
        return int(a[2:])
    raise ValueError(f"bad action term {a!r}: want x or x^k")


# -- atoms --------------------------------------------------------------------


def cyclic(n: int) -> Group:
    if n < 1:
        raise ValueError("cyclic order must be positive")
    if n > ORDER_LIMIT:
        raise ValueError("order above table limit")
    table = ((np.arange(n)[:, None] + np.arange(n)[None, :]) % n).astype(np.int32)
    g = Group(list(range(n)), table, label=f"C{n}")
    g.meta.update(kind="cyclic", n=n, gens=[1] if n > 1 else [])
    return g


def dihedral(order: int) -> Group:
    """Dihedral group labeled by order: D8 is the symmetries of a square."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and at least 2")
    if order > ORDER_LIMIT:
        raise ValueError("order above table limit")
    k = order // 2
    keys = [(i, j) for j in range(2) for i in range(k)]
    pos = {key: t for t, key in enumerate(keys)}
    table = np.empty((order, order), dtype=np.int32)
    for (i1, j1), a in pos.items():
        for (i2, j2), b in pos.items():
            # r^i1 s^j1 * r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
            i = (i1 + (i2 if j1 == 0 else -i2)) % k
            table[a, b] = pos[(i, (j1 + j2) % 2)]
    g = Group(keys, table, label=f"D{order}")
    g.meta.update(kind="dihedral", n=order, gens=[pos[(1 % k, 0)], pos[(0, 1)]])
    return g


def dicyclic(order: int) -> Group:
    """Dicyclic group of the given order (Q8 = dicyclic of order 8)."""
    if order < 4 or order % 4:
        raise ValueError("dicyclic order must be divisible by 4")
    if order > ORDER_LIMIT:
        raise ValueError("order above table limit")
    m = order // 4
    keys = [(i, j) for j in range(2) for i in range(2 * m)]
    pos = {key: t for t, key in enumerate(keys)}
    table = np.empty((order, order), dtype=np.int32)
    for (i1, j1), a in pos.items():
        for (i2, j2), b in pos.items():
            i = (i1 + (i2 if j1 == 0 else -i2)) % (2 * m)
            j = j1 + j2
            if j == 2:  # b^2 = a^m
                i = (i + m) % (2 * m)
                j = 0
            table[a, b] = pos[(i, j)]
    g = Group(keys, table, label=f"Dic{order}" if order != 8 else "Q8")
    g.meta.update(kind="dicyclic", n=order, gens=[pos[(1, 0)], pos[(0, 1)]])
    return g


def _perm_atom(n: int, even_only: bool, label: str) -> Group:
    if n < 1 or math.factorial(n) // (2 if even_only else 1) > ORDER_LIMIT:
        raise ValueError("order above table limit")
    perms = []
    for p in itertools.permutations(range(n)):
        if even_only and _parity(p) != 0:
            continue
        perms.append(p)
    pos = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    table = np.empty((size, size), dtype=np.int32)
    for p, a in pos.items():
        for q, b in pos.items():
            table[a, b] = pos[tuple(p[q[i]] for i in range(n))]
    return Group(perms, table, label=label)


def _parity(p) -> int:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity


def symmetric(n: int) -> Group:
    g = _perm_atom(n, False, f"S{n}")
    g.meta.update(kind="symmetric", n=n)
    return g


def alternating(n: int) -> Group:
    g = _perm_atom(n, True, f"A{n}")
    g.meta.update(kind="alternating", n=n)
    return g


# -- products -----------------------------------------------------------------


def direct_product(a: Group, b: Group) -> Group:
    na, nb = a.order, b.order
    if na * nb > ORDER_LIMIT:
        raise ValueError("order above table limit")
    ta = a.table.astype(np.int64)
    tb = b.table.astype(np.int64)
    table = (ta[:, None, :, None] * nb + tb[None, :, None, :]).reshape(na * nb, na * nb)
    keys = [(ka, kb) for ka in a.elements for kb in b.elements]
    label = f"{a.label}x{b.label}"
    return Group(keys, table.astype(np.int32), label=label)


def semidirect_product(normal: Group, complement: Group, exps) -> Group:
    """Semidirect product with a cyclic normal factor.

    Each complement generator acts on the canonical generator x of the normal
    factor as x -> x^e.  The exponents must induce a genuine homomorphism into
    the unit group; that is checked by exhaustion over all complement pairs.
    """
    if normal.meta.get("kind") != "cyclic":
        raise ValueError("bad action: normal factor must be cyclic")
    n = normal.order
    h = complement
    gens = h.meta.get("gens")
    if gens is None:
        gens = h.generator_indices
    exps = list(exps)
    if len(exps) != len(gens):
        raise ValueError(f"bad action: {len(gens)} generators need {len(gens)} exponents, got {len(exps)}")
    for e in exps:
        if math.gcd(e % n if n > 1 else 1, n) != 1:
            raise ValueError(f"bad action: exponent {e} is not a unit mod {n}")

    # spread exponents over all of H along BFS words, then verify the result
    # is multiplicative on every pair (catches relation violations)
    e_of = np.full(h.order, -1, dtype=np.int64)
    if gens:
        order_v, parent, genpos = h.word_table(list(gens))
        e_of[h.identity] = 1 % n if n > 1 else 0
        for x in order_v[1:]:
            e_of[x] = (e_of[parent[x]] * exps[genpos[x]]) % n
    else:
        e_of[h.identity] = 1 % n if n > 1 else 0
    if n > 1:
        for h1 in range(h.order):
            for h2 in range(h.order):
                if e_of[h.table[h1, h2]] != (e_of[h1] * e_of[h2]) % n:
                    raise ValueError("bad action: exponents do not respect relations")

    nb = h.order
    if n * nb > ORDER_LIMIT:
        raise ValueError("order above table limit")
    keys = [(i, kh) for i in range(n) for kh in h.elements]
    ii = np.arange(n * nb) // nb
    hh = np.arange(n * nb) % nb
    table = np.empty((n * nb, n * nb), dtype=np.int32)
    th = h.table.astype(np.int64)
    for a in range(n * nb):
        i1, h1 = int(ii[a]), int(hh[a])
        # (i1, h1)(i2, h2) = (i1 + e(h1) * i2 mod n, h1 h2)
        table[a] = ((i1 + e_of[h1] * ii) % n) * nb + th[h1, hh]
    acts = ",".join(_exp_str(int(e)) for e in exps)
    label = f"semidirect({normal.label},{h.label},{acts})"
    return Group(keys, table, label=label)


def build(desc: GroupDescriptor | str) -> Group:
    if isinstance(desc, str):
        desc = parse_descriptor(desc)
    if desc.kind == "cyclic":
        return cyclic(desc.n)
    if desc.kind == "dihedral":
        return dihedral(desc.n)
    if desc.kind == "dicyclic":
        return dicyclic(desc.n)
    if desc.kind == "symmetric":
        return symmetric(desc.n)
    if desc.kind == "alternating":
        return alternating(desc.n)
    if desc.kind == "direct":
        out = build(desc.parts[0])
        for part in desc.parts[1:]:
            out = direct_product(out, build(part))
        return out
    if desc.kind == "semidirect":
        return semidirect_product(build(desc.parts[0]), build(desc.parts[1]), desc.action)
    raise ValueError(f"unknown descriptor kind {desc.kind!r}")


# -- catalogs -----------------------------------------------------------------

_ORDER24_SPECS = [
    "C24",
    "C2xC12",
    "C2xC2xC6",
    "S4",
    "sl23",  # placeholder handled below: SL(2,3) comes from the matrix module
    "C2xA4",
    "D24",
    "Dic24",
    "semidirect(C3,C8,x^-1)",
    "C4xS3",
    "C2xD12",
    "C2xDic12",
    "semidirect(C3,D8,x^-1,x)",
    "C3xD8",
    "C3xQ8",
]


@lru_cache(maxsize=1)
def order24_catalog() -> tuple[Group, ...]:
    """The 15 groups of order 24, pairwise non-isomorphic by construction.

    The count is a gate, not an assumption: the catalog is rebuilt from
    descriptors and every pair is run through the isomorphism test; any
    collision aborts the build.
    """
    from .matgroups import sl2

    out = []
    for spec in _ORDER24_SPECS:
        g = sl2(3) if spec == "sl23" else build(spec)
        if g.order != 24:
            raise RuntimeError(f"catalog bug: {g.label} has order {g.order}")
        out.append(g)
    for a, b in itertools.combinations(out, 2):
        if is_isomorphic(a, b) is not None:
            raise RuntimeError(
                f"order-24 catalog integrity check failed: {a.label} = {b.label}"
            )
    return tuple(out)


@lru_cache(maxsize=1)
def order6_catalog() -> tuple[Group, ...]:
    out = (cyclic(6), symmetric(3))
    if is_isomorphic(out[0], out[1]) is not None:
        raise RuntimeError("order-6 catalog integrity check failed")
    return out
