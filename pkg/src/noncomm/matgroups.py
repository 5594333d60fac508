"""GL(2,q), SL(2,q), their central quotients, and the maximal-abelian partition.

Matrices are enumerated in lexicographic entry order over field-element
indices, which pins element indices and therefore every downstream output.
Groups of order at most 4096 get a dense multiplication table from the kernel
layer; GL(2,q) beyond that (q = 9 already has 5760 elements) runs on an
on-demand vectorized product with a closed-form inverse map.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .ffield import make_field
from .groups import Group

Q_LIMIT = 81


def _prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"q must be a prime power, got {q}")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    n, rest = 0, q
    while rest % p == 0:
        rest //= p
        n += 1
    if rest != 1:
        raise ValueError(f"q must be a prime power, got {q}")
    return p, n


def _field_data(q: int):
    p, n = _prime_power(q)
    f = make_field(p, n)
    add_t = f.add_table.astype(np.int32)
    mul_t = f.mul_table.astype(np.int32)
    neg_t = f.neg_table.astype(np.int32)
    inv_t = f.inv_table.astype(np.int32)
    return f, add_t, mul_t, neg_t, inv_t


def _enumerate(q: int, det_one: bool, add_t, mul_t, neg_t):
    """All invertible (det-one) matrices as int32 entry rows, lex order."""
    r = np.arange(q, dtype=np.int32)
    chunks = []
    b, c, d = (x.ravel().astype(np.int32) for x in np.meshgrid(r, r, r, indexing="ij"))
    for a in range(q):
        det = add_t[mul_t[a, d], neg_t[mul_t[b, c]]]
        mask = det == 1 if det_one else det != 0
        block = np.empty((int(mask.sum()), 4), dtype=np.int32)
        block[:, 0] = a
        block[:, 1] = b[mask]
        block[:, 2] = c[mask]
        block[:, 3] = d[mask]
        chunks.append(block)
    return np.concatenate(chunks)


def _mat_group(q: int, det_one: bool) -> Group:
    if q > Q_LIMIT:
        raise ValueError(f"q out of range (max {Q_LIMIT})")
    p, deg = _prime_power(q)
    f, add_t, mul_t, neg_t, inv_t = _field_data(q)
    entries = _enumerate(q, det_one, add_t, mul_t, neg_t)
    m = len(entries)
    a, b, c, d = entries[:, 0], entries[:, 1], entries[:, 2], entries[:, 3]

    lin = ((a.astype(np.int64) * q + b) * q + c) * q + d
    pos = np.full(q**4, -1, dtype=np.int32)
    pos[lin] = np.arange(m, dtype=np.int32)

    # (a b; c d)^-1 = det^-1 (d -b; -c a)
    det = add_t[mul_t[a, d], neg_t[mul_t[b, c]]]
    di = inv_t[det]
    ia = mul_t[di, d]
    ib = mul_t[di, neg_t[b]]
    ic = mul_t[di, neg_t[c]]
    id_ = mul_t[di, a]
    inverse = pos[((ia.astype(np.int64) * q + ib) * q + ic) * q + id_]

    keys = [tuple(row) for row in entries.tolist()]
    label = f"{'SL' if det_one else 'GL'}(2,{q})"
    meta = {"kind": "sl2" if det_one else "gl2", "q": q, "p": p, "deg": deg}
    if m <= 4096:
        table = kernels.cayley_table_mat2(entries, pos, add_t, mul_t)
        g = Group(keys, table, inverse=inverse, label=label, meta=meta)
    else:
        g = Group(
            keys,
            mul_fn=lambda x, y: kernels.product_indices_mat2(entries, pos, add_t, mul_t, x, y),
            inverse=inverse,
            label=label,
            meta=meta,
            commute_builder=lambda: kernels.commute_matrix_mat2(entries, add_t, mul_t),
        )
    fmt = _entry_formatter(f)
    g.key_formatter = lambda k: f"[[{fmt(k[0])},{fmt(k[1])}],[{fmt(k[2])},{fmt(k[3])}]]"
    return g


def _entry_formatter(f):
    if f.n == 1:
        return str
    return lambda i: str(list(f.from_index(i).coeffs))


@lru_cache(maxsize=None)
def gl2(q: int) -> Group:
    return _mat_group(q, det_one=False)


@lru_cache(maxsize=None)
def sl2(q: int) -> Group:
    return _mat_group(q, det_one=True)


@lru_cache(maxsize=None)
def pgl2(q: int) -> Group:
    g = gl2(q)
    out = g.quotient(g.center())
    out.label = f"PGL(2,{q})"
    out.meta = {"kind": "pgl2", "q": q, "p": g.meta["p"], "deg": g.meta["deg"]}
    return out


@lru_cache(maxsize=None)
def psl2(q: int) -> Group:
    g = sl2(q)
    out = g.quotient(g.center())
    out.label = f"PSL(2,{q})"
    out.meta = {"kind": "psl2", "q": q, "p": g.meta["p"], "deg": g.meta["deg"]}
    return out


# -- maximal abelian partition -------------------------------------------------


@dataclass(frozen=True)
class PartitionReport:
    """Distinct abelian centralizers as a partition-mod-center of the group.

    covers means: the components jointly contain every element and pairwise
    intersect exactly in the center.  The three family counts follow the
    classical torus/unipotent decomposition and are filled in only when every
    component order matches one of the expected family orders for the group's
    construction; otherwise they stay None and the histogram speaks for
    itself.
    """

    covers: bool
    component_orders: tuple
    order_histogram: dict
    sylow_count: int | None
    split_tori_count: int | None
    nonsplit_tori_count: int | None
    components: tuple

    @property
    def component_count(self) -> int:
        return len(self.components)

    def to_json(self) -> dict:
        return {
            "covers": self.covers,
            "component_orders": list(self.component_orders),
            "order_histogram": {str(k): v for k, v in sorted(self.order_histogram.items())},
            "sylow_count": self.sylow_count,
            "split_tori_count": self.split_tori_count,
            "nonsplit_tori_count": self.nonsplit_tori_count,
            "component_count": self.component_count,
        }


def _family_orders(meta: dict) -> tuple[int, int, int] | None:
    kind, q = meta.get("kind"), meta.get("q")
    if kind not in ("gl2", "sl2", "pgl2", "psl2"):
        return None
    if kind == "gl2":
        return (q * (q - 1), (q - 1) ** 2, q * q - 1)
    if kind == "sl2":
        return (2 * q, q - 1, q + 1) if q % 2 else (q, q - 1, q + 1)
    if kind == "pgl2":
        return (q, q - 1, q + 1)
    return (q, (q - 1) // 2, (q + 1) // 2) if q % 2 else (q, q - 1, q + 1)


def maximal_abelian_partition(g: Group) -> PartitionReport:
    """Partition of g (mod center) into maximal abelian components.

    Groups built as pgl2/psl2 get the classical decomposition: the
    conjugates of one Sylow p-subgroup plus the cyclic subgroups generated
    by elements of the two torus orders.  Everything else is scanned for
    distinct abelian centralizers, which for an AC-group is the same
    partition; when the scan fails to partition, the input genuinely is not
    AC-like and the error says so.

    The two paths agree wherever both apply except PSL(2,5), where the
    involution centralizers are Klein fours that each fuse three of the
    order-2 torus components.
    """
    if g.meta.get("kind") in ("pgl2", "psl2"):
        return _projective_partition(g)
    return _centralizer_partition(g)


def _cyclic_members(g: Group, x: int) -> frozenset:
    members = [g.identity]
    acc = x
    while acc != g.identity:
        members.append(acc)
        acc = g.mul(acc, x)
    return frozenset(members)


def _conjugates(g: Group, members: np.ndarray) -> set:
    fam = set()
    for h in range(g.order):
        hm = np.full(len(members), h, dtype=np.int64)
        conj = g.mul_many(g.mul_many(hm, members), np.full(len(members), g.inverse[h]))
        fam.add(frozenset(conj.tolist()))
    return fam


def _projective_partition(g: Group) -> PartitionReport:
    q, p = g.meta["q"], g.meta["p"]
    d = 2 if (g.meta["kind"] == "psl2" and q % 2) else 1
    split_order, nonsplit_order = (q - 1) // d, (q + 1) // d
    if g.center().order != 1:
        raise ValueError("projective group has nontrivial center")

    orders = g.element_orders
    sylow_fam = _conjugates(g, g.sylow_subgroup(p).members)
    split_fam = (
        {_cyclic_members(g, int(x)) for x in np.flatnonzero(orders == split_order)}
        if split_order > 1
        else set()
    )
    nonsplit_fam = {
        _cyclic_members(g, int(x)) for x in np.flatnonzero(orders == nonsplit_order)
    }
    comps = sorted(sylow_fam | split_fam | nonsplit_fam, key=min)

    ident = frozenset({g.identity})
    covered = set().union(*comps)
    if len(covered) != g.order:
        missing = min(set(range(g.order)) - covered)
        raise ValueError(f"cover failure: element {g.key_str(missing)} lies in no component")
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            overlap = comps[i] & comps[j]
            if overlap != ident:
                witness = min(overlap - ident)
                raise ValueError(
                    f"cover failure: components meet beyond the identity at {g.key_str(witness)}"
                )

    hist: dict[int, int] = {}
    for comp in comps:
        hist[len(comp)] = hist.get(len(comp), 0) + 1
    return PartitionReport(
        covers=True,
        component_orders=tuple(sorted(hist)),
        order_histogram=hist,
        sylow_count=len(sylow_fam),
        split_tori_count=len(split_fam),
        nonsplit_tori_count=len(nonsplit_fam),
        components=tuple(tuple(sorted(c)) for c in comps),
    )


def _centralizer_partition(g: Group) -> PartitionReport:
    cm = g.commute_matrix
    central = cm.all(axis=1)
    center_set = frozenset(np.flatnonzero(central).tolist())
    if central.all():
        raise ValueError("partition undefined for abelian groups")

    comps: list[frozenset] = []
    seen = set()
    ac = True
    for x in np.flatnonzero(~central):
        row = cm[x]
        key = row.tobytes()
        if key in seen:
            continue
        seen.add(key)
        members = np.flatnonzero(row)
        if cm[np.ix_(members, members)].all():
            comps.append(frozenset(members.tolist()))
        else:
            ac = False

    def fail(detail: str):
        if ac:
            raise ValueError(f"cover failure: {detail}")
        raise ValueError(f"not an AC-group: {detail}")

    covered = set().union(*comps) if comps else set()
    missing = [x for x in np.flatnonzero(~central) if x not in covered]
    if missing:
        fail(f"element {g.key_str(missing[0])} lies in no abelian centralizer")
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            overlap = comps[i] & comps[j]
            if overlap != center_set:
                witness = min(overlap - center_set)
                fail(f"components meet beyond the center at {g.key_str(witness)}")

    hist: dict[int, int] = {}
    for comp in comps:
        hist[len(comp)] = hist.get(len(comp), 0) + 1
    expected = _family_orders(g.meta)
    sylow = split = nonsplit = None
    if expected is not None and set(hist) <= set(expected):
        so, spo, no = expected
        sylow = hist.get(so, 0)
        split = hist.get(spo, 0)
        nonsplit = hist.get(no, 0)
    ordered = sorted(comps, key=min)
    return PartitionReport(
        covers=True,
        component_orders=tuple(sorted(hist)),
        order_histogram=hist,
        sylow_count=sylow,
        split_tori_count=split,
        nonsplit_tori_count=nonsplit,
        components=tuple(tuple(sorted(c)) for c in ordered),
    )
