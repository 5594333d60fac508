"""Generic finite group engine.

A Group holds an indexed list of opaque element keys plus a total binary
operation, realized as an explicit multiplication table when the order is at
most TABLE_LIMIT and as a vectorized index function above that.  Everything
downstream (centers, centralizers, derived series, Sylow data, quotients,
isomorphism testing) works through element indices, so the keys themselves
only matter for display and serialization.

Determinism policy: all tie-breaking is by minimal element index (coset
representatives, generator selection, subgroup dedup), so repeated runs give
identical output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

TABLE_LIMIT = 4096
ISO_LIMIT = 2000
LATTICE_LIMIT = 200

_ASSOC_SAMPLES = 200


class Group:
    """Finite group on indexed elements.

    Exactly one of `table` (dense int32 Cayley table) or `mul_fn` (vectorized
    map from index arrays to product indices) must be supplied; a table is
    materialized from mul_fn automatically when the order allows it.  An
    explicit `inverse` array skips the inverse search, and `commute_builder`
    lets the caller supply a faster commute-matrix routine than the generic
    pairwise scan (matrix groups do).
    """

    def __init__(
        self,
        elements,
        table=None,
        *,
        mul_fn=None,
        inverse=None,
        label: str = "",
        meta: dict | None = None,
        commute_builder=None,
    ):
        self.elements = list(elements)
        self.label = label
        self.meta = dict(meta) if meta else {}
        n = len(self.elements)
        if n == 0:
            raise ValueError("a group needs at least one element")
        self._index = {k: i for i, k in enumerate(self.elements)}
        if len(self._index) != n:
            raise ValueError("duplicate element keys")
        if (table is None) == (mul_fn is None):
            raise ValueError("supply exactly one of table or mul_fn")
        if table is None and n <= TABLE_LIMIT:
            rows = np.arange(n, dtype=np.int64)
            table = np.vstack([mul_fn(np.full(n, i, dtype=np.int64), rows) for i in range(n)])
            mul_fn = None
        if table is not None:
            table = np.asarray(table, dtype=np.int32)
            if table.shape != (n, n):
                raise ValueError("table shape mismatch")
        self.table = table
        self._mul_fn = mul_fn
        self._commute_builder = commute_builder
        self.key_formatter = str

        self.identity = self._find_identity()
        self.inverse = self._find_inverses(inverse)
        self._spot_check_associativity()

    # -- construction-time validation ------------------------------------

    def _find_identity(self) -> int:
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        if self.table is not None:
            hits = np.flatnonzero((self.table == idx).all(axis=1))
        else:
            # the identity is the unique idempotent
            hits = np.flatnonzero(self.mul_many(idx, idx) == idx)
        if len(hits) != 1:
            raise ValueError("operation has no unique identity")
        e = int(hits[0])
        if self.table is not None and not (self.table[:, e] == idx).all():
            raise ValueError("identity is not two-sided")
        return e

    def _find_inverses(self, inverse) -> np.ndarray:
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        if inverse is not None:
            inv = np.asarray(inverse, dtype=np.int64)
        elif self.table is not None:
            inv = np.argmax(self.table == self.identity, axis=1).astype(np.int64)
        else:
            raise ValueError("mul_fn groups must supply an inverse array")
        ok = (self.mul_many(idx, inv) == self.identity).all() and (
            self.mul_many(inv, idx) == self.identity
        ).all()
        if not ok:
            raise ValueError("inverse map is not two-sided")
        return inv

    def _spot_check_associativity(self) -> None:
        n = self.order
        if self.table is not None and n <= 64:
            t = self.table.astype(np.int64)
            # t[t][i,j,k] = (ij)k and t[:, t][i,j,k] = i(jk)
            if not np.array_equal(t[t], t[:, t]):
                raise ValueError("operation is not associative")
            return
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, (3, _ASSOC_SAMPLES))
        if not np.array_equal(
            self.mul_many(self.mul_many(a, b), c), self.mul_many(a, self.mul_many(b, c))
        ):
            raise ValueError("operation is not associative")

    # -- basics ------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, key) -> int:
        return self._index[key]

    def mul(self, i: int, j: int) -> int:
        if self.table is not None:
            return int(self.table[i, j])
        return int(self._mul_fn(np.array([i]), np.array([j]))[0])

    def mul_many(self, ia, ib) -> np.ndarray:
        ia = np.asarray(ia, dtype=np.int64)
        ib = np.asarray(ib, dtype=np.int64)
        if self.table is not None:
            return self.table[ia, ib].astype(np.int64)
        return np.asarray(self._mul_fn(ia, ib), dtype=np.int64)

    def key_str(self, i: int) -> str:
        return self.key_formatter(self.elements[i])

    def __repr__(self) -> str:
        return f"Group({self.label or 'unnamed'}, order={self.order})"

    @cached_property
    def commute_matrix(self) -> np.ndarray:
        """Boolean matrix: entry (i, j) true iff elements i and j commute."""
        if self._commute_builder is not None:
            cm = np.asarray(self._commute_builder(), dtype=bool)
        elif self.table is not None:
            cm = self.table == self.table.T
        else:
            n = self.order
            idx = np.arange(n, dtype=np.int64)
            cm = np.empty((n, n), dtype=bool)
            for i in range(n):
                row = np.full(n, i, dtype=np.int64)
                cm[i] = self.mul_many(row, idx) == self.mul_many(idx, row)
        cm.setflags(write=False)
        return cm

    @cached_property
    def element_orders(self) -> np.ndarray:
        n = self.order
        idx = np.arange(n, dtype=np.int64)
        orders = np.zeros(n, dtype=np.int64)
        acc = idx.copy()
        k = 1
        while (orders == 0).any():
            hit = (acc == self.identity) & (orders == 0)
            orders[hit] = k
            if (orders != 0).all():
                break
            acc = self.mul_many(acc, idx)
            k += 1
            if k > n:
                raise ValueError("element order exceeds group order")
        return orders

    def centralizer_sizes(self) -> np.ndarray:
        return self.commute_matrix.sum(axis=1)

    # -- subgroups ----------------------------------------------------------

    def center(self) -> Subgroup:
        members = np.flatnonzero(self.commute_matrix.all(axis=1))
        return Subgroup(self, members, label=f"Z({self.label})" if self.label else "center")

    def centralizer(self, x: int) -> Subgroup:
        members = np.flatnonzero(self.commute_matrix[x])
        return Subgroup(self, members, label=f"C({self.key_str(x)})")

    def is_abelian(self) -> bool:
        return bool(self.commute_matrix.all())

    def closure(self, generators) -> Subgroup:
        """Smallest subgroup containing the generators.

        Breadth-first saturation by right multiplication: every member is a
        word in the generators, and in a finite group inverses are positive
        powers, so generator words reach the whole subgroup.
        """
        gens = sorted({int(g) for g in generators})
        for g in gens:
            if not 0 <= g < self.order:
                raise IndexError("generator index out of range")
        members = {self.identity}
        frontier = [self.identity]
        gen_arr = np.array(gens, dtype=np.int64)
        while frontier:
            fr = np.array(frontier, dtype=np.int64)
            frontier = []
            for g in gen_arr:
                for p in self.mul_many(fr, np.full(len(fr), g, dtype=np.int64)):
                    p = int(p)
                    if p not in members:
                        members.add(p)
                        frontier.append(p)
        return Subgroup(self, np.array(sorted(members), dtype=np.int64))

    def _saturate(self, seed: np.ndarray) -> np.ndarray:
        """Close an index set under the operation (the set already contains
        enough structure that pairwise products converge quickly)."""
        s = np.unique(np.append(seed, self.identity))
        while True:
            aa, bb = np.meshgrid(s, s, indexing="ij")
            prods = np.unique(self.mul_many(aa.ravel(), bb.ravel()))
            if len(prods) == len(s):
                return prods
            s = prods

    def _commutators_of(self, members: np.ndarray) -> np.ndarray:
        a = np.repeat(members, len(members))
        b = np.tile(members, len(members))
        comm = self.mul_many(
            self.mul_many(self.inverse[a], self.inverse[b]), self.mul_many(a, b)
        )
        return np.unique(comm)

    @cached_property
    def _derived_members(self) -> np.ndarray:
        return self._saturate(self._commutators_of(np.arange(self.order)))

    def derived_subgroup(self) -> Subgroup:
        label = f"({self.label})'" if self.label else "derived"
        return Subgroup(self, self._derived_members, label=label)

    def is_solvable(self) -> bool:
        cur = np.arange(self.order, dtype=np.int64)
        while True:
            nxt = self._saturate(self._commutators_of(cur))
            if len(nxt) == 1:
                return True
            if len(nxt) == len(cur):
                return False
            cur = nxt

    def is_nilpotent(self) -> bool:
        # nilpotent iff every Sylow subgroup is normal (count 1)
        n = self.order
        for p in _prime_factors(n):
            if self.sylow_count(p)[0] != 1:
                return False
        return True

    def sylow_subgroup(self, p: int) -> Subgroup:
        """One Sylow p-subgroup, grown greedily.

        Any inclusion-maximal p-subgroup is Sylow, so growing the closure by
        the lowest-index p-element that keeps the order a p-power terminates
        at full Sylow order.
        """
        n = self.order
        if n % p != 0:
            raise ValueError(f"{p} does not divide the group order {n}")
        orders = self.element_orders
        p_elems = [i for i in range(n) if _is_p_power(int(orders[i]), p)]
        members = {self.identity}
        gens: list[int] = []
        grew = True
        while grew:
            grew = False
            for x in p_elems:
                if x in members:
                    continue
                cand = self.closure(gens + [x])
                if _is_p_power(cand.order, p):
                    gens.append(x)
                    members = set(cand.members.tolist())
                    grew = True
                    break
        sub = self.closure(gens) if gens else self.closure([self.identity])
        sub.label = f"Sylow_{p}"
        return sub

    def sylow_count(self, p: int) -> tuple[int, Subgroup]:
        """Number of Sylow p-subgroups plus one representative."""
        rep = self.sylow_subgroup(p)
        k = rep.order
        seen = set()
        mem = rep.members
        for g in range(self.order):
            gm = np.full(len(mem), g, dtype=np.int64)
            conj = self.mul_many(self.mul_many(gm, mem), np.full(len(mem), self.inverse[g]))
            conj.sort()
            seen.add(conj.tobytes())
        count = len(seen)
        if count % p != 1 or k == 0:
            raise AssertionError("Sylow count sanity check failed")
        return count, rep

    def quotient(self, normal: Subgroup) -> Group:
        """Quotient by a normal subgroup; coset keys carry the minimal-index
        representative's element key."""
        if normal.parent is not self:
            raise ValueError("subgroup belongs to a different group")
        if not normal.is_normal():
            raise ValueError("not normal")
        n = self.order
        mem = normal.members
        coset_of = np.full(n, -1, dtype=np.int64)
        reps = []
        for i in range(n):
            if coset_of[i] >= 0:
                continue
            coset = self.mul_many(np.full(len(mem), i, dtype=np.int64), mem)
            coset_of[coset] = len(reps)
            reps.append(i)
        reps_arr = np.array(reps, dtype=np.int64)
        m = len(reps)
        table = np.empty((m, m), dtype=np.int32)
        for a in range(m):
            table[a] = coset_of[self.mul_many(np.full(m, reps_arr[a]), reps_arr)]
        keys = [("coset", self.elements[r]) for r in reps]
        label = f"{self.label}/{normal.label}" if self.label else "quotient"
        q = Group(keys, table, label=label, meta={"kind": "quotient", "of": self.label})
        pf = self.key_formatter
        q.key_formatter = lambda k: f"[{pf(k[1])}]"
        q.coset_of = coset_of  # parent element index -> coset index
        q.coset_reps = reps_arr
        return q

    # -- generators and isomorphism ------------------------------------------

    @cached_property
    def generator_indices(self) -> list[int]:
        """Small generating sequence, greedy by maximal closure growth with
        ties to the lowest index."""
        n = self.order
        gens: list[int] = []
        size = 1
        while size < n:
            best_x, best_size = -1, size
            for x in range(n):
                if x == self.identity:
                    continue
                s = self.closure(gens + [x]).order
                if s > best_size:
                    best_x, best_size = x, s
            gens.append(best_x)
            size = best_size
        return gens

    def word_table(self, gens: list[int]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """BFS expressions: element visit order plus, for each visited element,
        the previously visited element and generator position that produce it."""
        n = self.order
        parent = np.full(n, -1, dtype=np.int64)
        genpos = np.full(n, -1, dtype=np.int64)
        seen = np.zeros(n, dtype=bool)
        seen[self.identity] = True
        orderv = [self.identity]
        head = 0
        while head < len(orderv):
            cur = orderv[head]
            head += 1
            for gp, g in enumerate(gens):
                nxt = self.mul(cur, g)
                if not seen[nxt]:
                    seen[nxt] = True
                    parent[nxt] = cur
                    genpos[nxt] = gp
                    orderv.append(nxt)
        if len(orderv) != n:
            raise ValueError("generators do not generate the group")
        return np.array(orderv, dtype=np.int64), parent, genpos

    def to_json(self) -> dict:
        out = {
            "label": self.label,
            "order": self.order,
            "elements": [self.key_str(i) for i in range(self.order)],
        }
        if self.meta:
            out["descriptor"] = self.meta
        if self.order <= 128 and self.table is not None:
            out["table"] = self.table.tolist()
        return out


@dataclass(eq=False)
class Subgroup:
    """Sorted index set closed inside a parent group."""

    parent: Group
    members: np.ndarray
    label: str = ""
    _member_set: set = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self.members = np.asarray(self.members, dtype=np.int64)
        self.members.setflags(write=False)
        self._member_set = set(self.members.tolist())

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, i: int) -> bool:
        return int(i) in self._member_set

    def is_normal(self) -> bool:
        g = self.parent
        mem = self.members
        for x in range(g.order):
            xa = np.full(len(mem), x, dtype=np.int64)
            left = np.sort(g.mul_many(xa, mem))
            right = np.sort(g.mul_many(mem, xa))
            if not np.array_equal(left, right):
                return False
        return True

    def is_abelian(self) -> bool:
        cm = self.parent.commute_matrix
        return bool(cm[np.ix_(self.members, self.members)].all())

    def as_group(self, label: str | None = None) -> Group:
        """Standalone Group on the member set with a remapped table."""
        g = self.parent
        mem = self.members
        remap = np.full(g.order, -1, dtype=np.int64)
        remap[mem] = np.arange(len(mem))
        k = len(mem)
        table = np.empty((k, k), dtype=np.int32)
        for a in range(k):
            row = g.mul_many(np.full(k, mem[a]), mem)
            if (remap[row] < 0).any():
                raise ValueError("member set is not closed")
            table[a] = remap[row]
        keys = [g.elements[i] for i in mem]
        return Group(keys, table, label=label or self.label or "subgroup")

    def to_json(self) -> list[int]:
        return [int(i) for i in self.members]


# -- module-level operations ------------------------------------------------


def _prime_factors(n: int) -> list[int]:
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


def _is_p_power(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def trivial_subgroup(g: Group) -> Subgroup:
    return Subgroup(g, np.array([g.identity]), label="1")


def whole_subgroup(g: Group) -> Subgroup:
    return Subgroup(g, np.arange(g.order), label=g.label or "G")


def internal_direct_product(g: Group, a: Subgroup, b: Subgroup) -> bool:
    """True iff a and b are normal, intersect trivially, and a*b covers g."""
    if a.parent is not g or b.parent is not g:
        raise ValueError("subgroups belong to a different group")
    inter = a._member_set & b._member_set
    if inter != {g.identity}:
        return False
    if a.order * b.order != g.order:
        return False
    return a.is_normal() and b.is_normal()


def subgroup_lattice(g: Group) -> list[Subgroup]:
    """All subgroups, by breadth-first closure over extended generator sets."""
    if g.order > LATTICE_LIMIT:
        raise ValueError("lattice bound exceeded")
    triv = frozenset({g.identity})
    known = {triv: np.array([g.identity], dtype=np.int64)}
    frontier = [triv]
    while frontier:
        nxt = []
        for s in frontier:
            base = known[s]
            for x in range(g.order):
                if x in s:
                    continue
                ext = g.closure(np.append(base, x)).members
                key = frozenset(ext.tolist())
                if key not in known:
                    known[key] = ext
                    nxt.append(key)
        frontier = nxt
    subs = sorted(known.values(), key=lambda m: (len(m), m.tolist()))
    return [Subgroup(g, m) for m in subs]


def is_isomorphic(g: Group, h: Group) -> np.ndarray | None:
    """Isomorphism g -> h as an index map, or None.

    Cheap invariants first; then backtracking that maps a greedy generating
    sequence of g onto order-compatible images in h, rebuilding the whole map
    through BFS words and verifying multiplicativity in full before reporting.
    """
    if g.order > ISO_LIMIT or h.order > ISO_LIMIT:
        raise ValueError("isomorphism bound exceeded")
    if g.order != h.order:
        return None
    n = g.order
    if g is h:
        return np.arange(n, dtype=np.int64)
    if (
        g.table is not None
        and h.table is not None
        and np.array_equal(g.table, h.table)
    ):
        # same multiplication table in the same element order: identity works
        return np.arange(n, dtype=np.int64)
    go, ho = g.element_orders, h.element_orders
    if sorted(go.tolist()) != sorted(ho.tolist()):
        return None
    gc, hc = g.centralizer_sizes(), h.centralizer_sizes()
    if sorted(gc.tolist()) != sorted(hc.tolist()):
        return None
    if g.center().order != h.center().order:
        return None
    if g.derived_subgroup().order != h.derived_subgroup().order:
        return None

    gens = g.generator_indices
    bfs_order, parent, genpos = g.word_table(gens)
    # candidate images must match on element order and centralizer size
    cands = [
        np.flatnonzero((ho == go[x]) & (hc == gc[x])) for x in gens
    ]

    prod_order_g = {}
    for i, x in enumerate(gens):
        for j, y in enumerate(gens[: i + 1]):
            prod_order_g[(i, j)] = int(go[g.mul(x, y)])
            prod_order_g[(j, i)] = int(go[g.mul(y, x)])

    images = [-1] * len(gens)

    def extend(pos: int) -> np.ndarray | None:
        if pos == len(gens):
            return _build_and_verify(g, h, gens, images, bfs_order, parent, genpos)
        for c in cands[pos]:
            c = int(c)
            if c in images[:pos]:
                continue
            ok = True
            for j in range(pos + 1):
                cj = images[j] if j < pos else c
                if int(ho[h.mul(c, cj)]) != prod_order_g[(pos, j)]:
                    ok = False
                    break
                if int(ho[h.mul(cj, c)]) != prod_order_g[(j, pos)]:
                    ok = False
                    break
            if not ok:
                continue
            images[pos] = c
            found = extend(pos + 1)
            if found is not None:
                return found
        images[pos] = -1
        return None

    return extend(0)


def _build_and_verify(g, h, gens, images, bfs_order, parent, genpos):
    n = g.order
    phi = np.full(n, -1, dtype=np.int64)
    phi[g.identity] = h.identity
    img = [int(c) for c in images]
    th = h.table
    for x in bfs_order[1:]:
        phi[x] = th[phi[parent[x]], img[genpos[x]]]
    if len(np.unique(phi)) != n:
        return None
    tg = g.table
    if not np.array_equal(phi[tg], th[phi[:, None], phi[None, :]]):
        return None
    return phi
