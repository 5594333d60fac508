import itertools

import numpy as np
import pytest

from noncomm.groups import (
    Group,
    internal_direct_product,
    is_isomorphic,
    subgroup_lattice,
    trivial_subgroup,
    whole_subgroup,
)


def compose(p, q):
    # apply q first, then p
    return tuple(p[q[i]] for i in range(len(p)))


def perm_group(gens, label=""):
    """Independent construction: BFS closure of permutation tuples."""
    n = len(gens[0])
    ident = tuple(range(n))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                r = compose(p, g)
                if r not in elems:
                    elems.add(r)
                    nxt.append(r)
        frontier = nxt
    keys = sorted(elems)
    pos = {k: i for i, k in enumerate(keys)}
    table = np.array([[pos[compose(a, b)] for b in keys] for a in keys], dtype=np.int32)
    return Group(keys, table, label=label)


def s3():
    return perm_group([(1, 0, 2), (1, 2, 0)], label="S3")


def z_n(n):
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return Group(list(range(n)), table.astype(np.int32), label=f"Z{n}")


def a4():
    return perm_group([(1, 2, 0, 3), (0, 2, 3, 1)], label="A4")


def d8():
    return perm_group([(1, 2, 3, 0), (3, 2, 1, 0)], label="D8")


def q8():
    # units {1,-1,i,-i,j,-j,k,-k} encoded 0..7; multiplication by the sign table
    keys = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {"1": ("1", 1), "-1": ("1", -1), "i": ("i", 1), "-i": ("i", -1),
            "j": ("j", 1), "-j": ("j", -1), "k": ("k", 1), "-k": ("k", -1)}
    rule = {
        ("1", "1"): ("1", 1), ("1", "i"): ("i", 1), ("1", "j"): ("j", 1), ("1", "k"): ("k", 1),
        ("i", "1"): ("i", 1), ("j", "1"): ("j", 1), ("k", "1"): ("k", 1),
        ("i", "i"): ("1", -1), ("j", "j"): ("1", -1), ("k", "k"): ("1", -1),
        ("i", "j"): ("k", 1), ("j", "i"): ("k", -1),
        ("j", "k"): ("i", 1), ("k", "j"): ("i", -1),
        ("k", "i"): ("j", 1), ("i", "k"): ("j", -1),
    }
    pos = {k: n for n, k in enumerate(keys)}
    table = np.zeros((8, 8), dtype=np.int32)
    for x in keys:
        for y in keys:
            bx, sx = base[x]
            by, sy = base[y]
            bz, sz = rule[(bx, by)]
            s = sx * sy * sz
            table[pos[x], pos[y]] = pos[bz if s == 1 else "-" + bz]
    return Group(keys, table, label="Q8")


def brute_subgroups(g):
    """Oracle: every subset closed under the operation (finite, so closure
    under products implies inverses and identity)."""
    n = g.order
    found = []
    for mask in range(1, 1 << n):
        vs = [i for i in range(n) if (mask >> i) & 1]
        sset = set(vs)
        if any(int(g.table[a, b]) not in sset for a in vs for b in vs):
            continue
        found.append(frozenset(vs))
    return set(found)


# -- construction and validation ------------------------------------------


def test_duplicate_keys_rejected():
    with pytest.raises(ValueError, match="duplicate"):
        Group(["a", "a"], np.zeros((2, 2), dtype=np.int32))


def test_non_associative_table_rejected():
    # subtraction mod 3 is not associative
    n = 3
    table = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    with pytest.raises(ValueError):
        Group(list(range(n)), table.astype(np.int32))


def test_no_identity_rejected():
    table = np.array([[1, 1], [1, 1]], dtype=np.int32)  # constant op, no identity
    with pytest.raises(ValueError):
        Group(["a", "b"], table)


def test_mul_fn_group_materializes_table():
    n = 12
    g = Group(
        list(range(n)),
        mul_fn=lambda a, b: (a + b) % n,
        label="Z12",
    )
    assert g.table is not None
    assert g.identity == 0
    assert g.inverse[5] == 7


def test_mul_fn_group_above_table_limit():
    n = 4200
    g = Group(
        list(range(n)),
        mul_fn=lambda a, b: (a + b) % n,
        inverse=(-np.arange(n)) % n,
        label="Z4200",
    )
    assert g.table is None
    assert g.identity == 0
    assert g.mul(4199, 1) == 0
    assert int(g.element_orders[1]) == n
    assert g.is_abelian()


def test_mul_fn_above_limit_requires_inverse():
    n = 4100
    with pytest.raises(ValueError, match="inverse"):
        Group(list(range(n)), mul_fn=lambda a, b: (a + b) % n)


# -- S3: smallest non-abelian group, checked by hand -----------------------


def test_s3_basics():
    g = s3()
    assert g.order == 6
    assert g.center().order == 1
    sizes = sorted(g.centralizer_sizes().tolist())
    # identity: 6, two 3-cycles: 3 each, three transpositions: 2 each
    assert sizes == [2, 2, 2, 3, 3, 6]


def test_s3_closure_examples():
    g = s3()
    assert g.closure([g.identity]).order == 1
    transposition = next(i for i in range(6) if g.element_orders[i] == 2)
    assert g.closure([transposition]).order == 2


def test_s3_derived_and_series():
    g = s3()
    assert g.derived_subgroup().order == 3
    assert g.is_solvable()
    assert not g.is_nilpotent()


def test_s3_sylow():
    g = s3()
    count3, rep3 = g.sylow_count(3)
    assert count3 == 1 and rep3.order == 3
    count2, rep2 = g.sylow_count(2)
    assert count2 == 3 and rep2.order == 2
    with pytest.raises(ValueError, match="divide"):
        g.sylow_count(5)


# -- abelian and nilpotent cases -------------------------------------------


def test_z6_structure():
    g = z_n(6)
    assert g.is_abelian()
    assert g.center().order == 6
    assert g.derived_subgroup().order == 1
    assert g.is_nilpotent() and g.is_solvable()


def test_d8_q8_nilpotent():
    for g in (d8(), q8()):
        assert g.is_nilpotent()
        assert g.center().order == 2
        assert g.derived_subgroup().order == 2
        assert not g.is_abelian()


def test_q8_unique_involution():
    g = q8()
    assert int((g.element_orders == 2).sum()) == 1


def test_a4_structure():
    g = a4()
    assert g.order == 12
    assert g.derived_subgroup().order == 4
    assert g.sylow_count(3)[0] == 4
    assert g.sylow_count(2)[0] == 1
    assert g.is_solvable() and not g.is_nilpotent()


def test_element_orders_match_sympy():
    sympy_comb = pytest.importorskip("sympy.combinatorics")
    g = a4()
    ours = sorted(g.element_orders.tolist())
    sp = sympy_comb.named_groups.AlternatingGroup(4)
    theirs = sorted(p.order() for p in sp.elements)
    assert ours == theirs


# -- quotients ---------------------------------------------------------------


def test_quotient_s3_by_a3():
    g = s3()
    n = g.derived_subgroup()
    q = g.quotient(n)
    assert q.order == 2


def test_quotient_rejects_non_normal():
    g = s3()
    transposition = next(i for i in range(6) if g.element_orders[i] == 2)
    h = g.closure([transposition])
    with pytest.raises(ValueError, match="not normal"):
        g.quotient(h)


def test_quotient_by_trivial_is_isomorphic():
    g = a4()
    q = g.quotient(trivial_subgroup(g))
    assert q.order == 12
    assert is_isomorphic(g, q) is not None


def test_quotient_center_pullback():
    # center of G/N pulls back to a subgroup containing the image of Z(G)
    g = d8()
    z = g.center()
    q = g.quotient(z)
    assert q.order == 4
    assert q.is_abelian()  # D8/Z is the Klein group


# -- isomorphism --------------------------------------------------------------


def test_iso_same_object_is_identity():
    g = s3()
    phi = is_isomorphic(g, g)
    assert np.array_equal(phi, np.arange(6))


def test_iso_relabeled_copy():
    g = s3()
    h = perm_group([(1, 2, 0), (0, 2, 1)], label="S3-again")
    phi = is_isomorphic(g, h)
    assert phi is not None
    # verify it is a homomorphism on every pair
    for a in range(6):
        for b in range(6):
            assert phi[g.table[a, b]] == h.table[phi[a], phi[b]]


def test_iso_rejects_different_groups():
    assert is_isomorphic(s3(), z_n(6)) is None
    assert is_isomorphic(d8(), q8()) is None


def test_iso_symmetric_and_reflexive_battery():
    battery = [s3(), z_n(6), a4(), d8(), q8()]
    for g in battery:
        assert is_isomorphic(g, g) is not None
    for g, h in itertools.combinations(battery, 2):
        assert (is_isomorphic(g, h) is None) == (is_isomorphic(h, g) is None)


def test_iso_bound():
    g = z_n(2048)
    with pytest.raises(ValueError, match="isomorphism bound exceeded"):
        is_isomorphic(g, g)


# -- direct products and lattice ----------------------------------------------


def test_internal_direct_product_z6():
    g = z_n(6)
    a = g.closure([2])  # {0,2,4}
    b = g.closure([3])  # {0,3}
    assert internal_direct_product(g, a, b)
    assert internal_direct_product(g, whole_subgroup(g), trivial_subgroup(g))


def test_internal_direct_product_s3_fails():
    g = s3()
    a = g.derived_subgroup()
    transposition = next(i for i in range(6) if g.element_orders[i] == 2)
    b = g.closure([transposition])
    assert not internal_direct_product(g, a, b)


def test_lattice_counts():
    assert len(subgroup_lattice(z_n(6))) == 4
    assert len(subgroup_lattice(s3())) == 6
    assert len(subgroup_lattice(a4())) == 10


@pytest.mark.parametrize("maker", [z_n, lambda n: s3(), lambda n: a4(), lambda n: d8()])
def test_lattice_matches_brute_force(maker):
    g = maker(6)
    ours = {frozenset(s.members.tolist()) for s in subgroup_lattice(g)}
    assert ours == brute_subgroups(g)


def test_lattice_bound():
    with pytest.raises(ValueError, match="lattice bound exceeded"):
        subgroup_lattice(z_n(201))


def test_lagrange_over_lattice():
    g = a4()
    for s in subgroup_lattice(g):
        assert g.order % s.order == 0


def test_sylow_congruence_battery():
    for g in (s3(), a4(), d8(), q8(), z_n(12)):
        n = g.order
        for p in {2, 3}:
            if n % p:
                continue
            count, rep = g.sylow_count(p)
            assert count % p == 1
            pa = 1
            while n % (pa * p) == 0:
                pa *= p
            assert rep.order == pa
            assert (n // pa) % count == 0


# -- subgroup helpers -----------------------------------------------------------


def test_centralizer_contains_closure_with_center():
    g = d8()
    z = g.center()
    for x in range(g.order):
        c = g.centralizer(x)
        gen = g.closure(list(z.members) + [x])
        assert set(gen.members.tolist()) <= set(c.members.tolist())


def test_centralizer_of_identity_is_whole():
    g = a4()
    assert g.centralizer(g.identity).order == g.order


def test_as_group_roundtrip():
    g = a4()
    v4 = g.derived_subgroup().as_group("V4")
    assert v4.order == 4
    assert v4.is_abelian()
    assert sorted(v4.element_orders.tolist()) == [1, 2, 2, 2]


def test_subgroup_json_and_group_json():
    g = s3()
    d = g.to_json()
    assert d["order"] == 6 and len(d["elements"]) == 6
    assert "table" in d
    assert trivial_subgroup(g).to_json() == [g.identity]


def test_word_table_covers_group():
    g = a4()
    gens = g.generator_indices
    order, parent, genpos = g.word_table(gens)
    assert len(order) == 12
    assert g.closure(gens).order == 12
