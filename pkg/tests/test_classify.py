"""Classification layer: AC detection, case matching, verification pipelines.

Case expectations are frozen from hand-checked structure: D24 and Dic24 have
the abelian C12 of index 2 (S1), the order-20 Frobenius group splits as
C5 x| C4 with both parts abelian (S2), SL(2,3) has quaternion kernel over its
center (S3), GL(2,3) lies over symmetric(4) (S4), and p-groups land in S5.
The nonsolvable side pins SL(2,5) to NS1 with parameter 5 and the even-q
groups to the coincident NS2.
"""

import json

import numpy as np
import pytest

from noncomm.classify import (
    ac_nonsolvable_case,
    ac_solvable_case,
    ac_transfer_check,
    frobenius_structure,
    is_ac_group,
    prime_power_incompatibility,
    rival_scan,
    verify_theorem_gl,
    verify_theorem_sl,
)
from noncomm.constructions import (
    alternating,
    build,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    order6_catalog,
    order24_catalog,
    symmetric,
)
from noncomm.groups import is_isomorphic
from noncomm.matgroups import gl2, sl2
from noncomm.ncgraph import build_graph, graphs_isomorphic


def f20():
    return build("semidirect(C5,C4,x^2)")


# -- AC property ---------------------------------------------------------------


def test_s4_is_not_ac_with_witness():
    res = is_ac_group(symmetric(4))
    assert not res
    assert res.is_ac is False
    w = res.witness
    g = symmetric(4)
    # witness centralizer has order 8 (a double transposition's)
    assert w["centralizer_order"] == 8
    a, b = w["pair"]
    cm = g.commute_matrix
    assert cm[w["x"], a] and cm[w["x"], b]
    assert not cm[a, b]


@pytest.mark.parametrize(
    "make",
    [
        lambda: symmetric(3),
        lambda: dihedral(8),
        lambda: dicyclic(8),
        lambda: f20(),
        lambda: sl2(3),
        lambda: sl2(5),
        lambda: gl2(3),
        lambda: gl2(5),
        lambda: direct_product(cyclic(2), alternating(4)),
    ],
)
def test_ac_positives(make):
    assert is_ac_group(make())


def test_ac_vacuous_for_abelian():
    assert is_ac_group(cyclic(12)).is_ac is True


@pytest.mark.parametrize("name", ["S4", "D16", "C2xS4"])
def test_ac_witness_is_sound(name):
    g = build(name)
    res = is_ac_group(g)
    if res:
        return
    w = res.witness
    cm = g.commute_matrix
    assert not cm.all(axis=1)[w["x"]]
    a, b = w["pair"]
    assert cm[w["x"], a] and cm[w["x"], b] and not cm[a, b]


def test_ac_result_json():
    blob = json.dumps(is_ac_group(symmetric(4)).to_json(), sort_keys=True)
    assert '"is_ac": false' in blob


# -- transfer check ------------------------------------------------------------


def test_transfer_identity():
    g = sl2(3)
    n = build_graph(g).n_vertices
    assert ac_transfer_check(g, g, np.arange(n))


def test_transfer_across_nonisomorphic_groups():
    # D24 and Dic24 have isomorphic graphs but are different groups; the
    # centralizer partition still transfers along any graph isomorphism.
    a, b = dihedral(24), dicyclic(24)
    iso = graphs_isomorphic(build_graph(a), build_graph(b))
    assert iso is not None
    assert is_isomorphic(a, b) is None
    assert ac_transfer_check(a, b, iso).ok is True


def test_transfer_rejects_corrupted_bijections():
    g = sl2(3)
    graph = build_graph(g)
    n = graph.n_vertices
    deg = graph.degrees
    rng = np.random.default_rng(20260818)
    lo = np.flatnonzero(deg == deg.min())
    hi = np.flatnonzero(deg == deg.max())
    for _ in range(20):
        perm = np.arange(n)
        u, v = rng.choice(lo), rng.choice(hi)
        perm[[u, v]] = perm[[v, u]]
        res = ac_transfer_check(g, g, perm)
        assert res.ok is False
        assert res.witness is not None


def test_transfer_nonbijection_raises():
    g = sl2(3)
    n = build_graph(g).n_vertices
    with pytest.raises(ValueError, match="bijection"):
        ac_transfer_check(g, g, np.arange(n - 1))
    bad = np.arange(n)
    bad[0] = 1  # vertex 1 hit twice
    with pytest.raises(ValueError, match="bijection"):
        ac_transfer_check(g, g, bad)


# -- Frobenius structure -------------------------------------------------------


def test_frobenius_f20():
    fro = frobenius_structure(f20())
    assert fro is not None
    assert (fro.kernel_q.order, fro.complement_q.order) == (5, 4)
    # trivial center, so preimages match
    assert (fro.kernel.order, fro.complement.order) == (5, 4)
    assert fro.kernel.is_normal()


def test_frobenius_a4():
    fro = frobenius_structure(alternating(4))
    assert fro is not None
    assert (fro.kernel_q.order, fro.complement_q.order) == (4, 3)


def test_frobenius_d12_preimages_contain_center():
    g = dihedral(12)
    fro = frobenius_structure(g)
    assert fro is not None
    assert fro.quotient.order == 6
    assert (fro.kernel_q.order, fro.complement_q.order) == (3, 2)
    # preimages pick up the order-2 center
    assert (fro.kernel.order, fro.complement.order) == (6, 4)
    z = g.center()
    assert all(int(i) in fro.kernel for i in z.members)
    assert all(int(i) in fro.complement for i in z.members)


def test_frobenius_sl23():
    fro = frobenius_structure(sl2(3))
    assert fro is not None
    assert (fro.kernel.order, fro.complement.order) == (8, 6)
    assert not fro.kernel.is_abelian()
    assert fro.complement.is_abelian()


@pytest.mark.parametrize(
    "make",
    [
        lambda: dicyclic(8),  # central quotient V4 is abelian
        lambda: symmetric(4),
        lambda: cyclic(6),  # trivial central quotient
        lambda: alternating(5),
    ],
)
def test_frobenius_negatives(make):
    assert frobenius_structure(make()) is None


def test_frobenius_kernel_is_pointwise_outside_complement_conjugates():
    fro = frobenius_structure(f20())
    q = fro.quotient
    comp = set(fro.complement_q.members.tolist())
    kern = set(fro.kernel_q.members.tolist())
    for x in range(q.order):
        conj = {
            int(q.mul(q.mul(q.inverse[x], h), x)) for h in fro.complement_q.members
        }
        assert not (conj & kern - {q.identity})
        if x not in comp:
            assert len(conj & comp) <= 1


# -- solvable cases ------------------------------------------------------------


def test_case_d8_is_s5_only():
    rep = ac_solvable_case(dihedral(8))
    assert rep.case == "S5"
    assert rep.all_matches == ("S5",)
    assert rep.nilpotent is True
    assert rep.omega == 3
    assert rep.failure is None


def test_case_f20_is_s2():
    rep = ac_solvable_case(f20())
    assert rep.case == "S2"
    assert rep.omega == 6
    assert rep.witnesses["S2"]["kernel_order"] == 5
    assert rep.omega_check == {"expected": 6, "computed": 6, "passed": True}


@pytest.mark.parametrize("make", [lambda: dihedral(24), lambda: dicyclic(24)])
def test_case_order24_metacyclic_is_s1(make):
    rep = ac_solvable_case(make())
    assert rep.case == "S1"
    assert rep.omega == 7
    w = rep.witnesses["S1"]
    assert w["normal_subgroup_order"] == 12 and w["index"] == 2


def test_case_c2a4_matches_s1_and_s2():
    rep = ac_solvable_case(direct_product(cyclic(2), alternating(4)))
    assert rep.all_matches == ("S1", "S2")
    assert rep.case == "S1"
    assert rep.omega == 5
    assert rep.witnesses["S1"]["index"] == 3
    assert rep.witnesses["S2"]["kernel_order"] == 8


def test_case_sl23_is_s3():
    rep = ac_solvable_case(sl2(3))
    assert rep.case == "S3"
    assert rep.all_matches == ("S3",)
    w = rep.witnesses["S3"]
    assert w["kernel_order"] == 8
    assert w["kernel_omega"] == 3
    assert rep.omega == 7 and rep.omega_check["expected"] == 7


def test_case_gl23_is_s4():
    rep = ac_solvable_case(gl2(3))
    assert rep.case == "S4"
    assert rep.omega == 13
    assert rep.witnesses["S4"]["four_group_preimage_order"] == 8


@pytest.mark.parametrize(
    "make, want",
    [
        (lambda: direct_product(cyclic(3), dihedral(8)), "S5"),
        (lambda: direct_product(cyclic(3), dicyclic(8)), "S5"),
        (lambda: dicyclic(8), "S5"),
        (lambda: dihedral(16), "S5"),
    ],
)
def test_case_nilpotent_products_are_s5(make, want):
    rep = ac_solvable_case(make())
    assert rep.case == want
    assert rep.nilpotent is True


def test_case_s5_witness_orders():
    rep = ac_solvable_case(direct_product(cyclic(3), dihedral(8)))
    w = rep.witnesses["S5"]
    assert w["abelian_part_order"] == 3 and w["p_part_order"] == 8


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_case_odd_dihedrals_are_s1_s2(n):
    # D(2n) for odd n: C(n) of index 2, and the whole group is Frobenius
    rep = ac_solvable_case(dihedral(2 * n))
    assert rep.all_matches == ("S1", "S2")
    assert rep.omega == n + 1


def test_case_errors():
    with pytest.raises(ValueError, match="not an AC-group"):
        ac_solvable_case(symmetric(4))
    with pytest.raises(ValueError, match="abelian"):
        ac_solvable_case(cyclic(12))
    with pytest.raises(ValueError, match="not solvable"):
        ac_solvable_case(sl2(5))


def test_case_report_json_is_stable():
    a = json.dumps(ac_solvable_case(dihedral(24)).to_json(), sort_keys=True)
    b = json.dumps(ac_solvable_case(dihedral(24)).to_json(), sort_keys=True)
    assert a == b
    blob = json.loads(a)
    assert blob["case"] == "S1" and blob["solvable"] is True


# -- nonsolvable cases ---------------------------------------------------------


def test_case_sl25_is_ns1():
    rep = ac_nonsolvable_case(sl2(5))
    assert rep.case == "NS1"
    assert rep.all_matches == ("NS1",)
    assert rep.witnesses["NS1"]["parameter"] == 5
    assert rep.omega == 31
    assert rep.solvable is False and rep.nilpotent is False


def test_case_sl27_is_ns1():
    rep = ac_nonsolvable_case(sl2(7))
    assert rep.case == "NS1"
    assert rep.witnesses["NS1"]["parameter"] == 7


def test_case_gl25_is_ns2():
    rep = ac_nonsolvable_case(gl2(5))
    assert rep.case == "NS2"
    assert rep.all_matches == ("NS2",)
    assert rep.witnesses["NS2"]["parameter"] == 5


@pytest.mark.parametrize("make", [lambda: sl2(4), lambda: gl2(4)])
def test_case_even_q_collapses_to_ns2(make):
    rep = ac_nonsolvable_case(make())
    assert rep.case == "NS2"
    assert rep.all_matches == ("NS1", "NS2")
    assert rep.witnesses["NS1"]["parameter"] == 4
    assert any("coincide" in n for n in rep.notes)


def test_case_a5_identified_with_parameter_4():
    rep = ac_nonsolvable_case(alternating(5))
    assert rep.case == "NS2"
    assert rep.witnesses["NS2"]["parameter"] == 4


def test_case_central_factor_keeps_parameter():
    rep = ac_nonsolvable_case(direct_product(cyclic(3), sl2(5)))
    assert rep.case == "NS1"
    assert rep.witnesses["NS1"]["parameter"] == 5


def test_nonsolvable_errors():
    with pytest.raises(ValueError, match="solvable"):
        ac_nonsolvable_case(sl2(3))
    with pytest.raises(ValueError, match="not an AC-group"):
        ac_nonsolvable_case(symmetric(5))


# -- rival scans ---------------------------------------------------------------


def test_rival_scan_order6():
    scan = rival_scan(6, build_graph(symmetric(3)), order6_catalog())
    assert scan.matches == ("S3",)
    labels = {e.label: e for e in scan.entries}
    assert labels["C6"].nonabelian is False


def test_rival_scan_order24_sl23_unique():
    scan = rival_scan(24, build_graph(sl2(3)), order24_catalog())
    assert scan.matches == ("SL(2,3)",)


def test_rival_scan_order24_c2a4_unique():
    target = build_graph(direct_product(cyclic(2), alternating(4)))
    scan = rival_scan(24, target, order24_catalog())
    assert scan.matches == ("C2xA4",)


def test_rival_scan_order24_d24_three_way_tie():
    # the three metacyclic-ish rivals share one graph
    scan = rival_scan(24, build_graph(dihedral(24)), order24_catalog())
    assert set(scan.matches) == {"D24", "Dic24", "semidirect(C3,D8,x^-1,x)"}


def test_rival_scan_order_mismatch():
    with pytest.raises(ValueError, match="order mismatch"):
        rival_scan(6, build_graph(symmetric(3)), order24_catalog())


def test_rival_scan_json():
    scan = rival_scan(6, build_graph(symmetric(3)), order6_catalog())
    blob = json.loads(json.dumps(scan.to_json()))
    assert blob["matches"] == ["S3"]
    assert len(blob["entries"]) == 2


# -- prime power incompatibility -------------------------------------------------


def test_prime_power_incompatibility_range():
    for q in range(4, 101):
        assert prime_power_incompatibility(q), q


def test_prime_power_incompatibility_fails_at_3():
    # 2 and 4 are both powers of 2
    assert prime_power_incompatibility(3) is False


# -- verification pipelines ------------------------------------------------------


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_verify_sl_verdicts(q):
    rep = verify_theorem_sl(q)
    assert rep.verdict is True
    failed = [a.name for a in rep.assertions if not a.passed]
    assert failed == []


def test_verify_sl_base_case_content():
    rep = verify_theorem_sl(3)
    names = [a.name for a in rep.assertions]
    assert "rival_scan_matches" in names
    assert "quotient_alternating_4" in names
    assert rep.data["rival_scan"]["matches"] == ["SL(2,3)"]


def test_verify_sl_ns1_parameter():
    rep = verify_theorem_sl(5)
    got = {a.name: a for a in rep.assertions}
    assert got["case_parameter"].computed == 5
    assert got["nonsolvable_case"].computed == "NS1"


def test_verify_sl_even_route():
    rep = verify_theorem_sl(8)
    got = {a.name: a for a in rep.assertions}
    assert got["psl_route"].passed


def test_verify_sl_rejects_bad_q():
    with pytest.raises(ValueError, match="q must be one of"):
        verify_theorem_sl(6)
    with pytest.raises(ValueError, match="q must be one of"):
        verify_theorem_sl(11)


@pytest.mark.parametrize("q", [4, 5, 7])
def test_verify_gl_verdicts(q):
    rep = verify_theorem_gl(q)
    assert rep.verdict is True
    failed = [a.name for a in rep.assertions if not a.passed]
    assert failed == []


def test_verify_gl_direct_product_clause():
    # GL(2,q) = SL(2,q) x Z only in characteristic 2
    even = {a.name: a for a in verify_theorem_gl(4).assertions}
    odd = {a.name: a for a in verify_theorem_gl(5).assertions}
    clause = "splits_as_derived_times_center"
    assert even[clause].expected is True and even[clause].computed is True
    assert odd[clause].expected is False and odd[clause].computed is False


def test_verify_gl_reduced_profile():
    rep = verify_theorem_gl(8)
    assert rep.verdict is True
    names = [a.name for a in rep.assertions]
    assert "quotient_projective" not in names
    assert any("reduced" in n for n in rep.notes)


def test_verify_gl_rejects_bad_q():
    with pytest.raises(ValueError, match="q must be one of"):
        verify_theorem_gl(3)


def test_verify_report_json_schema():
    rep = verify_theorem_sl(4)
    blob = json.loads(json.dumps(rep.to_json(), sort_keys=True))
    assert blob["verdict"] is True
    assert {"name", "expected", "computed", "pass"} <= set(blob["assertions"][0])
    assert blob["subject"] == "SL(2,4)"
