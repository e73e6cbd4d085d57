import dataclasses

import pytest

from sipverify.partitions import Partition, class_members, iter_partitions, parse_partition
from sipverify.series import MultiCoeff
from sipverify import sip
from sipverify.sip import (
    BasisUndefined,
    DecompositionError,
    NotAMember,
    SIPClassSpec,
    basis_poly_closed,
    basis_poly_enumerated,
    basis_poly_recurrence,
    class_member,
    enumerate_basis,
    get_class,
    sip_decompose,
    sip_recompose,
    verify_sip_property,
)

P = Partition.of


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def test_class_member_examples():
    assert class_member("p4", P(4, 1))
    assert not class_member("p4", P(3, 2))
    assert class_member("gg-A", P(12, 9, 5, 1))


def test_unknown_class_rejected():
    with pytest.raises(sip.UnknownClass):
        class_member("no-such", P(1))


def test_explanations_agree_with_membership():
    # explain() returning None must coincide with member() for every class
    for cid in sip.class_ids():
        spec = get_class(cid)
        for w in range(0, 15):
            if spec.kind == "overpartition":
                from sipverify.partitions import iter_overpartitions_strict
                cands = [Partition(t, o) for t, o in iter_overpartitions_strict(w)]
            else:
                cands = [Partition(t) for t in iter_partitions(w)]
            for p in cands:
                assert (spec.explain(p) is None) == spec.member(p), (cid, p)


def test_gprime_allows_equal_parts_at_even_positions():
    assert class_member("gprime", P(6, 3, 3))
    assert not class_member("gprime", P(6, 4, 4))  # gap at position 1 is 2 < 3
    assert class_member("gprime", P(7, 4, 4))      # equal parts across positions 2, 3


def test_g_membership_details():
    assert class_member("g", P(3, 2))
    assert not class_member("g", P(2, 1))   # even-indexed smallest must be even
    assert not class_member("g", P(3, 2, 1))  # even gap rule at position 2
    assert class_member("g", P(2,))


# ---------------------------------------------------------------------------
# Basis enumeration
# ---------------------------------------------------------------------------

def test_basis_initial_values():
    assert [b.parts for b in enumerate_basis("p4", 1, 10)] == [(1,), (2,)]
    sb = enumerate_basis("sbar", 1, 10)
    assert [(b.parts, b.overlines) for b in sb] == [((1,), (False,)), ((2,), (True,))]
    assert [b.parts for b in enumerate_basis("gprime", 1, 10)] == [(3,), (4,)]
    assert [b.parts for b in enumerate_basis("g", 1, 10)] == [(1,), (2,)]


def test_basis_respects_h_max():
    assert [b.parts for b in enumerate_basis("p4", 1, 1)] == [(1,)]
    assert enumerate_basis("p4", 2, 2) == []


def test_basis_generator_agrees_with_predicate():
    # generated basis == partitions satisfying the basis rule, for small weights
    from sipverify.partitions import iter_overpartitions_strict
    for cid in ("gg-A", "p4", "p4e", "p4o", "sbar", "g", "gprime", "odd"):
        spec = get_class(cid)
        by_rule = set()
        for w in range(0, 15):
            if spec.kind == "overpartition":
                cands = [Partition(t, o) for t, o in iter_overpartitions_strict(w)]
            else:
                cands = [Partition(t) for t in iter_partitions(w)]
            for p in cands:
                if spec.basis_member(p) and spec.member(p):
                    by_rule.add((p.parts, p.overlines))
        generated = set()
        for n in range(0, 15):
            for b in sip._basis_partitions(spec, n, 14, weight_max=14):
                if b.weight <= 14:
                    generated.add((b.parts, b.overlines))
                    assert spec.basis_member(b), (cid, b)
                    assert spec.member(b), (cid, b)  # basis_member implies member
        assert generated == by_rule, cid


def test_basis_undefined_for_s4():
    with pytest.raises(BasisUndefined):
        enumerate_basis("s4", 1, 5)


# ---------------------------------------------------------------------------
# Decomposition
# ---------------------------------------------------------------------------

def test_decompose_worked_example():
    b, pi = sip_decompose("gg-A", P(12, 9, 5, 1))
    assert b.parts == (8, 5, 3, 1)
    assert pi == (4, 4, 2, 0)


def test_decompose_basis_is_fixed_point():
    for cid in ("gg-A", "p4", "sbar", "g", "gprime"):
        for n in range(0, 4):
            for b in enumerate_basis(cid, n, 12):
                bb, pi = sip_decompose(cid, b)
                assert bb == b and all(d == 0 for d in pi)


def test_decompose_p4_singleton():
    b, pi = sip_decompose("p4", P(5))
    assert b.parts == (1,) and pi == (4,)


def test_decompose_rejects_non_member():
    with pytest.raises(NotAMember) as exc:
        sip_decompose("p4", P(3, 2))
    assert "rule (3)" in exc.value.explanation


def test_decompose_preserves_overlines():
    b, pi = sip_decompose("sbar", parse_partition("4~,1"))
    assert (b.parts, b.overlines) == ((3, 1), (True, False))
    assert pi == (1, 0)


def test_recompose_inverts():
    assert sip_recompose("gg-A", P(8, 5, 3, 1), (4, 4, 2, 0)) == P(12, 9, 5, 1)
    b = P(3, 1)
    assert sip_recompose("p4", b, (0, 0)) == b


def test_recompose_validates_pi():
    with pytest.raises(DecompositionError):
        sip_recompose("p4", P(3, 1), (2, 0))   # not a multiple of 4
    with pytest.raises(DecompositionError):
        sip_recompose("p4", P(3, 1), (0, 4))   # not weakly decreasing
    with pytest.raises(NotAMember):
        sip_recompose("p4", P(5, 1), (0, 0))   # (5,1) is not in the basis


def test_roundtrip_all_p4_members_up_to_30():
    spec = get_class("p4")
    for w in range(31):
        for p in class_members(spec, w):
            b, pi = sip_decompose("p4", p)
            assert sip_recompose("p4", b, pi) == p


def test_p4_is_disjoint_union_of_parity_classes():
    p4, p4e, p4o = get_class("p4"), get_class("p4e"), get_class("p4o")
    for w in range(41):
        whole = set(class_members(p4, w))
        even = set(class_members(p4e, w))
        odd = set(class_members(p4o, w))
        assert even | odd == whole
        assert not (even & odd)


# ---------------------------------------------------------------------------
# Basis polynomials
# ---------------------------------------------------------------------------

def _m(cid, **powers):
    return MultiCoeff.monomial(get_class(cid).poly_vars, 1, powers)


def test_basis_poly_initial_values():
    assert basis_poly_recurrence("p4", 1, 1) == _m("p4", x=1, q=1)
    assert basis_poly_recurrence("p4", 1, 2) == _m("p4", y=1, q=2)
    assert basis_poly_recurrence("p4", 1, 3).is_zero
    assert basis_poly_recurrence("g", 1, 2) == _m("g", x=2)
    assert basis_poly_recurrence("sbar", 1, 2) == _m("sbar", a=1, z=1, q=2)
    assert basis_poly_recurrence("gprime", 1, 3) == _m("gprime", x=3)


def test_basis_poly_closed_examples():
    assert basis_poly_closed("p4", 1, 2 * 1 + 2 * 0 - 1) == _m("p4", x=1, q=1)
    assert basis_poly_closed("sbar", 3, 3 + 4).is_zero  # h > n kills the binomial
    assert basis_poly_closed("p4", 2, 1).is_zero


def test_closed_equals_recurrence_everywhere():
    for cid in ("p4", "sbar", "g", "gprime"):
        for n in range(0, 13):
            for h in range(0, 4 * n + 8):
                assert (basis_poly_closed(cid, n, h)
                        == basis_poly_recurrence(cid, n, h)), (cid, n, h)


def test_three_way_agreement_small():
    for cid in ("p4", "sbar", "g", "gprime"):
        for n in range(0, 7):
            for h in range(0, 4 * n + 6):
                e = basis_poly_enumerated(cid, n, h)
                r = basis_poly_recurrence(cid, n, h)
                assert e == r, (cid, n, h, e.text(), r.text())


def test_b4_even_odd_monomial_relation():
    V = get_class("p4").poly_vars
    mono = MultiCoeff.monomial(V, 1, {"y": 1, "q": 1, "x": -1})
    for n in range(1, 9):
        for h in range(1, 2 * n + 10):
            assert (basis_poly_recurrence("p4", n, 2 * h)
                    == mono * basis_poly_recurrence("p4", n, 2 * h - 1))


def test_basis_poly_rejects_classes_without_polynomials():
    with pytest.raises(BasisUndefined):
        basis_poly_recurrence("gg-A", 1, 1)


# ---------------------------------------------------------------------------
# SIP property audit
# ---------------------------------------------------------------------------

def test_audit_clean_classes():
    for cid in ("gg-A", "p4"):
        report = verify_sip_property(cid, 30)
        assert report.ok, report.violations
        assert report.members_checked > 0
        assert report.recompositions_checked > 0


def test_audit_detects_corrupted_basis():
    # weaken the smallest-part rule: junk smallest parts make decompositions
    # non-unique, which the audit must flag
    clean = get_class("p4")
    corrupt = dataclasses.replace(
        clean, id="p4-corrupt",
        basis_last=lambda n: [(1, False), (2, False), (5, False), (6, False)])
    report = verify_sip_property(corrupt, 20)
    assert not report.ok
    assert any("decomposition" in v for v in report.violations)
