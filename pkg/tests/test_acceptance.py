"""Acceptance suite: every criterion runs at its stated bound with exact
integer equality (tolerance zero) and prints one pass/fail line."""

import dataclasses

from sipverify import cli, identities as I, sip
from sipverify.partitions import (
    Partition,
    WeightMap,
    class_members,
    ferrers_compose,
    ferrers_decompose,
    oracle_series,
    signed_length_series,
)
from sipverify.series import MultiCoeff, series_equal
from sipverify.sip import (
    basis_poly_closed,
    basis_poly_enumerated,
    basis_poly_recurrence,
    get_class,
    sip_decompose,
    verify_sip_property,
)


def _report(num: int, desc: str, ok: bool) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {desc}")
    assert ok, f"criterion {num} failed: {desc}"


def test_criterion_1_full_catalog_order_60(capsys):
    rc = cli.main(["verify", "--all", "--order", "60"])
    out = capsys.readouterr().out
    ok = rc == 0 and out.count("MATCH") == len(I.CATALOG) and "MISMATCH" not in out
    with capsys.disabled():
        _report(1, "verify --all --order 60 exits 0 with every entry MATCH", ok)


def test_criterion_2_oracle_equivalence(capsys):
    theorem_entries = ["p4-gen", "p4-gen-e", "p4-gen-o", "sbar-gen",
                       "g-gen", "gprime-gen", "gxy-gen", "gpxy-gen"]
    results = {iid: I.oracle_crosscheck(iid, 40).matched for iid in theorem_entries}
    ok = all(results.values())
    with capsys.disabled():
        _report(2, "enumeration agrees with every generating-function theorem "
                   f"through weight 40 in full symbolic weight ({sorted(results)})", ok)


def test_criterion_3_basis_three_way(capsys):
    ok = True
    for cid in ("p4", "sbar", "g", "gprime"):
        for n in range(0, 11):
            for h in range(0, 4 * n + 8):
                e = basis_poly_enumerated(cid, n, h)
                r = basis_poly_recurrence(cid, n, h)
                c = basis_poly_closed(cid, n, h)
                if not (e == r == c):
                    ok = False
    V = get_class("p4").poly_vars
    mono = MultiCoeff.monomial(V, 1, {"y": 1, "q": 1, "x": -1})
    for n in range(1, 11):
        for h in range(1, 2 * n + 12):
            if basis_poly_recurrence("p4", n, 2 * h) != mono * basis_poly_recurrence("p4", n, 2 * h - 1):
                ok = False
    with capsys.disabled():
        _report(3, "basis enumeration = recurrence = closed form for n <= 10, "
                   "including the Laurent relation between even and odd columns", ok)


def test_criterion_4_sip_audit(capsys):
    ok = True
    for cid in ("gg-A", "p4", "sbar", "g", "gprime"):
        report = verify_sip_property(cid, 40)
        if not report.ok:
            ok = False
    b, pi = sip_decompose("gg-A", Partition.of(12, 9, 5, 1))
    ok = ok and b.parts == (8, 5, 3, 1) and pi == (4, 4, 2, 0)
    with capsys.disabled():
        _report(4, "zero SIP violations up to weight 40 for the five audited "
                   "classes, and 12,9,5,1 -> 8,5,3,1 + 4,4,2,0", ok)


def test_criterion_5_bijection_audit(capsys):
    odd = get_class("odd")
    ok = True
    for w in range(51):
        for p in class_members(odd, w, cap=51):
            n, right, below = ferrers_decompose(p)
            if ferrers_compose(n, right, below) != p:
                ok = False
            if n * (2 * n + 1) + right.weight + below.weight != p.weight:
                ok = False
    n, _, _ = ferrers_decompose(Partition.of(15, 11, 7, 5, 1))
    ok = ok and n == 3
    with capsys.disabled():
        _report(5, "mod-2 Ferrers maps are mutually inverse with the weight "
                   "identity up to 50, and 15,11,7,5,1 gives n = 3", ok)


def test_criterion_6_closing_theorem(capsys):
    lhs = signed_length_series(get_class("p4"), 40)
    rhs = signed_length_series(get_class("s4"), 40)
    ok = series_equal(lhs, rhs).matched
    with capsys.disabled():
        _report(6, "signed counts agree for every n <= 40 by direct enumeration", ok)


def test_criterion_7_documented_discrepancy_pins(capsys):
    z = lambda k, c=1: MultiCoeff.monomial(I.VZ, c, {"z": k})
    xm = lambda k, c=1: MultiCoeff.monomial(I.VXY, c, {"x": k})

    rep = series_equal(oracle_series(get_class("gprime"), I.W_ALT, 12),
                       I.gprime_series_zq(12, cubic_exponent=False))
    pin1 = (rep.status == "MISMATCH" and rep.q_exponent == 3
            and rep.lhs == z(3) and rep.rhs == z(1))
    fixed1 = series_equal(oracle_series(get_class("gprime"), I.W_ALT, 12),
                          I.gprime_series_zq(12, cubic_exponent=True)).matched

    rep_g = series_equal(oracle_series(get_class("g"), I.W_POSXY, 10),
                         I.g_series_xy(10, literal_sign=True))
    pin2 = (rep_g.status == "MISMATCH" and rep_g.q_exponent == 2
            and rep_g.rhs == xm(2, -1))
    rep_gp = series_equal(oracle_series(get_class("gprime"), I.W_POSXY, 10),
                          I.gprime_series_xy(10, literal_sign=True))
    pin3 = (rep_gp.status == "MISMATCH" and rep_gp.q_exponent == 4
            and rep_gp.rhs == xm(4, -1))
    fixed2 = series_equal(oracle_series(get_class("g"), I.W_POSXY, 10),
                          I.g_series_xy(10, literal_sign=False)).matched
    fixed3 = series_equal(oracle_series(get_class("gprime"), I.W_POSXY, 10),
                          I.gprime_series_xy(10, literal_sign=False)).matched

    ok = pin1 and fixed1 and pin2 and pin3 and fixed2 and fixed3
    with capsys.disabled():
        _report(7, "literal z^n form mismatches at q^3 (z vs z^3) and the "
                   "literal sign form goes negative, while the corrected forms "
                   "match the enumeration", ok)


def test_criterion_8_hand_verified_small_coefficients(capsys):
    # enumeration side
    s = oracle_series(get_class("p4"), WeightMap.make(), 5)
    counts_oracle = [s.coefficient(k).constant_value() for k in range(1, 6)]
    s2 = oracle_series(get_class("sbar"), WeightMap.make(), 3)
    sbar_oracle = [s2.coefficient(k).constant_value() for k in range(1, 4)]
    s3 = oracle_series(get_class("odd"), I.W_LEN, 3)
    z = lambda k: MultiCoeff.monomial(I.VZ, 1, {"z": k})
    odd_oracle = s3.coefficient(3) == z(3) + z(1)

    # closed-form side
    from sipverify.series import series_project, series_substitute
    gen = series_project(
        series_substitute(series_substitute(I.p4_gen_sum(5), "x", 1), "y", 1), I.V0)
    counts_closed = [gen.coefficient(k).constant_value() for k in range(1, 6)]
    sb = series_project(
        series_substitute(series_substitute(I.sbar_gen_sum(3), "a", 1), "z", 1), I.V0)
    sbar_closed = [sb.coefficient(k).constant_value() for k in range(1, 4)]
    po = I.partition_odd_sum(3)
    odd_closed = po.coefficient(3) == z(3) + z(1)

    ok = (counts_oracle == counts_closed == [1, 1, 0, 1, 2]
          and sbar_oracle == sbar_closed == [1, 2, 3]
          and odd_oracle and odd_closed)
    with capsys.disabled():
        _report(8, "hand-checked coefficients (1,1,0,1,2; 1,2,3; z^3 + z) agree "
                   "with both the enumeration and the closed forms", ok)


def test_criterion_9_deterministic_json(capsys):
    argv = ["verify", "--all", "--order", "40", "--format", "json"]
    rc1 = cli.main(argv)
    out1 = capsys.readouterr().out
    rc2 = cli.main(argv)
    out2 = capsys.readouterr().out
    ok = rc1 == rc2 == 0 and out1.encode() == out2.encode() and len(out1) > 0
    with capsys.disabled():
        _report(9, "two consecutive runs of verify --all --order 40 --format "
                   "json are byte-identical", ok)
