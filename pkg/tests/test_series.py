import random

import pytest
from hypothesis import given, settings, strategies as st

from sipverify.series import (
    EMPTY_VARS,
    INFINITE,
    MultiCoeff,
    NonUnitLeadingCoefficient,
    PochSpec,
    QSeries,
    SubstitutionError,
    VarSet,
    VarSetMismatch,
    pochhammer,
    q_binomial,
    qs_const,
    qs_from_orders,
    qs_monomial,
    qs_one,
    qs_zero,
    series_add,
    series_equal,
    series_inverse,
    series_mul,
    series_mul_monomial,
    series_negate_q,
    series_scale_q,
    series_shift_q,
    series_substitute,
    series_truncate,
    triple_product,
)

V0 = EMPTY_VARS
VX = VarSet("x")
VZ = VarSet("z")
VXY = VarSet("x", "y")
VXZ = VarSet("x", "z")


def qs(vars, entries, N, min_order=0):
    """Series from {order: {powers-dict-or-int}} literals."""
    coeffs = {}
    for k, spec in entries.items():
        if isinstance(spec, int):
            coeffs[k] = MultiCoeff.const(vars, spec)
        else:
            mc = MultiCoeff(vars)
            for powers, c in spec.items():
                mc = mc + MultiCoeff.monomial(vars, c, dict(powers))
            coeffs[k] = mc
    return QSeries(vars, coeffs, N, min_order)


def eq(a, b):
    return series_equal(a, b).matched


# ---------------------------------------------------------------------------
# Addition, multiplication, inversion: the worked examples
# ---------------------------------------------------------------------------

def test_add_small_literals():
    a = qs(V0, {0: 1, 1: 1}, 8)
    b = qs(V0, {1: 1}, 8)
    assert eq(series_add(a, b), qs(V0, {0: 1, 1: 2}, 8))


def test_add_zero_is_identity():
    s = qs(V0, {0: 1, 3: -2, 5: 7}, 9)
    assert eq(series_add(s, qs_zero(V0, 9)), s)


def test_add_distinct_monomials_coexist():
    a = qs(VXY, {1: {(("x", 1),): 1}}, 5)
    b = qs(VXY, {1: {(("y", 1),): 1}}, 5)
    total = series_add(a, b)
    assert total.coefficient(1) == (MultiCoeff.monomial(VXY, 1, {"x": 1})
                                    + MultiCoeff.monomial(VXY, 1, {"y": 1}))


def test_add_requires_same_vars():
    with pytest.raises(VarSetMismatch):
        series_add(qs_one(VX, 4), qs_one(VZ, 4))


def test_mul_difference_of_squares():
    a = qs(V0, {0: 1, 1: 1}, 4)
    b = qs(V0, {0: 1, 1: -1}, 4)
    assert eq(series_mul(a, b), qs(V0, {0: 1, 2: -1}, 4))


def test_mul_one_is_identity():
    s = qs(VX, {0: 1, 2: {(("x", 2),): 3}, 4: -1}, 7)
    assert eq(series_mul(s, qs_one(VX, 7)), s)


def test_mul_bivariate_product():
    # (1 + xq)(1 + xq^3) = 1 + xq + xq^3 + x^2 q^4
    a = qs(VX, {0: 1, 1: {(("x", 1),): 1}}, 4)
    b = qs(VX, {0: 1, 3: {(("x", 1),): 1}}, 4)
    expect = qs(VX, {0: 1, 1: {(("x", 1),): 1}, 3: {(("x", 1),): 1},
                     4: {(("x", 2),): 1}}, 4)
    assert eq(series_mul(a, b), expect)


def test_mul_truncates_to_common_order():
    a = qs(V0, {0: 1, 1: 1}, 10)
    b = qs(V0, {0: 1}, 4)
    assert series_mul(a, b).max_order == 4


def test_inverse_geometric():
    a = qs(V0, {0: 1, 1: -1}, 3)
    assert eq(series_inverse(a), qs(V0, {0: 1, 1: 1, 2: 1, 3: 1}, 3))


def test_inverse_of_one():
    assert eq(series_inverse(qs_one(V0, 6)), qs_one(V0, 6))


def test_inverse_geometric_in_zq():
    a = qs(VZ, {0: 1, 1: {(("z", 1),): -1}}, 2)
    expect = qs(VZ, {0: 1, 1: {(("z", 1),): 1}, 2: {(("z", 2),): 1}}, 2)
    assert eq(series_inverse(a), expect)


def test_inverse_rejects_non_unit_leading():
    with pytest.raises(NonUnitLeadingCoefficient):
        series_inverse(qs_const(V0, 2, 5))
    with pytest.raises(NonUnitLeadingCoefficient):
        series_inverse(qs(VX, {0: {(("x", 1),): 1, ((("x", 0),)): 1}}, 5))


def test_shift_examples():
    s = qs(V0, {1: 1, 2: 1}, 6)
    shifted = series_shift_q(s, -1)
    assert eq(shifted, qs(V0, {0: 1, 1: 1}, 5, min_order=-1))
    assert shifted.min_order == -1
    assert eq(series_shift_q(s, 0), s)
    assert eq(series_shift_q(qs_one(V0, 5), 3), qs_monomial(V0, 8, 1, 3))


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def test_substitute_sign():
    s = qs(VX, {0: 1, 1: {(("x", 1),): 1}}, 6)
    out = series_substitute(s, "x", -1)
    assert eq(out, qs(VX, {0: 1, 1: -1}, 6))


def test_substitute_monomial_with_q_power():
    s = qs(VXZ, {4: {(("x", 2),): 1}}, 10)
    out = series_substitute(s, "x", 1, 1, {"z": 1})
    assert eq(out, qs(VXZ, {6: {(("z", 2),): 1}}, 10))


def test_substitute_rejects_negative_q_power():
    s = qs(VX, {0: 1}, 4)
    with pytest.raises(SubstitutionError):
        series_substitute(s, "x", 1, -1)


def test_substitute_rejects_uncertifiable_laurent():
    s = qs(VX, {0: {(("x", -1),): 1}}, 4)
    with pytest.raises(SubstitutionError):
        series_substitute(s, "x", 1, 1)  # x -> q with x^-1 present
    with pytest.raises(SubstitutionError):
        series_substitute(s, "x", 2)  # cannot divide by 2


def test_substitute_keeps_order_for_plain_specialization():
    s = qs(VX, {0: 1, 3: {(("x", 5),): 2}}, 7)
    assert series_substitute(s, "x", -1).max_order == 7


# ---------------------------------------------------------------------------
# Pochhammer, Gaussian binomial, triple product
# ---------------------------------------------------------------------------

def test_poch_qq_2():
    out = pochhammer(PochSpec.base(1, q=1, length=2), V0, 8)
    assert eq(out, qs(V0, {0: 1, 1: -1, 2: -1, 3: 1}, 8))


def test_poch_empty_product():
    out = pochhammer(PochSpec.base(1, q=0, length=0, a=1), VarSet("a"), 5)
    assert eq(out, qs_one(VarSet("a"), 5))


def test_poch_negative_base_step_two():
    out = pochhammer(PochSpec.base(-1, q=1, step=2, length=2), V0, 8)
    assert eq(out, qs(V0, {0: 1, 1: 1, 3: 1, 4: 1}, 8))


def test_poch_infinite_needs_positive_q_power():
    with pytest.raises(Exception):
        pochhammer(PochSpec.base(1, q=0, length=INFINITE, z=1), VZ, 5)


def test_poch_splitting_property():
    # (a;q)_(m+n) = (a;q)_m * (a q^m;q)_n for a in {x, -q, q^3}
    bases = [
        dict(coeff=1, q=0, powers={"x": 1}),
        dict(coeff=-1, q=1, powers={}),
        dict(coeff=1, q=3, powers={}),
    ]
    N = 30
    for base in bases:
        for m in range(0, 11):
            for n in range(0, 11):
                whole = pochhammer(
                    PochSpec.base(base["coeff"], q=base["q"], length=m + n, **base["powers"]),
                    VX, N)
                left = pochhammer(
                    PochSpec.base(base["coeff"], q=base["q"], length=m, **base["powers"]),
                    VX, N)
                right = pochhammer(
                    PochSpec.base(base["coeff"], q=base["q"] + m, length=n, **base["powers"]),
                    VX, N)
                assert eq(whole, series_mul(left, right)), (base, m, n)


def test_q_binomial_values():
    assert eq(q_binomial(2, 1, 6), qs(V0, {0: 1, 1: 1}, 6))
    for n in range(0, 8):
        assert eq(q_binomial(n, 0, 6), qs_one(V0, 6))
    assert eq(q_binomial(4, 2, 8), qs(V0, {0: 1, 1: 1, 2: 2, 3: 1, 4: 1}, 8))
    assert q_binomial(3, 5, 6).is_zero
    assert q_binomial(3, -1, 6).is_zero


def test_q_binomial_pascal_and_symmetry():
    N = 220  # beyond the largest degree m(n-m) for n <= 25
    for n in range(1, 26):
        for m in range(0, n + 1):
            b = q_binomial(n, m, N)
            first = series_add(q_binomial(n - 1, m, N),
                               series_mul_monomial(q_binomial(n - 1, m - 1, N - (n - m)),
                                                   1, n - m))
            second = series_add(q_binomial(n - 1, m - 1, N),
                                series_mul_monomial(q_binomial(n - 1, m, N - m), 1, m))
            assert eq(b, series_truncate(first, N)), (n, m)
            assert eq(b, series_truncate(second, N)), (n, m)
            assert eq(b, q_binomial(n, n - m, N)), (n, m)


def test_triple_product_low_orders():
    lhs, rhs = triple_product(6)
    assert lhs.coefficient(0).constant_value() == 1
    assert rhs.coefficient(0).constant_value() == 1
    zpm = MultiCoeff.monomial(VZ, 1, {"z": 1}) + MultiCoeff.monomial(VZ, 1, {"z": -1})
    assert lhs.coefficient(1) == zpm


def test_triple_product_matches_at_50():
    lhs, rhs = triple_product(50)
    assert eq(lhs, rhs)


# ---------------------------------------------------------------------------
# Equality reports
# ---------------------------------------------------------------------------

def test_equal_match():
    a = qs(V0, {0: 1, 1: 1}, 5)
    assert series_equal(a, qs(V0, {0: 1, 1: 1}, 5)).status == "MATCH"


def test_equal_mismatch_reports_first_exponent():
    a = qs(V0, {0: 1, 1: 1}, 5)
    b = qs(V0, {0: 1, 1: 2}, 5)
    rep = series_equal(a, b)
    assert rep.status == "MISMATCH"
    assert rep.q_exponent == 1
    assert rep.lhs.constant_value() == 1
    assert rep.rhs.constant_value() == 2


def test_equal_only_up_to_common_order():
    a = qs(V0, {0: 1, 9: 5}, 9)
    b = qs(V0, {0: 1}, 4)
    rep = series_equal(a, b)
    assert rep.status == "MATCH" and rep.order == 4


# ---------------------------------------------------------------------------
# Randomized ring properties
# ---------------------------------------------------------------------------

def _random_series(rng, vars=VXY, N=8, allow_negative_exps=True):
    coeffs = {}
    for _ in range(rng.randrange(0, 7)):
        k = rng.randrange(0, N + 1)
        lo = -2 if allow_negative_exps else 0
        e = tuple(rng.randrange(lo, 4) for _ in vars.names)
        coeffs.setdefault(k, {})[e] = rng.randrange(-9, 10) or 1
    return QSeries(vars, coeffs, N)


@st.composite
def _hyp_series(draw):
    coeffs = {}
    for _ in range(draw(st.integers(0, 5))):
        k = draw(st.integers(0, 8))
        e = (draw(st.integers(-2, 3)), draw(st.integers(-2, 3)))
        coeffs.setdefault(k, {})[e] = draw(st.integers(-9, 9).filter(bool))
    return QSeries(VXY, coeffs, 8)


@settings(max_examples=60, deadline=None)
@given(_hyp_series(), _hyp_series(), _hyp_series())
def test_ring_axioms(a, b, c):
    assert eq(series_add(a, b), series_add(b, a))
    assert eq(series_mul(a, b), series_mul(b, a))
    assert eq(series_mul(series_mul(a, b), c), series_mul(a, series_mul(b, c)))
    assert eq(series_mul(a, series_add(b, c)),
              series_add(series_mul(a, b), series_mul(a, c)))


def test_inverse_roundtrip_randomized():
    rng = random.Random(20240817)
    for trial in range(200):
        body = _random_series(rng, N=10)
        s = series_add(qs_one(VXY, 10), series_mul_monomial(body, 1, 1))
        s = series_truncate(s, 10)
        if trial % 5 == 0:  # unit monomial leading term, negative min_order
            s = series_mul_monomial(s, -1, -1, {"x": 1})
        inv = series_inverse(s)
        prod = series_mul(s, inv)
        assert eq(prod, qs_one(VXY, prod.max_order)), trial


def test_substitute_commutes_with_mul():
    rng = random.Random(7)
    for _ in range(120):
        a = _random_series(rng, VXZ, N=8, allow_negative_exps=False)
        b = _random_series(rng, VXZ, N=8, allow_negative_exps=False)
        coeff = rng.choice([-1, 1, 2])
        e = rng.choice([0, 1])
        powers = {"z": rng.randrange(0, 3)}
        lhs = series_substitute(series_mul(a, b), "x", coeff, e, powers)
        rhs = series_mul(series_substitute(a, "x", coeff, e, powers),
                         series_substitute(b, "x", coeff, e, powers))
        assert eq(lhs, rhs)


def test_scale_and_negate_q():
    s = qs(V0, {0: 1, 1: 2, 2: 3}, 2)
    doubled = series_scale_q(s, 2)
    assert doubled.max_order == 5
    assert eq(doubled, qs(V0, {0: 1, 2: 2, 4: 3}, 5))
    flipped = series_negate_q(qs(V0, {0: 1, 1: 2, 2: 3}, 2))
    assert eq(flipped, qs(V0, {0: 1, 1: -2, 2: 3}, 2))


def test_coefficient_beyond_order_raises():
    s = qs_one(V0, 5)
    with pytest.raises(Exception):
        s.coefficient(6)


def test_canonical_text():
    mc = (MultiCoeff.monomial(VXY, -3, {"x": 1, "y": -1})
          + MultiCoeff.const(VXY, 2)
          + MultiCoeff.monomial(VXY, 1, {"y": 2}))
    # canonical ordering is by exponent vector: (0,0) < (0,2) < (1,-1)
    assert mc.text() == "2 + y^2 - 3*x*y^-1"
    assert MultiCoeff(VXY).text() == "0"
