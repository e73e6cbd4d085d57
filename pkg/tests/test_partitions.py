import pytest

from sipverify.partitions import (
    CapExceeded,
    FerrersError,
    Partition,
    PartitionError,
    WeightMap,
    check_overlines,
    enumerate_overpartitions_strict,
    enumerate_partitions,
    ferrers_compose,
    ferrers_decompose,
    iter_partitions,
    iter_strict_partitions,
    oracle_series,
    parse_partition,
    partition_count,
    partition_str,
    stats_of,
)
from sipverify.series import MultiCoeff, VarSet
from sipverify.sip import get_class


def parts(ps):
    return [p.parts for p in ps]


# ---------------------------------------------------------------------------
# Partition type and serialization
# ---------------------------------------------------------------------------

def test_partition_validation():
    with pytest.raises(PartitionError):
        Partition((3, 4))
    with pytest.raises(PartitionError):
        Partition((3, 0))
    with pytest.raises(PartitionError):
        Partition((3, 1), (True,))


def test_partition_string_roundtrip():
    p = Partition((7, 4, 1), (True, False, False))
    assert partition_str(p) == "7~,4,1"
    assert parse_partition("7~,4,1") == p
    assert parse_partition("  7 ~ , 4 , 1 ") == p
    assert parse_partition("") == Partition(())
    with pytest.raises(PartitionError):
        parse_partition("3,,1")


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def test_enumerate_zero():
    assert parts(enumerate_partitions(0)) == [()]


def test_enumerate_four_reverse_lex():
    assert parts(enumerate_partitions(4)) == [
        (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


def test_enumerate_ten_count():
    assert len(enumerate_partitions(10)) == 42
    assert partition_count(10) == 42


def test_counts_match_pentagonal_recurrence_up_to_60():
    for n in range(61):
        assert sum(1 for _ in iter_partitions(n)) == partition_count(n), n


def test_cap_is_enforced_and_configurable(monkeypatch):
    with pytest.raises(CapExceeded):
        enumerate_partitions(61)
    assert enumerate_partitions(61, cap=61)  # explicit override
    monkeypatch.setenv("SIPVERIFY_CAP", "62")
    assert enumerate_partitions(62)
    monkeypatch.setenv("SIPVERIFY_CAP", "10")
    with pytest.raises(CapExceeded):
        enumerate_partitions(11)


def test_strict_partitions_distinct_and_complete():
    for n in range(0, 25):
        seen = list(iter_strict_partitions(n))
        assert len(set(seen)) == len(seen)
        for t in seen:
            assert all(t[i] > t[i + 1] for i in range(len(t) - 1))
        # partitions into distinct parts match odd-part partitions (Euler)
        odd_count = sum(1 for t in iter_partitions(n) if all(v % 2 for v in t))
        assert len(seen) == odd_count, n


def test_overpartitions_small_cases():
    assert [partition_str(p) for p in enumerate_overpartitions_strict(1)] == ["1"]
    assert [partition_str(p) for p in enumerate_overpartitions_strict(2)] == ["2", "2~"]
    assert [partition_str(p) for p in enumerate_overpartitions_strict(3)] == [
        "3", "3~", "2,1"]


def test_overline_legality_checker():
    assert check_overlines((3, 1), (True, False)) is None
    assert check_overlines((1,), (True,)) is not None
    assert check_overlines((3, 2), (True, False)) is not None
    assert check_overlines((3, 2), (False, True)) is None  # 2 is last and >= 2


# ---------------------------------------------------------------------------
# Statistics
# ---------------------------------------------------------------------------

def test_stats_of_small():
    st = stats_of(Partition((3, 1)))
    assert (st.length, st.odd_parts, st.even_parts) == (2, 2, 0)
    assert (st.odd_indexed_sum, st.even_indexed_sum, st.alt_sum) == (3, 1, 2)


def test_stats_of_empty():
    st = stats_of(Partition(()))
    assert all(v == 0 for v in st.__dict__.values())


def test_stats_of_worked_example():
    st = stats_of(Partition((12, 9, 5, 1)))
    assert st.weight == 27
    assert (st.odd_parts, st.even_parts) == (3, 1)
    assert (st.odd_indexed_sum, st.even_indexed_sum, st.alt_sum) == (17, 10, 7)


def test_alt_sum_parity_invariant():
    for n in range(0, 26):
        for t in iter_strict_partitions(n):
            st = stats_of(Partition(t))
            assert st.alt_sum >= 0
            assert (st.alt_sum - st.weight) % 2 == 0


# ---------------------------------------------------------------------------
# Oracle series
# ---------------------------------------------------------------------------

def test_oracle_p4_counts():
    s = oracle_series(get_class("p4"), WeightMap.make(), 5)
    assert [s.coefficient(k).constant_value() for k in range(1, 6)] == [1, 1, 0, 1, 2]


def test_oracle_sbar_counts():
    s = oracle_series(get_class("sbar"), WeightMap.make(), 3)
    assert [s.coefficient(k).constant_value() for k in range(1, 4)] == [1, 2, 3]


def test_oracle_odd_length_tracking():
    w = WeightMap.make(z="length")
    s = oracle_series(get_class("odd"), w, 3)
    expect = (MultiCoeff.monomial(w.vars, 1, {"z": 3})
              + MultiCoeff.monomial(w.vars, 1, {"z": 1}))
    assert s.coefficient(3) == expect


def test_oracle_respects_cap():
    with pytest.raises(CapExceeded):
        oracle_series(get_class("odd"), WeightMap.make(), 10, cap=5)


def test_weight_map_rejects_unknown_statistic():
    with pytest.raises(PartitionError):
        WeightMap.make(z="number_of_cats")


# ---------------------------------------------------------------------------
# The mod-2 Ferrers bijection
# ---------------------------------------------------------------------------

def test_ferrers_worked_example():
    n, right, below = ferrers_decompose(Partition((15, 11, 7, 5, 1)))
    assert n == 3
    assert right.parts == (8, 4)
    assert below.parts == (5, 1)
    assert 3 * 7 + right.weight + below.weight == 39


def test_ferrers_single_one():
    n, right, below = ferrers_decompose(Partition((1,)))
    assert (n, right.parts, below.parts) == (0, (), (1,))


def test_ferrers_three_one_roundtrip():
    p = Partition((3, 1))
    n, right, below = ferrers_decompose(p)
    assert n == 1
    assert ferrers_compose(n, right, below) == p


def test_ferrers_empty():
    assert ferrers_compose(0, Partition(()), Partition(())) == Partition(())


def test_ferrers_rejects_even_parts():
    with pytest.raises(FerrersError):
        ferrers_decompose(Partition((4, 1)))


def test_ferrers_compose_validates_maximality():
    with pytest.raises(FerrersError):
        ferrers_compose(1, Partition(()), Partition((5,)))  # 5 > 2n+1
    with pytest.raises(FerrersError):
        ferrers_compose(1, Partition((2, 2)), Partition(()))  # too many right rows
    with pytest.raises(FerrersError):
        ferrers_compose(2, Partition((3,)), Partition(()))  # odd right part


def test_ferrers_roundtrip_up_to_40():
    odd = get_class("odd")
    checked = 0
    for w in range(41):
        for t in iter_partitions(w):
            if not all(v % 2 for v in t):
                continue
            p = Partition(t)
            n, right, below = ferrers_decompose(p)
            assert n * (2 * n + 1) + right.weight + below.weight == p.weight
            assert ferrers_compose(n, right, below) == p
            checked += 1
    assert checked > 1000


def test_ferrers_compose_then_decompose_up_to_40():
    # every valid (n, right, below) triple with total weight <= 40 round-trips
    total_checked = 0
    for n in range(0, 5):
        base = n * (2 * n + 1)
        if base > 40:
            break
        budget = 40 - base
        rights = [()] + [t for w in range(1, budget + 1) for t in iter_partitions(w)
                         if len(t) <= n and all(v % 2 == 0 for v in t)]
        for right in rights:
            rw = sum(right)
            belows = [()] + [t for w in range(1, budget - rw + 1)
                             for t in iter_partitions(w)
                             if all(v % 2 and v <= 2 * n + 1 for v in t)]
            for below in belows:
                triple = (n, Partition(right), Partition(below))
                p = ferrers_compose(*triple)
                assert ferrers_decompose(p) == triple
                total_checked += 1
    assert total_checked > 2000
