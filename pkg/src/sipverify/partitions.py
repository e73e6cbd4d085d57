"""Integer partitions, overpartitions, statistics, and enumeration oracles.

Everything here is deliberately brute force: partitions are generated
exhaustively and filtered by predicates, so the series this module
produces are independent evidence against the closed forms built in
:mod:`sipverify.identities`.  The mod-2 Ferrers bijection for partitions
into odd parts lives here as well.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from .series import EMPTY_VARS, MultiCoeff, QSeries, VarSet


DEFAULT_CAP = 60


class CapExceeded(ValueError):
    """A weight beyond the configured enumeration cap was requested."""


class PartitionError(ValueError):
    pass


def weight_cap() -> int:
    """Enumeration cap; the SIPVERIFY_CAP environment variable overrides it."""
    raw = os.environ.get("SIPVERIFY_CAP")
    if raw:
        try:
            cap = int(raw)
        except ValueError:
            raise CapExceeded(f"SIPVERIFY_CAP must be an integer, got {raw!r}") from None
        if cap < 0:
            raise CapExceeded("SIPVERIFY_CAP must be nonnegative")
        return cap
    return DEFAULT_CAP


def _check_cap(n: int, cap: int | None) -> None:
    limit = weight_cap() if cap is None else cap
    if n > limit:
        raise CapExceeded(f"weight {n} exceeds the cap {limit}")


@dataclass(frozen=True)
class Partition:
    """Weakly decreasing positive parts with optional per-part overlines."""

    parts: tuple[int, ...]
    overlines: tuple[bool, ...] = ()

    def __post_init__(self):
        parts = tuple(self.parts)
        overs = tuple(self.overlines) if self.overlines else (False,) * len(parts)
        if len(overs) != len(parts):
            raise PartitionError("overline flags must parallel the parts")
        for i, p in enumerate(parts):
            if p <= 0:
                raise PartitionError(f"parts must be positive, got {p}")
            if i and parts[i - 1] < p:
                raise PartitionError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "overlines", overs)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(tuple(parts))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return partition_str(self)


def partition_str(p: Partition) -> str:
    """CLI text form: comma-separated parts, a trailing ~ marking overlines."""
    return ",".join(f"{v}~" if o else str(v) for v, o in zip(p.parts, p.overlines))


def parse_partition(text: str) -> Partition:
    """Parse the CLI text form leniently (whitespace tolerated)."""
    text = text.strip()
    if not text:
        return Partition(())
    parts: list[int] = []
    overs: list[bool] = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            raise PartitionError(f"empty component in partition string {text!r}")
        over = tok.endswith("~")
        if over:
            tok = tok[:-1].strip()
        try:
            parts.append(int(tok))
        except ValueError:
            raise PartitionError(f"bad part {tok!r} in partition string") from None
        overs.append(over)
    return Partition(tuple(parts), tuple(overs))


@dataclass(frozen=True)
class PartitionStats:
    """The statistics used by the generating functions in this package."""

    length: int
    largest: int
    weight: int
    odd_parts: int
    even_parts: int
    overlined_count: int
    odd_indexed_sum: int
    even_indexed_sum: int
    alt_sum: int


STAT_NAMES = (
    "length", "largest", "weight", "odd_parts", "even_parts",
    "overlined_count", "odd_indexed_sum", "even_indexed_sum", "alt_sum",
)


def stats_of(p: Partition) -> PartitionStats:
    parts = p.parts
    odd_ix = sum(parts[0::2])
    even_ix = sum(parts[1::2])
    odd_parts = sum(1 for v in parts if v % 2)
    return PartitionStats(
        length=len(parts),
        largest=parts[0] if parts else 0,
        weight=odd_ix + even_ix,
        odd_parts=odd_parts,
        even_parts=len(parts) - odd_parts,
        overlined_count=sum(1 for o in p.overlines if o),
        odd_indexed_sum=odd_ix,
        even_indexed_sum=even_ix,
        alt_sum=odd_ix - even_ix,
    )


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def iter_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """All partitions of n as weakly decreasing tuples, reverse lexicographic."""
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    a = [n]
    while True:
        yield tuple(a)
        rem = 0
        j = len(a) - 1
        while j >= 0 and a[j] == 1:
            rem += 1
            j -= 1
        if j < 0:
            return
        a[j] -= 1
        rem += 1
        m = a[j]
        del a[j + 1:]
        while rem:
            t = m if m < rem else rem
            a.append(t)
            rem -= t


def iter_strict_partitions(n: int, bound: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n into distinct parts, reverse lexicographic."""
    if n == 0:
        yield ()
        return
    top = n if bound is None else min(bound, n)
    for first in range(top, 0, -1):
        if first * (first - 1) // 2 < n - first:
            break  # parts below `first` cannot carry the remainder
        for rest in iter_strict_partitions(n - first, first - 1):
            yield (first,) + rest


def enumerate_partitions(n: int, cap: int | None = None) -> list[Partition]:
    """All ordinary partitions of n, reverse lexicographic order."""
    if n < 0:
        raise PartitionError("weight must be nonnegative")
    _check_cap(n, cap)
    return [Partition(t) for t in iter_partitions(n)]


def overline_positions(parts: tuple[int, ...]) -> list[int]:
    """Indices that may carry an overline: part >= 2 and gap to the next >= 2."""
    out = []
    for i, v in enumerate(parts):
        if v >= 2 and (i == len(parts) - 1 or v - parts[i + 1] >= 2):
            out.append(i)
    return out


def check_overlines(parts: tuple[int, ...], overs: tuple[bool, ...]) -> str | None:
    """Re-validate overline legality; returns a violation message or None."""
    for i, o in enumerate(overs):
        if not o:
            continue
        v = parts[i]
        if v < 2:
            return f"part {v} cannot be overlined (parts below 2 never can)"
        if i + 1 < len(parts) and v - parts[i + 1] < 2:
            return (f"part {v} cannot be overlined: gap to the next part "
                    f"{parts[i + 1]} is {v - parts[i + 1]} < 2")
    return None


def iter_overpartitions_strict(n: int) -> Iterator[tuple[tuple[int, ...], tuple[bool, ...]]]:
    for parts in iter_strict_partitions(n):
        legal = overline_positions(parts)
        k = len(legal)
        for mask in range(1 << k):
            overs = [False] * len(parts)
            for b in range(k):
                if mask >> b & 1:
                    overs[legal[b]] = True
            yield parts, tuple(overs)


def enumerate_overpartitions_strict(n: int, cap: int | None = None) -> list[Partition]:
    """All strict partitions of n with every legal subset of overlines.

    Legality is re-checked at construction rather than trusted from the
    generator (the overline rule couples adjacent parts).
    """
    if n < 0:
        raise PartitionError("weight must be nonnegative")
    _check_cap(n, cap)
    out = []
    for parts, overs in iter_overpartitions_strict(n):
        bad = check_overlines(parts, overs)
        if bad is not None:
            raise PartitionError(f"generator produced an illegal overpartition: {bad}")
        out.append(Partition(parts, overs))
    return out


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence (test oracle for counts)."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n and g2 > n:
            break
        term = partition_count(n - g1) + partition_count(n - g2)
        total += term if k % 2 else -term
        k += 1
    return total


# ---------------------------------------------------------------------------
# Class-member cache and the enumeration oracle
# ---------------------------------------------------------------------------

_member_cache: dict[str, list[tuple[Partition, ...]]] = {}


def class_members(spec, n: int, cap: int | None = None) -> tuple[Partition, ...]:
    """Members of a partition class at weight exactly n, deterministic order.

    ``spec`` provides: id, kind ("partition" or "overpartition"), an
    ``ok_parts(parts)`` or ``ok_over(parts, overlines)`` predicate, and an
    optional ``parent`` spec to refine.  Results are cached per class.
    """
    _check_cap(n, cap)
    rows = _member_cache.setdefault(spec.id, [])
    while len(rows) <= n:
        w = len(rows)
        parent = getattr(spec, "parent", None)
        if parent is not None:
            members = tuple(p for p in class_members(parent, w, cap=w)
                            if spec.ok_parts(p.parts))
        elif spec.kind == "overpartition":
            members = tuple(Partition(parts, overs)
                            for parts, overs in iter_overpartitions_strict(w)
                            if spec.ok_over(parts, overs))
        else:
            ok = spec.ok_parts
            members = tuple(Partition(t) for t in iter_partitions(w) if ok(t))
        rows.append(members)
    return rows[n]


def clear_member_cache() -> None:
    _member_cache.clear()


@dataclass(frozen=True)
class WeightMap:
    """Assignment of partition statistics to the variables of a VarSet.

    q always tracks the weight: the q-order of an oracle series is |lambda|.
    For the pure (x, y) weightings of the positional-gap classes this makes
    the q-order equal to the total (x, y)-degree, which is exactly the
    grading their closed forms are compared under.
    """

    vars: VarSet
    tracks: tuple[tuple[str, str], ...]  # (variable, statistic)

    @classmethod
    def make(cls, **assign: str) -> "WeightMap":
        for stat in assign.values():
            if stat not in STAT_NAMES:
                raise PartitionError(f"unknown statistic {stat!r}")
        return cls(VarSet(*assign.keys()), tuple(assign.items()))

    def exponents(self, st: PartitionStats) -> tuple[int, ...]:
        return tuple(getattr(st, stat) for _, stat in self.tracks)


def oracle_series(spec, weights: WeightMap, maxN: int, cap: int | None = None) -> QSeries:
    """Sum of weight monomials over all class members of weight <= maxN.

    This is the brute-force side of every generating-function check: the
    coefficient of q^n is computed by enumerating the partitions of n and
    keeping the members.
    """
    _check_cap(maxN, cap)
    coeffs: dict[int, dict] = {}
    for n in range(maxN + 1):
        acc: dict = {}
        for p in class_members(spec, n, cap=cap):
            e = weights.exponents(stats_of(p))
            acc[e] = acc.get(e, 0) + 1
        acc = {e: c for e, c in acc.items() if c}
        if acc:
            coeffs[n] = acc
    return QSeries._raw(weights.vars, coeffs, maxN, 0)


def signed_length_series(spec, maxN: int, cap: int | None = None) -> QSeries:
    """sum over members of (-1)^length q^weight, by direct enumeration."""
    _check_cap(maxN, cap)
    coeffs: dict[int, dict] = {}
    for n in range(maxN + 1):
        total = 0
        for p in class_members(spec, n, cap=cap):
            total += -1 if p.length % 2 else 1
        if total:
            coeffs[n] = {(): total}
    return QSeries._raw(EMPTY_VARS, coeffs, maxN, 0)


# ---------------------------------------------------------------------------
# The mod-2 Ferrers bijection for partitions into odd parts
# ---------------------------------------------------------------------------

class FerrersError(ValueError):
    pass


def ferrers_decompose(p: Partition) -> tuple[int, Partition, Partition]:
    """Split an odd-part partition around its largest n x (n+1) rectangle.

    In the mod-2 Ferrers diagram each row of the part 2k+1 holds one box
    worth 1 followed by k boxes worth 2.  n is the largest integer whose
    n x (n+1) rectangle of boxes fits in the top-left corner; the return
    value is (n, right, below) where ``right`` collects the boxes to the
    right of the rectangle as even parts (at most n of them) and ``below``
    is the tail of rows n+1 onward (odd parts, each at most 2n+1).  The
    weights satisfy n(2n+1) + |right| + |below| = |p|.
    """
    if any(p.overlines):
        raise FerrersError("overlined partitions are not in the odd-parts class")
    for v in p.parts:
        if v % 2 == 0:
            raise FerrersError(f"part {v} is even; all parts must be odd")
    boxes = [(v + 1) // 2 for v in p.parts]
    n = 0
    while n < len(boxes) and boxes[n] >= n + 2:
        n += 1
    right = tuple(v - (2 * n + 1) for v in p.parts[:n] if v - (2 * n + 1) > 0)
    below = p.parts[n:]
    return n, Partition(right), Partition(below)


def ferrers_compose(n: int, right: Partition, below: Partition) -> Partition:
    """Inverse of :func:`ferrers_decompose`.

    Validates the shape constraints that make n unique for the assembled
    diagram: at most n even parts on the right, and odd parts at most
    2n+1 below.
    """
    if n < 0:
        raise FerrersError("rectangle size must be nonnegative")
    if right.length > n:
        raise FerrersError(f"right region has {right.length} rows but the rectangle only {n}")
    for v in right.parts:
        if v % 2:
            raise FerrersError(f"right region parts must be even, got {v}")
    for v in below.parts:
        if v % 2 == 0:
            raise FerrersError(f"below region parts must be odd, got {v}")
        if v > 2 * n + 1:
            raise FerrersError(
                f"below part {v} exceeds 2n+1 = {2 * n + 1}; the rectangle would not be maximal")
    rows = [2 * n + 1 + (right.parts[i] if i < right.length else 0) for i in range(n)]
    return Partition(tuple(rows) + below.parts)
