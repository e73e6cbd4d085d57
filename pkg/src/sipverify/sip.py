"""Separable-integer-partition (SIP) class registry and basis machinery.

A SIP class of modulus k is a partition class P with a basis B such that
every member splits uniquely as lambda_i = b_i + pi_i with b in B and pi
a weakly decreasing vector of nonnegative multiples of k, and every such
sum lands back in P.  This module registers the classes used by the
identity catalog, enumerates their bases, performs the decomposition by
bounded search, and computes the basis generating polynomials three
independent ways (enumeration, recurrence, closed form).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping

from .partitions import (
    Partition,
    WeightMap,
    class_members,
    stats_of,
)
from .series import MultiCoeff, VarSet, gauss_coefficient_list


class UnknownClass(ValueError):
    pass


class NotAMember(ValueError):
    def __init__(self, class_id: str, explanation: str):
        super().__init__(f"not a member of class {class_id}: {explanation}")
        self.class_id = class_id
        self.explanation = explanation


class DecompositionError(ValueError):
    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind  # "none" or "multiple"


class BasisUndefined(ValueError):
    pass


class ClassSpecError(RuntimeError):
    """A recomposition left the class: the class specification is inconsistent."""


@dataclass(frozen=True)
class SIPClassSpec:
    """A registered partition class.

    ``ok_parts``/``ok_over`` are the fast membership predicates used by the
    enumeration sweeps; ``explain_fn`` produces a human-readable violation
    for the CLI.  ``basis_last``/``basis_step`` describe the basis as a
    chain of local choices (smallest part options, then the allowed jumps
    upward), which is what makes basis enumeration finite per length.
    """

    id: str
    modulus: int
    kind: str  # "partition" | "overpartition"
    description: str
    default_weights: WeightMap
    ok_parts: Callable[[tuple[int, ...]], bool] | None = None
    ok_over: Callable[[tuple[int, ...], tuple[bool, ...]], bool] | None = None
    explain_fn: Callable[[tuple[int, ...], tuple[bool, ...]], str | None] | None = None
    basis_explain: Callable[[tuple[int, ...], tuple[bool, ...]], str | None] | None = None
    basis_last: Callable[[int], list[tuple[int, bool]]] | None = None
    basis_step: Callable[[int, int, bool], list[tuple[int, bool]]] | None = None
    poly_vars: VarSet | None = None
    basis_monomial: Callable[[Partition], dict] | None = None
    parent: "SIPClassSpec | None" = None
    length_parity: int | None = None
    basis_min_step: int = 0  # lower bound on the upward jumps, used for pruning

    def member(self, p: Partition) -> bool:
        if self.length_parity is not None and p.length % 2 != self.length_parity:
            return False
        if self.kind == "overpartition":
            return self.ok_over(p.parts, p.overlines)
        return not any(p.overlines) and self.ok_parts(p.parts)

    def explain(self, p: Partition) -> str | None:
        if self.kind == "partition" and any(p.overlines):
            return "overlined parts are not used in this class"
        if self.length_parity is not None and p.length % 2 != self.length_parity:
            want = "even" if self.length_parity == 0 else "odd"
            return f"length {p.length} is not {want}"
        return self.explain_fn(p.parts, p.overlines)

    def basis_member(self, p: Partition) -> bool:
        if self.basis_explain is None:
            return False
        if self.length_parity is not None and p.length % 2 != self.length_parity:
            return False
        return self.basis_explain(p.parts, p.overlines) is None


# ---------------------------------------------------------------------------
# Membership rules
# ---------------------------------------------------------------------------

def _distinct(parts: tuple[int, ...]) -> bool:
    return all(parts[i] > parts[i + 1] for i in range(len(parts) - 1))


# -- gg-A: gaps at least 2, at least 3 below an even part --------------------

def _gg_ok(parts):
    for i in range(len(parts) - 1):
        g = parts[i] - parts[i + 1]
        if g < 2 or (g < 3 and parts[i] % 2 == 0):
            return False
    return True


def _gg_explain(parts, overs):
    for i in range(len(parts) - 1):
        g = parts[i] - parts[i + 1]
        if g < 2:
            return f"rule (1): parts {parts[i]} and {parts[i + 1]} differ by {g}, need at least 2"
        if parts[i] % 2 == 0 and g < 3:
            return (f"rule (2): part {parts[i]} is even, so the gap to {parts[i + 1]} "
                    f"must be at least 3 (got {g})")
    return None


def _gg_basis_explain(parts, overs):
    for i in range(len(parts) - 1):
        g = parts[i] - parts[i + 1]
        if parts[i] % 2 and not (2 <= g <= 3):
            return f"basis gap below odd part {parts[i]} must be 2 or 3, got {g}"
        if parts[i] % 2 == 0 and not (3 <= g <= 4):
            return f"basis gap below even part {parts[i]} must be 3 or 4, got {g}"
    if parts and parts[-1] not in (1, 2):
        return f"basis smallest part must be 1 or 2, got {parts[-1]}"
    return None


def _step_up_234(j, v, over):
    # Upward jumps shared by the minimal-gap bases with rules 2/3/4 by parity:
    # an odd upper part sits 2 or 3 above, an even upper part 3 or 4 above.
    if v % 2:
        return [(v + 2, False), (v + 3, False)]
    return [(v + 3, False), (v + 4, False)]


# -- p4: strict, gaps restricted mod 4, smallest part 1 or 2 mod 4 -----------

def _p4_ok(parts):
    for i in range(len(parts) - 1):
        u, v = parts[i], parts[i + 1]
        g = u - v
        if g <= 0:
            return False
        if (u - v) % 2 == 0:
            if u % 2:
                if g % 4 != 2:
                    return False
            elif g % 4 != 0:
                return False
        elif g % 4 != 3:
            return False
    if parts and parts[-1] % 4 not in (1, 2):
        return False
    return True


def _p4_explain(parts, overs):
    for i in range(len(parts) - 1):
        u, v = parts[i], parts[i + 1]
        g = u - v
        if g <= 0:
            return f"parts must be distinct: {u} is followed by {v}"
        if u % 2 == v % 2:
            if u % 2 and g % 4 != 2:
                return (f"rule (1): odd parts {u} and {v} differ by {g}, "
                        f"need a gap congruent to 2 mod 4")
            if u % 2 == 0 and g % 4 != 0:
                return (f"rule (2): even parts {u} and {v} differ by {g}, "
                        f"need a gap congruent to 0 mod 4")
        elif g % 4 != 3:
            return (f"rule (3): parts {u} and {v} have different parity, "
                    f"so their gap must be congruent to 3 mod 4 (got {g})")
    if parts and parts[-1] % 4 not in (1, 2):
        return f"rule (4): smallest part must be 1 or 2 mod 4, got {parts[-1]}"
    return None


def _p4_basis_explain(parts, overs):
    for i in range(len(parts) - 1):
        u, v = parts[i], parts[i + 1]
        g = u - v
        if u % 2 == v % 2:
            want = 2 if u % 2 else 4
            if g != want:
                return f"basis gap between {u} and {v} must be exactly {want}, got {g}"
        elif g != 3:
            return f"basis gap between {u} and {v} (mixed parity) must be exactly 3, got {g}"
    if parts and parts[-1] not in (1, 2):
        return f"basis smallest part must be 1 or 2, got {parts[-1]}"
    return None


# -- sbar: strict overpartitions --------------------------------------------

def _sbar_ok(parts, overs):
    n = len(parts)
    for i in range(n - 1):
        if parts[i] <= parts[i + 1]:
            return False
    for i in range(n):
        if overs[i]:
            if parts[i] < 2:
                return False
            if i + 1 < n and parts[i] - parts[i + 1] < 2:
                return False
    return True


def _sbar_explain(parts, overs):
    for i in range(len(parts) - 1):
        if parts[i] <= parts[i + 1]:
            return f"parts must be distinct: {parts[i]} is followed by {parts[i + 1]}"
    for i, o in enumerate(overs):
        if not o:
            continue
        if parts[i] < 2:
            return f"part {parts[i]} may not be overlined (needs to be at least 2)"
        if i + 1 < len(parts) and parts[i] - parts[i + 1] < 2:
            return (f"part {parts[i]} may not be overlined: gap to {parts[i + 1]} "
                    f"is {parts[i] - parts[i + 1]}, needs to be at least 2")
    return None


def _sbar_basis_explain(parts, overs):
    n = len(parts)
    for i in range(n):
        last = i == n - 1
        v = parts[i]
        if overs[i]:
            if last:
                if v != 2:
                    return f"overlined basis smallest part must be 2, got {v}"
            elif v - parts[i + 1] != 2:
                return f"gap below overlined basis part {v} must be exactly 2"
        else:
            if last:
                if v != 1:
                    return f"plain basis smallest part must be 1, got {v}"
            elif v - parts[i + 1] != 1:
                return f"gap below plain basis part {v} must be exactly 1"
    return None


# -- g: strict, even gaps at even positions ----------------------------------

def _g_ok(parts):
    n = len(parts)
    for i in range(n - 1):
        if parts[i] <= parts[i + 1]:
            return False
    for j in range(2, n + 1, 2):  # 1-based even positions
        v = parts[j - 1]
        if j < n:
            if (v - parts[j]) % 2:
                return False
        elif v % 2:
            return False
    return True


def _g_explain(parts, overs):
    n = len(parts)
    for i in range(n - 1):
        if parts[i] <= parts[i + 1]:
            return f"parts must be distinct: {parts[i]} is followed by {parts[i + 1]}"
    for j in range(2, n + 1, 2):
        v = parts[j - 1]
        if j < n and (v - parts[j]) % 2:
            return (f"rule (1): the gap below the even-indexed part {v} "
                    f"(position {j}) must be even, got {v - parts[j]}")
        if j == n and v % 2:
            return f"rule (2): the smallest part {v} is even-indexed and must be even"
    return None


def _g_basis_explain(parts, overs):
    n = len(parts)
    for j in range(1, n):
        g = parts[j - 1] - parts[j]
        if j % 2:
            if not (1 <= g <= 2):
                return f"basis gap at odd position {j} must be 1 or 2, got {g}"
        elif g != 2:
            return f"basis gap at even position {j} must be exactly 2, got {g}"
    if n:
        v = parts[-1]
        if n % 2 == 0:
            if v != 2:
                return f"even-indexed basis smallest part must be 2, got {v}"
        elif v not in (1, 2):
            return f"odd-indexed basis smallest part must be 1 or 2, got {v}"
    return None


# -- gprime: positional gaps at least 3 / even, equal parts allowed ----------

def _gp_ok(parts):
    n = len(parts)
    for j in range(1, n):
        g = parts[j - 1] - parts[j]
        if j % 2:
            if g < 3:
                return False
        elif g % 2:
            return False
    if n:
        if n % 2:
            if parts[-1] < 3:
                return False
        elif parts[-1] % 2:
            return False
    return True


def _gp_explain(parts, overs):
    n = len(parts)
    for j in range(1, n):
        g = parts[j - 1] - parts[j]
        if j % 2 and g < 3:
            return (f"rule (1): the gap below the odd-indexed part {parts[j - 1]} "
                    f"(position {j}) must be at least 3, got {g}")
        if j % 2 == 0 and g % 2:
            return (f"rule (1): the gap below the even-indexed part {parts[j - 1]} "
                    f"(position {j}) must be even, got {g}")
    if n:
        if n % 2 and parts[-1] < 3:
            return f"rule (2): the smallest part {parts[-1]} is odd-indexed and must be at least 3"
        if n % 2 == 0 and parts[-1] % 2:
            return f"rule (2): the smallest part {parts[-1]} is even-indexed and must be even"
    return None


def _gp_basis_explain(parts, overs):
    n = len(parts)
    for j in range(1, n):
        g = parts[j - 1] - parts[j]
        if j % 2:
            if g not in (3, 4):
                return f"basis gap at odd position {j} must be 3 or 4, got {g}"
        elif g != 0:
            return f"basis gap at even position {j} must be exactly 0, got {g}"
    if n:
        v = parts[-1]
        if n % 2:
            if v not in (3, 4):
                return f"odd-indexed basis smallest part must be 3 or 4, got {v}"
        elif v != 2:
            return f"even-indexed basis smallest part must be 2, got {v}"
    return None


# -- odd / s4 ----------------------------------------------------------------

def _odd_ok(parts):
    return all(v % 2 for v in parts)


def _odd_explain(parts, overs):
    for v in parts:
        if v % 2 == 0:
            return f"part {v} is even; all parts must be odd"
    return None


def _odd_basis_explain(parts, overs):
    for v in parts:
        if v != 1:
            return f"basis parts must all equal 1, got {v}"
    return None


def _s4_ok(parts):
    return _distinct(parts) and all(v % 4 for v in parts)


def _s4_explain(parts, overs):
    for i in range(len(parts) - 1):
        if parts[i] <= parts[i + 1]:
            return f"parts must be distinct: {parts[i]} is followed by {parts[i + 1]}"
    for v in parts:
        if v % 4 == 0:
            return f"part {v} is a multiple of 4"
    return None


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

_XY = WeightMap.make(x="odd_parts", y="even_parts")
_AZ = WeightMap.make(a="overlined_count", z="length")
_POSXY = WeightMap.make(x="odd_indexed_sum", y="even_indexed_sum")
_ZLEN = WeightMap.make(z="length")
_QONLY = WeightMap.make()

P4_POLY_VARS = VarSet("x", "y", "q")
SBAR_POLY_VARS = VarSet("a", "z", "q")
GXY_POLY_VARS = VarSet("x", "y")


def _p4_basis_monomial(p: Partition) -> dict:
    st = stats_of(p)
    return {"x": st.odd_parts, "y": st.even_parts, "q": st.weight}


def _sbar_basis_monomial(p: Partition) -> dict:
    st = stats_of(p)
    return {"a": st.overlined_count, "z": st.length, "q": st.weight}


def _posxy_basis_monomial(p: Partition) -> dict:
    st = stats_of(p)
    return {"x": st.odd_indexed_sum, "y": st.even_indexed_sum}


_GG = SIPClassSpec(
    id="gg-A", modulus=2, kind="partition",
    description="gaps at least 2, at least 3 below an even part (Gollnitz-Gordon)",
    default_weights=_QONLY,
    ok_parts=_gg_ok, explain_fn=_gg_explain, basis_explain=_gg_basis_explain,
    basis_last=lambda n: [(1, False), (2, False)],
    basis_step=_step_up_234,
    basis_min_step=2,
)

_P4 = SIPClassSpec(
    id="p4", modulus=4, kind="partition",
    description="strict partitions with gaps restricted mod 4, smallest part 1 or 2 mod 4",
    default_weights=_XY,
    ok_parts=_p4_ok, explain_fn=_p4_explain, basis_explain=_p4_basis_explain,
    basis_last=lambda n: [(1, False), (2, False)],
    basis_step=_step_up_234,
    poly_vars=P4_POLY_VARS, basis_monomial=_p4_basis_monomial,
    basis_min_step=2,
)

_P4E = SIPClassSpec(
    id="p4e", modulus=4, kind="partition",
    description="the even-length members of p4",
    default_weights=_XY,
    ok_parts=lambda parts: len(parts) % 2 == 0 and _p4_ok(parts),
    explain_fn=_p4_explain, basis_explain=_p4_basis_explain,
    basis_last=_P4.basis_last, basis_step=_step_up_234,
    poly_vars=P4_POLY_VARS, basis_monomial=_p4_basis_monomial,
    parent=_P4, length_parity=0, basis_min_step=2,
)

_P4O = SIPClassSpec(
    id="p4o", modulus=4, kind="partition",
    description="the odd-length members of p4",
    default_weights=_XY,
    ok_parts=lambda parts: len(parts) % 2 == 1 and _p4_ok(parts),
    explain_fn=_p4_explain, basis_explain=_p4_basis_explain,
    basis_last=_P4.basis_last, basis_step=_step_up_234,
    poly_vars=P4_POLY_VARS, basis_monomial=_p4_basis_monomial,
    parent=_P4, length_parity=1, basis_min_step=2,
)

_SBAR = SIPClassSpec(
    id="sbar", modulus=1, kind="overpartition",
    description="strict overpartitions: a part may be overlined when it is at "
                "least 2 and sits at least 2 above the next part",
    default_weights=_AZ,
    ok_over=_sbar_ok, explain_fn=_sbar_explain, basis_explain=_sbar_basis_explain,
    basis_last=lambda n: [(1, False), (2, True)],
    basis_step=lambda j, v, o: [(v + 1, False), (v + 2, True)],
    poly_vars=SBAR_POLY_VARS, basis_monomial=_sbar_basis_monomial,
    basis_min_step=1,
)


def _g_step(j, v, o):
    if j % 2:
        return [(v + 1, False), (v + 2, False)]
    return [(v + 2, False)]


_G = SIPClassSpec(
    id="g", modulus=2, kind="partition",
    description="strict partitions with even gaps below even-indexed parts; "
                "an even-indexed smallest part must be even",
    default_weights=_POSXY,
    ok_parts=_g_ok, explain_fn=_g_explain, basis_explain=_g_basis_explain,
    basis_last=lambda n: [(2, False)] if n % 2 == 0 else [(1, False), (2, False)],
    basis_step=_g_step,
    poly_vars=GXY_POLY_VARS, basis_monomial=_posxy_basis_monomial,
    basis_min_step=1,
)


def _gp_step(j, v, o):
    if j % 2:
        return [(v + 3, False), (v + 4, False)]
    return [(v, False)]


_GP = SIPClassSpec(
    id="gprime", modulus=2, kind="partition",
    description="odd-indexed parts at least 3 above the next part, even gaps "
                "below even-indexed parts (equal parts allowed there)",
    default_weights=_POSXY,
    ok_parts=_gp_ok, explain_fn=_gp_explain, basis_explain=_gp_basis_explain,
    basis_last=lambda n: [(2, False)] if n % 2 == 0 else [(3, False), (4, False)],
    basis_step=_gp_step,
    poly_vars=GXY_POLY_VARS, basis_monomial=_posxy_basis_monomial,
)

_ODD = SIPClassSpec(
    id="odd", modulus=2, kind="partition",
    description="partitions into odd parts",
    default_weights=_ZLEN,
    ok_parts=_odd_ok, explain_fn=_odd_explain, basis_explain=_odd_basis_explain,
    basis_last=lambda n: [(1, False)],
    basis_step=lambda j, v, o: [(v, False)],
)

_S4 = SIPClassSpec(
    id="s4", modulus=4, kind="partition",
    description="strict partitions without multiples of 4 (no basis registered)",
    default_weights=_ZLEN,
    ok_parts=_s4_ok, explain_fn=_s4_explain,
)

REGISTRY: dict[str, SIPClassSpec] = {
    s.id: s for s in (_GG, _P4, _P4E, _P4O, _SBAR, _G, _GP, _ODD, _S4)
}


def class_ids() -> list[str]:
    return list(REGISTRY)


def get_class(class_id: str) -> SIPClassSpec:
    try:
        return REGISTRY[class_id]
    except KeyError:
        raise UnknownClass(
            f"unknown class {class_id!r}; registered: {', '.join(REGISTRY)}") from None


def class_member(class_id: str, p: Partition) -> bool:
    return get_class(class_id).member(p)


# ---------------------------------------------------------------------------
# Basis enumeration and SIP decomposition
# ---------------------------------------------------------------------------

def _basis_partitions(spec: SIPClassSpec, n: int, h_max: int,
                      weight_max: int | None = None) -> list[Partition]:
    if spec.basis_last is None:
        raise BasisUndefined(f"class {spec.id} has no registered basis")
    if spec.length_parity is not None and n % 2 != spec.length_parity:
        return []
    if n == 0:
        return [Partition(())]
    results: list[Partition] = []
    step_lb = spec.basis_min_step

    def climb(j: int, value: int, over: bool, weight: int,
              parts: list[int], overs: list[bool]) -> None:
        # j counts down to 1 (the largest part); values never decrease upward.
        if j == 1:
            results.append(Partition(tuple(reversed(parts)), tuple(reversed(overs))))
            return
        for v2, o2 in spec.basis_step(j - 1, value, over):
            if v2 + step_lb * (j - 2) > h_max:
                continue
            w2 = weight + v2
            if weight_max is not None and w2 + v2 * (j - 2) > weight_max:
                continue
            climb(j - 1, v2, o2, w2, parts + [v2], overs + [o2])

    for v, o in spec.basis_last(n):
        if v + step_lb * (n - 1) > h_max:
            continue
        if weight_max is not None and v * n > weight_max:
            continue
        climb(n, v, o, v, [v], [o])
    results.sort(key=lambda p: (p.parts, p.overlines))
    return results


def enumerate_basis(class_id: str, n: int, h_max: int) -> list[Partition]:
    """All basis partitions with n parts and largest part at most h_max.

    The chain structure of every registered basis (finitely many smallest
    parts, finitely many upward jumps) makes this list finite for each n.
    """
    return _basis_partitions(get_class(class_id), n, h_max)


def _decompositions(spec: SIPClassSpec, p: Partition) -> list[tuple[Partition, tuple[int, ...]]]:
    n = p.length
    if n == 0:
        return [(Partition(()), ())]
    k = spec.modulus
    sols = []
    for b in _basis_partitions(spec, n, p.parts[0], weight_max=p.weight):
        if b.overlines != p.overlines:
            continue
        pi = tuple(x - y for x, y in zip(p.parts, b.parts))
        if any(d < 0 or d % k for d in pi):
            continue
        if any(pi[i] < pi[i + 1] for i in range(n - 1)):
            continue
        sols.append((b, pi))
    return sols


def sip_decompose(class_id: str, p: Partition) -> tuple[Partition, tuple[int, ...]]:
    """Unique splitting of a member as basis + multiples of the modulus.

    Implemented as a bounded search over basis candidates of the same
    length, so one engine serves every registered class; existence and
    uniqueness are genuinely checked rather than assumed.
    """
    spec = get_class(class_id)
    bad = spec.explain(p)
    if bad is not None:
        raise NotAMember(class_id, bad)
    sols = _decompositions(spec, p)
    if not sols:
        raise DecompositionError(
            "none", f"no basis decomposition of {partition_repr(p)} in class {class_id}")
    if len(sols) > 1:
        alts = "; ".join(partition_repr(b) for b, _ in sols)
        raise DecompositionError(
            "multiple", f"{partition_repr(p)} decomposes in {len(sols)} ways in "
                        f"class {class_id} ({alts}): SIP property violated")
    return sols[0]


def sip_recompose(class_id: str, b: Partition, pi: Iterable[int]) -> Partition:
    """Rebuild the member from a basis partition and a pi vector.

    The output is re-checked for membership; a failure means the class
    specification itself is inconsistent and raises ClassSpecError.
    """
    spec = get_class(class_id)
    pi = tuple(pi)
    if spec.basis_explain is None:
        raise BasisUndefined(f"class {class_id} has no registered basis")
    bad = spec.basis_explain(b.parts, b.overlines)
    if bad is not None:
        raise NotAMember(class_id, f"not a basis partition: {bad}")
    if len(pi) != b.length:
        raise DecompositionError("none", "pi must have one entry per part")
    for i, d in enumerate(pi):
        if d < 0 or d % spec.modulus:
            raise DecompositionError(
                "none", f"pi entry {d} is not a nonnegative multiple of {spec.modulus}")
        if i and pi[i - 1] < d:
            raise DecompositionError("none", f"pi must be weakly decreasing: {pi}")
    out = Partition(tuple(x + d for x, d in zip(b.parts, pi)), b.overlines)
    bad = spec.explain(out)
    if bad is not None:
        raise ClassSpecError(
            f"recomposition {partition_repr(out)} left class {class_id}: {bad}")
    return out


def partition_repr(p: Partition) -> str:
    from .partitions import partition_str
    return partition_str(p) or "(empty)"


# ---------------------------------------------------------------------------
# Basis generating polynomials
# ---------------------------------------------------------------------------

def _mono(vars: VarSet, c: int = 1, **powers: int) -> MultiCoeff:
    return MultiCoeff.monomial(vars, c, powers)


def _gauss_mc(vars: VarSet, nn: int, kk: int, unit: Mapping[str, int]) -> MultiCoeff:
    """[nn choose kk] with the base specialized to a monomial (q^2, xy, ...)."""
    cs = gauss_coefficient_list(nn, kk)
    terms = {}
    for j, c in enumerate(cs):
        if c:
            terms[vars.exponents({nm: p * j for nm, p in unit.items()})] = c
    return MultiCoeff(vars, terms)


_POLY_CLASSES = ("p4", "sbar", "g", "gprime")


def _poly_spec(class_id: str) -> SIPClassSpec:
    spec = get_class(class_id)
    if spec.poly_vars is None or class_id not in _POLY_CLASSES:
        raise BasisUndefined(f"class {class_id} has no basis polynomial")
    return spec


@lru_cache(maxsize=None)
def basis_poly_recurrence(class_id: str, n: int, h: int) -> MultiCoeff:
    """Basis generating polynomial for (length n, largest part h) by recurrence.

    Anchored at the explicit initial values; memoized because the identity
    builders reuse the table heavily.
    """
    spec = _poly_spec(class_id)
    V = spec.poly_vars
    zero = MultiCoeff(V)
    rec = basis_poly_recurrence

    if n < 0 or h < 0:
        return zero
    if class_id == "p4":
        if n == 0:
            return _mono(V) if h == 0 else zero
        if n == 1:
            if h == 1:
                return _mono(V, x=1, q=1)
            if h == 2:
                return _mono(V, y=1, q=2)
            return zero
        if h == 0:
            return zero
        if h % 2 == 0:
            return _mono(V, y=1, q=1, x=-1) * rec(class_id, n, h - 1)
        return (_mono(V, x=1, q=h) * rec(class_id, n - 1, h - 2)
                + _mono(V, y=1, q=h + 1) * rec(class_id, n - 1, h - 4))

    if class_id == "sbar":
        if n == 0:
            return _mono(V) if h == 0 else zero
        if h == 0:
            return zero
        if h == 1:
            return _mono(V, z=1, q=1) if n == 1 else zero
        return (_mono(V, z=1, q=h) * rec(class_id, n - 1, h - 1)
                + _mono(V, a=1, z=1, q=h) * rec(class_id, n - 1, h - 2))

    if class_id == "g":
        if n == 0:
            return _mono(V) if h == 0 else zero
        if n == 1:
            if h == 1:
                return _mono(V, x=1)
            if h == 2:
                return _mono(V, x=2)
            return zero
        a = rec(class_id, n - 2, h - 3)
        b = rec(class_id, n - 2, h - 4)
        out = zero
        if a:
            out = out + _mono(V, x=h, y=h - 1) * a
        if b:
            out = out + _mono(V, x=h, y=h - 2) * b
        return out

    # gprime: deleting the two largest parts needs a third part to land on,
    # so the two-part values are anchored directly from the basis rules.
    if n == 0:
        return _mono(V) if h == 0 else zero
    if n == 1:
        if h == 3:
            return _mono(V, x=3)
        if h == 4:
            return _mono(V, x=4)
        return zero
    if n == 2:
        if h == 5:
            return _mono(V, x=5, y=2)
        if h == 6:
            return _mono(V, x=6, y=2)
        return zero
    a = rec(class_id, n - 2, h - 3)
    b = rec(class_id, n - 2, h - 4)
    out = zero
    if a:
        out = out + _mono(V, x=h, y=h - 3) * a
    if b:
        out = out + _mono(V, x=h, y=h - 4) * b
    return out


def basis_poly_closed(class_id: str, n: int, h: int) -> MultiCoeff:
    """Basis generating polynomial by the Gaussian-binomial closed form.

    Indices outside the closed form's shape give the zero polynomial.
    """
    spec = _poly_spec(class_id)
    V = spec.poly_vars
    zero = MultiCoeff(V)
    if n < 0 or h < 0:
        return zero

    if class_id == "p4":
        if n == 0:
            return _mono(V) if h == 0 else zero
        if h % 2:
            j = (h - 2 * n + 1) // 2
            binom = _gauss_mc(V, n - 1, j, {"q": 2})
            if binom.is_zero:
                return zero
            return _mono(V, x=n - j, y=j, q=n * n + j * j + 2 * j) * binom
        j = (h - 2 * n) // 2
        binom = _gauss_mc(V, n - 1, j, {"q": 2})
        if binom.is_zero:
            return zero
        return _mono(V, x=n - j - 1, y=j + 1, q=n * n + j * j + 2 * j + 1) * binom

    if class_id == "sbar":
        if n == 0:
            return _mono(V) if h == 0 else zero
        j = h - n
        binom = _gauss_mc(V, n, j, {"q": 1})
        if binom.is_zero:
            return zero
        qexp = n * (n + 1) // 2 + j * (j + 1) // 2
        return _mono(V, a=j, z=n, q=qexp) * binom

    if class_id == "g":
        if n == 0:
            return _mono(V) if h == 0 else zero
        if n % 2:
            m = (n + 1) // 2
            j = h - 3 * m + 2
            xe = (3 * m * m - m) // 2 + (j * j + j) // 2
            ye = (3 * m * m - 3 * m) // 2 + (j * j - j) // 2
        else:
            m = n // 2
            j = h - 3 * m
            xe = (3 * m * m + 3 * m) // 2 + (j * j + j) // 2
            ye = (3 * m * m + m) // 2 + (j * j - j) // 2
        binom = _gauss_mc(V, m, j, {"x": 1, "y": 1})
        if binom.is_zero:
            return zero
        return _mono(V, x=xe, y=ye) * binom

    # gprime
    if n == 0:
        return _mono(V) if h == 0 else zero
    if n % 2:
        m = (n + 1) // 2
        j = h - 3 * m
        xe = (3 * m * m + 3 * m) // 2 + (j * j + j) // 2
        ye = (3 * m * m - 3 * m) // 2 + (j * j - j) // 2
    else:
        m = n // 2
        j = h - 3 * m - 2
        xe = (3 * m * m + 7 * m) // 2 + (j * j + j) // 2
        ye = (3 * m * m + m) // 2 + (j * j - j) // 2
    binom = _gauss_mc(V, m, j, {"x": 1, "y": 1})
    if binom.is_zero:
        return zero
    return _mono(V, x=xe, y=ye) * binom


def basis_poly_enumerated(class_id: str, n: int, h: int) -> MultiCoeff:
    """Basis generating polynomial by literally listing the basis partitions."""
    spec = _poly_spec(class_id)
    V = spec.poly_vars
    total = MultiCoeff(V)
    for b in _basis_partitions(spec, n, h):
        if (b.parts[0] if b.parts else 0) == h:
            total = total + _mono(V, 1, **spec.basis_monomial(b))
    return total


# ---------------------------------------------------------------------------
# SIP property audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SipAuditReport:
    class_id: str
    max_weight: int
    members_checked: int
    recompositions_checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _iter_partitions_bounded(m: int, max_parts: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    if m == 0:
        yield ()
        return
    if max_parts == 0:
        return
    top = m if max_part is None else min(m, max_part)
    bottom = -(-m // max_parts)
    for first in range(top, bottom - 1, -1):
        for rest in _iter_partitions_bounded(m - first, max_parts - 1, first):
            yield (first,) + rest


def verify_sip_property(spec_or_id, max_weight: int, max_violations: int = 50) -> SipAuditReport:
    """Audit the three SIP properties at desk scale.

    For every member of weight <= max_weight the decomposition must exist,
    be unique, and recompose to the member; for every basis partition and
    compatible pi vector within the weight budget the recomposition must
    be a member.  Violations are report content, not exceptions.
    """
    spec = get_class(spec_or_id) if isinstance(spec_or_id, str) else spec_or_id
    if spec.basis_last is None:
        raise BasisUndefined(f"class {spec.id} has no registered basis")
    violations: list[str] = []

    def note(msg: str) -> None:
        if len(violations) < max_violations:
            violations.append(msg)

    members_checked = 0
    for w in range(max_weight + 1):
        for p in class_members(spec, w, cap=max_weight):
            members_checked += 1
            sols = _decompositions(spec, p)
            if not sols:
                note(f"{partition_repr(p)}: no decomposition")
                continue
            if len(sols) > 1:
                note(f"{partition_repr(p)}: {len(sols)} decompositions")
                continue
            b, pi = sols[0]
            rebuilt = Partition(tuple(x + d for x, d in zip(b.parts, pi)), b.overlines)
            if rebuilt != p:
                note(f"{partition_repr(p)}: recomposition gave {partition_repr(rebuilt)}")

    recomps = 0
    k = spec.modulus
    for n in range(1, max_weight + 1):  # a basis partition of length n weighs at least n
        for b in _basis_partitions(spec, n, max_weight, weight_max=max_weight):
            budget = (max_weight - b.weight) // k
            for m in range(budget + 1):
                for mu in _iter_partitions_bounded(m, n):
                    pi = tuple(v * k for v in mu) + (0,) * (n - len(mu))
                    out = Partition(tuple(x + d for x, d in zip(b.parts, pi)), b.overlines)
                    recomps += 1
                    if not spec.member(out):
                        note(f"basis {partition_repr(b)} + pi {pi} gave the "
                             f"non-member {partition_repr(out)}")
    return SipAuditReport(spec.id, max_weight, members_checked, recomps, tuple(violations))
