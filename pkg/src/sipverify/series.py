"""Exact arithmetic for truncated formal Laurent series in q.

Coefficients are sparse multivariate Laurent polynomials over Python's
arbitrary-precision integers, so every operation is exact: no floats, no
rounding, no overflow.  Each :class:`QSeries` carries the largest
q-exponent through which its coefficients are provably complete
(``max_order``); operations combine these bounds conservatively.  That
bookkeeping is what makes a finite coefficient check of an identity
between infinite series trustworthy: agreement through order N is a
statement about all orders <= N, not an approximation.

The standard q-series building blocks live here too: q-Pochhammer
symbols (finite and infinite), Gaussian binomial coefficients, and the
Jacobi triple product.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from operator import add as _iadd
from typing import Callable, Iterable, Iterator, Mapping


class SeriesError(ValueError):
    """Base class for series arithmetic failures."""


class VarSetMismatch(SeriesError):
    """Operands were built over different variable sets."""


class NonUnitLeadingCoefficient(SeriesError):
    """Inversion requires the lowest coefficient to be +-1 times a monomial."""


class SubstitutionError(SeriesError):
    """A substitution whose truncation order cannot be certified."""


class _Infinite:
    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITE"


#: Marker for an infinite Pochhammer length, e.g. (a; q)_oo.
INFINITE = _Infinite()


class VarSet:
    """Ordered set of coefficient variable names.

    q is the series variable and deliberately never a member; exponent
    vectors stored in :class:`MultiCoeff` index into this order.
    """

    __slots__ = ("names", "_index")

    def __init__(self, *names: str):
        if len(set(names)) != len(names):
            raise SeriesError(f"duplicate variable names: {names!r}")
        self.names = tuple(names)
        self._index = {nm: i for i, nm in enumerate(self.names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise SeriesError(f"unknown variable {name!r} (have {self.names})") from None

    def zeros(self) -> tuple[int, ...]:
        return (0,) * len(self.names)

    def exponents(self, powers: Mapping[str, int] | None) -> tuple[int, ...]:
        """Exponent vector for a monomial given as a name->power mapping."""
        if not powers:
            return self.zeros()
        e = [0] * len(self.names)
        for nm, p in powers.items():
            e[self.index(nm)] = p
        return tuple(e)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, VarSet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"VarSet{self.names!r}"


EMPTY_VARS = VarSet()


def _check_same_vars(a, b) -> None:
    if a.vars != b.vars:
        raise VarSetMismatch(f"{a.vars} vs {b.vars}")


# ---------------------------------------------------------------------------
# Raw term-dict helpers.  A "term dict" maps exponent tuples to nonzero ints.
# These run in the hot loops; MultiCoeff is a thin wrapper around them.
# ---------------------------------------------------------------------------

def _terms_add_into(dst: dict, src: dict, sign: int = 1) -> None:
    get = dst.get
    for e, c in src.items():
        v = get(e, 0) + sign * c
        if v:
            dst[e] = v
        elif e in dst:
            del dst[e]


def _terms_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    get = out.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(map(_iadd, e1, e2))
            v = get(e, 0) + c1 * c2
            if v:
                out[e] = v
            elif e in out:
                del out[e]
    return out


def _terms_scale(a: dict, c: int) -> dict:
    if c == 0:
        return {}
    return {e: c * v for e, v in a.items()}


def _terms_mul_monomial(a: dict, c: int, delta: tuple[int, ...]) -> dict:
    if c == 0:
        return {}
    if not any(delta):
        return _terms_scale(a, c) if c != 1 else dict(a)
    return {tuple(map(_iadd, e, delta)): c * v for e, v in a.items()}


class MultiCoeff:
    """Sparse Laurent polynomial with exact integer coefficients.

    ``terms`` maps exponent vectors (one integer per variable, negatives
    allowed) to nonzero integers; the zero polynomial stores nothing, so
    the representation is canonical.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars: VarSet, terms: Mapping[tuple[int, ...], int] | None = None):
        self.vars = vars
        cleaned: dict[tuple[int, ...], int] = {}
        if terms:
            width = len(vars)
            for e, c in terms.items():
                if not c:
                    continue
                e = tuple(e)
                if len(e) != width:
                    raise SeriesError(f"exponent vector {e} does not fit {vars}")
                cleaned[e] = cleaned.get(e, 0) + c
                if not cleaned[e]:
                    del cleaned[e]
        self.terms = cleaned

    @classmethod
    def _raw(cls, vars: VarSet, terms: dict) -> "MultiCoeff":
        mc = object.__new__(cls)
        mc.vars = vars
        mc.terms = terms
        return mc

    @classmethod
    def const(cls, vars: VarSet, c: int) -> "MultiCoeff":
        return cls._raw(vars, {vars.zeros(): c} if c else {})

    @classmethod
    def monomial(cls, vars: VarSet, c: int = 1, powers: Mapping[str, int] | None = None) -> "MultiCoeff":
        return cls._raw(vars, {vars.exponents(powers): c} if c else {})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self) -> int:
        """The coefficient of the trivial monomial (0 if absent)."""
        return self.terms.get(self.vars.zeros(), 0)

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items())

    def __add__(self, other: "MultiCoeff") -> "MultiCoeff":
        _check_same_vars(self, other)
        out = dict(self.terms)
        _terms_add_into(out, other.terms)
        return MultiCoeff._raw(self.vars, out)

    def __sub__(self, other: "MultiCoeff") -> "MultiCoeff":
        _check_same_vars(self, other)
        out = dict(self.terms)
        _terms_add_into(out, other.terms, -1)
        return MultiCoeff._raw(self.vars, out)

    def __neg__(self) -> "MultiCoeff":
        return MultiCoeff._raw(self.vars, _terms_scale(self.terms, -1))

    def __mul__(self, other):
        if isinstance(other, int):
            return MultiCoeff._raw(self.vars, _terms_scale(self.terms, other))
        _check_same_vars(self, other)
        return MultiCoeff._raw(self.vars, _terms_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MultiCoeff":
        if k < 0:
            raise SeriesError("negative powers of a general polynomial are undefined")
        out = MultiCoeff.const(self.vars, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MultiCoeff)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.vars, tuple(self.sorted_terms())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def text(self) -> str:
        """Canonical text form: terms sorted by exponent vector, decimal coefficients."""
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for e, c in self.sorted_terms():
            factors = [
                nm if p == 1 else f"{nm}^{p}"
                for nm, p in zip(self.vars.names, e)
                if p
            ]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if not pieces:
                pieces.append(body if c > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(pieces)

    __str__ = text

    def __repr__(self) -> str:
        return f"MultiCoeff({self.text()})"


class QSeries:
    """Formal Laurent series in q, truncated at ``max_order`` (inclusive).

    ``coeffs`` maps q-exponents in [min_order, max_order] to nonzero
    coefficient polynomials.  ``min_order`` is a proven lower bound on the
    support; ``max_order`` is the largest order through which the stored
    coefficients are complete.  Values are immutable after construction.
    """

    __slots__ = ("vars", "min_order", "max_order", "_coeffs")

    def __init__(self, vars: VarSet, coeffs: Mapping[int, object] | None,
                 max_order: int, min_order: int = 0):
        if "q" in vars:
            raise SeriesError("q is the series variable and cannot be a coefficient variable")
        self.vars = vars
        self.min_order = min_order
        self.max_order = max_order
        store: dict[int, dict] = {}
        if coeffs:
            for k, c in coeffs.items():
                if k > max_order:
                    continue
                t = c.terms if isinstance(c, MultiCoeff) else c
                if not t:
                    continue
                if k < min_order:
                    raise SeriesError(
                        f"coefficient at q^{k} below declared min_order {min_order}")
                store[k] = dict(t)
        self._coeffs = store

    @classmethod
    def _raw(cls, vars: VarSet, coeffs: dict[int, dict], max_order: int, min_order: int) -> "QSeries":
        s = object.__new__(cls)
        s.vars = vars
        s.min_order = min_order
        s.max_order = max_order
        s._coeffs = coeffs
        return s

    def coefficient(self, n: int) -> MultiCoeff:
        """Coefficient of q^n; raises beyond the reliable truncation order."""
        if n > self.max_order:
            raise SeriesError(f"q^{n} is beyond the reliable order {self.max_order}")
        return MultiCoeff._raw(self.vars, dict(self._coeffs.get(n, {})))

    def support(self) -> list[int]:
        return sorted(self._coeffs)

    def items(self) -> Iterator[tuple[int, MultiCoeff]]:
        for k in self.support():
            yield k, MultiCoeff._raw(self.vars, dict(self._coeffs[k]))

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __add__(self, other: "QSeries") -> "QSeries":
        return series_add(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return series_add(self, series_neg(other))

    def __mul__(self, other: "QSeries") -> "QSeries":
        return series_mul(self, other)

    def __neg__(self) -> "QSeries":
        return series_neg(self)

    def __repr__(self) -> str:
        return f"QSeries({series_text(self)})"


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------

def qs_zero(vars: VarSet, N: int, min_order: int = 0) -> QSeries:
    return QSeries._raw(vars, {}, N, min_order)


def qs_const(vars: VarSet, c: int, N: int) -> QSeries:
    if not c:
        return qs_zero(vars, N)
    return QSeries._raw(vars, {0: {vars.zeros(): c}}, N, 0)


def qs_one(vars: VarSet, N: int) -> QSeries:
    return qs_const(vars, 1, N)


def qs_monomial(vars: VarSet, N: int, c: int = 1, q_power: int = 0,
                powers: Mapping[str, int] | None = None) -> QSeries:
    """The single term c * q^q_power * monomial, complete through N."""
    mn = min(0, q_power)
    if not c or q_power > N:
        return qs_zero(vars, N, mn)
    return QSeries._raw(vars, {q_power: {vars.exponents(powers): c}}, N, mn)


def qs_from_orders(vars: VarSet, entries: Mapping[int, int], N: int) -> QSeries:
    """Pure-q series from an order -> integer mapping (orders above N dropped)."""
    zero = vars.zeros()
    coeffs = {k: {zero: c} for k, c in entries.items() if c and k <= N}
    mn = min([0] + list(coeffs)) if coeffs else 0
    return QSeries._raw(vars, coeffs, N, mn)


# ---------------------------------------------------------------------------
# Arithmetic
# ---------------------------------------------------------------------------

def series_add(a: QSeries, b: QSeries) -> QSeries:
    """Coefficientwise sum; the result is reliable to the smaller max_order."""
    _check_same_vars(a, b)
    mx = min(a.max_order, b.max_order)
    mn = min(a.min_order, b.min_order)
    out: dict[int, dict] = {}
    for src in (a._coeffs, b._coeffs):
        for k, t in src.items():
            if k > mx:
                continue
            acc = out.get(k)
            if acc is None:
                out[k] = dict(t)
            else:
                _terms_add_into(acc, t)
    return QSeries._raw(a.vars, {k: t for k, t in out.items() if t}, mx, mn)


def series_neg(a: QSeries) -> QSeries:
    return QSeries._raw(a.vars, {k: _terms_scale(t, -1) for k, t in a._coeffs.items()},
                        a.max_order, a.min_order)


def series_sub(a: QSeries, b: QSeries) -> QSeries:
    return series_add(a, series_neg(b))


def series_scalar_mul(a: QSeries, c: int) -> QSeries:
    if not c:
        return qs_zero(a.vars, a.max_order, a.min_order)
    return QSeries._raw(a.vars, {k: _terms_scale(t, c) for k, t in a._coeffs.items()},
                        a.max_order, a.min_order)


def series_mul(a: QSeries, b: QSeries, out_max: int | None = None) -> QSeries:
    """Cauchy product, exact through the provable common order.

    The product of a (complete to a.max) and b (complete to b.max) is
    complete through min(a.max + b.min, b.max + a.min): any missing term
    of one factor can only touch higher orders than that.  ``out_max``
    caps the computation when the caller needs less.
    """
    _check_same_vars(a, b)
    bound = min(a.max_order + b.min_order, b.max_order + a.min_order)
    if out_max is not None and out_max < bound:
        bound = out_max
    mn = a.min_order + b.min_order
    out: dict[int, dict] = {}
    b_items = sorted(b._coeffs.items())
    for i, ca in sorted(a._coeffs.items()):
        jmax = bound - i
        for j, cb in b_items:
            if j > jmax:
                break
            d = i + j
            acc = out.get(d)
            if acc is None:
                acc = out[d] = {}
            get = acc.get
            for e1, c1 in ca.items():
                for e2, c2 in cb.items():
                    e = tuple(map(_iadd, e1, e2))
                    v = get(e, 0) + c1 * c2
                    if v:
                        acc[e] = v
                    elif e in acc:
                        del acc[e]
    return QSeries._raw(a.vars, {k: t for k, t in out.items() if t}, bound, mn)


def series_mul_monomial(a: QSeries, c: int, q_power: int = 0,
                        powers: Mapping[str, int] | None = None) -> QSeries:
    """Multiply by c * q^q_power * monomial.  Exact: max_order shifts along."""
    if not c:
        return qs_zero(a.vars, a.max_order + q_power, a.min_order + q_power)
    delta = a.vars.exponents(powers)
    out = {k + q_power: _terms_mul_monomial(t, c, delta) for k, t in a._coeffs.items()}
    return QSeries._raw(a.vars, out, a.max_order + q_power, a.min_order + q_power)


def series_shift_q(a: QSeries, k: int) -> QSeries:
    """Shift every q-exponent by k (k may be negative)."""
    return series_mul_monomial(a, 1, k)


def series_scale_q(a: QSeries, m: int) -> QSeries:
    """Substitute q -> q^m for m >= 1 (exponents multiply by m).

    The result is complete through m*max_order + m - 1: orders that are
    not multiples of m are identically zero.
    """
    if m < 1:
        raise SeriesError("q-scaling factor must be >= 1")
    out = {k * m: dict(t) for k, t in a._coeffs.items()}
    return QSeries._raw(a.vars, out, a.max_order * m + m - 1, a.min_order * m)


def series_negate_q(a: QSeries) -> QSeries:
    """Substitute q -> -q (negate coefficients of odd orders)."""
    out = {k: (_terms_scale(t, -1) if k % 2 else dict(t)) for k, t in a._coeffs.items()}
    return QSeries._raw(a.vars, {k: t for k, t in out.items() if t},
                        a.max_order, a.min_order)


def series_negate_var(a: QSeries, var: str) -> QSeries:
    """Substitute var -> -var (negate terms where var has odd exponent)."""
    idx = a.vars.index(var)
    out: dict[int, dict] = {}
    for k, t in a._coeffs.items():
        out[k] = {e: (-c if e[idx] % 2 else c) for e, c in t.items()}
    return QSeries._raw(a.vars, out, a.max_order, a.min_order)


def series_truncate(a: QSeries, N: int) -> QSeries:
    """Lower the reliable order to N, discarding higher stored terms."""
    if N > a.max_order:
        raise SeriesError(f"cannot extend reliable order {a.max_order} to {N}")
    return QSeries._raw(a.vars, {k: dict(t) for k, t in a._coeffs.items() if k <= N},
                        N, a.min_order)


def series_inverse(a: QSeries, out_max: int | None = None) -> QSeries:
    """Multiplicative inverse of a series with unit leading coefficient.

    The coefficient of the lowest nonzero order must be +-1 times a single
    monomial (typically the constant term 1).  If that order is m, the
    inverse is reliable through a.max_order - 2m.
    """
    if not a._coeffs:
        raise NonUnitLeadingCoefficient("cannot invert the zero series")
    m = min(a._coeffs)
    lead = a._coeffs[m]
    if len(lead) != 1:
        raise NonUnitLeadingCoefficient(
            f"leading coefficient at q^{m} is not a monomial: {MultiCoeff._raw(a.vars, lead).text()}")
    (u_exps, u_c), = lead.items()
    if u_c not in (1, -1):
        raise NonUnitLeadingCoefficient(
            f"leading coefficient at q^{m} has non-unit integer part {u_c}")
    u_inv = (tuple(-p for p in u_exps), u_c)  # (+-1)^-1 == +-1

    bound = a.max_order - 2 * m
    if out_max is not None and out_max < bound:
        bound = out_max
    kmax = bound + m  # c_k needed for k up to result order + m

    # Normalize: a = u q^m (1 + sum_{i>=1} r_i q^i), invert the parenthesis.
    r: dict[int, dict] = {}
    for k, t in a._coeffs.items():
        i = k - m
        if 0 < i <= kmax:
            r[i] = _terms_mul_monomial(t, u_inv[1], u_inv[0])

    c: dict[int, dict] = {0: {a.vars.zeros(): 1}}
    for k in range(1, kmax + 1):
        acc: dict = {}
        for i, ri in r.items():
            if i > k:
                continue
            ck = c.get(k - i)
            if ck:
                _terms_add_into(acc, _terms_mul(ri, ck), -1)
        if acc:
            c[k] = acc

    out: dict[int, dict] = {}
    for k, t in c.items():
        if k - m <= bound and t:
            out[k - m] = _terms_mul_monomial(t, u_inv[1], u_inv[0])
    return QSeries._raw(a.vars, out, bound, -m)


def series_substitute(a: QSeries, var: str, coeff: int = 1, q_power: int = 0,
                      powers: Mapping[str, int] | None = None) -> QSeries:
    """Substitute ``var -> coeff * q^q_power * (monomial in the other vars)``.

    Every stored coefficient is a finite polynomial, so a substitution
    with q_power == 0 is always exact and keeps the truncation order.
    For q_power > 0 the result stays reliable through max_order provided
    the substituted variable occurs with nonnegative exponents only (this
    is validated on the stored terms and assumed of the tail, which holds
    for every counting series in this package).  Negative q_power is
    rejected: terms beyond the truncation could then fall below it.
    """
    idx = a.vars.index(var)
    if not coeff:
        raise SubstitutionError("substitution value must be a nonzero monomial")
    if q_power < 0:
        raise SubstitutionError("substitution with a negative q-power is not supported")
    if powers and var in powers:
        raise SubstitutionError(f"substitution value may not mention {var!r} itself")
    delta = a.vars.exponents(powers)

    out: dict[int, dict] = {}
    for d, t in a._coeffs.items():
        for e, cval in t.items():
            k = e[idx]
            if k < 0:
                if q_power > 0:
                    raise SubstitutionError(
                        f"{var!r} occurs with negative exponent {k}; a q-power "
                        "substitution cannot certify the truncation order")
                if abs(coeff) != 1:
                    raise SubstitutionError(
                        f"cannot divide by integer coefficient {coeff} "
                        f"({var!r} occurs with exponent {k})")
            d2 = d + q_power * k
            if d2 > a.max_order:
                continue
            cpow = coeff ** k if k >= 0 else coeff ** (-k)  # coeff is +-1 when k < 0
            e2 = list(e)
            e2[idx] = 0
            if k:
                for j, dp in enumerate(delta):
                    if dp:
                        e2[j] += dp * k
            e2 = tuple(e2)
            acc = out.get(d2)
            if acc is None:
                acc = out[d2] = {}
            v = acc.get(e2, 0) + cval * cpow
            if v:
                acc[e2] = v
            elif e2 in acc:
                del acc[e2]
    out = {k: t for k, t in out.items() if t}
    mn = min([a.min_order] + list(out)) if out else a.min_order
    return QSeries._raw(a.vars, out, a.max_order, mn)


def series_project(a: QSeries, new_vars: VarSet) -> QSeries:
    """Re-express over another variable set.

    Variables dropped from the set must occur with exponent 0 everywhere;
    newly added variables get exponent 0.
    """
    src = a.vars.names
    mapping = [new_vars._index.get(nm) for nm in src]
    out: dict[int, dict] = {}
    for d, t in a._coeffs.items():
        acc: dict = {}
        for e, c in t.items():
            e2 = [0] * len(new_vars)
            for pos, p in enumerate(e):
                if not p:
                    continue
                j = mapping[pos]
                if j is None:
                    raise SeriesError(
                        f"cannot drop variable {src[pos]!r}: exponent {p} at q^{d}")
                e2[j] = p
            key = tuple(e2)
            acc[key] = acc.get(key, 0) + c
        acc = {e: c for e, c in acc.items() if c}
        if acc:
            out[d] = acc
    return QSeries._raw(new_vars, out, a.max_order, a.min_order)


def series_eval_zero(a: QSeries, var: str) -> QSeries:
    """Exact evaluation at var = 0 (keeps terms where var has exponent 0)."""
    idx = a.vars.index(var)
    out: dict[int, dict] = {}
    for d, t in a._coeffs.items():
        acc = {}
        for e, c in t.items():
            if e[idx] < 0:
                raise SubstitutionError(f"{var!r} occurs with negative exponent; no value at 0")
            if e[idx] == 0:
                acc[e] = c
        if acc:
            out[d] = acc
    return QSeries._raw(a.vars, out, a.max_order, a.min_order)


# ---------------------------------------------------------------------------
# Equality
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EqualityReport:
    """Outcome of comparing two series up to their common reliable order."""

    status: str  # "MATCH" or "MISMATCH"
    order: int
    q_exponent: int | None = None
    lhs: MultiCoeff | None = None
    rhs: MultiCoeff | None = None

    @property
    def matched(self) -> bool:
        return self.status == "MATCH"


def series_equal(a: QSeries, b: QSeries) -> EqualityReport:
    """Compare coefficientwise up to min(a.max_order, b.max_order)."""
    _check_same_vars(a, b)
    order = min(a.max_order, b.max_order)
    lo = min(a.min_order, b.min_order, *([0] if not (a._coeffs or b._coeffs) else
                                         [min(list(a._coeffs) + list(b._coeffs) + [0])]))
    for d in range(lo, order + 1):
        ta = a._coeffs.get(d)
        tb = b._coeffs.get(d)
        if ta == tb or (not ta and not tb):
            continue
        return EqualityReport(
            "MISMATCH", order, d,
            MultiCoeff._raw(a.vars, dict(ta or {})),
            MultiCoeff._raw(b.vars, dict(tb or {})),
        )
    return EqualityReport("MATCH", order)


# ---------------------------------------------------------------------------
# q-series building blocks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PochSpec:
    """Specification of a q-Pochhammer symbol (a; q^step)_length.

    The base a is ``coeff * q^q_power * monomial(powers)``.  An infinite
    length requires q_power >= 1 so that all but finitely many factors
    are congruent to 1 modulo q^(N+1).
    """

    coeff: int
    q_power: int
    powers: tuple[tuple[str, int], ...] = ()
    step: int = 1
    length: int | _Infinite = INFINITE

    def __post_init__(self):
        if self.step < 1:
            raise SeriesError("Pochhammer step must be a positive integer")
        if not isinstance(self.length, _Infinite) and self.length < 0:
            raise SeriesError("Pochhammer length must be nonnegative or INFINITE")

    @staticmethod
    def base(coeff: int = 1, q: int = 0, step: int = 1,
             length: int | _Infinite = INFINITE, **powers: int) -> "PochSpec":
        return PochSpec(coeff, q, tuple(sorted(powers.items())), step, length)


def pochhammer(spec: PochSpec, vars: VarSet, N: int) -> QSeries:
    """Expand prod_i (1 - a q^(step*i)) exactly, truncated at order N.

    Finite lengths multiply every factor; the infinite product stops at
    the first factor whose lowest q-power exceeds N.
    """
    infinite = isinstance(spec.length, _Infinite)
    if infinite and spec.q_power <= 0:
        raise SeriesError("infinite Pochhammer products need a base q-power >= 1")
    delta = vars.exponents(dict(spec.powers))
    acc = qs_one(vars, N)
    i = 0
    while True:
        e = spec.q_power + spec.step * i
        if infinite:
            if e > N:
                break
        elif i >= spec.length:
            break
        acc = series_sub(acc, series_mul_monomial(acc, spec.coeff, e, dict(spec.powers)))
        acc = series_truncate(acc, N)
        i += 1
    return acc


@lru_cache(maxsize=None)
def gauss_coefficient_list(n: int, m: int) -> tuple[int, ...]:
    """Dense coefficient list of the Gaussian binomial [n choose m]_q.

    Computed as prod_{i=1..m} (1 - q^(n-m+i)) / (1 - q^i) with exact
    polynomial division (independent of the Pascal recurrences, which the
    test suite checks as properties).  Out-of-range (n, m) gives ().
    """
    if m < 0 or n < 0 or m > n:
        return ()
    poly = [1]
    for i in range(1, m + 1):  # multiply by 1 - q^(n-m+i)
        s = n - m + i
        out = poly + [0] * s
        for j, c in enumerate(poly):
            out[j + s] -= c
        poly = out
    for i in range(1, m + 1):  # divide by 1 - q^i, exactly
        out = [0] * (len(poly) - i)
        for j in range(len(out)):
            out[j] = poly[j] + (out[j - i] if j >= i else 0)
        for j in range(len(out), len(poly)):  # remainder must vanish
            r = poly[j] + (out[j - i] if j >= i else 0)
            if r:
                raise SeriesError("non-exact Gaussian binomial division")
        poly = out
    return tuple(poly)


def q_binomial(n: int, m: int, N: int, vars: VarSet = EMPTY_VARS) -> QSeries:
    """Gaussian binomial coefficient [n choose m]_q as a QSeries.

    Out-of-range m (m < 0 or m > n) gives the zero series.
    """
    if n < 0:
        raise SeriesError("q_binomial needs n >= 0")
    coeffs = gauss_coefficient_list(n, m)
    zero = vars.zeros()
    return QSeries._raw(vars, {k: {zero: c} for k, c in enumerate(coeffs) if c and k <= N},
                        N, 0)


def triple_product(N: int, vars: VarSet | None = None) -> tuple[QSeries, QSeries]:
    """Both sides of the Jacobi triple product, truncated at order N.

    lhs = sum over all integers n with n^2 <= N of z^n q^(n^2);
    rhs = (q^2; q^2)_oo (-zq; q^2)_oo (-q/z; q^2)_oo.
    """
    if vars is None:
        vars = VarSet("z")
    if "z" not in vars:
        raise SeriesError("triple_product needs a VarSet containing z")
    zi = vars.index("z")
    coeffs: dict[int, dict] = {}
    n = 0
    while n * n <= N:
        for s in ({n, -n} if n else {0}):
            e = [0] * len(vars)
            e[zi] = s
            coeffs.setdefault(n * n, {})[tuple(e)] = 1
        n += 1
    lhs = QSeries._raw(vars, coeffs, N, 0)
    rhs = series_mul(
        series_mul(
            pochhammer(PochSpec.base(1, q=2, step=2), vars, N),
            pochhammer(PochSpec.base(-1, q=1, step=2, z=1), vars, N),
        ),
        pochhammer(PochSpec.base(-1, q=1, step=2, z=-1), vars, N),
    )
    return lhs, rhs


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _order_text(k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return "q"
    return f"q^{k}"


def series_text(s: QSeries, max_terms: int | None = None) -> str:
    """Human-readable rendering, low orders first."""
    if s.is_zero:
        return f"0 + O(q^{s.max_order + 1})"
    pieces = []
    for k in s.support():
        mc = MultiCoeff._raw(s.vars, s._coeffs[k])
        ct = mc.text()
        qt = _order_text(k)
        if not qt:
            pieces.append(ct)
        elif len(mc.terms) > 1:
            pieces.append(f"({ct})*{qt}")
        elif ct == "1":
            pieces.append(qt)
        elif ct == "-1":
            pieces.append(f"-{qt}")
        else:
            pieces.append(f"{ct}*{qt}")
        if max_terms and len(pieces) >= max_terms:
            pieces.append("...")
            break
    return " + ".join(pieces).replace("+ -", "- ") + f" + O(q^{s.max_order + 1})"


def series_terms_json(s: QSeries) -> list[dict]:
    """Canonical JSON term list: sorted by (q-exponent, exponent vector),
    integer coefficients as decimal strings."""
    out = []
    for k in s.support():
        for e, c in sorted(s._coeffs[k].items()):
            out.append({"q": k, "exps": list(e), "coeff": str(c)})
    return out
