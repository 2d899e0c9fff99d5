"""Exact truncated Laurent series in q with big-integer coefficients."""

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union


class InvalidOrderError(ValueError):
    """Raised when a truncation order cannot hold the requested terms."""


class OutOfOrderError(IndexError):
    """Raised when a coefficient beyond the truncation order is requested."""


class NonInvertibleError(ArithmeticError):
    """Raised when a series is not a unit over the integers."""


@dataclass(frozen=True)
class QSeries:
    """Coefficients of q^(min_exp + i), exact for every exponent <= order.

    The zero series is stored with min_exp = 0 and an empty coefficient tuple.
    """

    min_exp: int
    coeffs: Tuple[int, ...]
    order: int

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> int:
        """Highest exponent with a stored nonzero coefficient."""
        return self.min_exp + len(self.coeffs) - 1

    def __add__(self, other: "QSeries") -> "QSeries":
        return add(self, other)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return sub(self, other)

    def __neg__(self) -> "QSeries":
        return negate(self)

    def __mul__(self, other: Union["QSeries", int]) -> "QSeries":
        if isinstance(other, int):
            return scale(self, other)
        return mul(self, other)

    def __rmul__(self, other: int) -> "QSeries":
        return scale(self, other)

    def __pow__(self, n: int) -> "QSeries":
        return power(self, n)

    def __getitem__(self, e: int) -> int:
        return coeff(self, e)

    def __repr__(self) -> str:
        shown = ", ".join(f"{c}q^{e}" for e, c in list(terms(self))[:8])
        more = " ..." if len(self.coeffs) > 8 else ""
        return f"QSeries({shown or '0'}{more} + O(q^{self.order + 1}))"


def _normalize(min_exp: int, coeffs: Sequence[int], order: int) -> QSeries:
    """Drop terms beyond order and strip leading/trailing zeros."""
    keep = order - min_exp + 1
    values = list(coeffs[: max(keep, 0)])
    hi = len(values)
    while hi and values[hi - 1] == 0:
        hi -= 1
    lo = 0
    while lo < hi and values[lo] == 0:
        lo += 1
    if lo == hi:
        return QSeries(0, (), order)
    return QSeries(min_exp + lo, tuple(values[lo:hi]), order)


# --- Constructors ---

def zero(order: int) -> QSeries:
    return QSeries(0, (), order)


def monomial(c: int, e: int, order: int) -> QSeries:
    """The series c*q^e exact to order."""
    if order < e:
        raise InvalidOrderError(f"Order {order} is below the monomial exponent {e}")
    if c == 0:
        return zero(order)
    return QSeries(e, (c,), order)


def one(order: int) -> QSeries:
    return truncate(QSeries(0, (1,), max(order, 0)), order)


def from_coeffs(coeffs: Iterable[int], order: int, min_exp: int = 0) -> QSeries:
    """Build from a dense coefficient list starting at q^min_exp."""
    return _normalize(min_exp, [int(c) for c in coeffs], order)


def from_terms(terms_map: Dict[int, int], order: int) -> QSeries:
    """Build from an {exponent: coefficient} map; exponents above order are dropped."""
    kept = {e: c for e, c in terms_map.items() if e <= order and c}
    if not kept:
        return zero(order)
    lo = min(kept)
    dense = [0] * (max(kept) - lo + 1)
    for e, c in kept.items():
        dense[e - lo] = c
    return _normalize(lo, dense, order)


# --- Inspection ---

def valuation(x: QSeries) -> int:
    """Lowest nonzero exponent; order + 1 for a series that is zero to its order."""
    return x.order + 1 if x.is_zero else x.min_exp


def coeff(x: QSeries, e: int) -> int:
    """Exact coefficient of q^e."""
    if e > x.order:
        raise OutOfOrderError(f"Exponent {e} is beyond the truncation order {x.order}")
    i = e - x.min_exp
    if i < 0 or i >= len(x.coeffs):
        return 0
    return x.coeffs[i]


def terms(x: QSeries) -> Iterator[Tuple[int, int]]:
    """Yield (exponent, coefficient) for the nonzero terms."""
    for i, c in enumerate(x.coeffs):
        if c:
            yield x.min_exp + i, c


def dense(x: QSeries, start: Optional[int] = None) -> List[int]:
    """Coefficients from start (default min_exp) through order."""
    lo = x.min_exp if start is None else start
    return [coeff(x, e) for e in range(lo, x.order + 1)]


def agrees(x: QSeries, y: QSeries) -> bool:
    """True when x and y have the same coefficients up to the smaller order."""
    n = min(x.order, y.order)
    a, b = truncate(x, n), truncate(y, n)
    return a.min_exp == b.min_exp and a.coeffs == b.coeffs


# --- Ring operations ---

def add(x: QSeries, y: QSeries) -> QSeries:
    order = min(x.order, y.order)
    if x.is_zero:
        return truncate(y, order)
    if y.is_zero:
        return truncate(x, order)
    lo = min(x.min_exp, y.min_exp)
    hi = min(max(x.max_exp, y.max_exp), order)
    if hi < lo:
        return zero(order)
    out = [0] * (hi - lo + 1)
    for src in (x, y):
        for i, c in enumerate(src.coeffs):
            j = src.min_exp + i - lo
            if j >= len(out):
                break
            out[j] += c
    return _normalize(lo, out, order)


def negate(x: QSeries) -> QSeries:
    return QSeries(x.min_exp, tuple(-c for c in x.coeffs), x.order)


def sub(x: QSeries, y: QSeries) -> QSeries:
    return add(x, negate(y))


def scale(x: QSeries, c: int) -> QSeries:
    if c == 0:
        return zero(x.order)
    return QSeries(x.min_exp, tuple(c * a for a in x.coeffs), x.order)


def mul(x: QSeries, y: QSeries) -> QSeries:
    """Cauchy product, exact to min(x.order + val(y), y.order + val(x))."""
    order = min(x.order + valuation(y), y.order + valuation(x))
    if x.is_zero or y.is_zero:
        return zero(order)
    lo = x.min_exp + y.min_exp
    size = order - lo + 1
    if size <= 0:
        return zero(order)
    out = [0] * size
    # outer loop over the operand with fewer nonzero terms
    if sum(1 for c in x.coeffs if c) > sum(1 for c in y.coeffs if c):
        x, y = y, x
    right = y.coeffs
    for i, c in enumerate(x.coeffs):
        if i >= size:
            break
        if not c:
            continue
        limit = min(len(right), size - i)
        out[i:i + limit] = [a + c * b for a, b in zip(out[i:i + limit], right[:limit])]
    return _normalize(lo, out, order)


def invert(x: QSeries) -> QSeries:
    """Multiplicative inverse of a series whose lowest coefficient is +1 or -1.

    If x = q^m * (c0 + c1 q + ...) is exact to N, the inverse starts at q^-m and
    is exact to N - 2m.

    Raises:
        NonInvertibleError: x is zero or its lowest coefficient is not a unit.
    """
    if x.is_zero:
        raise NonInvertibleError("Cannot invert a series that is zero to its order")
    lead = x.coeffs[0]
    if lead not in (1, -1):
        raise NonInvertibleError(f"Lowest coefficient {lead} is not a unit")
    m = x.min_exp
    order = x.order - 2 * m
    length = x.order - m + 1
    src = [(i, c) for i, c in enumerate(x.coeffs[:length]) if c and i]
    out = [0] * length
    out[0] = lead
    for n in range(1, length):
        acc = 0
        for i, c in src:
            if i > n:
                break
            acc += c * out[n - i]
        out[n] = -lead * acc
    return _normalize(-m, out, order)


def power(x: QSeries, n: int) -> QSeries:
    """x**n by binary exponentiation; negative n goes through invert."""
    if n == 0:
        return one(x.order)
    if n < 0:
        return power(invert(x), -n)
    result = None
    base = x
    while n:
        if n & 1:
            result = base if result is None else mul(result, base)
        n >>= 1
        if n:
            base = mul(base, base)
    return result


# --- Reshaping ---

def truncate(x: QSeries, order: int) -> QSeries:
    """Forget every coefficient above order; never raises the order."""
    if order >= x.order:
        return x
    return _normalize(x.min_exp, x.coeffs, order)


def shift(x: QSeries, d: int) -> QSeries:
    """Multiply by q^d."""
    if x.is_zero:
        return zero(x.order + d)
    return QSeries(x.min_exp + d, x.coeffs, x.order + d)


def dilate(x: QSeries, k: int) -> QSeries:
    """Substitute q -> q^k for k >= 1."""
    if k < 1:
        raise ValueError(f"Dilation factor must be positive, got {k}")
    order = k * (x.order + 1) - 1
    if x.is_zero or k == 1:
        return QSeries(x.min_exp, x.coeffs, order)
    out = [0] * (k * (len(x.coeffs) - 1) + 1)
    out[::k] = x.coeffs
    return QSeries(k * x.min_exp, tuple(out), order)


def flip_sign(x: QSeries) -> QSeries:
    """Substitute q -> -q."""
    return QSeries(
        x.min_exp,
        tuple(-c if (x.min_exp + i) % 2 else c for i, c in enumerate(x.coeffs)),
        x.order,
    )


# --- Order budgeting for products of lazily built factors ---

def mul_to_order(makers: Sequence[Callable[[int], QSeries]], order: int) -> QSeries:
    """Multiply factors built on demand so the product is exact to `order`.

    Each maker takes a truncation order and returns its factor. Factors with
    negative valuation force the others to be rebuilt at a higher order.
    """
    if not makers:
        return one(order)
    parts = [make(order) for make in makers]
    neg = sum(min(0, p.min_exp) for p in parts if not p.is_zero)
    for i, p in enumerate(parts):
        if p.is_zero:
            parts[i] = makers[i](order - neg)
            if parts[i].is_zero:
                return zero(order)
    vals = [p.min_exp for p in parts]
    total = sum(vals)
    for i, p in enumerate(parts):
        need = order - (total - vals[i])
        if need > p.order:
            parts[i] = makers[i](need)
    result = parts[0]
    for p in parts[1:]:
        result = mul(result, p)
    return truncate(result, order)


def power_to_order(make: Callable[[int], QSeries], n: int, order: int) -> QSeries:
    """make(.)**n exact to `order`, rebuilding the base at the order it needs."""
    if n == 0:
        return one(order)
    base = make(order)
    if base.is_zero:
        if n < 0:
            raise NonInvertibleError("Zero series under a negative power")
        if order < 0:
            base = make(0)
        if base.is_zero:
            return zero(order)
    v = base.min_exp
    need = order - (n - 1) * v if n > 0 else order + (1 - n) * v
    if need > base.order:
        base = make(need)
    return truncate(power(base, n), order)
