"""Ramanujan theta functions and q-Pochhammer products as QSeries."""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from src.series import (
    NonInvertibleError,
    QSeries,
    agrees,
    from_coeffs,
    one,
    power_to_order,
    zero,
)

logger = logging.getLogger(__name__)


class DivergenceError(ArithmeticError):
    """Raised for f(a, b) with |ab| >= 1, i.e. ea + eb < 1."""


@dataclass(frozen=True)
class ThetaSpec:
    """f(sign_a * q^ea, sign_b * q^eb)."""

    sign_a: int
    sign_b: int
    ea: int
    eb: int

    def __post_init__(self):
        if self.sign_a not in (1, -1) or self.sign_b not in (1, -1):
            raise ValueError(f"Theta signs must be +1 or -1, got {self.sign_a}, {self.sign_b}")

    def swapped(self) -> "ThetaSpec":
        return ThetaSpec(self.sign_b, self.sign_a, self.eb, self.ea)


@dataclass(frozen=True)
class PochhammerSpec:
    """(a_1, ..., a_m; q^modulus)_inf ** power with a_i = sign * q^exponent."""

    args: Tuple[Tuple[int, int], ...]
    modulus: int
    power: int = 1

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError(f"Pochhammer modulus must be >= 1, got {self.modulus}")
        object.__setattr__(self, "args", tuple((int(s), int(e)) for s, e in self.args))


def _exponent(spec: ThetaSpec, n: int) -> int:
    return (spec.ea * n * (n + 1) + spec.eb * n * (n - 1)) // 2


def _sign(spec: ThetaSpec, n: int) -> int:
    sign = 1
    if spec.sign_a < 0 and (n * (n + 1) // 2) % 2:
        sign = -sign
    if spec.sign_b < 0 and (n * (n - 1) // 2) % 2:
        sign = -sign
    return sign


def _vertex(spec: ThetaSpec) -> int:
    """Integer left of the minimum of the exponent quadratic."""
    return (spec.eb - spec.ea) // (2 * (spec.ea + spec.eb))


def theta_valuation(spec: ThetaSpec) -> int:
    """Smallest exponent among the terms of the bilateral sum."""
    if spec.ea + spec.eb < 1:
        raise DivergenceError(f"f(q^{spec.ea}, q^{spec.eb}) diverges: ea + eb < 1")
    n0 = _vertex(spec)
    return min(_exponent(spec, n0), _exponent(spec, n0 + 1))


def theta_series(spec: ThetaSpec, order: int) -> QSeries:
    """Expand f(sign_a q^ea, sign_b q^eb) exactly to order.

    Only finitely many n have exponent <= order; they are enumerated outward
    from the vertex of the exponent quadratic in both directions.

    Raises:
        DivergenceError: ea + eb < 1.
    """
    if spec.ea + spec.eb < 1:
        raise DivergenceError(f"f(q^{spec.ea}, q^{spec.eb}) diverges: ea + eb < 1")
    n0 = _vertex(spec)
    lo = min(_exponent(spec, n0), _exponent(spec, n0 + 1))
    if lo > order:
        return zero(order)
    out = [0] * (order - lo + 1)
    for start, step in ((n0 + 1, 1), (n0, -1)):
        n = start
        while True:
            e = _exponent(spec, n)
            if e > order:
                break
            out[e - lo] += _sign(spec, n)
            n += step
    return from_coeffs(out, order, min_exp=lo)


# --- Pochhammer products ---

def _factor_plan(specs: Sequence[PochhammerSpec]) -> Tuple[int, int, List[Tuple[int, int, int]], List[Tuple[int, int, int, int]]]:
    """Split the products into a constant, a q-shift and binomial factors.

    Returns (const, shift, finite, infinite) where finite holds (c, d, power)
    for factors (1 - c q^d) with d > 0 coming from rewritten negative exponents,
    and infinite holds (c, first_d, step, power) for the positive tails.
    """
    const, shift = 1, 0
    finite: List[Tuple[int, int, int]] = []
    infinite: List[Tuple[int, int, int, int]] = []
    for spec in specs:
        if spec.power == 0:
            continue
        for c, e in spec.args:
            d = e
            while d < 0:
                # 1 - c q^d = -c q^d (1 - c q^-d)
                shift += d * spec.power
                if (-c) ** abs(spec.power) < 0:
                    const = -const
                finite.append((c, -d, spec.power))
                d += spec.modulus
            if d == 0:
                if c == 1:
                    if spec.power < 0:
                        raise NonInvertibleError("Zero factor (1 - 1) under a negative power")
                    const = 0
                elif spec.power < 0:
                    raise NonInvertibleError("Factor (1 + 1) = 2 is not a unit")
                else:
                    const *= 2 ** spec.power
                d += spec.modulus
            infinite.append((c, d, spec.modulus, spec.power))
    return const, shift, finite, infinite


def _apply(a: List[int], c: int, d: int, p: int) -> None:
    """Multiply a in place by (1 - c q^d)^p, dividing when p < 0."""
    size = len(a)
    if d >= size:
        return
    for _ in range(abs(p)):
        if p > 0:
            a[d:] = [x - c * y for x, y in zip(a[d:], a[: size - d])]
        else:
            for start in range(d, size, d):
                stop = min(start + d, size)
                a[start:stop] = [x + c * y for x, y in zip(a[start:stop], a[start - d:stop - d])]


def product_series(specs: Sequence[PochhammerSpec], order: int) -> QSeries:
    """Multiply several Pochhammer products in a single pass.

    Every binomial factor (1 - c q^d) is applied in place to one dense
    coefficient list, so negative powers never need a general inversion.
    """
    const, shift, finite, infinite = _factor_plan(specs)
    if const == 0:
        return zero(order)
    size = order - shift + 1
    if size <= 0:
        return zero(order)
    a = [0] * size
    a[0] = const
    for c, d, p in finite:
        _apply(a, c, d, p)
    for c, d, step, p in infinite:
        while d < size:
            _apply(a, c, d, p)
            d += step
    return from_coeffs(a, order, min_exp=shift)


def pochhammer_series(spec: PochhammerSpec, order: int) -> QSeries:
    """Expand (args; q^M)_inf ** power: the finite product first, then the power.

    Raises:
        NonInvertibleError: the product is not a unit and power < 0.
    """
    if spec.power == 0:
        return one(order)
    base = PochhammerSpec(spec.args, spec.modulus, 1)
    return power_to_order(lambda n: product_series([base], n), spec.power, order)


# --- Jacobi triple product ---

def jtpi_product(spec: ThetaSpec) -> PochhammerSpec:
    """(-a, -b, ab; ab)_inf for a = sign_a q^ea, b = sign_b q^eb.

    A negative base ab = -q^M splits every argument x into x, -x q^M over q^2M.
    """
    m = spec.ea + spec.eb
    if m < 1:
        raise DivergenceError(f"f(q^{spec.ea}, q^{spec.eb}) diverges: ea + eb < 1")
    base_sign = spec.sign_a * spec.sign_b
    args = [(-spec.sign_a, spec.ea), (-spec.sign_b, spec.eb), (base_sign, m)]
    if base_sign == 1:
        return PochhammerSpec(tuple(args), m)
    split = args + [(-s, e + m) for s, e in args]
    return PochhammerSpec(tuple(split), 2 * m)


def jtpi_check(spec: ThetaSpec, order: int, product: Optional[PochhammerSpec] = None) -> bool:
    """True iff f(a, b) = (-a, -b, ab; ab)_inf coefficientwise to order.

    product replaces the right-hand side, e.g. to confirm a perturbed one is rejected.
    """
    lhs = theta_series(spec, order)
    rhs = pochhammer_series(product or jtpi_product(spec), order)
    ok = agrees(lhs, rhs)
    if not ok:
        logger.debug(f"JTPI mismatch for {spec} at order {order}")
    return ok


# --- Named specializations ---

NAMED_THETA = {
    "phi": ThetaSpec(1, 1, 1, 1),
    "psi": ThetaSpec(1, 1, 1, 3),
    "f_minus": ThetaSpec(-1, -1, 1, 2),
}


def named_theta(name: str, base_exponent: int, order: int) -> QSeries:
    """phi(q^k) = f(q^k, q^k), psi(q^k) = f(q^k, q^3k), f_minus(q^k) = f(-q^k, -q^2k)."""
    if name not in NAMED_THETA:
        raise KeyError(f"Unknown theta function: {name}")
    if base_exponent < 1:
        raise ValueError(f"Base exponent must be positive, got {base_exponent}")
    spec = NAMED_THETA[name]
    return theta_series(
        ThetaSpec(spec.sign_a, spec.sign_b, spec.ea * base_exponent, spec.eb * base_exponent),
        order,
    )
