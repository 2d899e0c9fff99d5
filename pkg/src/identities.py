"""Residue-class extraction and the theta identities behind the vanishing proofs.

Covers the extraction operator E_{k,l}, the Entry 30 product formulas, the cube
decomposition with its M(mu, 1) / M(mu, 2) series, and the n-th power
dissection of f(a, b).
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.series import (
    QSeries,
    add,
    agrees,
    dilate,
    flip_sign,
    from_coeffs,
    from_terms,
    mul,
    mul_to_order,
    power_to_order,
    scale,
    shift,
    terms,
    truncate,
    zero,
)
from src.theta import (
    ThetaSpec,
    jtpi_check,
    theta_series,
    theta_valuation,
)

logger = logging.getLogger(__name__)

VANISHES = "vanishes"
FAILS = "fails"
VACUOUS = "vacuous"


class PreconditionError(ValueError):
    """Raised when an identity is instantiated outside its hypotheses."""


class DissectionError(ValueError):
    """Raised when the n-th power dissection is requested for a divergent f(a, b)."""


# --- Extraction ---

def _check_modulus(k: int) -> None:
    if k < 1:
        raise ValueError(f"Modulus must be positive, got {k}")


def extract(x: QSeries, k: int, l: int) -> QSeries:
    """Keep the coefficients at exponents = l (mod k); l is reduced mod k."""
    _check_modulus(k)
    l %= k
    return from_terms({e: c for e, c in terms(x) if e % k == l}, x.order)


def compress(x: QSeries, k: int, l: int) -> QSeries:
    """Re-index the class l (mod k): coefficient of q^n is the one at k*n + l."""
    _check_modulus(k)
    l %= k
    kept = {(e - l) // k: c for e, c in terms(x) if e % k == l}
    return from_terms(kept, (x.order - l) // k)


@dataclass(frozen=True)
class VanishingResult:
    status: str
    exponent: Optional[int] = None
    coefficient: Optional[int] = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.status == VANISHES


def class_count(k: int, l: int, lower: int, order: int) -> int:
    """Number of exponents e = l (mod k) with lower <= e <= order."""
    first = lower + (l - lower) % k
    if first > order:
        return 0
    return (order - first) // k + 1


def is_vanishing(x: QSeries, k: int, l: int, start: Optional[int] = None) -> VanishingResult:
    """Check that every in-order coefficient at exponents = l (mod k) is zero.

    Args:
        x: the series.
        k, l: the progression k*n + l; l is reduced mod k.
        start: only exponents >= start are examined; by default the class is
            examined from min(0, x.min_exp).

    Returns:
        VanishingResult with status vanishes, vacuous (x is zero to its order)
        or fails with the smallest offending exponent and its coefficient.
    """
    _check_modulus(k)
    l %= k
    lower = min(0, x.min_exp) if start is None else start
    checked = class_count(k, l, lower, x.order)
    if x.is_zero:
        return VanishingResult(VACUOUS, checked=checked)
    for e, c in terms(x):
        if e >= lower and e % k == l:
            return VanishingResult(FAILS, e, c, checked)
    return VanishingResult(VANISHES, checked=checked)


# --- Signed monomials and the Entry 30 formulas ---

@dataclass(frozen=True)
class Monomial:
    sign: int
    exp: int

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.sign * other.sign, self.exp + other.exp)

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.sign * other.sign, self.exp - other.exp)

    def __pow__(self, n: int) -> "Monomial":
        return Monomial(self.sign ** abs(n), self.exp * n)


UNIT = Monomial(1, 0)


def _theta(x: Monomial, y: Monomial) -> ThetaSpec:
    return ThetaSpec(x.sign, y.sign, x.exp, y.exp)


def theta_product(prefactor: Monomial, specs: Sequence[ThetaSpec], order: int) -> QSeries:
    """prefactor * prod f(...) exact to order."""
    makers = [lambda n, spec=spec: theta_series(spec, n) for spec in specs]
    prod = mul_to_order(makers, order - prefactor.exp)
    return scale(shift(prod, prefactor.exp), prefactor.sign)


def entry30_sides(which: str, monomials: Sequence[Monomial], order: int) -> Tuple[QSeries, QSeries]:
    """Left and right sides of R1, R2 or R3 for monomial arguments."""
    if which == "R1":
        if len(monomials) != 4:
            raise PreconditionError(f"R1 takes four monomials a, b, c, d, got {len(monomials)}")
        a, b, c, d = monomials
        if a * b != c * d:
            raise PreconditionError(f"R1 needs ab = cd, got ab = {a * b}, cd = {c * d}")
        lhs = theta_product(UNIT, [_theta(c, d), _theta(a, b)], order)
        rhs = add(
            theta_product(a, [_theta(b / d, a * c * d * d), _theta(b / c, a * c * c * d)], order),
            theta_product(UNIT, [_theta(a * d, b * c), _theta(a * c, b * d)], order),
        )
        return lhs, rhs
    if len(monomials) != 2:
        raise PreconditionError(f"{which} takes two monomials a, b, got {len(monomials)}")
    a, b = monomials
    if which == "R2":
        lhs = theta_product(UNIT, [_theta(a, b), _theta(a, b)], order)
        rhs = add(
            theta_product(a, [_theta(UNIT, (a * b) ** 2), _theta(b / a, a ** 3 * b)], order),
            theta_product(UNIT, [_theta(a * b, a * b), _theta(a ** 2, b ** 2)], order),
        )
        return lhs, rhs
    if which == "R3":
        lhs = theta_product(UNIT, [_theta(a, b)], order)
        rhs = add(
            theta_product(a, [_theta(b / a, a ** 5 * b ** 3)], order),
            theta_product(UNIT, [_theta(a ** 3 * b, a * b ** 3)], order),
        )
        return lhs, rhs
    raise KeyError(f"Unknown Entry 30 identity: {which}")


def entry30_check(which: str, monomials: Sequence[Monomial], order: int) -> bool:
    """True iff both sides of the Entry 30 identity agree to order."""
    lhs, rhs = entry30_sides(which, monomials, order)
    return agrees(lhs, rhs)


# --- Cube decomposition ---

@dataclass(frozen=True)
class MPair:
    mu: int
    m1: QSeries
    m2: QSeries


@lru_cache(maxsize=64)
def m_pair(mu: int, order: int) -> MPair:
    """M(mu, 1) and M(mu, 2), both series in q^mu."""
    if mu < 1:
        raise ValueError(f"mu must be positive, got {mu}")

    def f(ea: int, eb: int) -> QSeries:
        return theta_series(ThetaSpec(1, 1, ea, eb), order)

    m1 = add(
        truncate(mul(f(mu, mu), f(3 * mu, 3 * mu)), order),
        truncate(shift(mul(f(0, 2 * mu), f(0, 6 * mu)), mu), order),
    )
    m2 = add(
        truncate(mul(f(0, 2 * mu), f(2 * mu, 4 * mu)), order),
        truncate(mul(f(mu, mu), f(mu, 5 * mu)), order),
    )
    return MPair(mu, m1, m2)


def cube_sides(k: int, mu: int, sign: int, order: int, middle_sign: Optional[int] = None) -> Tuple[QSeries, QSeries]:
    """f(sq^k, sq^(mu-k))^3 and its three-term decomposition, s = sign.

    middle_sign defaults to the sign of the q^k term in the decomposition
    (+1 for sign = 1, -1 for sign = -1).
    """
    if not 0 < k < mu:
        raise PreconditionError(f"Cube decomposition needs 0 < k < mu, got k={k}, mu={mu}")
    if middle_sign is None:
        middle_sign = sign

    def term(prefactor: Monomial, ea: int, eb: int, which: str) -> QSeries:
        spec = ThetaSpec(sign, sign, ea, eb)
        makers = [
            lambda n: theta_series(spec, n),
            lambda n: truncate(getattr(m_pair(mu, max(n, 0)), which), n),
        ]
        prod = mul_to_order(makers, order - prefactor.exp)
        return scale(shift(prod, prefactor.exp), prefactor.sign)

    lhs = power_to_order(lambda n: theta_series(ThetaSpec(sign, sign, k, mu - k), n), 3, order)
    rhs = add(
        add(
            term(UNIT, 3 * k, 3 * mu - 3 * k, "m1"),
            term(Monomial(middle_sign, k), mu + 3 * k, 2 * mu - 3 * k, "m2"),
        ),
        term(Monomial(1, 2 * k), mu - 3 * k, 2 * mu + 3 * k, "m2"),
    )
    return lhs, rhs


def cube_check(k: int, mu: int, sign: int, order: int, middle_sign: Optional[int] = None) -> bool:
    lhs, rhs = cube_sides(k, mu, sign, order, middle_sign)
    return agrees(lhs, rhs)


# --- n-th power dissection ---

@dataclass(frozen=True)
class DissectionCoeffs:
    """C_{n,z}(x) for z = 0..n-1 as series in x, exact to x_order."""

    n: int
    x_order: int
    coeffs: Tuple[QSeries, ...]

    def __getitem__(self, z: int) -> QSeries:
        return self.coeffs[z]


def _lattice_series(n: int, x_order: int) -> Tuple[QSeries, ...]:
    """For each z in 0..n-1, the sum of x^(sum m_i(m_i-1)/2) over m in Z^n with sum m_i = z."""
    # w(w - 1)/2 <= x_order bounds every coordinate
    values = []
    w = 0
    while w * (w - 1) // 2 <= x_order:
        values.append(w)
        w -= 1
    w = 1
    while w * (w - 1) // 2 <= x_order:
        values.append(w)
        w += 1
    reach = max(abs(v) for v in values)
    size = x_order + 1
    states: Dict[int, List[int]] = {0: [1] + [0] * x_order}
    for i in range(n):
        remaining = n - i - 1
        nxt: Dict[int, List[int]] = {}
        for total, series in states.items():
            for w in values:
                d = w * (w - 1) // 2
                new_total = total + w
                if remaining == 0 and not 0 <= new_total < n:
                    continue
                if abs(new_total) > reach * remaining + n:
                    continue
                target = nxt.setdefault(new_total, [0] * size)
                target[d:] = [t + s for t, s in zip(target[d:], series[: size - d])]
        states = nxt
    return tuple(from_coeffs(states.get(z, []), x_order) for z in range(n))


def dissection_coeffs(n: int, a_exp: int, b_exp: int, order: int) -> DissectionCoeffs:
    """C_{n,z} with enough x-precision to rebuild f(a, b)^n to q-order `order`.

    With x = ab the identity f(a,b)^n = sum_z C_{n,z}(ab) a^z f(a^(n+z) b^z, a^-z b^(n-z))
    holds for z = 0..n-1, and C_{n,z} does not depend on a or b.
    """
    if n < 1:
        raise DissectionError(f"Power must be positive, got {n}")
    if a_exp + b_exp < 1:
        raise DissectionError(f"f(q^{a_exp}, q^{b_exp}) diverges: a_exp + b_exp < 1")
    ex = a_exp + b_exp
    x_order = 0
    for z in range(n):
        spec = ThetaSpec(1, 1, (n + z) * a_exp + z * b_exp, -z * a_exp + (n - z) * b_exp)
        need = order - z * a_exp - min(0, theta_valuation(spec))
        x_order = max(x_order, need // ex)
    return DissectionCoeffs(n, x_order, _lattice_series(n, x_order))


def reconstruct(coeffs: DissectionCoeffs, a: Monomial, b: Monomial, order: int) -> QSeries:
    """sum_z C_{n,z}(ab) a^z f(a^(n+z) b^z, a^-z b^(n-z)) as a q-series."""
    n = coeffs.n
    x = a * b
    total = zero(order)
    for z in range(n):
        c = coeffs[z]
        if x.sign < 0:
            c = flip_sign(c)
        c = dilate(c, x.exp)
        spec = _theta(a ** (n + z) * b ** z, a ** (-z) * b ** (n - z))
        prefactor = a ** z
        prod = mul(c, theta_series(spec, order - prefactor.exp))
        total = add(total, scale(shift(prod, prefactor.exp), prefactor.sign))
    return truncate(total, order)


def dissection_check(n: int, a: Monomial, b: Monomial, order: int) -> bool:
    """True iff the reconstruction equals f(a, b)^n to order."""
    coeffs = dissection_coeffs(n, a.exp, b.exp, order)
    direct = power_to_order(lambda m: theta_series(_theta(a, b), m), n, order)
    return agrees(direct, reconstruct(coeffs, a, b, order))


# --- Identity suite ---

def _theta_basics(ea: int, order: int) -> List[dict]:
    rows = []
    sym = agrees(
        theta_series(ThetaSpec(1, -1, ea, 2 * ea + 1), order),
        theta_series(ThetaSpec(-1, 1, 2 * ea + 1, ea), order),
    )
    rows.append({"identity": "symmetry", "params": f"alpha={ea}", "order": order, "holds": sym})
    f_one = agrees(
        theta_series(ThetaSpec(1, 1, 0, ea), order),
        scale(theta_series(ThetaSpec(1, 1, ea, 3 * ea), order), 2),
    )
    rows.append({"identity": "f-one", "params": f"alpha={ea}", "order": order, "holds": f_one})
    f_minus_one = theta_series(ThetaSpec(-1, 1, 0, ea), order).is_zero
    rows.append({"identity": "f-minus-one", "params": f"alpha={ea}", "order": order, "holds": f_minus_one})
    return rows


def random_entry30_instance(which: str, rng: np.random.Generator) -> List[Monomial]:
    """Random admissible monomials for R1 (a, b, c, d with ab = cd) or R2/R3 (a, b)."""
    while True:
        ea, eb = (int(v) for v in rng.integers(-3, 7, size=2))
        if ea + eb >= 1:
            break
    sa, sb = (int(v) for v in rng.choice([-1, 1], size=2))
    a, b = Monomial(sa, ea), Monomial(sb, eb)
    if which != "R1":
        return [a, b]
    ec = int(rng.integers(-3, 7))
    sc = int(rng.choice([-1, 1]))
    c = Monomial(sc, ec)
    return [a, b, c, (a * b) / c]


IDENTITY_GROUPS = ("jtpi", "basics", "entry30", "cube", "dissection")


def run_identity_suite(
    groups: Sequence[str] = IDENTITY_GROUPS,
    seed: int = 0,
    jtpi_max: int = 12,
    jtpi_order: int = 200,
    entry30_cases: int = 50,
    entry30_order: int = 300,
    cube_max_mu: int = 12,
    cube_order: int = 300,
    dissection_ns: Sequence[int] = (2, 3, 5, 8),
    dissection_order: int = 200,
) -> pd.DataFrame:
    """Run the identity checks and return one row per instance."""
    unknown = [g for g in groups if g not in IDENTITY_GROUPS]
    if unknown:
        raise KeyError(f"Unknown identity group: {', '.join(unknown)}")
    rng = np.random.default_rng(seed)
    rows: List[dict] = []

    if "jtpi" in groups:
        for sa in (1, -1):
            for sb in (1, -1):
                for ea in range(1, jtpi_max + 1):
                    for eb in range(1, jtpi_max + 1):
                        spec = ThetaSpec(sa, sb, ea, eb)
                        rows.append({
                            "identity": "jtpi",
                            "params": f"f({sa:+d}q^{ea}, {sb:+d}q^{eb})",
                            "order": jtpi_order,
                            "holds": jtpi_check(spec, jtpi_order),
                        })
        logger.info(f"JTPI: {sum(r['identity'] == 'jtpi' for r in rows)} specs checked")

    if "basics" in groups:
        for ea in range(1, jtpi_max + 1):
            rows.extend(_theta_basics(ea, jtpi_order))

    if "entry30" in groups:
        for which in ("R1", "R2", "R3"):
            for _ in range(entry30_cases):
                monos = random_entry30_instance(which, rng)
                rows.append({
                    "identity": f"entry30-{which}",
                    "params": ", ".join(f"{m.sign:+d}q^{m.exp}" for m in monos),
                    "order": entry30_order,
                    "holds": entry30_check(which, monos, entry30_order),
                })
        logger.info(f"Entry 30: {3 * entry30_cases} random instances checked")

    if "cube" in groups:
        for mu in range(2, cube_max_mu + 1):
            for k in range(1, mu):
                for sign in (1, -1):
                    rows.append({
                        "identity": "cube",
                        "params": f"k={k}, mu={mu}, sign={sign:+d}",
                        "order": cube_order,
                        "holds": cube_check(k, mu, sign, cube_order),
                    })

    if "dissection" in groups:
        for n in dissection_ns:
            for ea, eb in ((1, 1), (1, 2), (2, 3), (-1, 3)):
                for sa, sb in ((1, 1), (-1, -1), (1, -1)):
                    rows.append({
                        "identity": "dissection",
                        "params": f"n={n}, a={sa:+d}q^{ea}, b={sb:+d}q^{eb}",
                        "order": dissection_order,
                        "holds": dissection_check(n, Monomial(sa, ea), Monomial(sb, eb), dissection_order),
                    })

    frame = pd.DataFrame(rows, columns=["identity", "params", "order", "holds"])
    failed = int((~frame["holds"].astype(bool)).sum()) if not frame.empty else 0
    if failed:
        logger.warning(f"{failed} identity instances failed")
    return frame
