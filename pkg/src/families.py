"""Two-block theta products X, Y, Z, W and the registry of historical products."""

import logging
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Tuple

from src.series import QSeries, mul_to_order
from src.theta import PochhammerSpec, pochhammer_series, product_series

logger = logging.getLogger(__name__)

# Argument signs of the (first, second) Pochhammer block per family
FAMILY_SIGNS = {
    "X": (1, 1),
    "Y": (1, -1),
    "Z": (-1, 1),
    "W": (-1, -1),
}


@dataclass(frozen=True)
class FamilySpec:
    """(+-q^a, +-q^(s*ell - a); q^(s*ell))^u (+-q^b, +-q^(k*ell - b); q^(k*ell))^v."""

    family: str
    a: int
    b: int
    s: int
    k: int
    ell: int
    u: int
    v: int

    def __post_init__(self):
        if self.family not in FAMILY_SIGNS:
            raise KeyError(f"Unknown family: {self.family}")
        if min(self.s, self.k, self.ell) < 1:
            raise ValueError(f"Moduli multipliers and ell must be positive: {self}")

    @property
    def moduli(self) -> Tuple[int, int]:
        return self.s * self.ell, self.k * self.ell

    def blocks(self) -> Tuple[PochhammerSpec, PochhammerSpec]:
        first, second = FAMILY_SIGNS[self.family]
        m1, m2 = self.moduli
        return (
            PochhammerSpec(((first, self.a), (first, m1 - self.a)), m1, self.u),
            PochhammerSpec(((second, self.b), (second, m2 - self.b)), m2, self.v),
        )

    def label(self) -> str:
        m1, m2 = self.moduli
        return f"{self.family}_{{{self.a},{self.b},{m1},{m2},{self.u},{self.v}}}"


def is_degenerate(spec: FamilySpec) -> bool:
    """True when a block contains a (1 - 1) factor, making the product zero."""
    for block in spec.blocks():
        if block.power == 0:
            continue
        for sign, e in block.args:
            if sign == 1 and e % block.modulus == 0:
                return True
    return False


def in_standard_range(spec: FamilySpec) -> bool:
    """0 < a < s*ell and 0 < b < k*ell: every factor exponent positive."""
    m1, m2 = spec.moduli
    return 0 < spec.a < m1 and 0 < spec.b < m2


def analytic_min_exp(spec: FamilySpec) -> int:
    """Sum of the negative factor exponents, weighted by the block powers."""
    total = 0
    for block in spec.blocks():
        for _, e in block.args:
            while e < 0:
                total += e * block.power
                e += block.modulus
    return total


def family_series(spec: FamilySpec, order: int) -> QSeries:
    """Expand the family product exactly to order, factors interleaved."""
    return product_series(spec.blocks(), order)


def family_series_by_blocks(spec: FamilySpec, order: int) -> QSeries:
    """Same product, built block by block and then multiplied."""
    first, second = spec.blocks()
    return mul_to_order(
        [
            lambda n: pochhammer_series(first, n),
            lambda n: pochhammer_series(second, n),
        ],
        order,
    )


# ── Historical products ──

def _pos(*exps: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((1, e) for e in exps)


def _neg(*exps: int) -> Tuple[Tuple[int, int], ...]:
    return tuple((-1, e) for e in exps)


def _andrews_bressoud(r: int, k: int) -> List[PochhammerSpec]:
    if not (1 <= r < k) or gcd(r, k) != 1 or (r + k) % 2 == 0:
        raise ValueError(
            f"Andrews-Bressoud needs 1 <= r < k, gcd(r, k) = 1 and opposite parity, got r={r}, k={k}"
        )
    return [
        PochhammerSpec(_pos(r, 2 * k - r), 2 * k, 1),
        PochhammerSpec(_pos(k - r, k + r), 2 * k, -1),
    ]


LEGACY_PRODUCTS: Dict[str, dict] = {
    "ramanujan-u": {
        "title": "Ramanujan u(n)",
        "blocks": [PochhammerSpec(_pos(4, 1), 5, 1), PochhammerSpec(_pos(2, 3), 5, -1)],
    },
    # v is defined as the reciprocal ratio raised to -1, which equals u
    "ramanujan-v": {
        "title": "Ramanujan v(n)",
        "blocks": [PochhammerSpec(_pos(3, 2), 5, -1), PochhammerSpec(_pos(1, 4), 5, 1)],
    },
    "rs-alpha": {
        "title": "Richmond-Szekeres alpha(n)",
        "blocks": [PochhammerSpec(_pos(3, 5), 8, 1), PochhammerSpec(_pos(1, 7), 8, -1)],
    },
    "rs-beta": {
        "title": "Richmond-Szekeres beta(n)",
        "blocks": [PochhammerSpec(_pos(1, 7), 8, 1), PochhammerSpec(_pos(3, 5), 8, -1)],
    },
    "rs-gamma": {
        "title": "Richmond-Szekeres gamma(n)",
        "blocks": [PochhammerSpec(_pos(5, 7), 12, 1), PochhammerSpec(_pos(1, 11), 12, -1)],
    },
    "rs-delta": {
        "title": "Richmond-Szekeres delta(n)",
        "blocks": [PochhammerSpec(_pos(1, 11), 12, 1), PochhammerSpec(_pos(5, 7), 12, -1)],
    },
    "andrews-bressoud": {
        "title": "Andrews-Bressoud phi(n)",
        "params": ("r", "k"),
        "builder": _andrews_bressoud,
    },
    "hirschhorn-a": {
        "title": "Hirschhorn a(n)",
        "blocks": [PochhammerSpec(_neg(1, 4), 5, 1), PochhammerSpec(_pos(1, 9), 10, 3)],
    },
    "hirschhorn-b": {
        "title": "Hirschhorn b(n)",
        "blocks": [PochhammerSpec(_neg(2, 3), 5, 1), PochhammerSpec(_pos(3, 7), 10, 3)],
    },
    "tang-a1": {
        "title": "Tang a1(n)",
        "blocks": [PochhammerSpec(_neg(1, 4), 5, 3), PochhammerSpec(_pos(2, 8), 10, 1)],
    },
    "tang-b1": {
        "title": "Tang b1(n)",
        "blocks": [PochhammerSpec(_neg(2, 3), 5, 3), PochhammerSpec(_pos(4, 6), 10, 1)],
    },
    "tang-a2": {
        "title": "Tang a2(n)",
        "blocks": [PochhammerSpec(_neg(1, 4), 5, 3), PochhammerSpec(_pos(3, 7), 10, 1)],
    },
    "tang-b2": {
        "title": "Tang b2(n)",
        "blocks": [PochhammerSpec(_neg(2, 3), 5, 3), PochhammerSpec(_pos(1, 9), 10, 1)],
    },
    "mclaughlin-s1": {
        "title": "Mc Laughlin s(n), t = 1",
        "blocks": [PochhammerSpec(_pos(2, 3), 5, 1), PochhammerSpec(_pos(3, 7), 10, 3)],
    },
    "mclaughlin-s2": {
        "title": "Mc Laughlin s(n), t = 2",
        "blocks": [PochhammerSpec(_pos(4, 1), 5, 1), PochhammerSpec(_pos(1, 9), 10, 3)],
    },
}


def get_legacy_config(name: str) -> dict:
    """Return config dict for a historical product name."""
    if name not in LEGACY_PRODUCTS:
        raise KeyError(f"Unknown legacy product: {name}")
    return LEGACY_PRODUCTS[name]


def legacy_blocks(name: str, params: Optional[Dict[str, int]] = None) -> List[PochhammerSpec]:
    """Pochhammer blocks of a historical product, applying its parameters if it takes any."""
    config = get_legacy_config(name)
    if "builder" in config:
        params = params or {}
        missing = [p for p in config["params"] if p not in params]
        if missing:
            raise ValueError(f"{name} needs parameters {', '.join(missing)}")
        return config["builder"](**{p: int(params[p]) for p in config["params"]})
    if params:
        raise ValueError(f"{name} takes no parameters, got {sorted(params)}")
    return list(config["blocks"])


def legacy_series(name: str, order: int, params: Optional[Dict[str, int]] = None) -> QSeries:
    """Expand a historical product exactly to order."""
    blocks = legacy_blocks(name, params)
    logger.debug(f"Expanding {name} {params or ''} to order {order}")
    return product_series(blocks, order)
