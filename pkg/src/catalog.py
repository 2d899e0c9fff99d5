"""Catalog of vanishing-coefficient results and their parameter sweeps.

Each theorem row states that for every t with gcd(p, t) = 1 and every ell >= 1
the listed families F_{a t, b t, s ell, k ell, u, v} have zero coefficients at
p n + c t. Erratum rows carry a printed statement known to fail; their failing
instances are reported as known errata instead of failures. Legacy rows name a fixed product from the families registry together
with the start indices of its vanishing progressions.
"""

import io
import logging
from dataclasses import dataclass
from math import gcd
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from src.config import CATALOG_PATH, DEFAULT_ELL_VALUES, DEFAULT_ORDER, LEGACY_ORDER
from src.families import FAMILY_SIGNS, FamilySpec, LEGACY_PRODUCTS

logger = logging.getLogger(__name__)

COLUMNS = [
    "id", "kind", "families", "a_mult", "b_mult", "s", "k", "u", "v",
    "p", "c", "product", "params", "residues", "note",
]
TEMPLATE_FIELDS = ["a_mult", "b_mult", "s", "k", "u", "v", "p", "c"]

# Every labelled result of the two main theorems
RESULT_LABELS = (
    "vcres2.0", "vcres2.1", "vcres2.2", "vcres2.3", "vcres2.4", "vcres2.5",
    "vcres2.6", "vcres2.7", "vcres2.8", "vcres2.9", "vcres2.10", "vcres2.11",
    "vcres2.12", "vcres2.13", "vcres2.14", "vcres2.15", "vcres2.16", "vcres2.17",
    "vcres2.20", "vcres1.11.25",
    "vcres1.1", "vcres1.2", "vcres1.3", "vcres1.4", "vcres1.5", "vcres1.6",
    "vcres1.7", "vcres1.8", "vcres1.9", "vcres1.10", "vcres1.11", "vcres1.12",
    "vcres1.13", "vcres1.14", "vcres1.15", "vcres1.16", "vcres1.17", "vcres1.18",
    "vcres1.19", "vcres1.20", "vcres1.21",
)


class CatalogError(ValueError):
    """Raised for empty, malformed or incomplete catalogs."""


class SideConditionError(ValueError):
    """Raised when gcd(p, t) != 1."""


@dataclass(frozen=True)
class TheoremEntry:
    id: str
    families: Tuple[str, ...]
    a_mult: int
    b_mult: int
    s: int
    k: int
    u: int
    v: int
    p: int
    c: int
    note: str = ""
    erratum: bool = False

    @property
    def kind(self) -> str:
        return "erratum" if self.erratum else "theorem"

    @property
    def template(self) -> Tuple[int, int, int, int, int, int]:
        return self.a_mult, self.b_mult, self.s, self.k, self.u, self.v

    def statement(self) -> str:
        a, b, s, k, u, v = self.template
        parts = [f"{f}_{{{a}t,{b}t,{s}l,{k}l,{u},{v}}}({self.p}n+{self.c}t)" for f in self.families]
        return " = ".join(parts) + " = 0"


@dataclass(frozen=True)
class LegacyEntry:
    id: str
    product: str
    p: int
    residues: Tuple[int, ...]
    params: Tuple[Tuple[str, int], ...] = ()
    note: str = ""

    kind = "legacy"

    @property
    def param_dict(self) -> Dict[str, int]:
        return dict(self.params)

    def statement(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params)
        name = f"{self.product}[{args}]" if args else self.product
        return " = ".join(f"{name}({self.p}n+{r})" for r in self.residues) + " = 0"


CatalogEntry = Union[TheoremEntry, LegacyEntry]


@dataclass(frozen=True)
class SweepConfig:
    """Which ell and t to instantiate, and the truncation orders."""

    ell_values: Tuple[int, ...] = DEFAULT_ELL_VALUES
    t_values: Optional[Tuple[int, ...]] = None
    t_max: Optional[int] = None
    order: int = DEFAULT_ORDER
    legacy_order: int = LEGACY_ORDER
    allow_extended: bool = False

    def __post_init__(self):
        if self.order < 1 or self.legacy_order < 1:
            raise ValueError(f"Truncation orders must be >= 1, got {self.order}, {self.legacy_order}")
        if any(ell < 1 for ell in self.ell_values):
            raise ValueError(f"ell values must be positive, got {self.ell_values}")


# --- Parsing ---

def _int(row: pd.Series, name: str) -> int:
    raw = row[name].strip()
    try:
        return int(raw)
    except ValueError:
        raise CatalogError(f"Row {row['id']!r}: field {name} must be an integer, got {raw!r}") from None


def _parse_params(row: pd.Series) -> Tuple[Tuple[str, int], ...]:
    raw = row["params"].strip()
    if not raw:
        return ()
    pairs = []
    for item in raw.split(";"):
        key, sep, value = item.partition("=")
        if not sep:
            raise CatalogError(f"Row {row['id']!r}: malformed parameter {item!r}")
        try:
            pairs.append((key.strip(), int(value)))
        except ValueError:
            raise CatalogError(f"Row {row['id']!r}: parameter {key} must be an integer") from None
    return tuple(pairs)


def _parse_row(row: pd.Series) -> CatalogEntry:
    entry_id = row["id"].strip()
    if not entry_id:
        raise CatalogError("Catalog row without id")
    kind = row["kind"].strip()
    note = row["note"].strip()
    if kind in ("theorem", "erratum"):
        families = tuple(row["families"].strip())
        if not families or any(f not in FAMILY_SIGNS for f in families):
            raise CatalogError(f"Row {entry_id!r}: families must be letters from XYZW, got {row['families']!r}")
        values = {name: _int(row, name) for name in TEMPLATE_FIELDS}
        if min(values["s"], values["k"], values["p"]) < 1:
            raise CatalogError(f"Row {entry_id!r}: s, k and p must be positive")
        return TheoremEntry(entry_id, families, note=note, erratum=kind == "erratum", **values)
    if kind == "legacy":
        product = row["product"].strip()
        if product not in LEGACY_PRODUCTS:
            raise CatalogError(f"Row {entry_id!r}: unknown legacy product {product!r}")
        p = _int(row, "p")
        try:
            residues = tuple(int(r) for r in row["residues"].split(";") if r.strip())
        except ValueError:
            raise CatalogError(f"Row {entry_id!r}: residues must be integers separated by ';'") from None
        if p < 1 or not residues:
            raise CatalogError(f"Row {entry_id!r}: legacy rows need p >= 1 and at least one residue")
        return LegacyEntry(entry_id, product, p, residues, _parse_params(row), note)
    raise CatalogError(f"Row {entry_id!r}: unknown kind {kind!r}")


def load_catalog(source: str) -> List[CatalogEntry]:
    """Parse catalog CSV text into entries.

    Raises:
        CatalogError: empty source, missing columns, malformed rows or duplicate ids.
    """
    if not source.strip():
        raise CatalogError("Empty catalog source")
    df = pd.read_csv(io.StringIO(source), dtype=str, keep_default_na=False)
    missing = [c for c in COLUMNS if c not in df.columns]
    if missing:
        raise CatalogError(f"Catalog is missing columns: {', '.join(missing)}")
    if df.empty:
        raise CatalogError("Catalog has no rows")

    entries: List[CatalogEntry] = []
    seen = set()
    for _, row in df.iterrows():
        entry = _parse_row(row)
        if entry.id in seen:
            raise CatalogError(f"Duplicate catalog id: {entry.id}")
        seen.add(entry.id)
        entries.append(entry)
    logger.debug(f"Loaded {len(entries)} catalog entries")
    return entries


def load_catalog_file(path: Optional[Path] = None) -> List[CatalogEntry]:
    path = Path(path) if path else CATALOG_PATH
    if not path.exists():
        raise CatalogError(f"Catalog file not found: {path}")
    return load_catalog(path.read_text())


def _entry_record(entry: CatalogEntry) -> dict:
    record = {c: "" for c in COLUMNS}
    record.update(id=entry.id, kind=entry.kind, note=entry.note, p=entry.p)
    if isinstance(entry, TheoremEntry):
        record["families"] = "".join(entry.families)
        for name in TEMPLATE_FIELDS:
            record[name] = getattr(entry, name)
    else:
        record["product"] = entry.product
        record["params"] = ";".join(f"{k}={v}" for k, v in entry.params)
        record["residues"] = ";".join(str(r) for r in entry.residues)
    return record


def catalog_to_frame(entries: Sequence[CatalogEntry]) -> pd.DataFrame:
    df = pd.DataFrame([_entry_record(e) for e in entries], columns=COLUMNS)
    df["statement"] = [e.statement() for e in entries]
    return df


def dump_catalog(entries: Sequence[CatalogEntry]) -> str:
    """Serialize entries to catalog CSV text (inverse of load_catalog)."""
    return pd.DataFrame([_entry_record(e) for e in entries], columns=COLUMNS).to_csv(index=False)


def get_entry(entries: Sequence[CatalogEntry], entry_id: str) -> CatalogEntry:
    for entry in entries:
        if entry.id == entry_id:
            return entry
    raise KeyError(f"Unknown catalog entry: {entry_id}")


def check_manifest(entries: Sequence[CatalogEntry]) -> None:
    """Raise CatalogError unless every labelled result is present as a theorem row."""
    ids = {e.id for e in entries if isinstance(e, TheoremEntry)}
    missing = [label for label in RESULT_LABELS if label not in ids]
    if missing:
        raise CatalogError(f"Catalog is missing results: {', '.join(missing)}")


# --- Instantiation ---

def instantiate(entry: TheoremEntry, ell: int, t: int) -> List[Tuple[FamilySpec, Tuple[int, int]]]:
    """One FamilySpec per family, with the progression (p, c*t mod p).

    Raises:
        SideConditionError: gcd(p, t) != 1.
    """
    if ell < 1 or t < 1:
        raise ValueError(f"ell and t must be positive, got ell={ell}, t={t}")
    if gcd(entry.p, t) != 1:
        raise SideConditionError(f"{entry.id}: gcd({entry.p}, {t}) != 1")
    residue = (entry.c * t) % entry.p
    return [
        (
            FamilySpec(family, entry.a_mult * t, entry.b_mult * t, entry.s, entry.k, ell, entry.u, entry.v),
            (entry.p, residue),
        )
        for family in entry.families
    ]


def is_standard_t(entry: TheoremEntry, ell: int, t: int) -> bool:
    """0 < a t < s ell and 0 < b t < k ell."""
    return 0 < entry.a_mult * t < entry.s * ell and 0 < entry.b_mult * t < entry.k * ell


def admissible_t(entry: TheoremEntry, ell: int, config: SweepConfig) -> List[int]:
    """t values to sweep for (entry, ell): gcd-filtered, standard range unless extended."""
    if config.t_values is not None:
        candidates = list(config.t_values)
    else:
        candidates = list(range(1, (config.t_max or 2 * entry.p) + 1))
    chosen = [t for t in candidates if t >= 1 and gcd(entry.p, t) == 1]
    if not config.allow_extended:
        chosen = [t for t in chosen if is_standard_t(entry, ell, t)]
    return chosen
