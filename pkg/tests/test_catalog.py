from dataclasses import replace

import pytest

from src.catalog import (
    COLUMNS,
    RESULT_LABELS,
    CatalogError,
    LegacyEntry,
    SideConditionError,
    SweepConfig,
    TheoremEntry,
    admissible_t,
    catalog_to_frame,
    check_manifest,
    dump_catalog,
    get_entry,
    instantiate,
    is_standard_t,
    load_catalog,
    load_catalog_file,
)

CATALOG_HEADER = ",".join(COLUMNS) + "\n"


def test_default_catalog_contents(catalog):
    theorems = [e for e in catalog if isinstance(e, TheoremEntry)]
    legacy = [e for e in catalog if isinstance(e, LegacyEntry)]
    assert len(theorems) == 41
    assert len(legacy) == 34
    check_manifest(catalog)
    assert {e.id for e in theorems} == set(RESULT_LABELS)


def test_theorem_entry_fields(entry):
    e = entry("vcres2.0")
    assert e.families == ("X", "Z")
    assert e.template == (1, 2, 5, 15, 2, 1)
    assert (e.p, e.c) == (5, 2)
    assert e.statement() == "X_{1t,2t,5l,15l,2,1}(5n+2t) = Z_{1t,2t,5l,15l,2,1}(5n+2t) = 0"


def test_corrected_residue_is_documented(entry):
    e = entry("vcres1.11")
    assert e.c == 11
    assert "13n+t" in e.note


@pytest.mark.parametrize(
    "entry_id, stored, printed_in_note",
    [
        ("vcres1.3", (3, 2, 7, 7, 1, 3), "u=3 v=3"),
        ("vcres1.8", (2, 3, 11, 11, 3, 6), "X and Z"),
        ("vcres1.11.25", (5, 6, 11, 33, 2, 5), "X and Y"),
    ],
)
def test_corrected_rows_keep_the_printed_form_in_note(entry, entry_id, stored, printed_in_note):
    e = entry(entry_id)
    assert e.kind == "theorem"
    assert e.template == stored
    assert printed_in_note in e.note


def test_erratum_rows_round_trip(catalog, entry):
    erratum = [e for e in catalog if getattr(e, "erratum", False)]
    assert [e.id for e in erratum] == ["vcres1.9"]
    assert entry("vcres1.9").families == ("X", "Y")
    assert load_catalog(dump_catalog(catalog)) == catalog
    assert catalog_to_frame(catalog).set_index("id").loc["vcres1.9", "kind"] == "erratum"


def test_legacy_entry_fields(entry):
    e = entry("hirschhorn-a")
    assert (e.product, e.p, e.residues) == ("hirschhorn-a", 5, (2, 4))
    ab = entry("ab-r2-k5")
    assert ab.param_dict == {"r": 2, "k": 5}
    assert ab.statement() == "andrews-bressoud[r=2, k=5](5n+4) = 0"


def test_get_entry_unknown(catalog):
    with pytest.raises(KeyError):
        get_entry(catalog, "vcres9.9")


def test_instantiate(entry):
    specs = instantiate(entry("vcres1.18"), 2, 3)
    assert len(specs) == 2
    spec, progression = specs[0]
    assert (spec.a, spec.b, *spec.moduli, spec.u, spec.v) == (24, 9, 34, 34, 1, 8)
    assert progression == (17, 14)
    assert [s.family for s, _ in specs] == ["X", "Y"]


def test_instantiate_side_conditions(entry):
    with pytest.raises(SideConditionError):
        instantiate(entry("vcres2.0"), 1, 5)
    with pytest.raises(ValueError):
        instantiate(entry("vcres2.0"), 0, 1)


def test_admissible_t(entry):
    e = entry("vcres2.0")
    assert is_standard_t(e, 1, 4)
    assert not is_standard_t(e, 1, 6)
    assert admissible_t(e, 1, SweepConfig()) == [1, 2, 3, 4]
    assert admissible_t(e, 1, SweepConfig(allow_extended=True)) == [1, 2, 3, 4, 6, 7, 8, 9]
    assert admissible_t(e, 2, SweepConfig(t_max=6)) == [1, 2, 3, 4, 6]
    assert admissible_t(e, 1, SweepConfig(t_values=(3, 5, 7))) == [3]


def test_sweep_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(order=0)
    with pytest.raises(ValueError):
        SweepConfig(ell_values=(0,))


def test_dump_then_load(catalog):
    assert load_catalog(dump_catalog(catalog)) == catalog


def test_catalog_frame(catalog):
    df = catalog_to_frame(catalog)
    assert len(df) == 75
    assert "statement" in df.columns
    assert df.loc[df["id"] == "vcres2.0", "families"].item() == "XZ"


def test_manifest_detects_missing_result(catalog):
    trimmed = [e for e in catalog if e.id != "vcres2.20"]
    with pytest.raises(CatalogError, match="vcres2.20"):
        check_manifest(trimmed)


@pytest.mark.parametrize(
    "rows, message",
    [
        ("", "Empty"),
        ("id,kind\nx,theorem\n", "missing columns"),
        (CATALOG_HEADER, "no rows"),
        (CATALOG_HEADER + "x,theorem,XQ,1,2,5,15,2,1,5,2,,,,\n", "families"),
        (CATALOG_HEADER + "x,theorem,XZ,1,two,5,15,2,1,5,2,,,,\n", "b_mult"),
        (CATALOG_HEADER + "x,theorem,XZ,1,2,0,15,2,1,5,2,,,,\n", "positive"),
        (CATALOG_HEADER + "x,legacy,,,,,,,,5,,nosuch,,2,\n", "unknown legacy product"),
        (CATALOG_HEADER + "x,legacy,,,,,,,,5,,hirschhorn-a,,,\n", "at least one residue"),
        (CATALOG_HEADER + "x,legacy,,,,,,,,7,,andrews-bressoud,r=2;k,6,\n", "malformed parameter"),
        (CATALOG_HEADER + "x,lemma,,,,,,,,5,,,,,\n", "unknown kind"),
        (CATALOG_HEADER + "x,legacy,,,,,,,,5,,hirschhorn-a,,2,\n" * 2, "Duplicate"),
    ],
)
def test_malformed_catalogs(rows, message):
    with pytest.raises(CatalogError, match=message):
        load_catalog(rows)


def test_load_catalog_file(catalog_file, tmp_path):
    path = catalog_file("only,theorem,X,1,2,5,15,2,1,5,2,,,,")
    entries = load_catalog_file(path)
    assert entries == [TheoremEntry("only", ("X",), 1, 2, 5, 15, 2, 1, 5, 2)]
    with pytest.raises(CatalogError):
        load_catalog_file(tmp_path / "missing.csv")


def test_entries_are_immutable(entry):
    e = entry("vcres2.0")
    mutated = replace(e, c=1)
    assert mutated.c == 1
    assert e.c == 2


def test_catalog_rows_match_statements(entry):
    e = entry("vcres1.11.25")
    assert e.template == (5, 6, 11, 33, 2, 5)
    assert (e.p, e.c, e.families) == (11, 9, ("X", "Z"))
    [(x, progression), (z, _)] = instantiate(entry("vcres2.0"), 1, 1)
    assert (x.family, x.a, x.b, *x.moduli, x.u, x.v) == ("X", 1, 2, 5, 15, 2, 1)
    assert z.family == "Z"
    assert progression == (5, 2)
