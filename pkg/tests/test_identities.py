import numpy as np
import pytest

from src.families import legacy_series
from src.identities import (
    FAILS,
    IDENTITY_GROUPS,
    VACUOUS,
    VANISHES,
    DissectionError,
    Monomial,
    PreconditionError,
    class_count,
    compress,
    cube_check,
    dissection_check,
    dissection_coeffs,
    entry30_check,
    extract,
    is_vanishing,
    m_pair,
    random_entry30_instance,
    run_identity_suite,
)
from src.series import dense, from_coeffs, terms, zero


def test_extract_and_compress():
    x = from_coeffs(range(1, 12), 10)
    part = extract(x, 3, 1)
    assert [part[e] for e in (1, 4, 7, 10)] == [2, 5, 8, 11]
    assert part[2] == 0
    assert extract(x, 3, 4) == part
    squeezed = compress(x, 3, 1)
    assert squeezed.order == 3
    assert dense(squeezed, 0) == [2, 5, 8, 11]


def test_class_count():
    assert class_count(5, 2, 0, 12) == 3
    assert class_count(5, 2, -3, 12) == 4
    assert class_count(5, 2, 13, 12) == 0


def test_is_vanishing_on_hirschhorn_a():
    x = legacy_series("hirschhorn-a", 300)
    for residue in (2, 4):
        result = is_vanishing(x, 5, residue)
        assert result.status == VANISHES
        assert result
        assert result.checked == class_count(5, residue, 0, 300)
    failure = is_vanishing(x, 5, 1)
    assert failure.status == FAILS
    assert (failure.exponent, failure.coefficient) == (1, -2)


def test_is_vanishing_edge_cases():
    result = is_vanishing(zero(10), 5, 2)
    assert result.status == VACUOUS
    assert not result
    with pytest.raises(ValueError):
        is_vanishing(zero(10), 0, 0)
    # start skips the low exponents of the class
    x = from_coeffs([0, 0, 1], 20)
    assert is_vanishing(x, 5, 2).status == FAILS
    assert is_vanishing(x, 5, 2, start=7).status == VANISHES


@pytest.mark.parametrize(
    "which, monomials",
    [
        ("R1", [Monomial(1, 1), Monomial(1, 3), Monomial(1, 2), Monomial(1, 2)]),
        ("R1", [Monomial(-1, 1), Monomial(1, 4), Monomial(1, 2), Monomial(-1, 3)]),
        ("R2", [Monomial(1, 1), Monomial(1, 5)]),
        ("R2", [Monomial(-1, 2), Monomial(1, 3)]),
        ("R3", [Monomial(1, 1), Monomial(1, 2)]),
        ("R3", [Monomial(-1, 1), Monomial(-1, 2)]),
        ("R3", [Monomial(1, -1), Monomial(1, 4)]),
    ],
)
def test_entry30_identities(which, monomials):
    assert entry30_check(which, monomials, 150)


def test_entry30_preconditions():
    with pytest.raises(PreconditionError):
        entry30_check("R1", [Monomial(1, 1), Monomial(1, 3), Monomial(1, 1), Monomial(1, 2)], 50)
    with pytest.raises(PreconditionError):
        entry30_check("R2", [Monomial(1, 1)], 50)
    with pytest.raises(KeyError):
        entry30_check("R4", [Monomial(1, 1), Monomial(1, 2)], 50)


def test_random_entry30_instances_are_admissible():
    rng = np.random.default_rng(3)
    for _ in range(20):
        a, b, c, d = random_entry30_instance("R1", rng)
        assert a * b == c * d
        assert a.exp + b.exp >= 1
        assert len(random_entry30_instance("R3", rng)) == 2


def test_m_pair_constant_terms():
    pair = m_pair(1, 0)
    assert dense(pair.m1, 0) == [1]
    assert dense(pair.m2, 0) == [3]
    with pytest.raises(ValueError):
        m_pair(0, 10)


@pytest.mark.parametrize("k, mu", [(1, 2), (1, 3), (2, 3), (2, 5), (3, 7), (4, 9)])
@pytest.mark.parametrize("sign", [1, -1])
def test_cube_decomposition(k, mu, sign):
    assert cube_check(k, mu, sign, 120)


def test_cube_decomposition_middle_sign_matters():
    assert not cube_check(1, 3, -1, 60, middle_sign=1)
    with pytest.raises(PreconditionError):
        cube_check(3, 3, 1, 60)


def test_dissection_coefficients_for_squares():
    coeffs = dissection_coeffs(2, 1, 1, 20)
    assert coeffs.x_order >= 6
    assert dense(coeffs[0], 0)[:5] == [1, 2, 0, 0, 2]
    assert dense(coeffs[1], 0)[:7] == [2, 0, 2, 0, 0, 0, 2]
    assert dense(dissection_coeffs(1, 1, 2, 10)[0], 0)[:3] == [1, 0, 0]


@pytest.mark.parametrize("n", [2, 3, 5])
@pytest.mark.parametrize(
    "a, b",
    [
        (Monomial(1, 1), Monomial(1, 1)),
        (Monomial(1, 1), Monomial(1, 2)),
        (Monomial(-1, 1), Monomial(-1, 2)),
        (Monomial(1, 2), Monomial(-1, 3)),
    ],
)
def test_power_dissection(n, a, b):
    assert dissection_check(n, a, b, 80)


def test_dissection_errors():
    with pytest.raises(DissectionError):
        dissection_coeffs(0, 1, 1, 10)
    with pytest.raises(DissectionError):
        dissection_coeffs(2, 1, -1, 10)


def test_identity_suite_small():
    frame = run_identity_suite(("jtpi", "basics"), jtpi_max=3, jtpi_order=40)
    assert len(frame) == 4 * 9 + 3 * 3
    assert frame["holds"].all()
    assert set(frame["identity"]) == {"jtpi", "symmetry", "f-one", "f-minus-one"}
    with pytest.raises(KeyError):
        run_identity_suite(("nosuch",))


def test_identity_suite_is_seeded():
    first = run_identity_suite(("entry30",), seed=5, entry30_cases=4, entry30_order=60)
    second = run_identity_suite(("entry30",), seed=5, entry30_cases=4, entry30_order=60)
    assert first.equals(second)
    assert first["holds"].all()


@pytest.mark.slow
def test_full_identity_suite():
    frame = run_identity_suite(IDENTITY_GROUPS)
    assert frame["holds"].all()


def test_extract_is_a_projection_and_partition():
    x = from_coeffs([3, -1, 4, 1, -5, 9, 2, -6, 5, 3, 5], 10)
    for k in (1, 3, 4):
        total = zero(10)
        for l in range(k):
            part = extract(x, k, l)
            assert extract(part, k, l) == part
            total = total + part
        assert total == x
    assert extract(from_coeffs([1, -2, 0, 2], 3), 5, 2).is_zero


def test_is_vanishing_reports_first_offender():
    result = is_vanishing(legacy_series("hirschhorn-a", 100), 5, 0)
    assert (result.status, result.exponent, result.coefficient) == (FAILS, 0, 1)


@pytest.mark.parametrize("mu", [1, 5, 7, 33])
def test_m_pair_lives_on_multiples_of_mu(mu):
    pair = m_pair(mu, 200)
    for series in (pair.m1, pair.m2):
        assert not series.is_zero
        assert all(e % mu == 0 for e, _ in terms(series))


@pytest.mark.parametrize("k, mu, sign", [(1, 5, -1), (4, 17, 1)])
def test_cube_decomposition_at_larger_order(k, mu, sign):
    assert cube_check(k, mu, sign, 200)


def test_entry30_small_cases():
    assert entry30_check("R2", [Monomial(1, 1), Monomial(1, 2)], 200)
    assert entry30_check("R3", [Monomial(1, 1), Monomial(1, 2)], 200)
