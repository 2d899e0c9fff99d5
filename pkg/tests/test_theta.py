import pytest

from src.families import legacy_blocks
from src.series import agrees, dense, mul_to_order, one
from src.theta import (
    DivergenceError,
    NonInvertibleError,
    PochhammerSpec,
    ThetaSpec,
    jtpi_check,
    jtpi_product,
    named_theta,
    pochhammer_series,
    product_series,
    theta_series,
    theta_valuation,
)

EULER_7 = [1, -1, -1, 0, 0, 1, 0, 1]
PARTITIONS_10 = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_theta_small_expansions():
    assert dense(theta_series(ThetaSpec(1, 1, 1, 2), 7), 0) == [1, 1, 1, 0, 0, 1, 0, 1]
    assert dense(named_theta("f_minus", 1, 7), 0) == EULER_7
    assert dense(named_theta("phi", 1, 4), 0) == [1, 2, 0, 0, 2]
    assert dense(named_theta("psi", 1, 6), 0) == [1, 1, 0, 1, 0, 0, 1]
    assert dense(named_theta("psi", 2, 6), 0) == [1, 0, 1, 0, 0, 0, 1]


def test_named_theta_errors():
    with pytest.raises(KeyError):
        named_theta("chi", 1, 5)
    with pytest.raises(ValueError):
        named_theta("phi", 0, 5)


def test_theta_with_negative_exponent():
    spec = ThetaSpec(1, 1, -1, 3)
    assert theta_valuation(spec) == -1
    x = theta_series(spec, 10)
    assert x.min_exp == -1
    assert x.order == 10


@pytest.mark.parametrize("ea, eb", [(1, -1), (0, 0), (-3, 2)])
def test_divergent_theta(ea, eb):
    with pytest.raises(DivergenceError):
        theta_series(ThetaSpec(1, 1, ea, eb), 10)
    with pytest.raises(DivergenceError):
        jtpi_product(ThetaSpec(1, 1, ea, eb))


def test_spec_validation():
    with pytest.raises(ValueError):
        ThetaSpec(2, 1, 1, 1)
    with pytest.raises(ValueError):
        PochhammerSpec(((1, 1),), 0)


def test_pochhammer_products():
    assert dense(product_series([PochhammerSpec(((1, 1),), 1)], 7), 0) == EULER_7
    assert dense(product_series([PochhammerSpec(((1, 1), (1, 4)), 5)], 6), 0) == [1, -1, 0, 0, -1, 1, -1]
    assert dense(pochhammer_series(PochhammerSpec(((1, 1),), 1, -1), 10), 0) == PARTITIONS_10


def test_product_and_inverse_cancel():
    specs = [PochhammerSpec(((1, 1), (-1, 3)), 4, 2), PochhammerSpec(((1, 1), (-1, 3)), 4, -2)]
    assert product_series(specs, 40) == one(40)


def test_single_pass_matches_blockwise_product():
    blocks = legacy_blocks("hirschhorn-a")
    blockwise = mul_to_order([lambda n, b=b: pochhammer_series(b, n) for b in blocks], 60)
    assert agrees(product_series(blocks, 60), blockwise)


def test_unit_and_zero_constant_factors():
    assert product_series([PochhammerSpec(((1, 0),), 1)], 5).is_zero
    doubled = product_series([PochhammerSpec(((-1, 0),), 1)], 5)
    assert dense(doubled, 0)[:2] == [2, 2]
    with pytest.raises(NonInvertibleError):
        product_series([PochhammerSpec(((1, 0),), 1, -1)], 5)
    with pytest.raises(NonInvertibleError):
        product_series([PochhammerSpec(((-1, 0),), 1, -1)], 5)


def test_negative_argument_exponent_is_rewritten():
    # (q^-1; q^2)_inf = (1 - q^-1)(q; q^2)_inf
    x = product_series([PochhammerSpec(((1, -1),), 2)], 6)
    assert x.min_exp == -1
    assert x[-1] == -1
    assert x[0] == 2


@pytest.mark.parametrize(
    "sa, sb, ea, eb",
    [
        (1, 1, 1, 1),
        (-1, -1, 1, 2),
        (1, -1, 1, 2),
        (-1, 1, 2, 3),
        (1, 1, -1, 3),
        (-1, 1, -2, 5),
        (1, -1, 3, -2),
        (1, 1, 0, 4),
        (-1, 1, 0, 4),
        (-1, -1, 5, 7),
    ],
)
def test_jacobi_triple_product(sa, sb, ea, eb):
    assert jtpi_check(ThetaSpec(sa, sb, ea, eb), 120)


def test_jtpi_negative_base_splits_modulus():
    spec = jtpi_product(ThetaSpec(1, -1, 1, 2))
    assert spec.modulus == 6
    assert len(spec.args) == 6
    assert jtpi_product(ThetaSpec(1, 1, 1, 2)).modulus == 3


def test_jtpi_rejects_a_product_perturbed_on_one_side():
    spec = ThetaSpec(1, 1, 1, 2)
    assert jtpi_check(spec, 60)
    assert not jtpi_check(spec, 60, product=jtpi_product(ThetaSpec(1, 1, 2, 2)))
