from fractions import Fraction as F

import pytest

from prodviab.core import (
    DimensionMismatch,
    PriceSystem,
    ValidationErrors,
    ZMatrix,
    build_z_matrix,
    incomes,
    validate_system,
)


def test_z_matrix_and_net_output(ex_cyclic_coherent):
    sys = ex_cyclic_coherent
    z = build_z_matrix(sys)
    assert z.rows == (
        (F(4), F(0), F(-2)),
        (F(-3), F(2), F(0)),
        (F(0), F(-1), F(2)),
    )
    assert sys.net_output == (F(1), F(1))
    assert sys.ell == 3
    assert sys.is_consumption(1) and not sys.is_consumption(2)
    assert sys.input_qty(0, 2) == 2


def test_rejects_nonpositive_output():
    with pytest.raises(ValidationErrors) as err:
        validate_system(2, 0, [(0, (0, 1)), (1, (1, 0))], [1, 1])
    assert any(i.code == "NonPositiveOutput" for i in err.value.issues)


def test_rejects_self_input():
    with pytest.raises(ValidationErrors) as err:
        validate_system(2, 0, [(2, (1, 1)), (3, (1, 0))], [1, 1])
    assert any(i.code == "SelfInput" for i in err.value.issues)


def test_rejects_negative_input_and_population():
    with pytest.raises(ValidationErrors) as err:
        validate_system(2, 0, [(2, (0, -1)), (3, (1, 0))], [1, 0])
    codes = {i.code for i in err.value.issues}
    assert "NegativeInput" in codes and "NonPositivePopulation" in codes


def test_rejects_nonzero_intermediate_net_output():
    # intermediate good is overproduced: net output not consumption-only
    with pytest.raises(ValidationErrors) as err:
        validate_system(1, 1, [(1, (0, 1)), (3, (0, 0))], [1, 1])
    assert any(i.code == "NetOutputNotConsumptionOnly" for i in err.value.issues)


def test_rejects_nonpositive_consumption_net_output():
    with pytest.raises(ValidationErrors) as err:
        validate_system(2, 0, [(1, (0, 0)), (1, (2, 0))], [1, 1])
    assert any(
        i.code == "NetOutputNotStrictlyPositive" for i in err.value.issues
    )


def test_errors_are_aggregated():
    with pytest.raises(ValidationErrors) as err:
        validate_system(2, 0, [(0, (0, -1)), (1, (1, 1))], [1, 1])
    assert len(err.value.issues) >= 3


def test_single_consumption_good_warns(ex_incoherent_loop):
    assert ex_incoherent_loop.warnings == (
        "single consumption good: degenerate price simplex",
    )


def test_no_consumption_good_rejected():
    with pytest.raises(ValidationErrors) as err:
        validate_system(0, 1, [(1, (0,))], [1])
    assert any(i.code == "NoConsumptionGood" for i in err.value.issues)


def test_z_matrix_invariants():
    with pytest.raises(ValueError):
        ZMatrix(rows=((F(0),),), ell_c=1, ell_p=0)
    with pytest.raises(ValueError):
        ZMatrix(rows=((F(1), F(1)), (F(0), F(1))), ell_c=2, ell_p=0)
    with pytest.raises(DimensionMismatch):
        ZMatrix(rows=((F(1), F(0)),), ell_c=1, ell_p=1)


def test_price_system_invariants():
    with pytest.raises(ValueError):
        PriceSystem(p=(F(1, 2), F(1, 4)), q=())
    with pytest.raises(ValueError):
        PriceSystem(p=(F(2), F(-1)), q=())
    ps = PriceSystem(p=(F(1, 2), F(1, 2)), q=(F(3),))
    assert ps.vector() == (F(1, 2), F(1, 2), F(3))


def test_incomes_and_dimension_check(ex_cyclic_coherent):
    z = build_z_matrix(ex_cyclic_coherent)
    ps = PriceSystem(p=(F(1, 2), F(1, 2)), q=(F(3, 4),))
    assert incomes(z, ps) == (F(1, 2), F(-1, 2), F(1))
    with pytest.raises(DimensionMismatch):
        incomes(z, PriceSystem(p=(F(1),), q=()))
