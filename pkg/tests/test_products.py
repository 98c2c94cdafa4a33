import pytest

from tools.cleft.products import Cochain, ProductSetting, cup, unit_cochain, verify_products
from tools.cleft.spaces import xbar_cochain
from tools.errors import UnsupportedCocycle


def test_cup_and_cap_on_group_algebra(qc2):
    report = verify_products(qc2.regular_setting, 2)
    assert report.passed, report.render()
    assert report.info["cocycles"][0] == 2
    assert report.info["cycles"][0] == 2


def test_cup_and_cap_on_smash_product(qc2_smash):
    report = verify_products(qc2_smash.regular_setting, 1)
    assert report.passed, report.render()
    names = [c.name for c in report.checks]
    assert "(y∗β)∗β′ = y∗(β·β′) on classes" in names


def test_cup_only(qc2_smash):
    report = verify_products(qc2_smash.regular_setting, 1, with_cap=False)
    assert report.passed
    assert "cycles" not in report.info
    assert all("∗" not in c.name for c in report.checks)


def test_unit_cochain_is_a_left_and_right_unit(qc2_smash):
    st = qc2_smash.regular_setting
    u = unit_cochain(st)
    space = xbar_cochain(st, 0, 0)
    for v in range(space.dim):
        beta = Cochain(0, 0, space.vector({v: st.field.one}))
        assert space.coordinates(cup(st, u, beta).table) == {v: 1}
        assert space.coordinates(cup(st, beta, u).table) == {v: 1}


def test_unit_in_total_complex_is_a_cocycle(qc2):
    ps = ProductSetting(qc2.regular_setting, 1)
    assert not ps.cochains.d(0).apply(ps.unit())


def test_products_need_k_valued_f(twisted):
    with pytest.raises(UnsupportedCocycle):
        verify_products(twisted.regular_setting, 1)
