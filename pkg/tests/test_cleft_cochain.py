import pytest

from tools.cleft.canonical import canonical_cohomology
from tools.cleft.cochain import (
    build_cochain_complex,
    cleft_cohomology,
    cohomology_module,
    invariant_module,
    verify_a_equals_k_cohomology,
    verify_cleft_cohomology,
    verify_cohomology_e2,
    verify_right_module,
)
from tools.cleft.spaces import xbar_cochain, xhat_cochain
from tools.cleft.theta import cochain_theta_lambda
from tools.errors import UnsupportedCocycle
from tools.linalg.matrix import ExactMatrix


def test_group_algebra_hochschild_cohomology(qc2):
    report = verify_cleft_cohomology(qc2.setting, 3)
    assert report.passed, report.render()
    assert report.tables["H^n"] == {"0": 2, "1": 0, "2": 0, "3": 0}


def test_char_two_group_algebra_cohomology(load):
    st = load("f2c2").setting
    assert cleft_cohomology(st, 3) == [2, 2, 2, 2]
    assert canonical_cohomology(st, 3) == [2, 2, 2, 2]
    report = verify_cleft_cohomology(st, 3)
    assert report.passed, report.render()
    assert report.tables["H^n"] == {str(n): 2 for n in range(4)}


def test_smash_product_cohomology_agrees(qc2_smash):
    report = verify_cleft_cohomology(qc2_smash.setting, 3)
    assert report.passed, report.render()
    assert report.get("d_2 = 0 for K-valued f").passed


def test_general_cocycle_cochain_relations(twisted):
    st = twisted.setting
    cc = build_cochain_complex(st, 1)
    assert list(cc.relation_failures()) == []
    report = verify_cleft_cohomology(st, 1)
    assert report.passed
    assert "H^n" not in report.tables
    with pytest.raises(UnsupportedCocycle):
        cc.total()


def test_missing_component_is_zero(qc2_smash):
    cc = build_cochain_complex(qc2_smash.setting, 1)
    m = cc.component(2, 0, 0)
    assert m.is_zero()
    assert m.shape == (cc.dims.get((-1, 2), 0), cc.dims[(0, 0)])


def test_cochain_theta_is_invertible(twisted):
    st = twisted.setting
    theta, lam = cochain_theta_lambda(st, 1, 1)
    assert theta.shape == (xhat_cochain(st, 1, 1).dim, xbar_cochain(st, 1, 1).dim)
    assert theta @ lam == ExactMatrix.identity(st.field, theta.shape[0])


@pytest.mark.parametrize("name, r_max", [("qc2_smash", 2), ("twisted_c2", 1)])
def test_cohomology_of_a_is_a_right_module(name, r_max, load):
    report = verify_right_module(load(name).setting, r_max)
    assert report.passed, report.render()


def test_cohomology_module_side(qc2_smash):
    mod = cohomology_module(qc2_smash.setting, 0, 1)
    assert mod.side == "right"
    assert mod.verify().passed


def test_cohomology_spectral_sequence(qc2_smash):
    report = verify_cohomology_e2(qc2_smash.setting, 3)
    assert report.passed, report.render()


def test_a_equals_k_reduces_to_hopf_cohomology(groupoid, qc2):
    for inst in (groupoid, qc2):
        report = verify_a_equals_k_cohomology(inst.setting, 2)
        assert report.passed, report.render()
    assert invariant_module(groupoid.setting).verify().passed


def test_a_equals_k_cohomology_rejects_proper_subalgebra(twisted):
    with pytest.raises(ValueError):
        verify_a_equals_k_cohomology(twisted.setting, 1)
