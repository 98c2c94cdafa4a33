import pytest

from tools.cleft.canonical import canonical_homology
from tools.cleft.chain import build_chain_complex, cleft_homology, verify_cleft_homology
from tools.cleft.module_action import (
    coinvariant_module,
    homology_module,
    verify_a_equals_k_homology,
    verify_module_structure,
    verify_spectral_e2,
)
from tools.cleft.spaces import xbar, xhat
from tools.cleft.theta import chain_theta_lambda, verify_theta_lambda
from tools.errors import UnsupportedCocycle
from tools.linalg.matrix import ExactMatrix


def test_group_algebra_hochschild_homology(qc2):
    run = verify_cleft_homology(qc2.setting, 3)
    assert run.report.passed, run.report.render()
    assert run.homology == [2, 0, 0, 0]
    assert run.oracle == run.homology
    assert run.report.tables["H_n"] == {"0": 2, "1": 0, "2": 0, "3": 0}


def test_char_two_group_algebra_homology(load):
    st = load("f2c2").setting
    assert cleft_homology(st, 3) == [2, 2, 2, 2]
    assert canonical_homology(st, 3) == [2, 2, 2, 2]
    run = verify_cleft_homology(st, 3)
    assert run.report.passed, run.report.render()
    assert run.oracle == run.homology == [2, 2, 2, 2]


def test_smash_product_agrees_with_normalized_complex(qc2_smash):
    run = verify_cleft_homology(qc2_smash.setting, 3)
    assert run.report.passed, run.report.render()
    assert len(run.homology) == 4
    assert run.oracle == run.homology
    assert run.complex.d2_vanishes()
    assert run.report.get("X̄_{0s} = H̄^{⊗s}⊗_{H^L}M⊗").passed


def test_general_cocycle_keeps_relations_but_not_homology(twisted):
    st = twisted.setting
    run = verify_cleft_homology(st, 1)
    assert run.report.passed, run.report.render()
    assert run.homology == []
    with pytest.raises(UnsupportedCocycle):
        run.complex.total()
    with pytest.raises(UnsupportedCocycle):
        cleft_homology(st, 1)


def test_double_complex_relations_for_twisted_cocycle(twisted):
    cc = build_chain_complex(twisted.setting, 1)
    report = cc.double.verify(orders=[0, 1, 2])
    assert report.passed


@pytest.mark.parametrize("name, n_max", [("qc2_smash", 3), ("qc2", 3), ("twisted_c2", 2), ("pair_groupoid2", 2)])
def test_theta_and_lambda_are_inverse(name, n_max, load):
    st = load(name).setting
    report = verify_theta_lambda(st, n_max)
    assert report.passed, report.render()


def test_theta_shapes_match_spaces(qc2_smash):
    st = qc2_smash.setting
    theta, lam = chain_theta_lambda(st, 1, 1)
    assert theta.shape == (xhat(st, 1, 1).dim, xbar(st, 1, 1).dim)
    assert lam @ theta == ExactMatrix.identity(st.field, xbar(st, 1, 1).dim)


@pytest.mark.parametrize("name, r_max", [("qc2_smash", 2), ("twisted_c2", 1)])
def test_homology_of_a_is_an_h_module(name, r_max, load):
    report = verify_module_structure(load(name).setting, r_max)
    assert report.passed, report.render()


def test_homology_module_is_a_module(qc2_smash):
    mod = homology_module(qc2_smash.setting, 0, 1)
    assert mod.verify().passed


def test_spectral_sequence_second_page(qc2_smash):
    report = verify_spectral_e2(qc2_smash.setting, 3)
    assert report.passed, report.render()
    assert "E^2_(s,r)" in report.tables


def test_spectral_sequence_needs_k_valued_cocycle(twisted):
    with pytest.raises(UnsupportedCocycle):
        verify_spectral_e2(twisted.setting, 1)


def test_a_equals_k_reduces_to_hopf_homology(groupoid, qc2):
    for inst in (groupoid, qc2):
        report = verify_a_equals_k_homology(inst.setting, 2)
        assert report.passed, report.render()
    assert coinvariant_module(qc2.setting).verify().passed


def test_a_equals_k_rejects_proper_subalgebra(qc2_smash):
    with pytest.raises(ValueError):
        verify_a_equals_k_homology(qc2_smash.setting, 1)
