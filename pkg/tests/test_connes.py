import pytest

from tools.cleft.connes import build_connes, t_basis, verify_cyclic, verify_t_maps
from tools.errors import UnsupportedCocycle


def test_quotient_of_e_by_a(qc2_smash):
    st = qc2_smash.regular_setting
    assert st.E.dim == 4
    assert st.etilde.quotient_dim == 2


def test_t_maps_on_smash_and_twisted(qc2_smash, twisted):
    for inst in (qc2_smash, twisted):
        report = verify_t_maps(inst.regular_setting, 2)
        assert report.passed, report.render()


def test_t_zero_is_the_action_on_one(twisted):
    st = twisted.regular_setting
    for h in range(st.H.dim):
        assert t_basis(st, (h,)) == st.bundle.m.on_one(st.H.e(h))


def test_cyclic_homology_of_semisimple_group_algebra(qc2):
    run = verify_cyclic(qc2.regular_setting, 3, trunc=1)
    assert run.report.passed, run.report.render()
    assert run.cyclic.hc == [2, 0, 2, 0]
    assert run.canonical_hc == [2, 0, 2, 0]
    assert run.report.tables["HC_n"] == {"0": 2, "1": 0, "2": 2, "3": 0}
    assert run.cyclic.hn_status == "stabilized"
    assert run.cyclic.hp_status == "stabilized"
    assert run.report.info["HN status"] == run.report.info["HP status"] == "stabilized"


def test_cyclic_homology_of_smash_product(qc2_smash):
    run = verify_cyclic(qc2_smash.regular_setting, 1, trunc=1)
    assert run.report.passed, run.report.render()
    assert run.report.info["HN status"] in ("stabilized", "truncated")


def test_connes_operator_is_a_mixed_complex(qc2_smash):
    data = build_connes(qc2_smash.regular_setting, 3)
    assert data.mixed.verify().passed
    assert data.mixed.top == 3


def test_connes_operator_needs_k_valued_f(twisted):
    with pytest.raises(UnsupportedCocycle):
        build_connes(twisted.regular_setting, 2)
