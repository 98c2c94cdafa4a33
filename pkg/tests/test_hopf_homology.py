import pytest

from tools.hopf_homology.homology import (
    cohomology_of_H,
    ext_dims,
    hom_bar_space,
    homology_of_H,
    hopf_cochain_complex,
    regular_module,
    trivial_left_module,
    trivial_right_module,
    verify_hopf_cohomology,
    verify_hopf_homology,
    verify_trivial_modules,
)
from tools.hopf_homology.resolution import bar_space, build_resolution


def test_resolution_of_group_algebra(qc2_hopf):
    res = build_resolution(qc2_hopf, 2)
    dims = [res.complex.dim(n) for n in range(-1, 3)]
    assert dims == [1, 2, 2, 2]
    assert bar_space(qc2_hopf, 1).dim == 1
    assert bar_space(qc2_hopf, 2).dim == 1
    report = res.verify()
    assert report.passed
    assert all(c.name.startswith("res hom") for c in report.checks)


def test_resolution_of_separable_algebra(qxq_hopf):
    res = build_resolution(qxq_hopf, 2)
    assert [res.complex.dim(n) for n in range(-1, 2)] == [2, 2, 0]
    assert res.verify().passed


@pytest.mark.parametrize("hopf", ["qc2_hopf", "f2c2_hopf", "qxq_hopf", "groupoid_hopf"])
def test_resolution_contracts_through_top_degree(hopf, request):
    H = request.getfixturevalue(hopf)
    res = build_resolution(H, 4)
    assert set(res.contraction) == set(range(-1, 5))
    report = res.verify()
    assert report.passed, report.render()
    assert report.get("res hom: ħ∘d' + d'∘ħ = id in degrees 1..4").passed


def test_resolution_in_degree_zero_checks_only_the_bottom(qc2_hopf):
    report = build_resolution(qc2_hopf, 0).verify()
    assert [c.name for c in report.checks] == ["res hom: ħ∘d' + d'∘ħ = id in degrees −1, 0"]
    assert report.passed


@pytest.mark.parametrize("hopf", ["qc2_hopf", "f2c2_hopf", "qxq_hopf", "groupoid_hopf"])
def test_trivial_modules(hopf, request):
    H = request.getfixturevalue(hopf)
    assert verify_trivial_modules(H).passed


def test_group_algebra_char_zero(qc2_hopf):
    assert homology_of_H(qc2_hopf, trivial_left_module(qc2_hopf), 3) == [1, 0, 0, 0]
    assert cohomology_of_H(qc2_hopf, trivial_right_module(qc2_hopf), 3) == [1, 0, 0, 0]


def test_group_algebra_char_two(f2c2_hopf):
    run = verify_hopf_homology(f2c2_hopf, trivial_left_module(f2c2_hopf), 4)
    assert run.homology == [1, 1, 1, 1, 1]
    assert run.report.passed
    assert run.report.tables["H_n"] == {str(n): 1 for n in range(5)}
    coh = verify_hopf_cohomology(f2c2_hopf, trivial_right_module(f2c2_hopf), 3)
    assert coh.homology == [1, 1, 1, 1]
    assert coh.report.passed


def test_separable_algebra_has_no_higher_homology(qxq_hopf):
    N = trivial_left_module(qxq_hopf)
    assert homology_of_H(qxq_hopf, N, 2) == [2, 0, 0]
    assert cohomology_of_H(qxq_hopf, trivial_right_module(qxq_hopf), 2) == [2, 0, 0]


def test_groupoid_homology(groupoid_hopf):
    run = verify_hopf_homology(groupoid_hopf, trivial_left_module(groupoid_hopf), 2)
    assert run.homology == [1, 0, 0]
    assert run.report.passed


def test_regular_coefficients(qc2_hopf):
    run = verify_hopf_homology(qc2_hopf, regular_module(qc2_hopf, "left"), 2)
    assert run.homology == [1, 0, 0]
    assert run.report.passed
    coh = verify_hopf_cohomology(qc2_hopf, regular_module(qc2_hopf, "right"), 2)
    assert coh.report.passed


def test_hom_tensor_adjunction_dims(f2c2_hopf):
    N = trivial_right_module(f2c2_hopf)
    adj = ext_dims(f2c2_hopf, N, 2)
    assert [hom_bar_space(f2c2_hopf, s, N).dim for s in range(3)] == [adj[s] for s in range(3)]


def test_sides_are_checked(qc2_hopf):
    with pytest.raises(ValueError):
        hopf_cochain_complex(qc2_hopf, trivial_left_module(qc2_hopf), 1)
    with pytest.raises(ValueError):
        homology_of_H(qc2_hopf, trivial_right_module(qc2_hopf), 1)
