from fractions import Fraction

import pytest

from tools.crossed.bundle import (
    CrossedProductBundle,
    build_checks,
    tensor_power_checks,
    verify_cleft_identities,
    verify_comodule_algebra,
)
from tools.crossed.cocycle import convolution, invert_cocycle, is_valued_in, u2, verify_cocycle_pair
from tools.crossed.measure import minimal_stable_subalgebra, stable_subalgebra, verify_weak_module_algebra
from data.instance_io import parse_instance
from tools.errors import AxiomFailure, NotStable, UnsupportedCocycle
from tools.linalg import sparse
from tools.report import Report
from tools.set_runtime import resolve_path


def fixture_path(stem: str) -> str:
    return resolve_path(f"data/fixtures/{stem}.json")


def test_smash_product_dimensions(qc2_smash):
    b = qc2_smash.bundle
    assert b.dim == 4
    assert qc2_smash.K.dim == 1
    assert qc2_smash.K.separable
    assert qc2_smash.setting.k_valued
    assert qc2_smash.f_is_trivial


def test_loaded_instances_pass_every_suite(qc2_smash, twisted, groupoid):
    for inst in (qc2_smash, twisted, groupoid):
        assert inst.passed, "\n".join(r.render() for r in inst.reports)


def test_groupoid_trivial_representation(groupoid):
    assert groupoid.A.dim == 2
    assert groupoid.K.dim == 2
    assert groupoid.bundle.dim == 4
    assert verify_weak_module_algebra(groupoid.measure).info["full module algebra"]


def test_twisted_cocycle_inverse(twisted):
    m, pair = twisted.measure, twisted.pair
    assert pair.f[(1, 1)] == {1: 1}
    assert pair.f_inv[(1, 1)] == {1: Fraction(1, 2)}
    assert verify_cocycle_pair(m, pair).passed
    solved = invert_cocycle(m, pair.f)
    assert solved
    assert solved.unique
    assert solved.f_inv == pair.f_inv
    assert convolution(m, pair.f, solved.f_inv) == u2(m)


def test_twisted_cocycle_not_in_k(twisted):
    assert twisted.K.dim == 1
    assert not is_valued_in(twisted.pair.f, twisted.K)
    with pytest.raises(UnsupportedCocycle):
        twisted.setting.require_k_valued("hh")


def test_gamma_is_convolution_invertible(twisted):
    b, H, E = twisted.bundle, twisted.H, twisted.bundle.E
    g = H.e(1)
    assert E.mul(b.gamma(g), b.gamma_inv(g)) == E.one()
    assert E.mul(b.gamma_inv(g), b.gamma(g)) == E.one()
    assert E.mul(b.gamma(g), b.gamma(g)) == b.j({1: 1})


def test_bundle_suites_pass(twisted):
    b = twisted.bundle
    assert build_checks(b).passed
    report = verify_cleft_identities(b)
    assert report.passed
    assert report.get("gama iota y gama gama: γ(h)γ(l) = j_ν(f(h⁽¹⁾⊗l⁽¹⁾))γ(h⁽²⁾l⁽²⁾)").passed
    assert verify_comodule_algebra(b).passed


def test_noninvertible_cocycle_strict():
    with pytest.raises(AxiomFailure) as err:
        parse_instance(fixture_path("noninvertible_f"))
    assert err.value.check == "invertible cocycle: f*f⁻¹ = u₂"


def test_noninvertible_cocycle_lenient(load):
    inst = load("noninvertible_f", strict=False)
    assert not inst.complete
    assert inst.pair is None
    assert inst.reports[-1].checks[-1].name == "invertible cocycle: f*f⁻¹ = u₂"


def test_unstable_k_strict():
    with pytest.raises(NotStable, match=r"estable bajo rho.*witness \(1, 0\)"):
        parse_instance(fixture_path("unstable_K"))


def test_stable_subalgebras_of_swap_action(load):
    m = load("unstable_K", strict=False).measure
    K = minimal_stable_subalgebra(m)
    assert K.dim == 1
    K2 = stable_subalgebra(m, [{0: 1, 1: 1}, {2: 1}])
    assert K2.dim == 2
    assert K2.separable
    with pytest.raises(NotStable, match="1_A"):
        stable_subalgebra(m, [{0: 1}])


TENSOR_POWER_PREFIXES = ("prop esp':", "auxiliar 5:", "auxiliar 6:")


@pytest.mark.parametrize("name", ["qc2_smash", "pair_groupoid2"])
def test_tensor_power_identities(name, load):
    report = verify_cleft_identities(load(name).bundle)
    assert report.passed, report.render()
    for prefix in TENSOR_POWER_PREFIXES:
        names = [c.name for c in report.checks if c.name.startswith(prefix)]
        assert [n.rsplit("s = ", 1)[1] for n in names] == ["1", "2", "3"]


def test_tensor_power_depth_is_configurable(qc2_smash):
    report = tensor_power_checks(qc2_smash.bundle, Report("smash"), 1)
    assert report.passed
    assert len(report.checks) == len(TENSOR_POWER_PREFIXES)


def test_rescaled_inverse_breaks_unit_identity(qc2_smash):
    b = CrossedProductBundle(qc2_smash.measure, qc2_smash.pair)
    b.gamma_inv_table = [sparse.scaled(v, b.field(2)) for v in b.gamma_inv_table]
    report = tensor_power_checks(b, Report("rescaled"), 1)
    assert report.get("prop esp': γ_×⁻¹(h⁽¹⁾)⊗_A γ̃_A(h⁽²⁾)·j_ν(a) = j_ν(a)γ_×⁻¹(h⁽¹⁾)⊗_A γ̃_A(h⁽²⁾), s = 1").passed
    assert not report.get("auxiliar 5: γ_×(h⁽¹⁾)γ_×⁻¹(h⁽²⁾)⊗_A γ̃_A(h⁽³⁾) = 1_E⊗_A γ̃_A(h), s = 1").passed
