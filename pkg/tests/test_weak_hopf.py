import pytest

from data.builders import group_algebra, groupoid_algebra, pair_groupoid
from data.instance_io import parse_hopf, verify_hopf_stage
from tools.errors import AxiomFailure, DimensionMismatch
from tools.linalg.matrix import ExactMatrix
from tools.weak_hopf.bialgebra import (
    WeakBialgebra,
    WeakHopfAlgebra,
    verify_antipode,
    verify_structure_identities,
    verify_weak_bialgebra,
    verify_weak_hopf,
)
from tools.weak_hopf.structure import StructureAlgebra

EPS_CHECK = "propiedad de epsilon [ε(hlm) = ε(hl⁽¹⁾)ε(l⁽²⁾m)]"


@pytest.mark.parametrize("hopf", ["qc2_hopf", "f2c2_hopf", "qxq_hopf", "groupoid_hopf"])
def test_fixture_algebras_pass_every_suite(hopf, request):
    H = request.getfixturevalue(hopf)
    report = verify_hopf_stage(H)
    assert report.passed, report.render()


def test_group_algebra_is_not_genuinely_weak(qc2_hopf):
    assert not qc2_hopf.is_genuinely_weak()
    assert qc2_hopf.hl.rank == 1
    assert qc2_hopf.hr.rank == 1
    assert qc2_hopf.pi_L(qc2_hopf.e(1)) == qc2_hopf.one()


def test_pair_groupoid_bases(groupoid_hopf):
    H = groupoid_hopf
    assert H.dim == 4
    assert H.is_genuinely_weak()
    assert H.hl.rank == 2
    assert H.hr.rank == 2
    for x in H.hl_basis:
        assert H.hr.contains(x)
    assert not H.is_separable()


def test_product_algebra_is_separable(qxq_hopf):
    assert qxq_hopf.is_separable()
    assert qxq_hopf.is_genuinely_weak()


def test_projections_are_idempotent(groupoid_hopf):
    P = groupoid_hopf.projections
    for name in ("pi_L", "pi_R", "pibar_L", "pibar_R"):
        assert P[name] @ P[name] == P[name]
    assert groupoid_hopf.antipode @ P["pibar_L"] == P["pi_L"]


def test_structure_identities_report_names(groupoid_hopf):
    report = verify_structure_identities(groupoid_hopf)
    assert report.passed
    names = [c.name for c in report.checks]
    assert any(n.startswith("conmut1") for n in names)
    assert any(n.startswith("le h en HR") for n in names)
    assert "para buena def" in names
    assert "iterated coproduct independent of association" in names


def test_broken_counit_reports_epsilon_witness(Q):
    block = dict(group_algebra(2), counit=["1", "0"])
    H = parse_hopf(Q, block)
    report = verify_weak_bialgebra(H)
    assert not report.passed
    check = report.get(EPS_CHECK)
    assert not check.passed
    assert check.witness == (0, 1, 1)
    with pytest.raises(AxiomFailure) as err:
        report.raise_on_failure()
    assert err.value.check == report.first_failure().name


def test_wrong_antipode_fails(Q):
    H = parse_hopf(Q, group_algebra(3))
    ident = ExactMatrix.identity(Q, 3)
    report = verify_antipode(H, ident)
    assert not report.get("antipode: h⁽¹⁾S(h⁽²⁾) = Π^L(h)").passed
    with pytest.raises(AxiomFailure):
        WeakHopfAlgebra.from_bialgebra(WeakBialgebra(H.algebra, H.coalgebra, "C_3"), ident)


def test_antipode_shape_checked(Q):
    H = parse_hopf(Q, group_algebra(2))
    with pytest.raises(DimensionMismatch):
        WeakHopfAlgebra(H.algebra, H.coalgebra, ExactMatrix.identity(Q, 3))


def test_groupoid_from_arrows_takes_closure():
    block = groupoid_algebra(["a", "b", "c"], [("a", "b")])
    assert block["dim"] == 5
    assert block == groupoid_algebra(["a", "b", "c"], [("b", "a")])


def test_invalid_group_table_rejected():
    with pytest.raises(ValueError):
        group_algebra(table=[[0, 1], [0, 1]])
    with pytest.raises(ValueError):
        group_algebra(n=0)


def test_nonassociative_algebra_fails(Q):
    mult = [[[1, 0], [0, 1]], [[0, 1], [1, 1]]]
    A = StructureAlgebra(Q, 2, mult, [1, 0], "B")
    assert A.verify().passed
    bad = StructureAlgebra(Q, 2, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [0, 1], "C")
    assert not bad.verify().passed


def test_pair_groupoid_three_objects(Q):
    H = parse_hopf(Q, pair_groupoid(3))
    assert H.dim == 9
    assert H.hl.rank == 3
    assert verify_weak_hopf(H).passed
