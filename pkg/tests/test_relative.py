import pytest

from tools.errors import IllDefinedMap
from tools.relative.hom import HomSpace
from tools.relative.presented import PresentedSpace, RelationFamily, Slot, induce_map
from tools.relative.tensor import Bimodule, SidedModule, coinvariants, quotient_module, tensor_chain, tensor_over


def test_slot_quotient(Q):
    s = Slot("H̄", Q, 2, [{0: Q(1)}])
    assert s.quotient_dim == 1
    assert s.reps == [1]
    assert s.reduce(0) == {}
    assert s.reduce(1) == {1: 1}


def test_presented_space_without_relations(Q):
    sp = PresentedSpace("V⊗W", Q, [Slot("V", Q, 2), Slot("W", Q, 3)])
    assert sp.dim == 6
    assert sp.arity == 2
    assert sp.projection_matrix @ sp.section == sp.identity()


def test_relation_family_cuts_dimension(Q):
    def symmetric():
        yield {(0, 1): Q(1), (1, 0): Q(-1)}

    sp = PresentedSpace("S²V", Q, [Slot("V", Q, 2), Slot("V", Q, 2)], [RelationFamily("sym", (0, 1), symmetric)])
    assert sp.dim == 3
    assert sp.is_zero({(0, 1): Q(1), (1, 0): Q(-1)})
    assert not sp.is_zero({(0, 1): Q(1)})


def test_induce_map_detects_ill_defined(Q):
    hbar = PresentedSpace("H̄", Q, [Slot("H̄", Q, 2, [{0: Q(1)}])])
    h = PresentedSpace("H", Q, [Slot("H", Q, 2)])
    lift = induce_map(lambda key: {key: Q(1)}, hbar, h)
    assert not lift
    assert lift.witness[0] == "slot"
    proj = induce_map(lambda key: {key: Q(1)}, h, hbar)
    assert proj
    assert proj.shape == (1, 2)
    assert proj[0, 0] == 0 and proj[0, 1] == 1


def test_unchecked_induce_map_builds_matrix(Q):
    hbar = PresentedSpace("H̄", Q, [Slot("H̄", Q, 2, [{0: Q(1)}])])
    h = PresentedSpace("H", Q, [Slot("H", Q, 2)])
    m = induce_map(lambda key: {key: Q(1)}, hbar, h, check=False)
    assert m.shape == (2, 1)


def test_tensor_over_regular_bimodule(qc2_hopf):
    R = qc2_hopf.algebra
    M = Bimodule.regular(R, "H")
    assert M.verify().passed
    t = tensor_over(M, M)
    assert t.dim == 2
    assert t.left is not None and t.right is not None
    assert t.left.verify().passed


def test_tensor_over_needs_matching_sides(qc2_hopf):
    R = qc2_hopf.algebra
    left = SidedModule.from_function(R.field, R.dim, R, lambda r, v: R.mul_basis(r, v), "left", "H")
    with pytest.raises(ValueError):
        tensor_over(left, left)


def test_tensor_chain_over_matrix_algebra(groupoid_hopf):
    M = Bimodule.regular(groupoid_hopf.algebra, "H")
    assert tensor_chain([M, M, M]).dim == 4


def test_coinvariants_of_matrix_algebra(groupoid_hopf):
    R = groupoid_hopf.algebra
    M = Bimodule.regular(R, "H")
    K = [R.basis_vector(i) for i in range(R.dim)]
    assert coinvariants(M, K).dim == 1
    assert coinvariants(M, [R.one()]).dim == 4


def test_quotient_module_by_ideal(Q, qc2_hopf):
    R = qc2_hopf.algebra
    reg = SidedModule.from_function(Q, 2, R, lambda r, v: R.mul_basis(r, v), "left", "H")
    qm = quotient_module(Q, 2, [[1, 1]], reg, "H/(1+g)")
    assert qm.dim == 1
    assert qm.module.act_basis(1, 0) == {0: -1}
    with pytest.raises(IllDefinedMap):
        quotient_module(Q, 2, [[1, 0]], reg, "H/k")


def test_module_verify_flags_bad_action(Q, qc2_hopf):
    R = qc2_hopf.algebra
    bad = SidedModule.from_tensor(Q, 1, R, [[[1]], [[2]]], "left", "N")
    report = bad.verify()
    assert not report.get("N: left action associative").passed
    assert report.get("N: left action unital").passed


def test_hom_space_constraints(Q):
    V = PresentedSpace("V", Q, [Slot("V", Q, 2)])
    free = HomSpace("Hom(V, k²)", Q, V, 2)
    assert free.dim == 4
    # β(e_0) = β(e_1)
    tied = HomSpace("Hom", Q, V, 2, [({(0,): Q(1)}, {(1,): Q(1)}, None)])
    assert tied.dim == 2
    beta = tied.basis[0]
    assert tied.contains(beta)
    ev = tied.evaluator(beta)
    assert ev({(0,): Q(1)}) == ev({(1,): Q(1)})
