from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tools.errors import DimensionMismatch, NoSolution
from tools.linalg.echelon import EchelonBasis, kernel_basis, make_quotient, solve_linear
from tools.linalg.matrix import ExactMatrix, kernel_matrix
from tools.linalg.scalars import ModP, field_from_descriptor, prime_field, rational_field
from tools.linalg.sparse import combine, multilinear, tensor

Q = rational_field()
F3 = prime_field(3)


def dense_matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@pytest.mark.parametrize("descriptor, name", [("Q", "Q"), ({"Fp": 2}, "F_2"), ({"Fp": 7}, "F_7")])
def test_field_descriptor_round_trip(descriptor, name):
    F = field_from_descriptor(descriptor)
    assert F.name == name
    assert F.descriptor() == descriptor


def test_bad_fields_rejected():
    with pytest.raises(ValueError):
        prime_field(4)
    with pytest.raises(ValueError):
        field_from_descriptor({"Fp": 2, "extra": 1})
    with pytest.raises(TypeError):
        Q.parse(0.5)


def test_scalar_coercion():
    assert Q("3/6") == Fraction(1, 2)
    assert F3("1/2") == ModP(2, 3)
    assert F3.serialize(F3(5)) == 2
    assert Q.serialize(Q("2/4")) == "1/2"
    with pytest.raises(ZeroDivisionError):
        F3.inv(F3(3))


@given(st.integers(-50, 50), st.integers(1, 50))
def test_modp_inverse(a, b):
    F = prime_field(7)
    if a % 7 == 0:
        return
    x = F(a)
    assert x * F.inv(x) == F.one
    assert (F(a) + F(b)) - F(b) == F(a)


@settings(max_examples=60, deadline=None)
@given(dense_matrices())
def test_rank_nullity(entries):
    m = ExactMatrix.from_dense(Q, entries)
    ker = kernel_basis(m)
    assert m.rank() + len(ker) == m.cols
    for v in ker:
        assert not m.apply(v)
    assert m.T.rank() == m.rank()


@settings(max_examples=60, deadline=None)
@given(dense_matrices(), st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_solve_linear_finds_preimage(entries, x):
    m = ExactMatrix.from_dense(Q, entries)
    xv = {j: Q(c) for j, c in enumerate(x[: m.cols]) if c}
    rhs = ExactMatrix.from_columns(Q, m.rows, [m.apply(xv)])
    sol = solve_linear(m, rhs)
    assert sol is not NoSolution
    assert m @ sol == rhs


def test_solve_linear_inconsistent():
    m = ExactMatrix.from_dense(Q, [[1, 1], [2, 2]])
    rhs = ExactMatrix.from_dense(Q, [[1], [0]])
    assert solve_linear(m, rhs) is NoSolution
    assert not solve_linear(m, rhs)


def test_echelon_is_reduced_and_deterministic():
    ech = EchelonBasis(Q, [{0: Q(2), 1: Q(2)}, {1: Q(1), 2: Q(1)}, {0: Q(1), 2: Q(-1)}])
    assert ech.rank == 2
    assert ech.pivots == [0, 1]
    assert ech.rows[0] == {0: 1, 2: -1}
    assert ech.rows[1] == {1: 1, 2: 1}
    assert ech.contains({0: Q(1), 1: Q(1)})
    assert not ech.add({0: Q(3), 2: Q(-3)})


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=4, max_size=4), max_size=3))
def test_quotient_projection_splits_section(relations):
    qp = make_quotient(Q, 4, relations)
    assert qp.quotient_dim == 4 - EchelonBasis(Q, [{i: Q(c) for i, c in enumerate(r) if c} for r in relations]).rank
    assert qp.projection @ qp.section == ExactMatrix.identity(Q, qp.quotient_dim)
    for r in relations:
        assert not qp.project({i: Q(c) for i, c in enumerate(r) if c})


def test_quotient_rejects_short_relation():
    with pytest.raises(ValueError):
        make_quotient(Q, 3, [[1, 0]])


def test_matrix_algebra():
    a = ExactMatrix.from_dense(F3, [[1, 2], [0, 1]])
    b = ExactMatrix.from_dense(F3, [[1, 1], [0, 1]])
    assert (a @ b)[0, 1] == F3(0)
    assert (a - a).is_zero()
    assert (2 * a)[0, 1] == F3(1)
    assert a.hstack(b).shape == (2, 4)
    assert a.vstack(b).shape == (4, 2)
    with pytest.raises(DimensionMismatch):
        a @ ExactMatrix.zeros(F3, 3, 1)
    with pytest.raises(DimensionMismatch):
        ExactMatrix.from_columns(F3, 2, [{2: F3(1)}])


def test_block_and_kernel_matrix():
    one = ExactMatrix.identity(Q, 1)
    m = ExactMatrix.block(Q, [1, 1], [1, 1], {(0, 0): one, (0, 1): one})
    k = kernel_matrix(m)
    assert k.shape == (2, 1)
    assert (m @ k).is_zero()


def test_signature_depends_on_entries():
    a = ExactMatrix.from_dense(Q, [[1, 0], [0, 1]])
    b = ExactMatrix.from_dense(Q, [[1, 0], [0, 2]])
    assert a.update_signature() == ExactMatrix.identity(Q, 2).update_signature()
    assert a.update_signature() != b.update_signature()


def test_sparse_helpers():
    v = tensor([{0: 1, 1: 2}, {0: 3}])
    assert v == {(0, 0): 3, (1, 0): 6}
    assert combine([(1, {0: 1}), (-1, {0: 1})]) == {}
    assert multilinear([{0: 1, 1: 1}, {2: 1}], lambda i, j: {i + j: 1}) == {2: 1, 3: 1}
