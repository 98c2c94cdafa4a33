import pytest

from tools.complexes.graded import (
    DoubleComplex,
    GradedComplex,
    Subquotient,
    homology_dims,
    homotopy_check,
    induced_on_homology,
    is_chain_map,
)
from tools.complexes.mixed import MixedComplexData, cyclic_from_mixed
from tools.complexes.spectral import FilteredComplex, spectral_pages, verify_pages
from tools.errors import AxiomFailure, DimensionMismatch
from tools.linalg.matrix import ExactMatrix


def _m(F, rows):
    return ExactMatrix.from_dense(F, rows)


def test_homology_of_small_complex(Q):
    # k ← k² ← k with d_1 = (1 1), d_2 = (1, −1)ᵀ
    c = GradedComplex(Q, {0: 1, 1: 2, 2: 1}, {1: _m(Q, [[1, 1]]), 2: _m(Q, [[1], [-1]])})
    assert homology_dims(c, 2) == [0, 0, 0]
    z = GradedComplex(Q, {0: 1, 1: 1}, {})
    assert homology_dims(z, 1) == [1, 1]


def test_square_nonzero_rejected(Q):
    with pytest.raises(AxiomFailure):
        GradedComplex(Q, {0: 1, 1: 1, 2: 1}, {1: _m(Q, [[1]]), 2: _m(Q, [[1]])})
    with pytest.raises(DimensionMismatch):
        GradedComplex(Q, {0: 1, 1: 1}, {1: _m(Q, [[1, 0]])})
    with pytest.raises(ValueError):
        GradedComplex(Q, {0: 1}, {}, degree=2)


def test_cochain_complex_degree(F2):
    c = GradedComplex(F2, {0: 1, 1: 1, 2: 1}, {0: _m(F2, [[0]]), 1: _m(F2, [[1]])}, degree=1)
    assert c.homology_dim(0) == 1
    assert c.homology_dim(1) == 0
    assert c.homology_dim(2) == 0


def test_subquotient_coordinates(Q):
    sq = Subquotient(Q, 3, [{0: Q(1)}, {1: Q(1)}], [{0: Q(1), 1: Q(1)}])
    assert sq.dim == 1
    assert sq.coordinates({0: Q(2), 1: Q(2)}) == {}
    assert sq.coordinates({0: Q(1)}) == {0: 1}
    with pytest.raises(ValueError):
        sq.coordinates({2: Q(1)})


def test_identity_is_chain_map_and_contractible_complex(Q):
    c = GradedComplex(Q, {0: 1, 1: 1}, {1: _m(Q, [[1]])})
    ident = {n: ExactMatrix.identity(Q, 1) for n in (0, 1)}
    zero = {n: ExactMatrix.zeros(Q, 1, 1) for n in (0, 1)}
    assert is_chain_map(ident, c, c, [0, 1])
    h = {0: ExactMatrix.identity(Q, 1)}
    assert homotopy_check(ident, zero, h, c, c, [0, 1])
    assert not homotopy_check(ident, zero, {}, c, c, [0])


def test_induced_on_homology(Q):
    c = GradedComplex(Q, {0: 2}, {})
    h = c.homology(0)
    swap = _m(Q, [[0, 1], [1, 0]])
    m = induced_on_homology(swap, h, h)
    assert m == swap


def _square(Q):
    one = _m(Q, [[1]])
    return DoubleComplex(
        Q,
        {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
        {0: {(1, 0): one, (1, 1): one}, 1: {(0, 1): one, (1, 1): -one}},
        "square",
    )


def test_double_complex_total(Q):
    dc = _square(Q)
    assert dc.verify().passed
    tot = dc.total(1)
    assert [tot.complex.dim(n) for n in range(3)] == [1, 2, 1]
    assert homology_dims(tot.complex, 2) == [0, 0, 0]
    assert tot.levels[1] == [0, 1]
    assert tot.restrict(0, 1, tot.embed(0, 1, {0: Q(5)}), 1) == {0: 5}


def test_double_complex_detects_broken_relation(Q):
    one = _m(Q, [[1]])
    dc = DoubleComplex(
        Q,
        {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1},
        {0: {(1, 0): one, (1, 1): one}, 1: {(0, 1): one, (1, 1): one}},
    )
    report = dc.verify()
    assert not report.passed
    assert report.first_failure().witness == (1, 1, 1)
    with pytest.raises(AxiomFailure):
        dc.total(1)


def test_spectral_sequence_of_acyclic_rows(Q):
    tot = _square(Q).total(1)
    fc = FilteredComplex(tot.complex, tot.levels)
    pages = spectral_pages(fc, 2)
    assert pages[0].dim(0, 0) == 1
    assert pages[1].dims == {}
    assert verify_pages(fc, pages).passed


def test_filtration_must_be_preserved(Q):
    c = GradedComplex(Q, {0: 1, 1: 1}, {1: _m(Q, [[1]])})
    with pytest.raises(AxiomFailure):
        FilteredComplex(c, {0: [1], 1: [0]})


def test_cyclic_homology_of_zero_mixed_complex(Q):
    c = GradedComplex(Q, {n: 1 for n in range(4)}, {})
    mx = MixedComplexData(c, {})
    cyc = cyclic_from_mixed(mx, 2, 0)
    assert cyc.hc == [1, 1, 2]
    assert cyc.hn_status == "truncated"
    assert cyc.as_tables()["HC_n"] == {"0": 1, "1": 1, "2": 2}
    with pytest.raises(ValueError):
        cyclic_from_mixed(mx, 3, 0)


def test_mixed_complex_rejects_noncommuting_b_and_B(Q):
    c = GradedComplex(Q, {0: 1, 1: 1}, {1: _m(Q, [[1]])})
    with pytest.raises(AxiomFailure):
        MixedComplexData(c, {0: _m(Q, [[1]])})
