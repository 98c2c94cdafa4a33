"""Maps H ⊗ H → A: convolution, the trivial cocycle, inversion and the crossed product hypotheses.

A bilinear map is a dict ``{(i, j): A-vector}`` over pairs of basis indices of
H; missing pairs are zero.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, Tuple, Union

from tools.crossed.measure import StableSubalgebra, WeakMeasure, full_module_witness
from tools.errors import AxiomFailure, DimensionMismatch, NotInvertible
from tools.linalg import sparse
from tools.linalg.echelon import solve_linear
from tools.linalg.matrix import ExactMatrix
from tools.report import Report

logger = logging.getLogger(__name__)

BilinearMap = Dict[Tuple[int, int], dict]


def bilinear_from_tensor(F, data, h_dim: int, a_dim: int) -> BilinearMap:
    """From nested data with data[i][j][k] the coefficient of e_k in f(e_i ⊗ e_j)."""
    if len(data) != h_dim or any(len(row) != h_dim for row in data):
        raise DimensionMismatch(f"f: expected shape ({h_dim}, {h_dim}, {a_dim})")
    out = {}
    for i, j in product(range(h_dim), range(h_dim)):
        if len(data[i][j]) != a_dim:
            raise DimensionMismatch(f"f[{i}][{j}]: expected {a_dim} entries")
        v = {k: F(c) for k, c in enumerate(data[i][j]) if F(c)}
        if v:
            out[(i, j)] = v
    return out


def bilinear_to_tensor(F, f: BilinearMap, h_dim: int, a_dim: int) -> list:
    return [[[F.serialize(f.get((i, j), {}).get(k, F.zero)) for k in range(a_dim)]
             for j in range(h_dim)] for i in range(h_dim)]


def evaluate(f: BilinearMap, x: dict, y: dict) -> dict:
    """f(x ⊗ y) for x, y vectors of H."""
    acc = {}
    for i, a in x.items():
        for j, b in y.items():
            v = f.get((i, j))
            if v:
                sparse.axpy(acc, v, a * b)
    return acc


def evaluate_pairs(f: BilinearMap, t: dict) -> dict:
    """f applied to a tensor t = Σ c (i, j)."""
    acc = {}
    for (i, j), c in t.items():
        v = f.get((i, j))
        if v:
            sparse.axpy(acc, v, c)
    return acc


def convolution(m: WeakMeasure, f: BilinearMap, g: BilinearMap) -> BilinearMap:
    """(f*g)(h ⊗ l) = f(h⁽¹⁾ ⊗ l⁽¹⁾) g(h⁽²⁾ ⊗ l⁽²⁾)."""
    H, A = m.H, m.A
    out = {}
    for i, j in product(range(H.dim), range(H.dim)):
        acc = {}
        for (a, b), c in H.sweedler_basis(i, 2).items():
            for (p, q), d in H.sweedler_basis(j, 2).items():
                fv, gv = f.get((a, p)), g.get((b, q))
                if fv and gv:
                    sparse.axpy(acc, A.mul(fv, gv), c * d)
        if acc:
            out[(i, j)] = acc
    return out


def u2(m: WeakMeasure) -> BilinearMap:
    """u₂(h ⊗ l) = hl·1_A."""
    H = m.H
    out = {}
    for i, j in product(range(H.dim), range(H.dim)):
        v = m.on_one(H.algebra.mul_basis(i, j))
        if v:
            out[(i, j)] = v
    return out


def is_valued_in(f: BilinearMap, K: StableSubalgebra) -> bool:
    return all(K.contains(v) for v in f.values())


def _first_bad_pair(f: BilinearMap, g: BilinearMap):
    for key in sorted(set(f) | set(g)):
        if f.get(key, {}) != g.get(key, {}):
            return key
    return None


@dataclass
class CocyclePair:
    """An invertible cocycle f with its convolution inverse relative to u₂."""

    f: BilinearMap
    f_inv: BilinearMap
    u2: BilinearMap
    unique: bool = True


def verify_cocycle_pair(m: WeakMeasure, pair: CocyclePair) -> Report:
    report = Report("invertible cocycle")
    f, g, u = pair.f, pair.f_inv, pair.u2
    for name, lhs, rhs in (
        ("f*f⁻¹ = u₂", convolution(m, f, g), u),
        ("f⁻¹*f = u₂", convolution(m, g, f), u),
        ("u₂*f⁻¹ = f⁻¹", convolution(m, u, g), g),
        ("f⁻¹*u₂ = f⁻¹", convolution(m, g, u), g),
        ("neutro del otro lado: f*u₂ = f", convolution(m, f, u), f),
        ("neutro del otro lado: u₂*f = f", convolution(m, u, f), f),
    ):
        bad = _first_bad_pair(lhs, rhs)
        report.add(name, bad is None, bad)
    report.info["inverse unique"] = pair.unique
    return report


def trivial_cocycle(m: WeakMeasure) -> CocyclePair:
    """f(h ⊗ l) = hl·1_A with f⁻¹ = f; needs a full module algebra."""
    bad = full_module_witness(m)
    if bad is not None:
        raise AxiomFailure("es modulo algebra: h·(l·a) = hl·a", bad[0], "the trivial cocycle needs a module algebra")
    f = u2(m)
    pair = CocyclePair(f, f, f, True)
    verify_cocycle_pair(m, pair).raise_on_failure()
    return pair


def invert_cocycle(m: WeakMeasure, f: BilinearMap) -> Union[CocyclePair, NotInvertible]:
    """Solve f*x = u₂, x*f = u₂, u₂*x = x, x*u₂ = x for x.

    Returns ``NotInvertible`` when the system is inconsistent. The pair records
    whether the homogeneous system is trivial, i.e. whether the inverse is unique.
    """
    H, A = m.H, m.A
    F = m.field
    dh, da = H.dim, A.dim
    u = u2(m)
    index = {}

    def row(key):
        r = index.get(key)
        if r is None:
            r = index[key] = len(index)
        return r

    for fam, i, j, k in product(range(4), range(dh), range(dh), range(da)):
        row((fam, i, j, k))
    columns = []
    unknowns = list(product(range(dh), range(dh), range(da)))
    for i, j, k in unknowns:
        x = {(i, j): {k: F.one}}
        col = {}
        images = (
            convolution(m, f, x),
            convolution(m, x, f),
            _minus(convolution(m, u, x), x),
            _minus(convolution(m, x, u), x),
        )
        for fam, img in enumerate(images):
            for (p, q), v in img.items():
                for c_k, c in v.items():
                    sparse.add_term(col, row((fam, p, q, c_k)), c)
        columns.append(col)
    n_rows = len(index)
    M = ExactMatrix.from_columns(F, n_rows, columns)
    rhs_col = {}
    for fam in (0, 1):
        for (p, q), v in u.items():
            for c_k, c in v.items():
                rhs_col[row((fam, p, q, c_k))] = c
    sol = solve_linear(M, ExactMatrix.from_columns(F, n_rows, [rhs_col]))
    if not sol:
        logger.info("invert_cocycle: inconsistent system")
        return NotInvertible("the system f*x = x*f = u₂, u₂*x = x*u₂ = x has no solution")
    values = sol.column(0)
    f_inv = {}
    for idx, (i, j, k) in enumerate(unknowns):
        c = values.get(idx)
        if c:
            f_inv.setdefault((i, j), {})[k] = c
    unique = M.rank() == len(unknowns)
    pair = CocyclePair(f, f_inv, u, unique)
    report = verify_cocycle_pair(m, pair)
    if not report.passed:
        return NotInvertible(f"solution fails '{report.first_failure().name}'")
    logger.info(f"invert_cocycle: solved, unique={unique}")
    return pair


def _minus(a: BilinearMap, b: BilinearMap) -> BilinearMap:
    out = {}
    for key in set(a) | set(b):
        v = sparse.sub(a.get(key, {}), b.get(key, {}))
        if v:
            out[key] = v
    return out


def verify_crossed_hypotheses(m: WeakMeasure, f: BilinearMap) -> Report:
    """Hypotheses (1)-(5) under which A ⊗ H carries the unitary crossed product."""
    report = Report("weak crossed prod hypotheses")
    H, A = m.H, m.A
    F = m.field
    dh, da = range(H.dim), range(A.dim)
    one_pairs = H.unit_coproduct()
    e = H.e

    def normal_1():
        for i, j in product(dh, dh):
            rhs = {}
            for (a, b), c in H.sweedler_basis(i, 2).items():
                for (p, q), d in H.sweedler_basis(j, 2).items():
                    fv = f.get((a, p))
                    if fv:
                        sparse.axpy(rhs, A.mul(fv, m.on_one(H.algebra.mul_basis(b, q))), c * d)
            if f.get((i, j), {}) != rhs:
                yield (i, j)

    def normal_2():
        for i in dh:
            rhs = {}
            for (a, b), c in H.sweedler_basis(i, 2).items():
                for (x, y), d in one_pairs.items():
                    left = m.act(e(a), m.on_one(e(x)))
                    sparse.axpy(rhs, A.mul(left, evaluate(f, e(b), e(y))), c * d)
            if m.on_one(e(i)) != rhs:
                yield (i,)

    def normal_3():
        for i in dh:
            rhs = {}
            for (x, y), d in one_pairs.items():
                sparse.axpy(rhs, A.mul(m.on_one(e(x)), evaluate(f, e(y), e(i))), d)
            if m.on_one(e(i)) != rhs:
                yield (i,)

    def unit_times():
        for a in da:
            lhs, rhs = {}, {}
            for (x, y), d in one_pairs.items():
                lhs_a = A.mul(A.basis_vector(a), m.on_one(e(x)))
                sparse.axpy(lhs, sparse.tensor([lhs_a, e(y)], F.one), d)
                sparse.axpy(rhs, sparse.tensor([m.rho[x, a], e(y)], F.one), d)
            if lhs != rhs:
                yield (a,)

    def twisted_module():
        for i, j, a in product(dh, dh, da):
            lhs, rhs = {}, {}
            for (h1, h2), c in H.sweedler_basis(i, 2).items():
                for (l1, l2), d in H.sweedler_basis(j, 2).items():
                    cd = c * d
                    fv = f.get((h1, l1))
                    if fv:
                        sparse.axpy(lhs, A.mul(fv, m.act(H.algebra.mul_basis(h2, l2), A.basis_vector(a))), cd)
                    fw = f.get((h2, l2))
                    if fw:
                        sparse.axpy(rhs, A.mul(m.act(e(h1), m.rho[l1, a]), fw), cd)
            if lhs != rhs:
                yield (i, j, a)

    def cocycle():
        for i, j, k in product(dh, dh, dh):
            lhs, rhs = {}, {}
            di, dj, dk = (H.sweedler_basis(t, 2) for t in (i, j, k))
            for (h1, h2), c in di.items():
                for (l1, l2), d in dj.items():
                    fv = f.get((h1, l1))
                    if fv:
                        sparse.axpy(lhs, A.mul(fv, evaluate(f, H.algebra.mul_basis(h2, l2), e(k))), c * d)
                    for (m1, m2), g in dk.items():
                        inner = f.get((l1, m1))
                        if inner:
                            right = evaluate(f, e(h2), H.algebra.mul_basis(l2, m2))
                            sparse.axpy(rhs, A.mul(m.act(e(h1), inner), right), c * d * g)
            if lhs != rhs:
                yield (i, j, k)

    report.check("weak crossed prod (1): f(h⊗l) = f(h⁽¹⁾⊗l⁽¹⁾)(h⁽²⁾l⁽²⁾·1)", normal_1())
    report.check("weak crossed prod (2): h·1 = (h⁽¹⁾·(1⁽¹⁾·1))f(h⁽²⁾⊗1⁽²⁾)", normal_2())
    report.check("weak crossed prod (3): h·1 = (1⁽¹⁾·1)f(1⁽²⁾⊗h)", normal_3())
    report.check("weak crossed prod (4): a×1 = 1⁽¹⁾·a⊗1⁽²⁾", unit_times())
    report.check("weak crossed prod (5): twisted module condition", twisted_module())
    report.check("weak crossed prod (5): cocycle", cocycle())
    return report
