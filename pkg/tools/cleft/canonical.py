"""Normalized Hochschild complexes relative to K, for R = Ā or R = Ē.

With R = Ē these are the canonical oracles: (M ⊗ Ē^{⊗n} ⊗, b) computes
H^K_*(E, M), Hom_{K^e}(Ē^{⊗n}, M) computes H_K^*(E, M), and for M = E the
operator B makes (E ⊗ Ē^{⊗*} ⊗, b, B) the canonical mixed complex. With
R = Ā the same formulas give the s = 0 column of the simplified complexes.
"""

import logging
from typing import Callable, List

from tools.complexes.graded import GradedComplex, homology_dims
from tools.complexes.mixed import MixedComplexData
from tools.errors import IllDefinedMap
from tools.linalg import sparse
from tools.relative.hom import induce_hom_map
from tools.relative.presented import induce_map
from tools.set_runtime import load_store_from_cache
from tools.cleft.spaces import CleftSetting, Coefficients, hochschild_cochain_space, hochschild_space, parity

logger = logging.getLogger(__name__)


def hochschild_boundary(st: CleftSetting, R: Coefficients, r: int, prefix: int = 0) -> Callable[[tuple], dict]:
    """b[m ⊗ x_1..x_r] = [m·x_1 ⊗ x_2..] + Σ (−1)^i [m ⊗ ..x_ix_{i+1}..] + (−1)^r [x_r·m ⊗ x_1..x_{r−1}].

    The first ``prefix`` entries of a key are carried along.
    """
    F = st.field
    sign_last = parity(F, r)

    def formula(key: tuple) -> dict:
        pre, m, xs = key[:prefix], key[prefix], key[prefix + 1:]
        out = {}
        for k, c in st.m_right(m, R.images[xs[0]]).items():
            sparse.add_term(out, pre + (k,) + xs[1:], c)
        for i in range(1, r):
            sign = parity(F, i)
            for k, c in R.ring.mul_basis(xs[i - 1], xs[i]).items():
                sparse.add_term(out, pre + (m,) + xs[:i - 1] + (k,) + xs[i + 1:], sign * c)
        for k, c in st.m_left(R.images[xs[-1]], m).items():
            sparse.add_term(out, pre + (k,) + xs[:-1], sign_last * c)
        return out

    return formula


def hochschild_coboundary(st: CleftSetting, R: Coefficients, r: int, prefix: int = 0):
    """(dβ)(x_1..x_r) = x_1·β(x_2..) + Σ (−1)^i β(..x_ix_{i+1}..) + (−1)^r β(x_1..x_{r−1})·x_r."""
    F = st.field
    M = st.M
    sign_last = parity(F, r)

    def formula(beta, key: tuple) -> dict:
        pre, xs = key[:prefix], key[prefix:]
        out = M.lmul(R.images[xs[0]], beta({pre + xs[1:]: F.one}))
        for i in range(1, r):
            arg = {pre + xs[:i - 1] + (k,) + xs[i + 1:]: c for k, c in R.ring.mul_basis(xs[i - 1], xs[i]).items()}
            sparse.axpy(out, beta(arg), parity(F, i))
        sparse.axpy(out, M.rmul(beta({pre + xs[:-1]: F.one}), R.images[xs[-1]]), sign_last)
        return out

    return formula


def hochschild_chain_complex(st: CleftSetting, R: Coefficients, n_max: int) -> GradedComplex:
    """(M ⊗ R̄^{⊗n} ⊗, b) in degrees 0..n_max + 1."""
    spaces = {n: hochschild_space(st, R, n) for n in range(n_max + 2)}
    diffs = {}
    for n in range(1, n_max + 2):
        m = induce_map(hochschild_boundary(st, R, n), spaces[n], spaces[n - 1])
        if not m:
            raise IllDefinedMap(m, f"b_{n} on {spaces[n].name}")
        diffs[n] = m
    return GradedComplex(st.field, {n: sp.dim for n, sp in spaces.items()}, diffs, -1,
                         f"C^K({R.name}, {st.M.name})")


def hochschild_cochain_complex(st: CleftSetting, R: Coefficients, n_max: int) -> GradedComplex:
    """(Hom_{K^e}(R̄^{⊗n}, M), d) in degrees 0..n_max + 1."""
    spaces = {n: hochschild_cochain_space(st, R, n) for n in range(n_max + 2)}
    diffs = {}
    for n in range(1, n_max + 2):
        m = induce_hom_map(hochschild_coboundary(st, R, n), spaces[n - 1], spaces[n])
        if not m:
            raise IllDefinedMap(m, f"d^{n} on Hom({R.name}^{n}, {st.M.name})")
        diffs[n - 1] = m
    return GradedComplex(st.field, {n: sp.dim for n, sp in spaces.items()}, diffs, +1,
                         f"C_K({R.name}, {st.M.name})")


@load_store_from_cache
def canonical_homology(st: CleftSetting, n_max: int) -> List[int]:
    dims = homology_dims(hochschild_chain_complex(st, st.ebar, n_max), n_max)
    logger.info(f"H^K_*({st.bundle.name}, {st.M.name}) from the normalized complex: {dims}")
    return dims


@load_store_from_cache
def canonical_cohomology(st: CleftSetting, n_max: int) -> List[int]:
    c = hochschild_cochain_complex(st, st.ebar, n_max)
    return [c.homology_dim(n) for n in range(n_max + 1)]


def connes_formula(st: CleftSetting, n: int) -> Callable[[tuple], dict]:
    """B[c_0 ⊗ c_1..c_n] = Σ_i (−1)^{in} [1 ⊗ c_i..c_n ⊗ c_0 ⊗ c_1..c_{i−1}]."""
    F = st.field
    one = st.E.one()

    def formula(key: tuple) -> dict:
        c0, cs = key[0], key[1:]
        out = {}
        for i in range(n + 1):
            rotated = cs[i:] + (c0,) + cs[:i]
            sign = parity(F, i * n)
            for u, c in one.items():
                sparse.add_term(out, (u,) + rotated, sign * c)
        return out

    return formula


def canonical_mixed_complex(st: CleftSetting, top: int) -> MixedComplexData:
    """(E ⊗ Ē^{⊗*} ⊗, b, B) in degrees 0..top; needs M = E."""
    if st.M.dim != st.E.dim or st.M.base is not st.E:
        raise ValueError("the canonical mixed complex needs M = E")
    c = hochschild_chain_complex(st, st.ebar, top - 1)
    B = {}
    for n in range(top):
        src, dst = hochschild_space(st, st.ebar, n), hochschild_space(st, st.ebar, n + 1)
        m = induce_map(connes_formula(st, n), src, dst)
        if not m:
            raise IllDefinedMap(m, f"B_{n}")
        B[n] = m
    return MixedComplexData(c, B, f"(E⊗Ē^*⊗, b, B)({st.bundle.name})")
