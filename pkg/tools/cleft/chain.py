"""The double complex (X̄_{**}(M), d̄⁰, d̄¹, d̄²) for H^K_*(E, M).

Components follow ``DoubleComplex``: d̄⁰ lowers r, d̄¹ lowers s and d̄² goes
from (r, s) to (r + 1, s − 2). d̄² is built for every cocycle; the homology is
assembled only when f takes values in K, where d̄² vanishes and the higher
components are not needed.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from tools.complexes.graded import DoubleComplex, TotalComplex, homology_dims
from tools.crossed.cocycle import evaluate
from tools.errors import IllDefinedMap
from tools.hopf_homology.resolution import bar_space
from tools.linalg import sparse
from tools.linalg.matrix import ExactMatrix
from tools.relative.presented import PresentedSpace, induce_map
from tools.report import Report
from tools.set_runtime import load_store_from_cache
from tools.cleft.canonical import canonical_homology, hochschild_boundary
from tools.cleft.spaces import CleftSetting, coinvariant_tail, parity, xbar

logger = logging.getLogger(__name__)


def twist(st: CleftSetting, h: int, m: int, tail: tuple) -> dict:
    """F^h[m ⊗ ā] = Σ [γ(h⁽³⁾)·m·γ⁻¹(h⁽¹⁾) ⊗ h⁽²⁾·ā] on block keys (m, a_1..a_r)."""

    def build():
        H, b = st.H, st.bundle
        out = {}
        for (h1, h2, h3), c in H.sweedler_basis(h, 3).items():
            mm = st.M.lmul(b.gamma_table[h3], st.m_right(m, b.gamma_inv_table[h1]))
            if not mm:
                continue
            acted = b.m.act_tensor(H.e(h2), tail)
            for k, d in mm.items():
                for t, e in acted.items():
                    sparse.add_term(out, (k,) + t, c * d * e)
        return out

    return st.cached(("twist", h, m, tail), build)


def twist_vector(st: CleftSetting, h: dict, vec: dict) -> dict:
    """F^h extended linearly in h and in a block vector."""
    acc = {}
    for i, c in h.items():
        for key, d in vec.items():
            sparse.axpy(acc, twist(st, i, key[0], key[1:]), c * d)
    return acc


def frak_t(st: CleftSetting, h: int, l: int, tail: tuple) -> dict:
    """𝔗(h, l, ā) = Σ_i (−1)^i h⁽¹⁾·(l⁽¹⁾·ā_{1i}) ⊗ f(h⁽²⁾⊗l⁽²⁾) ⊗ (h⁽³⁾l⁽³⁾)·ā_{i+1,r}."""

    def build():
        H, b, F = st.H, st.bundle, st.field
        f = b.pair.f
        out = {}
        for (h1, h2, h3), c in H.sweedler_basis(h, 3).items():
            for (l1, l2, l3), d in H.sweedler_basis(l, 3).items():
                middle = evaluate(f, H.e(h2), H.e(l2))
                if not middle:
                    continue
                hl3 = H.mul(H.e(h3), H.e(l3))
                for i in range(len(tail) + 1):
                    inner = b.m.act_tensor(H.e(l1), tail[:i])
                    left = sparse.apply_linear(inner, lambda k: b.m.act_tensor(H.e(h1), k))
                    right = b.m.act_tensor(hl3, tail[i:])
                    piece = sparse.flatten_tensor(sparse.tensor([left, {(a,): v for a, v in middle.items()}, right], F.one))
                    sparse.axpy(out, piece, parity(F, i) * c * d)
        return out

    return st.cached(("frak_t", h, l, tail), build)


def block_homotopy(st: CleftSetting, h: int, l: int, m: int, tail: tuple) -> dict:
    """−Σ [γ(h⁽³⁾l⁽³⁾)·m·γ⁻¹(l⁽¹⁾)γ⁻¹(h⁽¹⁾) ⊗ 𝔗(h⁽²⁾, l⁽²⁾, ā)], from M⊗Ā^{⊗r}⊗ to M⊗Ā^{⊗r+1}⊗."""

    def build():
        H, b, E = st.H, st.bundle, st.E
        out = {}
        for (h1, h2, h3), c in H.sweedler_basis(h, 3).items():
            for (l1, l2, l3), d in H.sweedler_basis(l, 3).items():
                t = frak_t(st, h2, l2, tail)
                if not t:
                    continue
                right = E.mul(b.gamma_inv_table[l1], b.gamma_inv_table[h1])
                mm = st.M.lmul(b.gamma(H.mul(H.e(h3), H.e(l3))), st.m_right(m, right))
                for k, e in mm.items():
                    for key, g in t.items():
                        sparse.add_term(out, (k,) + key, -c * d * e * g)
        return out

    return st.cached(("block_homotopy", h, l, m, tail), build)


def d1_formula(st: CleftSetting, r: int, s: int):
    """d̄¹: X̄_{rs} → X̄_{r,s−1}."""
    H, b, F = st.H, st.bundle, st.field
    sr = parity(F, r)

    def formula(key: tuple) -> dict:
        hs, m, tail = key[:s], key[s], key[s + 1:]
        out = {}
        if s == 1:
            for k, c in st.m_right(m, b.gamma(H.pi_R(H.e(hs[0])))).items():
                sparse.add_term(out, (k,) + tail, sr * c)
            sparse.axpy(out, twist(st, hs[0], m, tail), -sr)
            return out
        for k, c in H.mul(H.pibar_R(H.e(hs[0])), H.e(hs[1])).items():
            sparse.add_term(out, (k,) + hs[2:] + (m,) + tail, sr * c)
        for i in range(1, s):
            sign = parity(F, r + i)
            for k, c in H.algebra.mul_basis(hs[i - 1], hs[i]).items():
                sparse.add_term(out, hs[:i - 1] + (k,) + hs[i + 1:] + (m,) + tail, sign * c)
        for k, c in twist(st, hs[-1], m, tail).items():
            sparse.add_term(out, hs[:-1] + k, parity(F, r + s) * c)
        return out

    return formula


def d2_formula(st: CleftSetting, r: int, s: int):
    """d̄²: X̄_{rs} → X̄_{r+1,s−2}."""

    def formula(key: tuple) -> dict:
        hs, m, tail = key[:s], key[s], key[s + 1:]
        pre = hs[:s - 2]
        return {pre + k: c for k, c in block_homotopy(st, hs[-2], hs[-1], m, tail).items()}

    return formula


def _induced(formula, src: PresentedSpace, dst: PresentedSpace, label: str) -> ExactMatrix:
    m = induce_map(formula, src, dst)
    if not m:
        raise IllDefinedMap(m, label)
    return m


@dataclass
class CleftChainComplex:
    setting: CleftSetting
    n_max: int
    spaces: Dict[Tuple[int, int], PresentedSpace]
    double: DoubleComplex

    def total(self) -> TotalComplex:
        self.setting.require_k_valued("the total complex of X̄")
        return self.double.total(self.n_max)

    def d2_vanishes(self) -> bool:
        return all(m.is_zero() for m in self.double.components.get(2, {}).values())


def build_chain_complex(st: CleftSetting, n_max: int) -> CleftChainComplex:
    """X̄_{rs}(M) for r + s ≤ n_max + 1 with d̄⁰, d̄¹ and d̄² as matrices."""
    keys = [(r, n - r) for n in range(n_max + 2) for r in range(n + 1)]
    spaces = {(r, s): xbar(st, r, s) for r, s in keys}
    comps = {0: {}, 1: {}, 2: {}}
    for r, s in keys:
        src = spaces[(r, s)]
        if r >= 1:
            comps[0][(r, s)] = _induced(hochschild_boundary(st, st.abar, r, prefix=s), src, spaces[(r - 1, s)],
                                        f"d̄⁰ on X̄_{r},{s}")
        if s >= 1:
            comps[1][(r, s)] = _induced(d1_formula(st, r, s), src, spaces[(r, s - 1)], f"d̄¹ on X̄_{r},{s}")
        if s >= 2:
            comps[2][(r, s)] = _induced(d2_formula(st, r, s), src, spaces[(r + 1, s - 2)], f"d̄² on X̄_{r},{s}")
    dims = {k: sp.dim for k, sp in spaces.items()}
    logger.info(f"X̄({st.M.name}) over {st.bundle.name}: dims {dims}")
    return CleftChainComplex(st, n_max, spaces, DoubleComplex(st.field, dims, comps, f"X̄({st.M.name})"))


@load_store_from_cache
def cleft_homology(st: CleftSetting, n_max: int) -> List[int]:
    """dim H^K_n(E, M) for n ≤ n_max from the total complex of X̄."""
    st.require_k_valued("Hochschild homology through X̄")
    cc = build_chain_complex(st, n_max)
    return homology_dims(cc.total().complex, n_max)


@dataclass
class CleftHomologyRun:
    homology: List[int]
    oracle: List[int]
    complex: CleftChainComplex
    report: Report


def verify_cleft_homology(st: CleftSetting, n_max: int) -> CleftHomologyRun:
    """Build X̄, check its identities and compare H^K_* with the normalized complex of E."""
    report = Report(f"H^K_*({st.bundle.name}, {st.M.name})")
    cc = build_chain_complex(st, n_max)
    tail = coinvariant_tail(st)
    report.add("X̄_{0s} = H̄^{⊗s}⊗_{H^L}M⊗",
               all(cc.double.dim(0, s) == bar_space(st.H, s, tail).dim for s in range(n_max + 2)))
    cc.double.verify(report, orders=[0, 1, 2])
    homology, oracle = [], []
    if st.k_valued:
        report.add("d̄² = 0 for K-valued f", cc.d2_vanishes())
        total = cc.total()
        homology = homology_dims(total.complex, n_max)
        oracle = canonical_homology(st, n_max)
        report.add("H^K_*(E, M): X̄ agrees with the normalized Hochschild complex", homology == oracle,
                   None if homology == oracle else (homology, oracle))
        report.table("H_n", dict(enumerate(homology)))
    else:
        logger.info(f"{st.bundle.name}: f is not K-valued, homology not assembled")
    report.info["X̄ dims"] = {f"{r},{s}": d for (r, s), d in sorted(cc.double.dims.items())}
    return CleftHomologyRun(homology, oracle, cc, report)
