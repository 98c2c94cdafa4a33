"""The cochain side: (X̄^{**}(M), d_0, d_1, d_2) for H_K^*(E, M).

A cochain in X̄^{rs}(M) is a map β(h̄_{1s} ⊗ ā_{1r}) ∈ M. The component d_l
goes from X̄^{rs} to X̄^{r−l+1, s+l}; d_2 is built for every cocycle and
vanishes when f takes values in K, which is when the cohomology is assembled.
The right H-module structure on H_K^*(A, M) comes from F_h.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple

from tools.complexes.graded import GradedComplex, cochain_total, homotopy_check, induced_on_homology, is_chain_map
from tools.complexes.spectral import FilteredComplex, spectral_pages, verify_pages
from tools.errors import IllDefinedMap
from tools.hopf_homology.homology import cohomology_of_H
from tools.linalg import sparse
from tools.linalg.matrix import ExactMatrix
from tools.relative.hom import HomSpace, induce_hom_map
from tools.relative.tensor import SidedModule
from tools.report import Report
from tools.set_runtime import load_store_from_cache
from tools.cleft.canonical import canonical_cohomology, hochschild_coboundary, hochschild_cochain_complex
from tools.cleft.chain import frak_t
from tools.cleft.spaces import CleftSetting, hochschild_cochain_space, parity, xbar_cochain

logger = logging.getLogger(__name__)

Components = Dict[int, Dict[Tuple[int, int], ExactMatrix]]


def _acted(st: CleftSetting, h: int, tail: tuple) -> dict:
    return st.bundle.m.act_tensor(st.H.e(h), tail)


def cochain_twist(st: CleftSetting, beta, h: int, pre: tuple, tail: tuple) -> dict:
    """Σ γ⁻¹(h⁽¹⁾)·β(pre ⊗ h⁽²⁾·ā)·γ(h⁽³⁾)."""
    b, M = st.bundle, st.M
    out = {}
    for (h1, h2, h3), c in st.H.sweedler_basis(h, 3).items():
        value = beta({pre + k: v for k, v in _acted(st, h2, tail).items()})
        if value:
            sparse.axpy(out, M.rmul(M.lmul(b.gamma_inv_table[h1], value), b.gamma_table[h3]), c)
    return out


def cochain_homotopy(st: CleftSetting, beta, h: int, l: int, pre: tuple, tail: tuple) -> dict:
    """−Σ γ⁻¹(l⁽¹⁾)γ⁻¹(h⁽¹⁾)·β(pre ⊗ 𝔗(h⁽²⁾, l⁽²⁾, ā))·γ(h⁽³⁾l⁽³⁾)."""
    H, b, M, E = st.H, st.bundle, st.M, st.E
    out = {}
    for (h1, h2, h3), c in H.sweedler_basis(h, 3).items():
        for (l1, l2, l3), d in H.sweedler_basis(l, 3).items():
            t = frak_t(st, h2, l2, tail)
            if not t:
                continue
            value = beta({pre + k: v for k, v in t.items()})
            if not value:
                continue
            left = E.mul(b.gamma_inv_table[l1], b.gamma_inv_table[h1])
            right = b.gamma(H.mul(H.e(h3), H.e(l3)))
            sparse.axpy(out, M.rmul(M.lmul(left, value), right), -c * d)
    return out


def d1_formula(st: CleftSetting, r: int, s: int):
    """d_1: X̄^{r,s−1} → X̄^{rs}, as a value at a key of X̄^{rs}."""
    H, b, F = st.H, st.bundle, st.field
    sr = parity(F, r)

    def formula(beta, key: tuple) -> dict:
        hs, tail = key[:s], key[s:]
        out = {}
        if s == 1:
            value = beta({tail: F.one})
            sparse.axpy(out, st.M.lmul(b.gamma(H.pi_R(H.e(hs[0]))), value), sr)
            sparse.axpy(out, cochain_twist(st, beta, hs[0], (), tail), -sr)
            return out
        arg = {(k,) + hs[2:] + tail: c for k, c in H.mul(H.pibar_R(H.e(hs[0])), H.e(hs[1])).items()}
        sparse.axpy(out, beta(arg), sr)
        for i in range(1, s):
            arg = {hs[:i - 1] + (k,) + hs[i + 1:] + tail: c for k, c in H.algebra.mul_basis(hs[i - 1], hs[i]).items()}
            sparse.axpy(out, beta(arg), parity(F, r + i))
        sparse.axpy(out, cochain_twist(st, beta, hs[-1], hs[:-1], tail), parity(F, r + s))
        return out

    return formula


def d2_formula(st: CleftSetting, r: int, s: int):
    """d_2: X̄^{r+1,s−2} → X̄^{rs}."""

    def formula(beta, key: tuple) -> dict:
        hs, tail = key[:s], key[s:]
        return cochain_homotopy(st, beta, hs[-2], hs[-1], hs[:-2], tail)

    return formula


def _induced(formula, src: HomSpace, dst: HomSpace, label: str) -> ExactMatrix:
    m = induce_hom_map(formula, src, dst)
    if not m:
        raise IllDefinedMap(m, label)
    return m


@dataclass
class CleftCochainComplex:
    setting: CleftSetting
    n_max: int
    spaces: Dict[Tuple[int, int], HomSpace]
    components: Components

    @property
    def dims(self) -> Dict[Tuple[int, int], int]:
        return {k: sp.dim for k, sp in self.spaces.items()}

    def component(self, l: int, r: int, s: int) -> ExactMatrix:
        m = self.components.get(l, {}).get((r, s))
        if m is None:
            m = ExactMatrix.zeros(self.setting.field, self.dims.get((r - l + 1, s + l), 0), self.dims.get((r, s), 0))
        return m

    def relation_failures(self, orders=(0, 1, 2)):
        """(k, r, s) where Σ_{i+j=k} d_i∘d_j ≠ 0 out of X̄^{rs}."""
        ls = sorted(self.components)
        for (r, s) in sorted(self.spaces):
            for k in orders:
                acc = None
                for j in ls:
                    i = k - j
                    if i not in self.components:
                        continue
                    tgt = (r - j + 1, s + j)
                    if tgt not in self.spaces or (tgt[0] - i + 1, tgt[1] + i) not in self.spaces:
                        continue
                    term = self.component(i, *tgt) @ self.component(j, r, s)
                    acc = term if acc is None else acc + term
                if acc is not None and not acc.is_zero():
                    yield (k, r, s)

    def d2_vanishes(self) -> bool:
        return all(m.is_zero() for m in self.components.get(2, {}).values())

    def total(self) -> Tuple[GradedComplex, Dict[Tuple[int, int], int], Dict[int, List[int]]]:
        self.setting.require_k_valued("the total complex of X̄^*")
        return cochain_total(self.setting.field, self.dims, self.components, self.n_max, f"X̄^*({self.setting.M.name})")


def build_cochain_complex(st: CleftSetting, n_max: int) -> CleftCochainComplex:
    """X̄^{rs}(M) for r + s ≤ n_max + 1 with d_0, d_1 and d_2."""
    keys = [(r, n - r) for n in range(n_max + 2) for r in range(n + 1)]
    spaces = {(r, s): xbar_cochain(st, r, s) for r, s in keys}
    comps: Components = {0: {}, 1: {}, 2: {}}
    for r, s in keys:
        dst = spaces[(r, s)]
        if r >= 1:
            comps[0][(r - 1, s)] = _induced(hochschild_coboundary(st, st.abar, r, prefix=s), spaces[(r - 1, s)], dst,
                                            f"d_0 into X̄^{r},{s}")
        if s >= 1:
            comps[1][(r, s - 1)] = _induced(d1_formula(st, r, s), spaces[(r, s - 1)], dst, f"d_1 into X̄^{r},{s}")
        if s >= 2 and (r + 1, s - 2) in spaces:
            comps[2][(r + 1, s - 2)] = _induced(d2_formula(st, r, s), spaces[(r + 1, s - 2)], dst,
                                                f"d_2 into X̄^{r},{s}")
    logger.info(f"X̄^*({st.M.name}) over {st.bundle.name}: dims { {k: sp.dim for k, sp in spaces.items()} }")
    return CleftCochainComplex(st, n_max, spaces, comps)


@load_store_from_cache
def cleft_cohomology(st: CleftSetting, n_max: int) -> List[int]:
    """dim H_K^n(E, M) for n ≤ n_max."""
    st.require_k_valued("Hochschild cohomology through X̄^*")
    complex_, _, _ = build_cochain_complex(st, n_max).total()
    return [complex_.homology_dim(n) for n in range(n_max + 1)]


# right H-module structure on H_K^*(A, M)

def f_star_matrices(st: CleftSetting, h: dict, r_max: int) -> Dict[int, ExactMatrix]:
    """F_h(β)(ā) = γ⁻¹(h⁽¹⁾)·β(h⁽²⁾·ā)·γ(h⁽³⁾) on Hom_{K^e}(Ā^{⊗r}, M), r ≤ r_max + 1."""
    out = {}
    for r in range(r_max + 2):
        space = hochschild_cochain_space(st, st.abar, r)

        def formula(beta, key):
            acc = {}
            for i, c in h.items():
                sparse.axpy(acc, cochain_twist(st, beta, i, (), key), c)
            return acc

        out[r] = _induced(formula, space, space, f"F_h on Hom(Ā^{r}, {st.M.name})")
    return out


def cochain_homotopy_matrices(st: CleftSetting, h: int, l: int, r_max: int) -> Dict[int, ExactMatrix]:
    """𝔥 from Hom(Ā^{⊗r+1}, M) to Hom(Ā^{⊗r}, M), keyed by the source degree r + 1."""
    out = {}
    for r in range(r_max + 1):
        src, dst = hochschild_cochain_space(st, st.abar, r + 1), hochschild_cochain_space(st, st.abar, r)
        out[r + 1] = _induced(lambda beta, key: cochain_homotopy(st, beta, h, l, (), key), src, dst, f"𝔥^{r + 1}")
    return out


def cohomology_module(st: CleftSetting, r: int, r_max: int = None) -> SidedModule:
    """H_K^r(A, M) as a right H-module through F_h."""
    r_max = r if r_max is None else r_max
    c = hochschild_cochain_complex(st, st.abar, r_max)
    hom = c.homology(r)
    action = {h: induced_on_homology(f_star_matrices(st, st.H.e(h), r_max)[r], hom, hom) for h in range(st.H.dim)}
    return SidedModule.from_function(st.field, hom.dim, st.H.algebra, lambda h, v: action[h].column(v), "right",
                                     f"H_K^{r}(A,{st.M.name})")


def verify_right_module(st: CleftSetting, r_max: int) -> Report:
    """F_1 = id, F_h commutes with d, and F_l∘F_h − F_{hl} = d𝔥 + 𝔥d."""
    H, F = st.H, st.field
    report = Report(f"right H-module H_K^*({st.A.name}, {st.M.name})")
    c = hochschild_cochain_complex(st, st.abar, r_max)
    maps = {h: f_star_matrices(st, H.e(h), r_max) for h in range(H.dim)}
    one = f_star_matrices(st, H.one(), r_max)
    report.add("F_1 = id", all(one[r] == ExactMatrix.identity(F, c.dim(r)) for r in range(r_max + 2)))
    report.check("F_h is a cochain map", (h for h in maps if not is_chain_map(maps[h], c, c, range(r_max + 1))))

    def homotopy():
        for h, l in product(range(H.dim), repeat=2):
            composed = {r: maps[l][r] @ maps[h][r] for r in range(r_max + 2)}
            target = {}
            for r in range(r_max + 2):
                acc = ExactMatrix.zeros(F, c.dim(r), c.dim(r))
                for k, v in H.algebra.mul_basis(h, l).items():
                    acc = acc + maps[k][r] * v
                target[r] = acc
            if not homotopy_check(composed, target, cochain_homotopy_matrices(st, h, l, r_max), c, c,
                                  range(r_max + 1)):
                yield (h, l)

    report.check("F_l∘F_h − F_{hl} = d𝔥 + 𝔥d", homotopy())
    return report


def verify_cleft_cohomology(st: CleftSetting, n_max: int) -> Report:
    """Build X̄^*, check its identities and compare H_K^* with Hom_{K^e}(Ē^{⊗*}, M)."""
    report = Report(f"H_K^*({st.bundle.name}, {st.M.name})")
    cc = build_cochain_complex(st, n_max)
    report.check("X̄^*: Σ d_i∘d_j = 0", cc.relation_failures())
    if st.k_valued:
        report.add("d_2 = 0 for K-valued f", cc.d2_vanishes())
        complex_, _, _ = cc.total()
        dims = [complex_.homology_dim(n) for n in range(n_max + 1)]
        oracle = canonical_cohomology(st, n_max)
        report.add("H_K^*(E, M): X̄^* agrees with Hom_{K^e}(Ē^{⊗*}, M)", dims == oracle,
                   None if dims == oracle else (dims, oracle))
        report.table("H^n", dict(enumerate(dims)))
    report.info["X̄^* dims"] = {f"{r},{s}": d for (r, s), d in sorted(cc.dims.items())}
    return report


def verify_cohomology_e2(st: CleftSetting, n_max: int) -> Report:
    """E_2 of the filtration by s against H^s(H, H_K^r(A, M))."""
    st.require_k_valued("the spectral sequence of X̄^*")
    report = Report(f"E_2 for H_K^*({st.bundle.name}, {st.M.name})")
    complex_, _, levels = build_cochain_complex(st, n_max).total()
    fc = FilteredComplex(complex_, {n: [-s for s in lv] for n, lv in levels.items()})
    degrees = list(range(n_max + 1))
    pages = spectral_pages(fc, 2, degrees)
    report.extend(verify_pages(fc, pages, degrees))
    mismatched = []
    for r in degrees:
        dims = cohomology_of_H(st.H, cohomology_module(st, r, n_max), n_max - r)
        for s, d in enumerate(dims):
            if pages[2].dim(-s, r + 2 * s) != d:
                mismatched.append((r, s))
    report.add("E_2^{rs} = H^s(H, H_K^r(A, M))", not mismatched, mismatched[0] if mismatched else None)
    report.table("E_2^(r,s)", {f"{p + q + p},{-p}": d for (p, q), d in sorted(pages[2].dims.items())})
    return report


def invariant_module(st: CleftSetting) -> SidedModule:
    """M^K with n·h = γ⁻¹(h⁽¹⁾)·n·γ(h⁽²⁾)."""
    space = hochschild_cochain_space(st, st.abar, 0)
    b, M = st.bundle, st.M

    def act(h: int, v: int) -> dict:
        n = space.basis[v]
        out = {}
        for (h1, h2), c in st.H.sweedler_basis(h, 2).items():
            sparse.axpy(out, M.rmul(M.lmul(b.gamma_inv_table[h1], n), b.gamma_table[h2]), c)
        return space.coordinates(out)

    return SidedModule.from_function(st.field, space.dim, st.H.algebra, act, "right", f"{st.M.name}^K")


def verify_a_equals_k_cohomology(st: CleftSetting, n_max: int) -> Report:
    """For A = K: H_K^*(E, M) = H^*(H, M^K)."""
    if st.K.dim != st.A.dim:
        raise ValueError(f"{st.bundle.name}: K is a proper subalgebra of A")
    report = Report(f"A = K cohomology of {st.bundle.name}")
    via_x = cleft_cohomology(st, n_max)
    via_h = cohomology_of_H(st.H, invariant_module(st), n_max)
    report.add("H_K^*(E, M) = H^*(H, M^K)", via_x == via_h, None if via_x == via_h else (via_x, via_h))
    report.table("H^n", dict(enumerate(via_x)))
    return report
