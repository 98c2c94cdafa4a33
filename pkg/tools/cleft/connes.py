"""Cyclic homology of E through the mixed complex (X̄_*(E), d̄, D̄⁰ + D̄¹).

T_s: H^{⊗s+1} → A is the map with

    γ(h_0)γ_×⁻¹(h_{1s}) = j(T_s(h_0⁽¹⁾ ⊗ h⁽²⁾_{1s}))γ(h_0⁽²⁾S_×(h⁽¹⁾_{1s})),

computed by the recursion T_{s+1}(h_0 ⊗ h_1 ⊗ h_{2,s+1}) =
T_s(h_0⁽¹⁾ ⊗ h⁽²⁾_{2,s+1})·T_1(h_0⁽²⁾S_×(h⁽¹⁾_{2,s+1}) ⊗ h_1) from T_0(h) = h·1_A.
D̄⁰ raises s and D̄¹ raises r; for K-valued f their sum is a Connes operator
for the total complex of X̄(E), and the cyclic homology it gives is compared
with the canonical mixed complex of E.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Dict, List

from tools.complexes.mixed import CyclicHomology, MixedComplexData, cyclic_from_mixed
from tools.crossed.cocycle import evaluate
from tools.errors import IllDefinedMap
from tools.linalg import sparse
from tools.linalg.matrix import ExactMatrix
from tools.relative.presented import induce_map
from tools.report import Report
from tools.cleft.canonical import canonical_mixed_complex
from tools.cleft.chain import build_chain_complex, twist_vector
from tools.cleft.products import nested_act
from tools.cleft.spaces import CleftSetting, parity, xbar
from tools.weak_hopf.bialgebra import leg, split_all

logger = logging.getLogger(__name__)


def s_times(st: CleftSetting, hs: tuple) -> dict:
    """S_×(h_{1s}) = S(h_s)⋯S(h_1)."""
    H = st.H
    return H.prod(*(H.S(H.e(h)) for h in reversed(hs)))


def t_basis(st: CleftSetting, key: tuple) -> dict:
    """T_s(h_0 ⊗ … ⊗ h_s) on basis indices, s = len(key) − 1."""

    def build():
        H, b, A = st.H, st.bundle, st.A
        pair = b.pair
        if len(key) == 1:
            return b.m.on_one(H.e(key[0]))
        if len(key) == 2:
            h0, h1 = key
            out = {}
            for (x1, x2), c in H.sweedler_basis(h0, 2).items():
                for (y1, y2, y3), d in H.sweedler_basis(h1, 3).items():
                    inner = evaluate(pair.f_inv, H.S(H.e(y2)), H.e(y3))
                    if not inner:
                        continue
                    left = b.m.act(H.e(x1), inner)
                    fv = evaluate(pair.f, H.e(x2), H.S(H.e(y1)))
                    sparse.axpy(out, A.mul(left, fv), c * d)
            return out
        h0, h1, rest = key[0], key[1], key[2:]
        out = {}
        for (x1, x2), c in H.sweedler_basis(h0, 2).items():
            for legs, d in split_all(H, rest, 2):
                first = t_basis(st, (x1,) + leg(legs, 1))
                if not first:
                    continue
                arg = H.mul(H.e(x2), s_times(st, leg(legs, 0)))
                second = t_linear(st, [arg, H.e(h1)])
                sparse.axpy(out, A.mul(first, second), c * d)
        return out

    return st.cached(("T", key), build)


def t_linear(st: CleftSetting, vectors: List[dict]) -> dict:
    return sparse.multilinear(vectors, lambda *k: t_basis(st, k), st.field.one)


def verify_t_maps(st: CleftSetting, s_max: int = 2) -> Report:
    """Both equalities defining T_s, on all basis tuples, for s ≤ s_max."""
    H, b, E, A = st.H, st.bundle, st.E, st.A
    report = Report(f"T_s for {st.bundle.name}")

    def first():
        for s in range(s_max + 1):
            for key in product(range(H.dim), repeat=s + 1):
                h0, hs = key[0], key[1:]
                lhs = E.mul(b.gamma_table[h0], b.gamma_times_inv(hs))
                rhs = {}
                for (x1, x2), c in H.sweedler_basis(h0, 2).items():
                    for legs, d in split_all(H, hs, 2):
                        t = t_basis(st, (x1,) + leg(legs, 1))
                        if t:
                            g = b.gamma(H.mul(H.e(x2), s_times(st, leg(legs, 0))))
                            sparse.axpy(rhs, E.mul(b.j(t), g), c * d)
                if lhs != rhs:
                    yield key

    def second():
        for s in range(s_max + 1):
            for key in product(range(H.dim), repeat=s + 1):
                h0, hs = key[0], key[1:]
                acc = {}
                for (x1, x2), c in H.sweedler_basis(h0, 2).items():
                    for legs, d in split_all(H, hs, 2):
                        t = t_basis(st, (x1,) + leg(legs, 1))
                        if t:
                            unit = b.m.on_one(H.mul(H.e(x2), s_times(st, leg(legs, 0))))
                            sparse.axpy(acc, A.mul(t, unit), c * d)
                if acc != t_basis(st, key):
                    yield key

    report.check("γ(h_0)γ_×⁻¹(h_{1s}) = j(T_s(h_0⁽¹⁾⊗h⁽²⁾_{1s}))γ(h_0⁽²⁾S_×(h⁽¹⁾_{1s}))", first())
    report.check("T_s(h_0⁽¹⁾⊗h⁽²⁾_{1s})(h_0⁽²⁾S_×(h⁽¹⁾_{1s})·1_A) = T_s(h_{0s})", second())
    return report


def d0_formula(st: CleftSetting, r: int, s: int):
    """D̄⁰: X̄_{rs}(E) → X̄_{r,s+1}(E)."""
    H, b, E, F = st.H, st.bundle, st.E, st.field

    def formula(key: tuple) -> dict:
        hs, m, tail = key[:s], key[s], key[s + 1:]
        out = {}
        for (a0, h0), c in b.decompose(E.basis_vector(m)).items():
            for (x1, x2), d in H.sweedler_basis(h0, 2).items():
                block0 = {(k,) + tail: v for k, v in E.mul(b.j_table[a0], b.gamma_table[x1]).items()}
                for j in range(s + 1):
                    sign = parity(F, j * s + r + s)
                    head = split_all(H, hs[:j], 2)
                    back = split_all(H, hs[j:], 3)
                    for (hl, e), (bl, g) in product(head, back):
                        # h⁽¹⁾_{1s}: the first legs of both groups, in order
                        s1 = leg(hl, 0) + leg(bl, 0)
                        middle = H.mul(H.e(x2), s_times(st, s1))
                        vec = block0
                        for h in reversed(leg(bl, 1)):
                            vec = twist_vector(st, H.e(h), vec)
                        if not vec:
                            continue
                        for x, t in middle.items():
                            prefix = leg(bl, 2) + (x,) + leg(hl, 1)
                            for k, v in vec.items():
                                sparse.add_term(out, prefix + k, sign * c * d * e * g * t * v)
        return out

    return formula


def d1_formula(st: CleftSetting, r: int, s: int):
    """D̄¹: X̄_{rs}(E) → X̄_{r+1,s}(E)."""
    H, b, E, A, F = st.H, st.bundle, st.E, st.A, st.field

    def formula(key: tuple) -> dict:
        hs, m, tail = key[:s], key[s], key[s + 1:]
        out = {}
        for (a0, h0), c in b.decompose(E.basis_vector(m)).items():
            for (x1, x2, x3), d in H.sweedler_basis(h0, 3).items():
                for legs, e in split_all(H, hs, 6):
                    t = t_basis(st, (x1,) + leg(legs, 2))
                    abar = A.mul(A.basis_vector(a0), t)
                    if not abar:
                        continue
                    front = b.gamma(H.mul(H.e(x3), s_times(st, leg(legs, 0))))
                    mm = E.mul(front, b.gamma_times(leg(legs, 4)))
                    if not mm:
                        continue
                    acting = H.mul(H.e(x2), s_times(st, leg(legs, 1)))
                    prefix = leg(legs, 5)
                    for j in range(r + 1):
                        sign = parity(F, j * r + r)
                        inner = nested_act(st, leg(legs, 3), tail[:j])
                        moved = sparse.apply_linear(inner, lambda k: b.m.act_tensor(acting, k))
                        for km, v1 in mm.items():
                            for ka, v2 in abar.items():
                                for kt, v3 in moved.items():
                                    sparse.add_term(out, prefix + (km,) + tail[j:] + (ka,) + kt,
                                                    sign * c * d * e * v1 * v2 * v3)
        return out

    return formula


@dataclass
class ConnesData:
    setting: CleftSetting
    top: int
    mixed: MixedComplexData
    d0: Dict[tuple, ExactMatrix]
    d1: Dict[tuple, ExactMatrix]


def build_connes(st: CleftSetting, top: int) -> ConnesData:
    """(X̄(E), d̄, D̄⁰ + D̄¹) in total degrees 0..top."""
    st.require_k_valued("the Connes operator on X̄")
    if st.M.dim != st.E.dim:
        raise ValueError("the cyclic complex needs M = E")
    F = st.field
    chain = build_chain_complex(st, top - 1)
    total = chain.total()
    c, offsets = total.complex, total.offsets
    d0, d1 = {}, {}
    B = {}
    for n in range(top):
        cols = [dict() for _ in range(c.dim(n))]
        for r in range(n + 1):
            s = n - r
            src = xbar(st, r, s)
            for tgt_key, formula, store, label in (((r, s + 1), d0_formula(st, r, s), d0, "D̄⁰"),
                                                   ((r + 1, s), d1_formula(st, r, s), d1, "D̄¹")):
                m = induce_map(formula, src, xbar(st, *tgt_key))
                if not m:
                    raise IllDefinedMap(m, f"{label} on X̄_{r},{s}")
                store[(r, s)] = m
                for j, col in enumerate(m.columns):
                    for i, v in col.items():
                        sparse.add_term(cols[offsets[(r, s)] + j], offsets[tgt_key] + i, v)
        B[n] = ExactMatrix(F, c.dim(n + 1), c.dim(n), cols)
    mixed = MixedComplexData(c, B, f"(X̄, d̄, D̄)({st.bundle.name})", check=False)
    return ConnesData(st, top, mixed, d0, d1)


@dataclass
class CyclicRun:
    cyclic: CyclicHomology
    canonical_hc: List[int]
    report: Report


def verify_cyclic(st: CleftSetting, n_max: int, trunc: int = 1) -> CyclicRun:
    """Mixed-complex axioms for (X̄, d̄, D̄), the T_s identities, and HC against the canonical complex."""
    report = Report(f"cyclic homology of {st.bundle.name}")
    report.extend(verify_t_maps(st, 2))
    data = build_connes(st, n_max + 1 + 2 * trunc)
    data.mixed.verify(report)
    cyc = cyclic_from_mixed(data.mixed, n_max, trunc)
    canon = cyclic_from_mixed(canonical_mixed_complex(st, n_max + 1), n_max, 0)
    report.add("HC_n: X̄ agrees with the canonical mixed complex", cyc.hc == canon.hc,
               None if cyc.hc == canon.hc else (cyc.hc, canon.hc))
    for name, values in cyc.as_tables().items():
        report.table(name, values)
    report.info["HN status"] = cyc.hn_status
    report.info["HP status"] = cyc.hp_status
    logger.info(f"{st.bundle.name}: HC {cyc.hc}, canonical {canon.hc}")
    return CyclicRun(cyc, canon.hc, report)
