"""Θ and Λ between the X̂ and X̄ presentations, in both variances.

Chains: Θ_{rs}: X̂_{rs}(M) → X̄_{rs}(M) and Λ_{rs}: X̄_{rs}(M) → X̂_{rs}(M).
Cochains: Θ^{rs}: X̄^{rs}(M) → X̂^{rs}(M) and Λ^{rs}: X̂^{rs}(M) → X̄^{rs}(M).
For s = 0 all four are identities.
"""

import logging
from itertools import product
from typing import Tuple

from tools.errors import IllDefinedMap
from tools.linalg import sparse
from tools.linalg.matrix import ExactMatrix
from tools.relative.hom import induce_hom_map
from tools.relative.presented import induce_map
from tools.report import Report
from tools.cleft.spaces import CleftSetting, parity, xbar, xbar_cochain, xhat, xhat_cochain
from tools.weak_hopf.bialgebra import leg, split_all

logger = logging.getLogger(__name__)


def _decomposed(st: CleftSetting, xs: tuple):
    """Every x_i written as Σ c j(a)γ(h): yields ((a_1..a_s), (h_1..h_s), c)."""
    b = st.bundle
    parts = [list(b.decompose(st.E.basis_vector(x)).items()) for x in xs]
    for combo in product(*parts):
        c = st.field.one
        for _, v in combo:
            c = c * v
        yield tuple(k[0] for k, _ in combo), tuple(k[1] for k, _ in combo), c


def _twisted_word(st: CleftSetting, aa: tuple, hs: tuple) -> dict:
    """j(a_1)γ(h_1)⋯j(a_s)γ(h_s)."""
    b = st.bundle
    factors = []
    for a, h in zip(aa, hs):
        factors.append(b.j_table[a])
        factors.append(b.gamma_table[h])
    return st.E.prod(*factors)


def _gamma_slots(st: CleftSetting, hs: tuple) -> dict:
    """γ(h_1) ⊗ … ⊗ γ(h_s) over Ẽ keys."""
    return sparse.tensor([st.bundle.gamma_table[h] for h in hs], st.field.one)


def lambda_formula(st: CleftSetting, r: int, s: int):
    """Λ_{rs}(h̄ ⊗ [m ⊗ ā]) = (−1)^{rs} Σ [m·γ_×⁻¹(h⁽¹⁾_{1s}) ⊗ γ(h⁽²⁾_1) ⊗ … ⊗ γ(h⁽²⁾_s) ⊗ ā]."""
    sign = parity(st.field, r * s)

    def formula(key: tuple) -> dict:
        hs, m, tail = key[:s], key[s], key[s + 1:]
        out = {}
        for legs, c in split_all(st.H, hs, 2):
            mm = st.m_right(m, st.bundle.gamma_times_inv(leg(legs, 0)))
            if not mm:
                continue
            slots = _gamma_slots(st, leg(legs, 1))
            for k, d in mm.items():
                for xs, e in slots.items():
                    sparse.add_term(out, (k,) + xs + tail, sign * c * d * e)
        return out

    return formula


def theta_formula(st: CleftSetting, r: int, s: int):
    """Θ_{rs}[m ⊗ j(a_1)γ(h_1) ⊗ … ⊗ ā] = (−1)^{rs} Σ h̄⁽²⁾_{1s} ⊗ [m·j(a_1)γ(h⁽¹⁾_1)⋯j(a_s)γ(h⁽¹⁾_s) ⊗ ā]."""
    sign = parity(st.field, r * s)

    def formula(key: tuple) -> dict:
        m, xs, tail = key[0], key[1:s + 1], key[s + 1:]
        out = {}
        for aa, hs, c in _decomposed(st, xs):
            for legs, d in split_all(st.H, hs, 2):
                mm = st.m_right(m, _twisted_word(st, aa, leg(legs, 0)))
                for k, e in mm.items():
                    sparse.add_term(out, leg(legs, 1) + (k,) + tail, sign * c * d * e)
        return out

    return formula


def chain_theta_lambda(st: CleftSetting, r: int, s: int) -> Tuple[ExactMatrix, ExactMatrix]:
    """(Θ_{rs}, Λ_{rs}) as matrices."""
    bar, hat = xbar(st, r, s), xhat(st, r, s)
    if s == 0:
        return bar.identity(), bar.identity()
    theta = induce_map(theta_formula(st, r, s), hat, bar)
    if not theta:
        raise IllDefinedMap(theta, f"Θ_{r},{s}")
    lam = induce_map(lambda_formula(st, r, s), bar, hat)
    if not lam:
        raise IllDefinedMap(lam, f"Λ_{r},{s}")
    return theta, lam


def cochain_theta_formula(st: CleftSetting, r: int, s: int):
    """Θ^{rs}(β)(j(a_1)γ(h_1) ⊗ … ⊗ ā) = (−1)^{rs} Σ j(a_1)γ(h⁽¹⁾_1)⋯j(a_s)γ(h⁽¹⁾_s)·β(h̄⁽²⁾_{1s} ⊗ ā)."""
    sign = parity(st.field, r * s)

    def formula(beta, key: tuple) -> dict:
        xs, tail = key[:s], key[s:]
        out = {}
        for aa, hs, c in _decomposed(st, xs):
            for legs, d in split_all(st.H, hs, 2):
                value = beta({leg(legs, 1) + tail: st.field.one})
                if value:
                    sparse.axpy(out, st.M.lmul(_twisted_word(st, aa, leg(legs, 0)), value), sign * c * d)
        return out

    return formula


def cochain_lambda_formula(st: CleftSetting, r: int, s: int):
    """Λ^{rs}(α)(h̄_{1s} ⊗ ā) = (−1)^{rs} Σ γ_×⁻¹(h⁽¹⁾_{1s})·α(γ(h⁽²⁾_1) ⊗ … ⊗ ā)."""
    sign = parity(st.field, r * s)

    def formula(alpha, key: tuple) -> dict:
        hs, tail = key[:s], key[s:]
        out = {}
        for legs, c in split_all(st.H, hs, 2):
            arg = {xs + tail: e for xs, e in _gamma_slots(st, leg(legs, 1)).items()}
            value = alpha(arg)
            if value:
                sparse.axpy(out, st.M.lmul(st.bundle.gamma_times_inv(leg(legs, 0)), value), sign * c)
        return out

    return formula


def cochain_theta_lambda(st: CleftSetting, r: int, s: int) -> Tuple[ExactMatrix, ExactMatrix]:
    """(Θ^{rs}, Λ^{rs}) as matrices."""
    bar, hat = xbar_cochain(st, r, s), xhat_cochain(st, r, s)
    if s == 0:
        ident = ExactMatrix.identity(st.field, bar.dim)
        return ident, ident
    theta = induce_hom_map(cochain_theta_formula(st, r, s), bar, hat)
    if not theta:
        raise IllDefinedMap(theta, f"Θ^{r},{s}")
    lam = induce_hom_map(cochain_lambda_formula(st, r, s), hat, bar)
    if not lam:
        raise IllDefinedMap(lam, f"Λ^{r},{s}")
    return theta, lam


def verify_theta_lambda(st: CleftSetting, n_max: int, cochains: bool = True) -> Report:
    """Θ∘Λ = I and Λ∘Θ = I for r + s ≤ n_max."""
    report = Report(f"Θ/Λ for {st.bundle.name}, {st.M.name}")
    pairs = [(r, n - r) for n in range(n_max + 1) for r in range(n + 1)]

    def inverse(build):
        for r, s in pairs:
            theta, lam = build(st, r, s)
            n = theta.shape[0]
            if not ((theta @ lam) == ExactMatrix.identity(st.field, n)
                    and (lam @ theta) == ExactMatrix.identity(st.field, lam.shape[0])):
                yield (r, s)

    report.check("Θ_{rs}, Λ_{rs} are mutually inverse", inverse(chain_theta_lambda))
    if cochains:
        report.check("Θ^{rs}, Λ^{rs} are mutually inverse", inverse(cochain_theta_lambda))
    report.table("dim X̂_rs", {f"{r},{s}": xhat(st, r, s).dim for r, s in pairs})
    return report
