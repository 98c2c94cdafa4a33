"""The left H-module structure on H^K_*(A, M) and the spectral sequence of X̄.

F^h acts on the normalized complex M ⊗ Ā^{⊗*} ⊗ of A. The maps are chain
maps, F¹ = id and F^h∘F^l − F^{hl} = b𝔥 + 𝔥b, so the induced maps make
H^K_*(A, M) a left H-module. With that module the E² page of the filtration
of X̄ by s is H_s(H, H^K_r(A, M)).
"""

import logging
from itertools import product
from typing import Dict

from tools.complexes.graded import GradedComplex, homotopy_check, induced_on_homology, is_chain_map
from tools.complexes.spectral import FilteredComplex, spectral_pages, verify_pages
from tools.errors import IllDefinedMap
from tools.hopf_homology.homology import homology_of_H
from tools.linalg.matrix import ExactMatrix
from tools.relative.presented import induce_map
from tools.relative.tensor import SidedModule
from tools.report import Report
from tools.cleft.canonical import hochschild_chain_complex
from tools.cleft.chain import block_homotopy, build_chain_complex, cleft_homology, twist, twist_vector
from tools.cleft.spaces import CleftSetting, hochschild_space, xbar

logger = logging.getLogger(__name__)


def f_h_matrices(st: CleftSetting, h: dict, r_max: int) -> Dict[int, ExactMatrix]:
    """F^h_r on M ⊗ Ā^{⊗r} ⊗ for r ≤ r_max + 1."""

    def build():
        out = {}
        for r in range(r_max + 2):
            space = hochschild_space(st, st.abar, r)
            m = induce_map(lambda key: twist_vector(st, h, {key: st.field.one}), space, space)
            if not m:
                raise IllDefinedMap(m, f"F^h_{r}")
            out[r] = m
        return out

    return st.cached(("F^h", tuple(sorted(h.items())), r_max), build)


def homotopy_matrices(st: CleftSetting, h: int, l: int, r_max: int) -> Dict[int, ExactMatrix]:
    """𝔥_r: M ⊗ Ā^{⊗r} ⊗ → M ⊗ Ā^{⊗r+1} ⊗ for r ≤ r_max."""
    out = {}
    for r in range(r_max + 1):
        src, dst = hochschild_space(st, st.abar, r), hochschild_space(st, st.abar, r + 1)
        m = induce_map(lambda key: block_homotopy(st, h, l, key[0], key[1:]), src, dst)
        if not m:
            raise IllDefinedMap(m, f"𝔥_{r}")
        out[r] = m
    return out


def homology_action(st: CleftSetting, c: GradedComplex, r: int, maps: Dict[int, Dict[int, ExactMatrix]]) -> Dict[int, ExactMatrix]:
    """Matrices of F^{e_h} on H_r(c), one per basis element h."""
    hom = c.homology(r)
    return {h: induced_on_homology(maps[h][r], hom, hom) for h in maps}


def homology_module(st: CleftSetting, r: int, r_max: int = None) -> SidedModule:
    """H^K_r(A, M) as a left H-module through F."""
    r_max = r if r_max is None else r_max
    c = hochschild_chain_complex(st, st.abar, r_max)
    maps = {h: f_h_matrices(st, st.H.e(h), r_max) for h in range(st.H.dim)}
    action = homology_action(st, c, r, maps)
    dim = c.homology(r).dim
    return SidedModule.from_function(st.field, dim, st.H.algebra, lambda h, v: action[h].column(v), "left",
                                     f"H^K_{r}(A,{st.M.name})")


def verify_module_structure(st: CleftSetting, r_max: int) -> Report:
    """F¹ = id, chain-map property, the homotopy identity, and the module axioms on homology."""
    H, F = st.H, st.field
    report = Report(f"H-module H^K_*({st.A.name}, {st.M.name})")
    c = hochschild_chain_complex(st, st.abar, r_max)
    degrees = list(range(r_max + 1))
    maps = {h: f_h_matrices(st, H.e(h), r_max) for h in range(H.dim)}
    one = f_h_matrices(st, H.one(), r_max)
    report.add("F¹ = id", all(one[r] == ExactMatrix.identity(F, c.dim(r)) for r in range(r_max + 2)))
    report.check("F^h is a chain map", (h for h in maps if not is_chain_map(maps[h], c, c, range(1, r_max + 2))))

    def combine(h: int, l: int) -> Dict[int, ExactMatrix]:
        prod = H.algebra.mul_basis(h, l)
        out = {}
        for r in range(r_max + 2):
            acc = ExactMatrix.zeros(F, c.dim(r), c.dim(r))
            for k, v in prod.items():
                acc = acc + maps[k][r] * v
            out[r] = acc
        return out

    def homotopy():
        for h, l in product(range(H.dim), repeat=2):
            composed = {r: maps[h][r] @ maps[l][r] for r in range(r_max + 2)}
            if not homotopy_check(composed, combine(h, l), homotopy_matrices(st, h, l, r_max), c, c, degrees):
                yield (h, l)

    report.check("F^h∘F^l − F^{hl} = b𝔥 + 𝔥b", homotopy())

    def module_axioms():
        for r in degrees:
            action = homology_action(st, c, r, maps)
            hom = c.homology(r)
            unit = induced_on_homology(one[r], hom, hom)
            if unit != ExactMatrix.identity(F, hom.dim):
                yield ("unit", r)
            for h, l in product(range(H.dim), repeat=2):
                rhs = ExactMatrix.zeros(F, hom.dim, hom.dim)
                for k, v in H.algebra.mul_basis(h, l).items():
                    rhs = rhs + action[k] * v
                if action[h] @ action[l] != rhs:
                    yield (r, h, l)

    report.check("H^K_*(A, M) is a left H-module", module_axioms())
    report.table("H^K_r(A,M)", {r: c.homology_dim(r) for r in degrees})
    return report


def verify_spectral_e2(st: CleftSetting, n_max: int) -> Report:
    """E² of the filtration of X̄ by s against H_s(H, H^K_r(A, M))."""
    st.require_k_valued("the spectral sequence of X̄")
    report = Report(f"E² for H^K_*({st.bundle.name}, {st.M.name})")
    total = build_chain_complex(st, n_max).total()
    fc = FilteredComplex(total.complex, total.levels)
    degrees = list(range(n_max + 1))
    pages = spectral_pages(fc, 2, degrees)
    report.extend(verify_pages(fc, pages, degrees))
    e2 = pages[2]
    expected = {}
    for r in degrees:
        dims = homology_of_H(st.H, homology_module(st, r, n_max), n_max - r)
        for s, d in enumerate(dims):
            expected[(s, r)] = d
    mismatched = [k for k, d in expected.items() if e2.dim(*k) != d]
    report.add("E²_{s,r} = H_s(H, H^K_r(A, M))", not mismatched, mismatched[0] if mismatched else None)
    for page in pages[1:]:
        report.table(f"E^{page.r}_(s,r)", {f"{p},{q}": d for (p, q), d in sorted(page.dims.items())})
    return report


def coinvariant_module(st: CleftSetting) -> SidedModule:
    """M⊗ with h·[m] = [γ(h⁽²⁾)·m·γ⁻¹(h⁽¹⁾)]."""
    space = hochschild_space(st, st.abar, 0)

    def act(h: int, v: int) -> dict:
        return space.project(twist(st, h, space.lift(v)[0], ()))

    return SidedModule.from_function(st.field, space.dim, st.H.algebra, act, "left", f"{st.M.name}⊗")


def verify_a_equals_k_homology(st: CleftSetting, n_max: int) -> Report:
    """For A = K: H^K_*(E, M) = H_*(H, M⊗), computed on X̄ and on the bar complex of H."""
    report = Report(f"A = K homology of {st.bundle.name}")
    if st.K.dim != st.A.dim:
        raise ValueError(f"{st.bundle.name}: K is a proper subalgebra of A")
    report.add("only the column r = 0 survives",
               all(xbar(st, r, s).dim == 0 for r in range(1, n_max + 2) for s in range(n_max + 2 - r)))
    via_x = cleft_homology(st, n_max)
    via_h = homology_of_H(st.H, coinvariant_module(st), n_max)
    report.add("H^K_*(E, M) = H_*(H, M⊗)", via_x == via_h, None if via_x == via_h else (via_x, via_h))
    report.table("H_n", dict(enumerate(via_x)))
    return report
